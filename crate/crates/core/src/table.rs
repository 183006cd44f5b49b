//! JSON Cayley tables: export of any ring and import of user-supplied tables.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{AxiomMode, FiniteRing, EXHAUSTIVE_AXIOM_LIMIT, TABLE_LIMIT};

/// `{order, add, mul, zero, one}` with `add` and `mul` as `order x order` matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

impl TableJson {
    pub fn from_ring(ring: &FiniteRing) -> Result<TableJson> {
        let n = ring.order();
        if n > TABLE_LIMIT {
            return Err(Error::OrderCapExceeded {
                order: n as u128,
                cap: TABLE_LIMIT,
            });
        }
        let table = |f: &dyn Fn(usize, usize) -> usize| {
            (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect()
        };
        Ok(TableJson {
            order: n,
            add: table(&|x, y| ring.add_ix(x, y)),
            mul: table(&|x, y| ring.mul_ix(x, y)),
            zero: ring.zero_ix(),
            one: ring.one_ix(),
        })
    }

    pub fn parse(text: &str) -> Result<TableJson> {
        serde_json::from_str(text).map_err(|e| Error::MalformedTable(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<TableJson> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MalformedTable(format!("{}: {e}", path.display())))?;
        TableJson::parse(&text)
    }

    /// Builds the ring after exhaustive axiom verification.
    pub fn into_ring(self) -> Result<Arc<FiniteRing>> {
        if self.order > EXHAUSTIVE_AXIOM_LIMIT {
            return Err(Error::ExhaustiveTooLarge {
                order: self.order,
                limit: EXHAUSTIVE_AXIOM_LIMIT,
            });
        }
        let flatten = |name: &str, rows: Vec<Vec<usize>>| -> Result<Vec<usize>> {
            if rows.len() != self.order || rows.iter().any(|r| r.len() != self.order) {
                return Err(Error::MalformedTable(format!(
                    "{name} must be a {0} x {0} matrix",
                    self.order
                )));
            }
            Ok(rows.into_iter().flatten().collect())
        };
        let add = flatten("add", self.add.clone())?;
        let mul = flatten("mul", self.mul.clone())?;
        let ring = FiniteRing::from_tables(self.order, add, mul, self.zero, self.one)?;
        let report = ring.verify_axioms(AxiomMode::Exhaustive)?;
        if !report.passed() {
            return Err(Error::AxiomFailure(Box::new(report)));
        }
        Ok(ring)
    }
}
