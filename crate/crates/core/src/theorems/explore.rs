//! Evaluates the commutative-only characterizations on noncommutative
//! triangular rings. Findings are informational and never fail a run.

use serde::{Deserialize, Serialize};

use crate::classify::jacobson_radical;
use crate::decompose::is_nil_clean_ideal;
use crate::error::Result;
use crate::ideals::{all_ideals, ideal_intersect, is_nil_ideal, Ideal};
use crate::ring::FiniteRing;
use crate::spec::RingSpec;

const RINGS: [&str; 4] = ["T2(Z2)", "T2(Z3)", "T2(Z4)", "T3(Z2)"];

/// Agreement of one statement's two sides over the ideals of one ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub statement: String,
    pub ring: String,
    pub ideals_tested: usize,
    pub agreements: usize,
    /// Ideals where the two sides differ.
    pub disagreements: Vec<Vec<usize>>,
}

fn boolean_modulo(ring: &FiniteRing, sub: &Ideal, ideal: &Ideal) -> bool {
    ideal
        .iter()
        .all(|x| sub.contains(ring.sub_ix(ring.mul_ix(x, x), x)))
}

pub fn explore_noncommutative(ideal_cap: usize, order_cap: usize) -> Result<Vec<Finding>> {
    let mut out = Vec::new();
    for spec in RINGS {
        let ring = RingSpec::parse(spec)?.build(order_cap)?;
        let ideals = all_ideals(&ring, ideal_cap)?;
        let j = jacobson_radical(&ring)?;
        let j_nil = is_nil_ideal(&j);
        let mut ttt1 = Finding {
            statement: "TTT1".into(),
            ring: spec.into(),
            ideals_tested: 0,
            agreements: 0,
            disagreements: Vec::new(),
        };
        let mut mmm = Finding {
            statement: "mmm".into(),
            ..ttt1.clone()
        };
        for ideal in &ideals {
            let nil_clean = is_nil_clean_ideal(ideal);
            if j.is_subset(ideal) {
                ttt1.ideals_tested += 1;
                if (boolean_modulo(&ring, &j, ideal) && j_nil) == nil_clean {
                    ttt1.agreements += 1;
                } else {
                    ttt1.disagreements.push(ideal.to_vec());
                }
            }
            let meet = ideal_intersect(ideal, &j)?;
            mmm.ideals_tested += 1;
            if (boolean_modulo(&ring, &meet, ideal) && is_nil_ideal(&meet)) == nil_clean {
                mmm.agreements += 1;
            } else {
                mmm.disagreements.push(ideal.to_vec());
            }
        }
        out.push(ttt1);
        out.push(mmm);
    }
    Ok(out)
}
