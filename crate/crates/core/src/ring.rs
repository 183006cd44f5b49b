//! Finite unital rings over a canonical index set `0..order`.
//!
//! Every ring is built either from a structured description (integers modulo
//! `n`, products, triangular matrices, idealizations, zero-pairing Morita
//! contexts, quotients, corners) or from raw Cayley tables. Structured rings
//! encode their elements with a mixed-radix scheme whose first component is
//! the most significant digit.

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};

/// Rings up to this order keep full addition and multiplication tables.
pub const TABLE_LIMIT: usize = 1024;

/// Largest order for which exhaustive axiom checking is allowed.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 64;

const SAMPLING_SEED: u64 = 0x6e69_6c63_6c65_616e;

static NEXT_RING_ID: AtomicU32 = AtomicU32::new(1);

/// An element handle bound to one specific ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    ring: u32,
    index: u32,
}

impl Elem {
    pub fn index(self) -> usize {
        self.index as usize
    }
}

/// How a ring was built. Drives on-demand arithmetic for large rings and
/// structured rendering of elements.
#[derive(Debug)]
pub enum Structure {
    Zmod {
        modulus: usize,
    },
    Product {
        parts: Vec<Arc<FiniteRing>>,
    },
    /// `size x size` upper triangular matrices; entries are stored row-major
    /// over the positions `(i, j)` with `i <= j`.
    Triangular {
        size: usize,
        base: Arc<FiniteRing>,
    },
    /// `Z_n x Z_m` with `(r, m)(r', m') = (rr', rm' + r'm)`, `m | n`.
    Idealization {
        ring_modulus: usize,
        module_modulus: usize,
    },
    /// Formal matrices `[[r, u], [l, s]]` with `r` in `Z_a`, `s` in `Z_b`,
    /// `u, l` in `Z_g` and both pairings zero. Encoded as `(r, u, l, s)`.
    MoritaZero {
        a: usize,
        b: usize,
        g: usize,
    },
    Quotient {
        parent: Arc<FiniteRing>,
        /// Coset index -> smallest parent index in the coset.
        reps: Vec<u32>,
        /// Parent index -> coset index.
        coset_of: Vec<u32>,
    },
    Corner {
        parent: Arc<FiniteRing>,
        idempotent: usize,
        /// Corner index -> parent index, ascending.
        elems: Vec<u32>,
        /// Parent index -> corner index, `u32::MAX` outside the corner.
        position: Vec<u32>,
    },
    Table,
}

impl Structure {
    fn radices(&self) -> Option<Vec<usize>> {
        match self {
            Structure::Product { parts } => Some(parts.iter().map(|p| p.order()).collect()),
            Structure::Triangular { size, base } => Some(vec![base.order(); size * (size + 1) / 2]),
            Structure::Idealization {
                ring_modulus,
                module_modulus,
            } => Some(vec![*ring_modulus, *module_modulus]),
            Structure::MoritaZero { a, b, g } => Some(vec![*a, *g, *g, *b]),
            _ => None,
        }
    }

    fn add(&self, x: usize, y: usize) -> usize {
        match self {
            Structure::Zmod { modulus } => (x + y) % modulus,
            Structure::Product { parts } => {
                let radices = self.radices().unwrap();
                let (a, b) = (decode(x, &radices), decode(y, &radices));
                let c: Vec<usize> = parts
                    .iter()
                    .enumerate()
                    .map(|(k, p)| p.add_ix(a[k], b[k]))
                    .collect();
                encode(&c, &radices)
            }
            Structure::Triangular { base, .. } => {
                let radices = self.radices().unwrap();
                let (a, b) = (decode(x, &radices), decode(y, &radices));
                let c: Vec<usize> = a.iter().zip(&b).map(|(&u, &v)| base.add_ix(u, v)).collect();
                encode(&c, &radices)
            }
            Structure::Idealization { .. } | Structure::MoritaZero { .. } => {
                let radices = self.radices().unwrap();
                let (a, b) = (decode(x, &radices), decode(y, &radices));
                let c: Vec<usize> = a
                    .iter()
                    .zip(&b)
                    .zip(&radices)
                    .map(|((&u, &v), &m)| (u + v) % m)
                    .collect();
                encode(&c, &radices)
            }
            Structure::Quotient {
                parent,
                reps,
                coset_of,
            } => coset_of[parent.add_ix(reps[x] as usize, reps[y] as usize)] as usize,
            Structure::Corner {
                parent,
                elems,
                position,
                ..
            } => position[parent.add_ix(elems[x] as usize, elems[y] as usize)] as usize,
            Structure::Table => unreachable!("table rings always carry tables"),
        }
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        match self {
            Structure::Zmod { modulus } => ((x as u64 * y as u64) % *modulus as u64) as usize,
            Structure::Product { parts } => {
                let radices = self.radices().unwrap();
                let (a, b) = (decode(x, &radices), decode(y, &radices));
                let c: Vec<usize> = parts
                    .iter()
                    .enumerate()
                    .map(|(k, p)| p.mul_ix(a[k], b[k]))
                    .collect();
                encode(&c, &radices)
            }
            Structure::Triangular { size, base } => {
                let radices = self.radices().unwrap();
                let a = triangular_dense(&decode(x, &radices), *size, base.zero_ix());
                let b = triangular_dense(&decode(y, &radices), *size, base.zero_ix());
                let n = *size;
                let mut c = Vec::with_capacity(radices.len());
                for i in 0..n {
                    for j in i..n {
                        let mut acc = base.zero_ix();
                        for k in i..=j {
                            acc = base.add_ix(acc, base.mul_ix(a[i * n + k], b[k * n + j]));
                        }
                        c.push(acc);
                    }
                }
                encode(&c, &radices)
            }
            Structure::Idealization {
                ring_modulus: n,
                module_modulus: m,
            } => {
                let (r, u) = (x / m, x % m);
                let (s, v) = (y / m, y % m);
                let first = (r * s) % n;
                let second = ((r % m) * v + (s % m) * u) % m;
                first * m + second
            }
            Structure::MoritaZero { a, b, g } => {
                let radices = [*a, *g, *g, *b];
                let (p, q) = (decode(x, &radices), decode(y, &radices));
                let (r, u, l, s) = (p[0], p[1], p[2], p[3]);
                let (r2, u2, l2, s2) = (q[0], q[1], q[2], q[3]);
                let c = [
                    (r * r2) % a,
                    ((r % g) * u2 + u * (s2 % g)) % g,
                    (l * (r2 % g) + (s % g) * l2) % g,
                    (s * s2) % b,
                ];
                encode(&c, &radices)
            }
            Structure::Quotient {
                parent,
                reps,
                coset_of,
            } => coset_of[parent.mul_ix(reps[x] as usize, reps[y] as usize)] as usize,
            Structure::Corner {
                parent,
                elems,
                position,
                ..
            } => position[parent.mul_ix(elems[x] as usize, elems[y] as usize)] as usize,
            Structure::Table => unreachable!("table rings always carry tables"),
        }
    }

    fn neg(&self, x: usize) -> usize {
        match self {
            Structure::Zmod { modulus } => (modulus - x) % modulus,
            Structure::Product { parts } => {
                let radices = self.radices().unwrap();
                let a = decode(x, &radices);
                let c: Vec<usize> = parts
                    .iter()
                    .enumerate()
                    .map(|(k, p)| p.neg_ix(a[k]))
                    .collect();
                encode(&c, &radices)
            }
            Structure::Triangular { base, .. } => {
                let radices = self.radices().unwrap();
                let c: Vec<usize> = decode(x, &radices)
                    .iter()
                    .map(|&u| base.neg_ix(u))
                    .collect();
                encode(&c, &radices)
            }
            Structure::Idealization { .. } | Structure::MoritaZero { .. } => {
                let radices = self.radices().unwrap();
                let c: Vec<usize> = decode(x, &radices)
                    .iter()
                    .zip(&radices)
                    .map(|(&u, &m)| (m - u) % m)
                    .collect();
                encode(&c, &radices)
            }
            Structure::Quotient {
                parent,
                reps,
                coset_of,
            } => coset_of[parent.neg_ix(reps[x] as usize)] as usize,
            Structure::Corner {
                parent,
                elems,
                position,
                ..
            } => position[parent.neg_ix(elems[x] as usize)] as usize,
            Structure::Table => unreachable!("table rings always carry tables"),
        }
    }
}

fn triangular_dense(entries: &[usize], n: usize, zero: usize) -> Vec<usize> {
    let mut dense = vec![zero; n * n];
    let mut it = entries.iter();
    for i in 0..n {
        for j in i..n {
            dense[i * n + j] = *it.next().unwrap();
        }
    }
    dense
}

pub(crate) fn decode(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for k in (0..radices.len()).rev() {
        out[k] = index % radices[k];
        index /= radices[k];
    }
    out
}

pub(crate) fn encode(digits: &[usize], radices: &[usize]) -> usize {
    digits
        .iter()
        .zip(radices)
        .fold(0, |acc, (&d, &r)| acc * r + d)
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

/// Fill-once caches of derived element sets.
#[derive(Default)]
pub(crate) struct Memo {
    pub(crate) commutative: OnceLock<bool>,
    pub(crate) units: OnceLock<ElemSet>,
    pub(crate) idempotents: OnceLock<Vec<usize>>,
    pub(crate) nil_index: OnceLock<Vec<Option<u32>>>,
    pub(crate) center: OnceLock<ElemSet>,
    pub(crate) jacobson: OnceLock<ElemSet>,
}

/// An immutable finite ring with unity.
pub struct FiniteRing {
    id: u32,
    order: usize,
    zero: usize,
    one: usize,
    label: String,
    structure: Structure,
    tables: Option<Tables>,
    neg: Vec<u32>,
    pub(crate) memo: Memo,
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteRing {
    pub(crate) fn from_structure(
        structure: Structure,
        order: usize,
        zero: usize,
        one: usize,
        label: String,
    ) -> Result<Arc<Self>> {
        if order < 2 || zero == one {
            return Err(Error::BadParameter("the zero ring is not allowed".into()));
        }
        if order > u32::MAX as usize {
            return Err(Error::BadParameter(format!("order {order} too large")));
        }
        let tables = (order <= TABLE_LIMIT).then(|| {
            let mut add = Vec::with_capacity(order * order);
            let mut mul = Vec::with_capacity(order * order);
            for x in 0..order {
                for y in 0..order {
                    add.push(structure.add(x, y) as u32);
                    mul.push(structure.mul(x, y) as u32);
                }
            }
            Tables { add, mul }
        });
        let neg = (0..order).map(|x| structure.neg(x) as u32).collect();
        Ok(Arc::new(FiniteRing {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            order,
            zero,
            one,
            label,
            structure,
            tables,
            neg,
            memo: Memo::default(),
        }))
    }

    /// Builds a ring directly from Cayley tables given row-major.
    ///
    /// Only shape and range are checked here; use [`FiniteRing::verify_axioms`]
    /// before trusting the result.
    pub fn from_tables(
        order: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Result<Arc<Self>> {
        if order < 2 {
            return Err(Error::BadParameter("the zero ring is not allowed".into()));
        }
        if add.len() != order * order || mul.len() != order * order {
            return Err(Error::MalformedTable(format!(
                "tables must have {} entries",
                order * order
            )));
        }
        if zero >= order || one >= order {
            return Err(Error::MalformedTable("zero/one out of range".into()));
        }
        if zero == one {
            return Err(Error::BadParameter("the zero ring is not allowed".into()));
        }
        if let Some(bad) = add.iter().chain(&mul).find(|&&v| v >= order) {
            return Err(Error::MalformedTable(format!("entry {bad} out of range")));
        }
        let neg = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| add[x * order + y] == zero)
                    .unwrap_or(zero) as u32
            })
            .collect();
        Ok(Arc::new(FiniteRing {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            order,
            zero,
            one,
            label: format!("table#{order}"),
            structure: Structure::Table,
            tables: Some(Tables {
                add: add.into_iter().map(|v| v as u32).collect(),
                mul: mul.into_iter().map(|v| v as u32).collect(),
            }),
            neg,
            memo: Memo::default(),
        }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Canonical spec string for structured rings, `table#<n>` for imported ones.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn same_ring(&self, other: &FiniteRing) -> bool {
        self.id == other.id
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    // --- checked element API ---

    pub fn elem(&self, index: usize) -> Result<Elem> {
        if index >= self.order {
            return Err(Error::ElementOutOfRange {
                index,
                order: self.order,
            });
        }
        Ok(self.wrap(index))
    }

    fn wrap(&self, index: usize) -> Elem {
        Elem {
            ring: self.id,
            index: index as u32,
        }
    }

    fn check(&self, x: Elem) -> Result<usize> {
        if x.ring != self.id {
            return Err(Error::ElementRingMismatch);
        }
        Ok(x.index())
    }

    pub fn zero(&self) -> Elem {
        self.wrap(self.zero)
    }

    pub fn one(&self) -> Elem {
        self.wrap(self.one)
    }

    pub fn add(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.wrap(self.add_ix(self.check(x)?, self.check(y)?)))
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.wrap(self.sub_ix(self.check(x)?, self.check(y)?)))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.wrap(self.mul_ix(self.check(x)?, self.check(y)?)))
    }

    pub fn neg(&self, x: Elem) -> Result<Elem> {
        Ok(self.wrap(self.neg_ix(self.check(x)?)))
    }

    pub fn pow(&self, x: Elem, k: u64) -> Result<Elem> {
        Ok(self.wrap(self.pow_ix(self.check(x)?, k)))
    }

    // --- index-level arithmetic ---
    //
    // Indices must be `< order`; these are the hot paths used by every
    // enumeration and are not re-checked.

    #[inline]
    pub fn zero_ix(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn one_ix(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add_ix(&self, x: usize, y: usize) -> usize {
        match &self.tables {
            Some(t) => t.add[x * self.order + y] as usize,
            None => self.structure.add(x, y),
        }
    }

    #[inline]
    pub fn mul_ix(&self, x: usize, y: usize) -> usize {
        match &self.tables {
            Some(t) => t.mul[x * self.order + y] as usize,
            None => self.structure.mul(x, y),
        }
    }

    #[inline]
    pub fn neg_ix(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn sub_ix(&self, x: usize, y: usize) -> usize {
        self.add_ix(x, self.neg_ix(y))
    }

    /// `x^k` by repeated squaring; `x^0 = one`.
    pub fn pow_ix(&self, x: usize, mut k: u64) -> usize {
        let mut base = x;
        let mut acc = self.one;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_ix(acc, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_ix(base, base);
            }
        }
        acc
    }

    /// `k * x` (repeated addition), `k` possibly zero.
    pub fn scale_ix(&self, x: usize, k: u64) -> usize {
        let mut acc = self.zero;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_ix(acc, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_ix(base, base);
            }
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    // --- structure helpers ---

    /// Mixed-radix digits of `index` for tuple- and matrix-shaped rings.
    pub fn components(&self, index: usize) -> Option<Vec<usize>> {
        self.structure.radices().map(|r| decode(index, &r))
    }

    /// Inverse of [`FiniteRing::components`]. Returns `None` for other
    /// structures or digits out of range.
    pub fn from_components(&self, digits: &[usize]) -> Option<usize> {
        let radices = self.structure.radices()?;
        if digits.len() != radices.len() || digits.iter().zip(&radices).any(|(d, r)| d >= r) {
            return None;
        }
        Some(encode(digits, &radices))
    }

    /// Human-readable rendering that follows the construction.
    pub fn render(&self, index: usize) -> String {
        match &self.structure {
            Structure::Zmod { .. } | Structure::Table => index.to_string(),
            Structure::Product { parts } => {
                let c = self.components(index).unwrap();
                let inner: Vec<String> = parts.iter().zip(c).map(|(p, d)| p.render(d)).collect();
                format!("({})", inner.join(", "))
            }
            Structure::Triangular { size, base } => {
                let c = self.components(index).unwrap();
                let dense = triangular_dense(&c, *size, base.zero_ix());
                let rows: Vec<String> = (0..*size)
                    .map(|i| {
                        let row: Vec<String> = (0..*size)
                            .map(|j| base.render(dense[i * size + j]))
                            .collect();
                        format!("[{}]", row.join(", "))
                    })
                    .collect();
                format!("[{}]", rows.join(", "))
            }
            Structure::Idealization { .. } => {
                let c = self.components(index).unwrap();
                format!("({}, {})", c[0], c[1])
            }
            Structure::MoritaZero { .. } => {
                let c = self.components(index).unwrap();
                format!("[[{}, {}], [{}, {}]]", c[0], c[1], c[2], c[3])
            }
            Structure::Quotient { parent, reps, .. } => {
                format!("[{}]", parent.render(reps[index] as usize))
            }
            Structure::Corner { parent, elems, .. } => parent.render(elems[index] as usize),
        }
    }

    /// True iff `xy = yx` for every pair. Memoized.
    pub fn is_commutative(&self) -> bool {
        *self.memo.commutative.get_or_init(|| {
            (0..self.order)
                .all(|x| (x + 1..self.order).all(|y| self.mul_ix(x, y) == self.mul_ix(y, x)))
        })
    }

    /// Checks the ring axioms either on every triple or on uniformly sampled
    /// triples drawn from a fixed-seed generator.
    pub fn verify_axioms(&self, mode: AxiomMode) -> Result<AxiomReport> {
        let mut report = AxiomReport {
            order: self.order,
            mode,
            triples_checked: 0,
            violations: Vec::new(),
        };
        match mode {
            AxiomMode::Exhaustive => {
                if self.order > EXHAUSTIVE_AXIOM_LIMIT {
                    return Err(Error::ExhaustiveTooLarge {
                        order: self.order,
                        limit: EXHAUSTIVE_AXIOM_LIMIT,
                    });
                }
                for x in 0..self.order {
                    for y in 0..self.order {
                        for z in 0..self.order {
                            self.check_triple(x, y, z, &mut report);
                        }
                    }
                }
            }
            AxiomMode::Sampled(count) => {
                let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
                for _ in 0..count {
                    let x = rng.random_range(0..self.order);
                    let y = rng.random_range(0..self.order);
                    let z = rng.random_range(0..self.order);
                    self.check_triple(x, y, z, &mut report);
                }
            }
        }
        Ok(report)
    }

    fn check_triple(&self, x: usize, y: usize, z: usize, report: &mut AxiomReport) {
        report.triples_checked += 1;
        let (zero, one) = (self.zero, self.one);
        let checks = [
            (
                Axiom::AddAssociative,
                self.add_ix(self.add_ix(x, y), z) == self.add_ix(x, self.add_ix(y, z)),
            ),
            (
                Axiom::AddCommutative,
                self.add_ix(x, y) == self.add_ix(y, x),
            ),
            (
                Axiom::AddIdentity,
                self.add_ix(x, zero) == x && self.add_ix(zero, x) == x,
            ),
            (Axiom::AddInverse, self.add_ix(x, self.neg_ix(x)) == zero),
            (
                Axiom::MulAssociative,
                self.mul_ix(self.mul_ix(x, y), z) == self.mul_ix(x, self.mul_ix(y, z)),
            ),
            (
                Axiom::MulIdentity,
                self.mul_ix(x, one) == x && self.mul_ix(one, x) == x,
            ),
            (
                Axiom::LeftDistributive,
                self.mul_ix(x, self.add_ix(y, z))
                    == self.add_ix(self.mul_ix(x, y), self.mul_ix(x, z)),
            ),
            (
                Axiom::RightDistributive,
                self.mul_ix(self.add_ix(y, z), x)
                    == self.add_ix(self.mul_ix(y, x), self.mul_ix(z, x)),
            ),
        ];
        for (axiom, ok) in checks {
            if !ok && !report.violations.iter().any(|v| v.axiom == axiom) {
                report.violations.push(AxiomViolation {
                    axiom,
                    witness: [x, y, z],
                });
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomMode {
    Exhaustive,
    Sampled(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    AddInverse,
    MulAssociative,
    MulIdentity,
    LeftDistributive,
    RightDistributive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// The triple `(x, y, z)`; unary and binary axioms use its prefix.
    pub witness: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub order: usize,
    pub mode: AxiomMode,
    pub triples_checked: u64,
    /// First violation found for each failing axiom.
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            return format!("all axioms hold ({} triples)", self.triples_checked);
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{:?} at {:?}", v.axiom, v.witness))
            .collect();
        parts.join("; ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{make_idealization, make_upper_triangular, make_zmod};

    #[test]
    fn zmod_arithmetic() {
        let z6 = make_zmod(6).unwrap();
        let e = |i| z6.elem(i).unwrap();
        assert_eq!(z6.add(e(2), e(4)).unwrap(), z6.zero());
        assert_eq!(z6.mul(e(3), e(4)).unwrap(), z6.zero());
        assert_eq!(z6.neg(e(2)).unwrap(), e(4));
        for x in 0..6 {
            assert_eq!(z6.add(e(x), z6.zero()).unwrap(), e(x));
            assert_eq!(z6.mul(e(x), z6.one()).unwrap(), e(x));
        }
        let z4 = make_zmod(4).unwrap();
        assert_eq!(z4.add_ix(3, 3), 2);
        let z8 = make_zmod(8).unwrap();
        assert_eq!(z8.pow_ix(2, 3), 0);
        assert_eq!(z8.pow_ix(5, 0), 1);
        for k in 0..10 {
            assert_eq!(z8.pow_ix(z8.one_ix(), k), z8.one_ix());
        }
    }

    #[test]
    fn cross_ring_elements_are_rejected() {
        let a = make_zmod(6).unwrap();
        let b = make_zmod(6).unwrap();
        let x = a.elem(2).unwrap();
        assert!(matches!(b.add(x, b.one()), Err(Error::ElementRingMismatch)));
        assert!(matches!(b.pow(x, 2), Err(Error::ElementRingMismatch)));
        assert!(matches!(a.elem(6), Err(Error::ElementOutOfRange { .. })));
    }

    #[test]
    fn strictly_upper_squares_to_zero() {
        let t = make_upper_triangular(&make_zmod(2).unwrap(), 2, 4096).unwrap();
        let u = t.from_components(&[0, 1, 0]).unwrap();
        assert_ne!(u, t.zero_ix());
        assert_eq!(t.mul_ix(u, u), t.zero_ix());
        assert!(!t.is_commutative());
    }

    #[test]
    fn commutativity() {
        assert!(make_zmod(12).unwrap().is_commutative());
        assert!(make_idealization(4, 2).unwrap().is_commutative());
    }

    #[test]
    fn exhaustive_axioms_zmod() {
        let r = make_zmod(6).unwrap();
        let rep = r.verify_axioms(AxiomMode::Exhaustive).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.triples_checked, 216);
    }

    #[test]
    fn corrupted_table_is_reported() {
        let z = make_zmod(4).unwrap();
        let n = z.order();
        let add: Vec<usize> = (0..n * n).map(|i| z.add_ix(i / n, i % n)).collect();
        let mut mul: Vec<usize> = (0..n * n).map(|i| z.mul_ix(i / n, i % n)).collect();
        mul[2 * n + 3] = 1; // 2*3 := 1
        let bad = FiniteRing::from_tables(n, add, mul, 0, 1).unwrap();
        let rep = bad.verify_axioms(AxiomMode::Exhaustive).unwrap();
        assert!(!rep.passed());
        let v = rep
            .violations
            .iter()
            .find(|v| v.axiom == Axiom::MulAssociative)
            .expect("associativity must fail");
        let [x, y, w] = v.witness;
        assert_ne!(
            bad.mul_ix(bad.mul_ix(x, y), w),
            bad.mul_ix(x, bad.mul_ix(y, w))
        );
    }

    #[test]
    fn exhaustive_refused_above_limit() {
        let r = make_zmod(65).unwrap();
        assert!(matches!(
            r.verify_axioms(AxiomMode::Exhaustive),
            Err(Error::ExhaustiveTooLarge { .. })
        ));
        assert!(r.verify_axioms(AxiomMode::Sampled(500)).unwrap().passed());
    }

    #[test]
    fn from_tables_shape_errors() {
        assert!(matches!(
            FiniteRing::from_tables(2, vec![0; 3], vec![0; 4], 0, 1),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteRing::from_tables(2, vec![0, 1, 1, 5], vec![0; 4], 0, 1),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn on_demand_arithmetic_matches_tables() {
        // Z_2 x Z_3 x Z_3 x ... large enough to skip tables.
        let z1031 = make_zmod(1031).unwrap();
        assert!(!z1031.has_tables());
        assert_eq!(z1031.mul_ix(1030, 1030), 1);
        assert_eq!(z1031.neg_ix(1), 1030);
    }
}
