//! Element classifiers: idempotents, nilpotents, units, center and the
//! Jacobson radical. All sets are memoized on the ring after first use.

use std::sync::Arc;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::ring::FiniteRing;

/// Default bound on the size of complete orthogonal sets.
pub const DEFAULT_COMPLETE_SET_SIZE: usize = 4;

impl FiniteRing {
    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul_ix(x, x) == x
    }

    /// Least `k >= 1` with `x^k = 0`, if any.
    ///
    /// The index of a nilpotent never exceeds the order, so it suffices to test
    /// `x^(2^m)` for the first `2^m >= order` and then bisect.
    pub fn nilpotency_index(&self, x: usize) -> Option<u32> {
        let zero = self.zero_ix();
        let mut m = 0u32;
        let mut p = x;
        while (1usize << m) < self.order() {
            p = self.mul_ix(p, p);
            m += 1;
        }
        if p != zero {
            return None;
        }
        let (mut lo, mut hi) = (1u64, 1u64 << m);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.pow_ix(x, mid) == zero {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo as u32)
    }

    pub fn nil_indices(&self) -> &[Option<u32>] {
        self.memo
            .nil_index
            .get_or_init(|| self.elements().map(|x| self.nilpotency_index(x)).collect())
    }

    /// Memoized form of [`FiniteRing::nilpotency_index`].
    pub fn nil_index(&self, x: usize) -> Option<u32> {
        self.nil_indices()[x]
    }

    pub fn is_nilpotent(&self, x: usize) -> bool {
        self.nil_index(x).is_some()
    }

    pub fn nilpotents(&self) -> ElemSet {
        ElemSet::from_indices(
            self.order(),
            self.elements().filter(|&x| self.nil_index(x).is_some()),
        )
    }

    /// Idempotents in ascending index order.
    pub fn idempotents(&self) -> &[usize] {
        self.memo
            .idempotents
            .get_or_init(|| self.elements().filter(|&x| self.is_idempotent(x)).collect())
    }

    pub fn units(&self) -> &ElemSet {
        self.memo.units.get_or_init(|| {
            let one = self.one_ix();
            ElemSet::from_indices(
                self.order(),
                self.elements().filter(|&x| {
                    self.elements()
                        .any(|y| self.mul_ix(x, y) == one && self.mul_ix(y, x) == one)
                }),
            )
        })
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.units().contains(x)
    }

    pub fn center(&self) -> &ElemSet {
        self.memo.center.get_or_init(|| {
            if self.is_commutative() {
                return ElemSet::full(self.order());
            }
            ElemSet::from_indices(
                self.order(),
                self.elements().filter(|&x| {
                    self.elements()
                        .all(|r| self.mul_ix(x, r) == self.mul_ix(r, x))
                }),
            )
        })
    }

    pub fn is_central(&self, x: usize) -> bool {
        self.center().contains(x)
    }

    /// `{x : 1 - r x is a unit for every r}`.
    pub fn jacobson_set(&self) -> &ElemSet {
        self.memo.jacobson.get_or_init(|| {
            let one = self.one_ix();
            let units = self.units();
            ElemSet::from_indices(
                self.order(),
                self.elements().filter(|&x| {
                    self.elements()
                        .all(|r| units.contains(self.sub_ix(one, self.mul_ix(r, x))))
                }),
            )
        })
    }

    pub fn is_boolean_ring(&self) -> bool {
        self.idempotents().len() == self.order()
    }

    pub fn central_idempotents(&self) -> Vec<usize> {
        self.idempotents()
            .iter()
            .copied()
            .filter(|&e| self.is_central(e))
            .collect()
    }

    /// Complete orthogonal sets of nonzero central idempotents with at most
    /// `max_size` members, in lexicographic order of their sorted index lists.
    pub fn complete_orthogonal_central_sets(&self, max_size: usize) -> Vec<Vec<usize>> {
        let zero = self.zero_ix();
        let candidates: Vec<usize> = self
            .central_idempotents()
            .into_iter()
            .filter(|&e| e != zero)
            .collect();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_orthogonal(&candidates, 0, zero, max_size, &mut current, &mut out);
        out.sort();
        out
    }

    fn extend_orthogonal(
        &self,
        candidates: &[usize],
        start: usize,
        sum: usize,
        max_size: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !current.is_empty() && sum == self.one_ix() {
            out.push(current.clone());
        }
        if current.len() == max_size {
            return;
        }
        for k in start..candidates.len() {
            let e = candidates[k];
            let zero = self.zero_ix();
            if current
                .iter()
                .all(|&f| self.mul_ix(e, f) == zero && self.mul_ix(f, e) == zero)
            {
                current.push(e);
                self.extend_orthogonal(
                    candidates,
                    k + 1,
                    self.add_ix(sum, e),
                    max_size,
                    current,
                    out,
                );
                current.pop();
            }
        }
    }

    /// True iff every element has only the trivial idempotents `0` and `1`.
    pub fn has_only_trivial_idempotents(&self) -> bool {
        self.idempotents().len() == 2
    }
}

/// The Jacobson radical as a verified ideal.
pub fn jacobson_radical(ring: &Arc<FiniteRing>) -> Result<Ideal> {
    let set = ring.jacobson_set().clone();
    Ideal::from_members(ring, set).map_err(|e| {
        Error::InternalInvariantViolation(format!("Jacobson set is not an ideal: {e}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{make_product, make_upper_triangular, make_zmod, DEFAULT_ORDER_CAP};
    use crate::spec::RingSpec;

    fn build(s: &str) -> Arc<FiniteRing> {
        RingSpec::parse(s)
            .unwrap()
            .build(DEFAULT_ORDER_CAP)
            .unwrap()
    }

    fn naive_index(r: &FiniteRing, x: usize) -> Option<u32> {
        let mut p = x;
        for k in 1..=r.order() as u32 {
            if p == r.zero_ix() {
                return Some(k);
            }
            p = r.mul_ix(p, x);
        }
        None
    }

    fn radical(mut n: usize) -> usize {
        let mut rad = 1;
        let mut p = 2;
        while n > 1 {
            if n.is_multiple_of(p) {
                rad *= p;
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        rad
    }

    #[test]
    fn idempotent_examples() {
        let z6 = make_zmod(6).unwrap();
        assert!(z6.is_idempotent(3));
        assert!(!z6.is_idempotent(2));
        assert!(z6.is_idempotent(0));
        assert_eq!(z6.idempotents(), &[0, 1, 3, 4]);
    }

    #[test]
    fn nilpotency_examples() {
        let z8 = make_zmod(8).unwrap();
        assert_eq!(z8.nil_index(2), Some(3));
        assert_eq!(z8.nil_index(0), Some(1));
        let z6 = make_zmod(6).unwrap();
        assert_eq!(z6.nil_index(2), None);
    }

    #[test]
    fn nilpotency_matches_naive_iteration() {
        for s in [
            "Z8",
            "Z12",
            "Z27",
            "T2(Z4)",
            "T3(Z2)",
            "Id(8,2)",
            "MZ(4,2,2)",
            "Z4xZ3",
        ] {
            let r = build(s);
            for x in r.elements() {
                let idx = r.nil_index(x);
                assert_eq!(idx, naive_index(&r, x), "{s} at {x}");
                if let Some(k) = idx {
                    assert_eq!(r.pow_ix(x, k as u64), r.zero_ix());
                    if k > 1 {
                        assert_ne!(r.pow_ix(x, k as u64 - 1), r.zero_ix());
                    }
                }
            }
        }
    }

    #[test]
    fn unit_examples() {
        assert_eq!(make_zmod(6).unwrap().units().to_vec(), vec![1, 5]);
        assert_eq!(make_zmod(4).unwrap().units().to_vec(), vec![1, 3]);
        let t = build("T2(Z4)");
        assert!(t.is_unit(t.one_ix()));
        let units = t.units().to_vec();
        for &a in &units {
            for &b in &units {
                assert!(t.is_unit(t.mul_ix(a, b)));
            }
        }
    }

    #[test]
    fn jacobson_examples() {
        let j = |n| jacobson_radical(&make_zmod(n).unwrap()).unwrap().to_vec();
        assert_eq!(j(12), vec![0, 6]);
        assert_eq!(j(6), vec![0]);
        assert_eq!(j(8), vec![0, 2, 4, 6]);
        assert_eq!(
            make_zmod(8).unwrap().nilpotents().to_vec(),
            vec![0, 2, 4, 6]
        );
    }

    #[test]
    fn zmod_radical_matches_number_theory() {
        for n in 2..=64 {
            let r = make_zmod(n).unwrap();
            let rad = radical(n);
            let expected: Vec<usize> = (0..n).filter(|x| x % rad == 0).collect();
            assert_eq!(r.jacobson_set().to_vec(), expected, "Z{n}");
            assert_eq!(r.nilpotents().to_vec(), expected, "Z{n}");
        }
    }

    #[test]
    fn classifier_invariants() {
        for s in [
            "Z12",
            "T2(Z2)",
            "T3(Z2)",
            "MZ(2,2,2)",
            "Id(4,4)",
            "Z2xZ2xZ3",
        ] {
            let r = build(s);
            let units = r.units();
            let nil = r.nilpotents();
            assert!(units.intersection(&nil).is_empty(), "{s}");
            assert!(nil.contains(r.zero_ix()));
            assert!(units.contains(r.one_ix()) && r.is_idempotent(r.one_ix()));
            let j = jacobson_radical(&r).unwrap();
            for &e in r.idempotents() {
                if e != r.zero_ix() {
                    assert!(!j.contains(e), "{s}: idempotent {e} in J");
                }
            }
        }
    }

    #[test]
    fn center_examples() {
        let t = make_upper_triangular(&make_zmod(2).unwrap(), 2, 4096).unwrap();
        let u = t.from_components(&[0, 1, 0]).unwrap();
        assert!(!t.is_central(u));
        assert!(t.is_central(t.one_ix()));
        assert_eq!(t.center().len(), 2);
        let z12 = make_zmod(12).unwrap();
        assert!(z12.elements().all(|x| z12.is_central(x)));
    }

    #[test]
    fn boolean_examples() {
        assert!(make_zmod(2).unwrap().is_boolean_ring());
        assert!(!make_zmod(4).unwrap().is_boolean_ring());
        let z2 = make_zmod(2).unwrap();
        assert!(make_product(&[z2.clone(), z2], 4096)
            .unwrap()
            .is_boolean_ring());
    }

    #[test]
    fn complete_set_examples() {
        let z6 = make_zmod(6).unwrap();
        let sets = z6.complete_orthogonal_central_sets(DEFAULT_COMPLETE_SET_SIZE);
        assert_eq!(sets, vec![vec![1], vec![3, 4]]);
        let z4 = make_zmod(4).unwrap();
        assert_eq!(z4.complete_orthogonal_central_sets(4), vec![vec![1]]);
        let r = build("Z2xZ2xZ2");
        let sets = r.complete_orthogonal_central_sets(4);
        assert!(sets.contains(&vec![r.one_ix()]));
        assert!(sets.iter().any(|s| s.len() == 3));
        for s in &sets {
            let sum = s.iter().fold(r.zero_ix(), |a, &e| r.add_ix(a, e));
            assert_eq!(sum, r.one_ix());
        }
    }

    #[test]
    fn memo_matches_fresh_computation() {
        let r = build("T2(Z4)");
        let first = r.units().clone();
        let again = build("T2(Z4)");
        assert_eq!(&first, again.units());
        assert_eq!(r.idempotents(), again.idempotents());
        assert_eq!(r.jacobson_set(), again.jacobson_set());
        let fresh: Vec<Option<u32>> = r.elements().map(|x| r.nilpotency_index(x)).collect();
        assert_eq!(r.nil_indices(), fresh.as_slice());
    }
}
