//! Clean and nil clean decompositions, the ideal-level predicates built on
//! them, and constructive idempotent lifting.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{is_nil_ideal, Ideal};
use crate::ring::FiniteRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecompositionKind {
    #[serde(rename = "clean")]
    Clean,
    #[serde(rename = "nil-clean")]
    NilClean,
}

/// `element = idempotent + second`, where `second` is a unit (clean) or a
/// nilpotent (nil clean). Fields are element indices of the ambient ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub element: usize,
    pub idempotent: usize,
    pub second: usize,
    pub kind: DecompositionKind,
    pub commutes: bool,
    pub nil_index: Option<u32>,
}

impl Decomposition {
    /// Re-checks every invariant against `ring` from scratch.
    pub fn verify(&self, ring: &FiniteRing) -> bool {
        let (e, s) = (self.idempotent, self.second);
        if e >= ring.order() || s >= ring.order() || self.element >= ring.order() {
            return false;
        }
        let second_ok = match self.kind {
            DecompositionKind::Clean => ring
                .elements()
                .any(|y| ring.mul_ix(s, y) == ring.one_ix() && ring.mul_ix(y, s) == ring.one_ix()),
            DecompositionKind::NilClean => {
                self.nil_index.is_some() && ring.nilpotency_index(s) == self.nil_index
            }
        };
        ring.mul_ix(e, e) == e
            && ring.add_ix(e, s) == self.element
            && second_ok
            && self.commutes == (ring.mul_ix(e, s) == ring.mul_ix(s, e))
    }
}

fn commutes(ring: &FiniteRing, a: usize, b: usize) -> bool {
    ring.mul_ix(a, b) == ring.mul_ix(b, a)
}

/// All `(e, x - e)` with `e` idempotent and `x - e` nilpotent, by ascending `e`.
pub fn nil_clean_decompositions(ring: &FiniteRing, x: usize) -> Vec<Decomposition> {
    ring.idempotents()
        .iter()
        .filter_map(|&e| {
            let n = ring.sub_ix(x, e);
            ring.nil_index(n).map(|k| Decomposition {
                element: x,
                idempotent: e,
                second: n,
                kind: DecompositionKind::NilClean,
                commutes: commutes(ring, e, n),
                nil_index: Some(k),
            })
        })
        .collect()
}

/// All `(e, x - e)` with `e` idempotent and `x - e` a unit, by ascending `e`.
pub fn clean_decompositions(ring: &FiniteRing, x: usize) -> Vec<Decomposition> {
    ring.idempotents()
        .iter()
        .filter_map(|&e| {
            let u = ring.sub_ix(x, e);
            ring.is_unit(u).then(|| Decomposition {
                element: x,
                idempotent: e,
                second: u,
                kind: DecompositionKind::Clean,
                commutes: commutes(ring, e, u),
                nil_index: None,
            })
        })
        .collect()
}

/// Keeps the decompositions whose two parts commute.
pub fn strongly_filter(list: Vec<Decomposition>) -> Vec<Decomposition> {
    list.into_iter().filter(|d| d.commutes).collect()
}

/// Nil clean decompositions of `x` whose idempotent and nilpotent both lie in `ideal`.
pub fn decomposition_within_ideal(ideal: &Ideal, x: usize) -> Vec<Decomposition> {
    nil_clean_decompositions(ideal.ring(), x)
        .into_iter()
        .filter(|d| ideal.contains(d.idempotent) && ideal.contains(d.second))
        .collect()
}

fn count_nil_clean(ring: &FiniteRing, x: usize, strong: bool) -> usize {
    ring.idempotents()
        .iter()
        .filter(|&&e| {
            let n = ring.sub_ix(x, e);
            ring.is_nilpotent(n) && (!strong || commutes(ring, e, n))
        })
        .count()
}

fn count_clean(ring: &FiniteRing, x: usize, strong: bool) -> usize {
    ring.idempotents()
        .iter()
        .filter(|&&e| {
            let u = ring.sub_ix(x, e);
            ring.is_unit(u) && (!strong || commutes(ring, e, u))
        })
        .count()
}

/// Ideal-level properties, each quantified over every member of the ideal
/// with idempotents, nilpotents and units taken from the whole ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealProperty {
    Clean,
    StronglyClean,
    UniquelyStronglyClean,
    NilClean,
    StronglyNilClean,
    UniquelyNilClean,
    UniquelyStronglyNilClean,
    Nil,
}

impl IdealProperty {
    /// The properties exposed by the command line.
    pub const CLI: [IdealProperty; 6] = [
        IdealProperty::Clean,
        IdealProperty::NilClean,
        IdealProperty::StronglyNilClean,
        IdealProperty::UniquelyNilClean,
        IdealProperty::UniquelyStronglyNilClean,
        IdealProperty::Nil,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdealProperty::Clean => "clean",
            IdealProperty::StronglyClean => "strongly-clean",
            IdealProperty::UniquelyStronglyClean => "uniquely-strongly-clean",
            IdealProperty::NilClean => "nil-clean",
            IdealProperty::StronglyNilClean => "strongly-nil-clean",
            IdealProperty::UniquelyNilClean => "uniquely-nil-clean",
            IdealProperty::UniquelyStronglyNilClean => "uniquely-strongly-nil-clean",
            IdealProperty::Nil => "nil",
        }
    }

    /// Whether the single element `x` satisfies the per-element condition.
    pub fn holds_at(self, ring: &FiniteRing, x: usize) -> bool {
        match self {
            IdealProperty::Clean => count_clean(ring, x, false) > 0,
            IdealProperty::StronglyClean => count_clean(ring, x, true) > 0,
            IdealProperty::UniquelyStronglyClean => count_clean(ring, x, true) == 1,
            IdealProperty::NilClean => count_nil_clean(ring, x, false) > 0,
            IdealProperty::StronglyNilClean => count_nil_clean(ring, x, true) > 0,
            IdealProperty::UniquelyNilClean => count_nil_clean(ring, x, false) == 1,
            IdealProperty::UniquelyStronglyNilClean => count_nil_clean(ring, x, true) == 1,
            IdealProperty::Nil => ring.is_nilpotent(x),
        }
    }

    /// First member of `ideal` (by index) violating the property.
    pub fn witness(self, ideal: &Ideal) -> Option<usize> {
        let ring = ideal.ring();
        ideal.iter().find(|&x| !self.holds_at(ring, x))
    }

    pub fn holds(self, ideal: &Ideal) -> bool {
        if self == IdealProperty::Nil {
            return is_nil_ideal(ideal);
        }
        self.witness(ideal).is_none()
    }
}

impl fmt::Display for IdealProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdealProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            IdealProperty::Clean,
            IdealProperty::StronglyClean,
            IdealProperty::UniquelyStronglyClean,
            IdealProperty::NilClean,
            IdealProperty::StronglyNilClean,
            IdealProperty::UniquelyNilClean,
            IdealProperty::UniquelyStronglyNilClean,
            IdealProperty::Nil,
        ]
        .into_iter()
        .find(|p| p.name() == s)
        .ok_or_else(|| Error::BadParameter(format!("unknown property '{s}'")))
    }
}

pub fn is_clean_ideal(ideal: &Ideal) -> bool {
    IdealProperty::Clean.holds(ideal)
}

pub fn is_nil_clean_ideal(ideal: &Ideal) -> bool {
    IdealProperty::NilClean.holds(ideal)
}

pub fn is_strongly_nil_clean_ideal(ideal: &Ideal) -> bool {
    IdealProperty::StronglyNilClean.holds(ideal)
}

pub fn is_uniquely_nil_clean_ideal(ideal: &Ideal) -> bool {
    IdealProperty::UniquelyNilClean.holds(ideal)
}

pub fn is_uniquely_strongly_nil_clean_ideal(ideal: &Ideal) -> bool {
    IdealProperty::UniquelyStronglyNilClean.holds(ideal)
}

pub fn is_nil_clean_ring(ring: &FiniteRing) -> bool {
    ring.elements()
        .all(|x| IdealProperty::NilClean.holds_at(ring, x))
}

/// Result of lifting an almost-idempotent element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentLift {
    pub idempotent: usize,
    /// The starting element followed by every iterate; ends with `idempotent`.
    pub iterates: Vec<usize>,
    /// `ceil(log2(nu)) + 1`, `nu` the nilpotency index of `a - a^2`.
    pub bound: u32,
}

fn ceil_log2(v: u32) -> u32 {
    if v <= 1 {
        0
    } else {
        32 - (v - 1).leading_zeros()
    }
}

fn smoothing_step(ring: &FiniteRing, t: usize) -> usize {
    // 3t^2 - 2t^3
    let t2 = ring.mul_ix(t, t);
    let t3 = ring.mul_ix(t2, t);
    ring.sub_ix(ring.scale_ix(t2, 3), ring.scale_ix(t3, 2))
}

fn iterate_to_idempotent(ring: &FiniteRing, a: usize, nu: u32) -> Result<IdempotentLift> {
    let bound = ceil_log2(nu) + 1;
    let mut iterates = vec![a];
    let mut t = a;
    while !ring.is_idempotent(t) {
        if iterates.len() as u32 > bound {
            return Err(Error::InternalInvariantViolation(format!(
                "idempotent lift of {a} exceeded {bound} iterations"
            )));
        }
        t = smoothing_step(ring, t);
        iterates.push(t);
    }
    Ok(IdempotentLift {
        idempotent: t,
        iterates,
        bound,
    })
}

/// Lifts `a` with `a - a^2` nilpotent to an idempotent that is a polynomial
/// in `a` by iterating `t -> 3t^2 - 2t^3`. Each step squares away the
/// nilpotent defect `t - t^2`.
pub fn lift_idempotent(ring: &FiniteRing, a: usize) -> Result<IdempotentLift> {
    let defect = ring.sub_ix(a, ring.mul_ix(a, a));
    let nu = ring
        .nil_index(defect)
        .ok_or(Error::NotAlmostIdempotent(a))?;
    iterate_to_idempotent(ring, a, nu)
}

/// Lifts `x` with `x^2 - x` in the nil ideal `ideal` to an idempotent `e`
/// with `e - x` in `ideal`.
pub fn lift_idempotent_mod_nil(ideal: &Ideal, x: usize) -> Result<usize> {
    let ring = ideal.ring();
    if x >= ring.order() {
        return Err(Error::ElementOutOfRange {
            index: x,
            order: ring.order(),
        });
    }
    if !is_nil_ideal(ideal) {
        return Err(Error::PreconditionViolated("ideal is not nil".into()));
    }
    let defect = ring.sub_ix(ring.mul_ix(x, x), x);
    if !ideal.contains(defect) {
        return Err(Error::PreconditionViolated(format!(
            "{x} is not idempotent modulo the ideal"
        )));
    }
    let nu = ring.nil_index(defect).ok_or_else(|| {
        Error::InternalInvariantViolation("member of a nil ideal is not nilpotent".into())
    })?;
    let lift = iterate_to_idempotent(ring, x, nu)?;
    Ok(lift.idempotent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{make_zmod, DEFAULT_ORDER_CAP};
    use crate::ideals::{all_ideals, ideal_generated};
    use crate::spec::RingSpec;
    use std::sync::Arc;

    fn build(s: &str) -> Arc<FiniteRing> {
        RingSpec::parse(s)
            .unwrap()
            .build(DEFAULT_ORDER_CAP)
            .unwrap()
    }

    fn pairs(list: &[Decomposition]) -> Vec<(usize, usize)> {
        list.iter().map(|d| (d.idempotent, d.second)).collect()
    }

    /// Brute force over every pair `(e, y)` with `e + y = x`.
    fn oracle(ring: &FiniteRing, x: usize, kind: DecompositionKind) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for e in ring.elements() {
            for y in ring.elements() {
                if ring.add_ix(e, y) != x || ring.mul_ix(e, e) != e {
                    continue;
                }
                let ok = match kind {
                    DecompositionKind::Clean => ring.elements().any(|z| {
                        ring.mul_ix(y, z) == ring.one_ix() && ring.mul_ix(z, y) == ring.one_ix()
                    }),
                    DecompositionKind::NilClean => {
                        let mut p = y;
                        let mut nil = false;
                        for _ in 0..ring.order() {
                            if p == ring.zero_ix() {
                                nil = true;
                                break;
                            }
                            p = ring.mul_ix(p, y);
                        }
                        nil
                    }
                };
                if ok {
                    out.push((e, y));
                }
            }
        }
        out
    }

    #[test]
    fn nil_clean_examples() {
        let z4 = make_zmod(4).unwrap();
        let d = nil_clean_decompositions(&z4, 3);
        assert_eq!(pairs(&d), vec![(1, 2)]);
        assert_eq!(d[0].nil_index, Some(2));
        let z6 = make_zmod(6).unwrap();
        assert!(nil_clean_decompositions(&z6, 2).is_empty());
        assert!(pairs(&nil_clean_decompositions(&z6, 0)).contains(&(0, 0)));
    }

    #[test]
    fn clean_examples() {
        let z6 = make_zmod(6).unwrap();
        assert_eq!(pairs(&clean_decompositions(&z6, 2)), vec![(1, 1), (3, 5)]);
        assert_eq!(pairs(&clean_decompositions(&z6, 0)), vec![(1, 5)]);
        let z2 = make_zmod(2).unwrap();
        assert_eq!(pairs(&clean_decompositions(&z2, 0)), vec![(1, 1)]);
    }

    #[test]
    fn strong_filter_examples() {
        let z12 = make_zmod(12).unwrap();
        for x in z12.elements() {
            let all = nil_clean_decompositions(&z12, x);
            assert_eq!(strongly_filter(all.clone()), all);
        }
        assert!(strongly_filter(Vec::new()).is_empty());

        let t = build("T2(Z2)");
        let x = t.from_components(&[1, 1, 0]).unwrap();
        let all = nil_clean_decompositions(&t, x);
        assert!(all.iter().any(|d| !d.commutes));
        assert!(strongly_filter(all.clone()).len() < all.len());
    }

    #[test]
    fn decompositions_match_oracle() {
        for s in [
            "Z6",
            "Z8",
            "Z12",
            "T2(Z2)",
            "T2(Z4)",
            "T3(Z2)",
            "Id(4,2)",
            "MZ(2,2,2)",
            "Z4xZ3",
        ] {
            let r = build(s);
            for x in r.elements() {
                let nc = nil_clean_decompositions(&r, x);
                let cl = clean_decompositions(&r, x);
                assert_eq!(
                    pairs(&nc),
                    oracle(&r, x, DecompositionKind::NilClean),
                    "{s} {x}"
                );
                assert_eq!(
                    pairs(&cl),
                    oracle(&r, x, DecompositionKind::Clean),
                    "{s} {x}"
                );
                assert!(nc.iter().chain(&cl).all(|d| d.verify(&r)));
            }
        }
    }

    #[test]
    fn ideal_predicates() {
        let z6 = make_zmod(6).unwrap();
        let i = ideal_generated(&z6, &[2]).unwrap();
        assert!(is_clean_ideal(&i));
        assert!(!is_nil_clean_ideal(&i));
        assert_eq!(IdealProperty::NilClean.witness(&i), Some(2));
        assert!(!is_uniquely_nil_clean_ideal(&i));

        let z27 = make_zmod(27).unwrap();
        assert!(is_nil_clean_ideal(&ideal_generated(&z27, &[3]).unwrap()));

        let z4 = make_zmod(4).unwrap();
        assert!(is_uniquely_nil_clean_ideal(
            &ideal_generated(&z4, &[2]).unwrap()
        ));
        let zero = Ideal::zero(&z4);
        assert!(is_uniquely_nil_clean_ideal(&zero));
        for p in IdealProperty::CLI {
            assert!(
                p.holds(&Ideal::zero(&z6)) || p == IdealProperty::UniquelyNilClean,
                "{p}"
            );
        }
        assert!(is_clean_ideal(&Ideal::zero(&z6)));
        assert!(is_nil_clean_ideal(&Ideal::zero(&z6)));
        assert!(is_strongly_nil_clean_ideal(&Ideal::zero(&z6)));
    }

    #[test]
    fn ring_level() {
        assert!(is_nil_clean_ring(&make_zmod(4).unwrap()));
        assert!(is_nil_clean_ring(&make_zmod(2).unwrap()));
        assert!(!is_nil_clean_ring(&make_zmod(27).unwrap()));
        assert!(!is_nil_clean_ring(&make_zmod(6).unwrap()));
    }

    #[test]
    fn within_ideal_examples() {
        let z27 = make_zmod(27).unwrap();
        let i = ideal_generated(&z27, &[3]).unwrap();
        assert_eq!(pairs(&decomposition_within_ideal(&i, 3)), vec![(0, 3)]);
        let z4 = make_zmod(4).unwrap();
        assert_eq!(
            pairs(&decomposition_within_ideal(&Ideal::whole(&z4), 3)),
            vec![(1, 2)]
        );
        assert!(pairs(&decomposition_within_ideal(&i, 0)).contains(&(0, 0)));
    }

    #[test]
    fn lifting_examples() {
        let z8 = make_zmod(8).unwrap();
        let lift = lift_idempotent(&z8, 3).unwrap();
        assert_eq!(lift.iterates, vec![3, 5, 1]);
        assert_eq!(lift.idempotent, 1);
        assert_eq!(lift.bound, 3);
        let z12 = make_zmod(12).unwrap();
        assert_eq!(lift_idempotent(&z12, 4).unwrap().iterates, vec![4]);
        assert!(matches!(
            lift_idempotent(&z12, 2),
            Err(Error::NotAlmostIdempotent(2))
        ));

        let two = ideal_generated(&z8, &[2]).unwrap();
        assert_eq!(lift_idempotent_mod_nil(&two, 3).unwrap(), 1);
        assert_eq!(lift_idempotent_mod_nil(&two, 1).unwrap(), 1);
        let z6 = make_zmod(6).unwrap();
        let i = ideal_generated(&z6, &[2]).unwrap();
        assert!(matches!(
            lift_idempotent_mod_nil(&i, 3),
            Err(Error::PreconditionViolated(_))
        ));
        let z4 = make_zmod(4).unwrap();
        let nil = ideal_generated(&z4, &[2]).unwrap();
        assert!(matches!(
            lift_idempotent_mod_nil(&Ideal::zero(&z4), 3),
            Err(Error::PreconditionViolated(_))
        ));
        assert_eq!(lift_idempotent_mod_nil(&nil, 3).unwrap(), 1);
    }

    /// Closure of `{a}` under ring operations.
    fn subring_generated(ring: &FiniteRing, a: usize) -> Vec<bool> {
        let mut inside = vec![false; ring.order()];
        let mut list = vec![ring.zero_ix(), ring.one_ix(), a];
        for &x in &list {
            inside[x] = true;
        }
        let mut i = 0;
        while i < list.len() {
            for j in 0..=i {
                let (x, y) = (list[i], list[j]);
                for z in [
                    ring.add_ix(x, y),
                    ring.mul_ix(x, y),
                    ring.mul_ix(y, x),
                    ring.neg_ix(x),
                ] {
                    if !inside[z] {
                        inside[z] = true;
                        list.push(z);
                    }
                }
            }
            i += 1;
        }
        inside
    }

    #[test]
    fn lifting_stays_in_generated_subring() {
        for s in ["Z8", "Z12", "Z27", "T2(Z4)", "Id(8,2)", "T3(Z2)"] {
            let r = build(s);
            for a in r.elements() {
                let Ok(lift) = lift_idempotent(&r, a) else {
                    continue;
                };
                let e = lift.idempotent;
                assert!(r.is_idempotent(e));
                assert!(r.is_nilpotent(r.sub_ix(a, e)));
                assert!(lift.iterates.len() as u32 - 1 <= lift.bound);
                assert!(subring_generated(&r, a)[e], "{s} a={a}");
            }
        }
    }

    #[test]
    fn nil_clean_ideals_are_clean_and_decompose_inside() {
        for s in ["Z12", "Z27", "T2(Z4)", "Id(4,4)", "MZ(4,2,2)"] {
            let r = build(s);
            for i in all_ideals(&r, 512).unwrap() {
                if !is_nil_clean_ideal(&i) {
                    continue;
                }
                assert!(is_clean_ideal(&i));
                for x in i.iter() {
                    assert!(!decomposition_within_ideal(&i, x).is_empty());
                    let d = &nil_clean_decompositions(&r, r.neg_ix(x))[0];
                    // x = (1 - e) + (-1 - n)
                    let e = r.sub_ix(r.one_ix(), d.idempotent);
                    let u = r.sub_ix(r.neg_ix(r.one_ix()), d.second);
                    assert!(r.is_idempotent(e) && r.is_unit(u));
                    assert_eq!(r.add_ix(e, u), x);
                }
            }
        }
    }

    #[test]
    fn decomposition_json_shape() {
        let z4 = make_zmod(4).unwrap();
        let d = &nil_clean_decompositions(&z4, 3)[0];
        let text = serde_json::to_string(d).unwrap();
        assert_eq!(
            text,
            r#"{"element":3,"idempotent":1,"second":2,"kind":"nil-clean","commutes":true,"nil_index":2}"#
        );
        let back: Decomposition = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, d);
    }
}
