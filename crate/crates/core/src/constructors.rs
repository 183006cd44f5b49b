//! Builders for every ring family the engine works with.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideals::{ideal_generated, Ideal};
use crate::ring::{encode, Elem, FiniteRing, Structure};
use crate::spec::RingSpec;

pub const DEFAULT_ORDER_CAP: usize = 4096;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_cap(order: u128, cap: usize) -> Result<()> {
    if order > cap as u128 {
        Err(Error::OrderCapExceeded { order, cap })
    } else {
        Ok(())
    }
}

pub fn make_zmod(n: usize) -> Result<Arc<FiniteRing>> {
    if n < 2 {
        return Err(Error::BadParameter(format!(
            "Z{n}: modulus must be at least 2"
        )));
    }
    FiniteRing::from_structure(Structure::Zmod { modulus: n }, n, 0, 1, format!("Z{n}"))
}

pub fn make_product(parts: &[Arc<FiniteRing>], cap: usize) -> Result<Arc<FiniteRing>> {
    if parts.is_empty() {
        return Err(Error::BadParameter(
            "a product needs at least one factor".into(),
        ));
    }
    let order = parts
        .iter()
        .try_fold(1u128, |acc, p| acc.checked_mul(p.order() as u128))
        .unwrap_or(u128::MAX);
    check_cap(order, cap)?;
    let radices: Vec<usize> = parts.iter().map(|p| p.order()).collect();
    let zero = encode(
        &parts.iter().map(|p| p.zero_ix()).collect::<Vec<_>>(),
        &radices,
    );
    let one = encode(
        &parts.iter().map(|p| p.one_ix()).collect::<Vec<_>>(),
        &radices,
    );
    let label = parts
        .iter()
        .map(|p| match p.structure() {
            Structure::Product { .. } => format!("({})", p.label()),
            _ => p.label().to_string(),
        })
        .collect::<Vec<_>>()
        .join("x");
    FiniteRing::from_structure(
        Structure::Product {
            parts: parts.to_vec(),
        },
        order as usize,
        zero,
        one,
        label,
    )
}

/// `n x n` upper triangular matrices over `base`, `n` in `{2, 3}`.
pub fn make_upper_triangular(
    base: &Arc<FiniteRing>,
    n: usize,
    cap: usize,
) -> Result<Arc<FiniteRing>> {
    if !(2..=3).contains(&n) {
        return Err(Error::BadParameter(format!(
            "triangular size {n} must be 2 or 3"
        )));
    }
    let positions = n * (n + 1) / 2;
    let order = (base.order() as u128)
        .checked_pow(positions as u32)
        .unwrap_or(u128::MAX);
    check_cap(order, cap)?;
    let radices = vec![base.order(); positions];
    let mut zero = Vec::with_capacity(positions);
    let mut one = Vec::with_capacity(positions);
    for i in 0..n {
        for j in i..n {
            zero.push(base.zero_ix());
            one.push(if i == j {
                base.one_ix()
            } else {
                base.zero_ix()
            });
        }
    }
    FiniteRing::from_structure(
        Structure::Triangular {
            size: n,
            base: Arc::clone(base),
        },
        order as usize,
        encode(&zero, &radices),
        encode(&one, &radices),
        format!("T{n}({})", base.label()),
    )
}

/// Idealization of `Z_n` with the module `Z_m`, `m | n`.
pub fn make_idealization(n: usize, m: usize) -> Result<Arc<FiniteRing>> {
    if n < 2 || m < 1 || !n.is_multiple_of(m) {
        return Err(Error::BadParameter(format!(
            "Id({n},{m}): need n >= 2 and m dividing n"
        )));
    }
    FiniteRing::from_structure(
        Structure::Idealization {
            ring_modulus: n,
            module_modulus: m,
        },
        n * m,
        0,
        m, // (1, 0)
        format!("Id({n},{m})"),
    )
}

/// Zero-pairing Morita context over `Z_a`, `Z_b` with both bimodules `Z_g`.
pub fn make_morita_zero(a: usize, b: usize, g: usize) -> Result<Arc<FiniteRing>> {
    if a < 2 || b < 2 || g < 1 || !gcd(a, b).is_multiple_of(g) {
        return Err(Error::BadParameter(format!(
            "MZ({a},{b},{g}): need a, b >= 2 and g dividing gcd(a, b)"
        )));
    }
    let radices = [a, g, g, b];
    FiniteRing::from_structure(
        Structure::MoritaZero { a, b, g },
        a * g * g * b,
        0,
        encode(&[1, 0, 0, 1], &radices),
        format!("MZ({a},{b},{g})"),
    )
}

/// A surjective ring map given by an index table.
#[derive(Clone, Debug)]
pub struct Projection {
    domain: Arc<FiniteRing>,
    codomain: Arc<FiniteRing>,
    map: Vec<u32>,
}

impl Projection {
    pub fn identity(ring: &Arc<FiniteRing>) -> Projection {
        Projection {
            domain: Arc::clone(ring),
            codomain: Arc::clone(ring),
            map: (0..ring.order() as u32).collect(),
        }
    }

    pub fn domain(&self) -> &Arc<FiniteRing> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FiniteRing> {
        &self.codomain
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn apply_elem(&self, x: Elem) -> Result<Elem> {
        // Round-trip through the domain to reject foreign elements.
        let x = self.domain.add(x, self.domain.zero())?;
        self.codomain.elem(self.apply(x.index()))
    }
}

/// The inclusion of a corner ring `eRe` into its ambient ring.
#[derive(Clone, Debug)]
pub struct Embedding {
    corner: Arc<FiniteRing>,
    ambient: Arc<FiniteRing>,
    idempotent: usize,
}

impl Embedding {
    pub fn corner(&self) -> &Arc<FiniteRing> {
        &self.corner
    }

    pub fn ambient(&self) -> &Arc<FiniteRing> {
        &self.ambient
    }

    pub fn idempotent(&self) -> usize {
        self.idempotent
    }

    /// Corner index -> ambient index.
    pub fn apply(&self, x: usize) -> usize {
        match self.corner.structure() {
            Structure::Corner { elems, .. } => elems[x] as usize,
            _ => unreachable!(),
        }
    }

    /// Ambient index -> corner index, if the element lies in `eRe`.
    pub fn restrict(&self, x: usize) -> Option<usize> {
        match self.corner.structure() {
            Structure::Corner { position, .. } => {
                let p = position[x];
                (p != u32::MAX).then_some(p as usize)
            }
            _ => unreachable!(),
        }
    }
}

/// `R/I` with the minimum index of each coset as its representative.
pub fn make_quotient(
    ring: &Arc<FiniteRing>,
    ideal: &Ideal,
) -> Result<(Arc<FiniteRing>, Projection)> {
    if !ring.same_ring(ideal.ring()) {
        return Err(Error::ElementRingMismatch);
    }
    if ideal.is_whole() {
        return Err(Error::BadParameter(
            "quotient by the whole ring is the zero ring".into(),
        ));
    }
    let n = ring.order();
    let members = ideal.to_vec();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps: Vec<u32> = Vec::with_capacity(n / members.len());
    for x in 0..n {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x as u32);
        for &i in &members {
            coset_of[ring.add_ix(x, i)] = c;
        }
    }
    let gens: Vec<String> = ideal
        .generators()
        .map(|g| g.to_vec())
        .unwrap_or_else(|| members.clone())
        .iter()
        .map(|g| g.to_string())
        .collect();
    let label = format!("Q({};[{}])", ring.label(), gens.join(","));
    let zero = coset_of[ring.zero_ix()] as usize;
    let one = coset_of[ring.one_ix()] as usize;
    let order = reps.len();
    let quotient = FiniteRing::from_structure(
        Structure::Quotient {
            parent: Arc::clone(ring),
            reps,
            coset_of: coset_of.clone(),
        },
        order,
        zero,
        one,
        label,
    )?;
    let projection = Projection {
        domain: Arc::clone(ring),
        codomain: Arc::clone(&quotient),
        map: coset_of,
    };
    Ok((quotient, projection))
}

/// The corner ring `eRe` for a nonzero central idempotent `e`, with identity `e`.
pub fn make_corner(ring: &Arc<FiniteRing>, e: usize) -> Result<(Arc<FiniteRing>, Embedding)> {
    if e >= ring.order() {
        return Err(Error::ElementOutOfRange {
            index: e,
            order: ring.order(),
        });
    }
    if e == ring.zero_ix() || !ring.is_idempotent(e) || !ring.is_central(e) {
        return Err(Error::NotCentralIdempotent(e));
    }
    let n = ring.order();
    let mut position = vec![u32::MAX; n];
    let mut in_corner = vec![false; n];
    for x in ring.elements() {
        in_corner[ring.mul_ix(ring.mul_ix(e, x), e)] = true;
    }
    let elems: Vec<u32> = (0..n).filter(|&x| in_corner[x]).map(|x| x as u32).collect();
    for (k, &x) in elems.iter().enumerate() {
        position[x as usize] = k as u32;
    }
    let zero = position[ring.zero_ix()] as usize;
    let one = position[e] as usize;
    let order = elems.len();
    let corner = FiniteRing::from_structure(
        Structure::Corner {
            parent: Arc::clone(ring),
            idempotent: e,
            elems,
            position,
        },
        order,
        zero,
        one,
        format!("C({};{e})", ring.label()),
    )?;
    let embedding = Embedding {
        corner: Arc::clone(&corner),
        ambient: Arc::clone(ring),
        idempotent: e,
    };
    Ok((corner, embedding))
}

impl RingSpec {
    /// Order of the ring this spec denotes, when it is known without building.
    fn direct_order(&self) -> Option<u128> {
        match self {
            RingSpec::Zmod(n) => Some(*n as u128),
            RingSpec::Idealization(n, m) => Some(*n as u128 * *m as u128),
            RingSpec::MoritaZero(a, b, g) => {
                Some(*a as u128 * *b as u128 * *g as u128 * *g as u128)
            }
            _ => None,
        }
    }

    pub fn build(&self, cap: usize) -> Result<Arc<FiniteRing>> {
        if let Some(order) = self.direct_order() {
            check_cap(order, cap)?;
        }
        match self {
            RingSpec::Zmod(n) => make_zmod(*n),
            RingSpec::Product(parts) => {
                let built = parts
                    .iter()
                    .map(|p| p.build(cap))
                    .collect::<Result<Vec<_>>>()?;
                make_product(&built, cap)
            }
            RingSpec::Tri(n, base) => make_upper_triangular(&base.build(cap)?, *n, cap),
            RingSpec::Idealization(n, m) => make_idealization(*n, *m),
            RingSpec::MoritaZero(a, b, g) => make_morita_zero(*a, *b, *g),
            RingSpec::Quotient(base, gens) => {
                let parent = base.build(cap)?;
                let ideal = ideal_generated(&parent, gens)?;
                Ok(make_quotient(&parent, &ideal)?.0)
            }
            RingSpec::Corner(base, e) => {
                let parent = base.build(cap)?;
                Ok(make_corner(&parent, *e)?.0)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::AxiomMode;

    fn build(s: &str) -> Arc<FiniteRing> {
        RingSpec::parse(s)
            .unwrap()
            .build(DEFAULT_ORDER_CAP)
            .unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(build("T2(Z2)").order(), 8);
        assert_eq!(build("T2(Z4)").order(), 64);
        assert_eq!(build("T3(Z2)").order(), 64);
        assert_eq!(build("Z4xZ3").order(), 12);
        assert_eq!(build("MZ(4,2,2)").order(), 32);
        assert_eq!(build("Id(4,2)").order(), 8);
    }

    #[test]
    fn labels_are_canonical_specs() {
        for s in [
            "Z6",
            "Z4xZ3",
            "(Z2xZ2)xZ3",
            "T2(Z4)",
            "Id(4,2)",
            "MZ(4,2,2)",
            "Q(Z12;[6])",
            "C(Z6;3)",
        ] {
            assert_eq!(build(s).label(), s);
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(make_zmod(1), Err(Error::BadParameter(_))));
        assert!(matches!(
            make_idealization(6, 4),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            make_morita_zero(3, 4, 2),
            Err(Error::BadParameter(_))
        ));
        let z2 = make_zmod(2).unwrap();
        assert!(matches!(
            make_upper_triangular(&z2, 4, 4096),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            make_upper_triangular(&make_zmod(16).unwrap(), 3, 4096),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(matches!(
            RingSpec::parse("Z5000").unwrap().build(4096),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(matches!(
            RingSpec::parse("Z64xZ65").unwrap().build(4096),
            Err(Error::OrderCapExceeded { .. })
        ));
        assert!(matches!(
            make_product(&[], 4096),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn single_factor_product_is_identity_on_indices() {
        let z6 = make_zmod(6).unwrap();
        let p = make_product(&[Arc::clone(&z6)], 4096).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(p.add_ix(x, y), z6.add_ix(x, y));
                assert_eq!(p.mul_ix(x, y), z6.mul_ix(x, y));
            }
        }
    }

    #[test]
    fn idealization_examples() {
        let r = make_idealization(4, 2).unwrap();
        assert_eq!(r.components(r.one_ix()).unwrap(), vec![1, 0]);
        let r = make_idealization(4, 4).unwrap();
        let x = r.from_components(&[2, 1]).unwrap();
        let y = r.from_components(&[2, 3]).unwrap();
        assert_eq!(r.components(r.mul_ix(x, y)).unwrap(), vec![0, 0]);
    }

    #[test]
    fn morita_zero_pairing() {
        let r = make_morita_zero(4, 2, 2).unwrap();
        // Off-diagonal strips multiply into the zero diagonal.
        for u in 0..2 {
            for l in 0..2 {
                for u2 in 0..2 {
                    for l2 in 0..2 {
                        let x = r.from_components(&[0, u, l, 0]).unwrap();
                        let y = r.from_components(&[0, u2, l2, 0]).unwrap();
                        let c = r.components(r.mul_ix(x, y)).unwrap();
                        assert_eq!((c[0], c[3]), (0, 0));
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let z12 = make_zmod(12).unwrap();
        let (q, pi) = make_quotient(&z12, &ideal_generated(&z12, &[6]).unwrap()).unwrap();
        assert_eq!(q.order(), 6);
        // Coset representatives are 0..6 in order, so Q(Z12;[6]) is Z6 on indices.
        let z6 = make_zmod(6).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(q.add_ix(x, y), z6.add_ix(x, y));
                assert_eq!(q.mul_ix(x, y), z6.mul_ix(x, y));
            }
        }
        for x in 0..12 {
            for y in 0..12 {
                assert_eq!(
                    pi.apply(z12.add_ix(x, y)),
                    q.add_ix(pi.apply(x), pi.apply(y))
                );
                assert_eq!(
                    pi.apply(z12.mul_ix(x, y)),
                    q.mul_ix(pi.apply(x), pi.apply(y))
                );
            }
        }
        assert_eq!(pi.apply(z12.one_ix()), q.one_ix());

        let (same, id) = make_quotient(&z12, &Ideal::zero(&z12)).unwrap();
        assert_eq!(same.order(), 12);
        assert!((0..12).all(|x| id.apply(x) == x));

        let z8 = make_zmod(8).unwrap();
        let (b, _) = make_quotient(&z8, &ideal_generated(&z8, &[2]).unwrap()).unwrap();
        assert_eq!(b.order(), 2);
        assert!(b.is_boolean_ring());

        assert!(make_quotient(&z8, &Ideal::whole(&z8)).is_err());
    }

    #[test]
    fn corner_examples() {
        let z6 = make_zmod(6).unwrap();
        let (c, emb) = make_corner(&z6, 3).unwrap();
        assert_eq!(c.order(), 2);
        assert_eq!((0..2).map(|x| emb.apply(x)).collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(emb.apply(c.one_ix()), 3);
        let (full, _) = make_corner(&z6, 1).unwrap();
        assert_eq!(full.order(), 6);
        assert!(matches!(
            make_corner(&z6, 2),
            Err(Error::NotCentralIdempotent(2))
        ));
        assert!(matches!(
            make_corner(&z6, 0),
            Err(Error::NotCentralIdempotent(0))
        ));
        let t = build("T2(Z2)");
        let e11 = t.from_components(&[1, 0, 0]).unwrap();
        assert!(matches!(
            make_corner(&t, e11),
            Err(Error::NotCentralIdempotent(_))
        ));
    }

    #[test]
    fn constructed_rings_satisfy_axioms() {
        for s in [
            "Z2",
            "Z6",
            "Z4xZ3",
            "T2(Z2)",
            "T2(Z4)",
            "T3(Z2)",
            "Id(4,2)",
            "Id(8,2)",
            "Id(4,4)",
            "MZ(4,2,2)",
            "MZ(2,2,2)",
            "Q(Z12;[4])",
            "C(Z12;4)",
            "Q(T2(Z4);[2])",
        ] {
            let r = build(s);
            let rep = r.verify_axioms(AxiomMode::Exhaustive).unwrap();
            assert!(rep.passed(), "{s}: {}", rep.summary());
        }
        for s in ["T2(Z6)", "MZ(6,6,3)", "Z2xT2(Z3)"] {
            let r = build(s);
            let rep = r.verify_axioms(AxiomMode::Sampled(100_000)).unwrap();
            assert!(rep.passed(), "{s}: {}", rep.summary());
        }
    }

    #[test]
    fn idealization_units_follow_base_units() {
        for (n, m) in [(4, 2), (8, 2), (4, 4), (12, 6)] {
            let r = make_idealization(n, m).unwrap();
            let z = make_zmod(n).unwrap();
            for x in r.elements() {
                let c = r.components(x).unwrap();
                assert_eq!(r.is_unit(x), z.is_unit(c[0]), "Id({n},{m}) at {x}");
            }
        }
    }

    #[test]
    fn triangular_matches_independent_matrix_product() {
        let r = build("T2(Z4)");
        for x in r.elements() {
            for y in r.elements() {
                let a = r.components(x).unwrap();
                let b = r.components(y).unwrap();
                // [[a0, a1], [0, a2]] * [[b0, b1], [0, b2]]
                let want = [
                    (a[0] * b[0]) % 4,
                    (a[0] * b[1] + a[1] * b[2]) % 4,
                    (a[2] * b[2]) % 4,
                ];
                assert_eq!(r.components(r.mul_ix(x, y)).unwrap(), want.to_vec());
            }
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(build("T2(Z2)").render(2), "[[0, 1], [0, 0]]");
        assert_eq!(build("Id(4,2)").render(3), "(1, 1)");
        assert_eq!(build("Z4xZ3").render(5), "(1, 2)");
        assert_eq!(build("Q(Z12;[6])").render(4), "[4]");
    }
}
