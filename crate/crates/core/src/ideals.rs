//! Two-sided ideals: generation, enumeration, arithmetic and images.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructors::{Embedding, Projection};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ring::FiniteRing;
use crate::spec::RingSpec;

/// A two-sided ideal of a specific ring.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    members: ElemSet,
    generators: Option<Vec<usize>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.members == other.members
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({}; {:?})", self.ring.label(), self.members)
    }
}

impl Ideal {
    /// Wraps `members` after checking every ideal axiom.
    pub fn from_members(ring: &Arc<FiniteRing>, members: ElemSet) -> Result<Ideal> {
        if members.universe() != ring.order() {
            return Err(Error::NotAnIdeal(
                "member set has the wrong universe".into(),
            ));
        }
        check_ideal(ring, &members).map_err(Error::NotAnIdeal)?;
        Ok(Ideal {
            ring: Arc::clone(ring),
            members,
            generators: None,
        })
    }

    pub(crate) fn trusted(
        ring: &Arc<FiniteRing>,
        members: ElemSet,
        generators: Option<Vec<usize>>,
    ) -> Ideal {
        debug_assert!(check_ideal(ring, &members).is_ok());
        Ideal {
            ring: Arc::clone(ring),
            members,
            generators,
        }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Ideal {
        let members = ElemSet::from_indices(ring.order(), [ring.zero_ix()]);
        Ideal::trusted(ring, members, Some(Vec::new()))
    }

    pub fn whole(ring: &Arc<FiniteRing>) -> Ideal {
        Ideal::trusted(ring, ElemSet::full(ring.order()), Some(vec![ring.one_ix()]))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.is_full()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_whole()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Re-checks the ideal axioms exhaustively.
    pub fn verify(&self) -> Result<()> {
        check_ideal(&self.ring, &self.members).map_err(Error::NotAnIdeal)
    }

    /// Short description used in witnesses: the generators when known.
    pub fn describe(&self) -> String {
        match &self.generators {
            Some(g) => {
                let g: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                format!("({})", g.join(","))
            }
            None => format!("{:?}", self.members),
        }
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            ring: self.ring.label().to_string(),
            members: self.to_vec(),
        }
    }
}

/// Serialized ideal: the ring's spec string and sorted member indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub ring: String,
    pub members: Vec<usize>,
}

impl IdealJson {
    /// Rebuilds the ring from its spec and re-verifies the member set.
    pub fn resolve(&self, order_cap: usize) -> Result<Ideal> {
        let ring = RingSpec::parse(&self.ring)?.build(order_cap)?;
        if let Some(&bad) = self.members.iter().find(|&&x| x >= ring.order()) {
            return Err(Error::ElementOutOfRange {
                index: bad,
                order: ring.order(),
            });
        }
        let set = ElemSet::from_indices(ring.order(), self.members.iter().copied());
        Ideal::from_members(&ring, set)
    }
}

fn check_ideal(ring: &FiniteRing, set: &ElemSet) -> std::result::Result<(), String> {
    if !set.contains(ring.zero_ix()) {
        return Err("does not contain zero".into());
    }
    let members = set.to_vec();
    for &x in &members {
        if !set.contains(ring.neg_ix(x)) {
            return Err(format!("not closed under negation at {x}"));
        }
        for &y in &members {
            if !set.contains(ring.add_ix(x, y)) {
                return Err(format!("not closed under addition at ({x}, {y})"));
            }
        }
        for r in ring.elements() {
            if !set.contains(ring.mul_ix(r, x)) || !set.contains(ring.mul_ix(x, r)) {
                return Err(format!("not absorbing at ({r}, {x})"));
            }
        }
    }
    Ok(())
}

/// Extends the additive subgroup `group` by the elements of `extra`.
pub(crate) fn additive_closure(
    ring: &FiniteRing,
    mut group: ElemSet,
    extra: impl IntoIterator<Item = usize>,
) -> ElemSet {
    let mut list = group.to_vec();
    for s in extra {
        if group.contains(s) {
            continue;
        }
        // <H, s> is the union of the cosets H + ks.
        let h = group.clone();
        let base = list.clone();
        let mut t = s;
        while !h.contains(t) {
            for &g in &base {
                let v = ring.add_ix(g, t);
                if group.insert(v) {
                    list.push(v);
                }
            }
            t = ring.add_ix(t, s);
        }
    }
    group
}

fn zero_group(ring: &FiniteRing) -> ElemSet {
    ElemSet::from_indices(ring.order(), [ring.zero_ix()])
}

fn check_index(ring: &FiniteRing, x: usize) -> Result<()> {
    if x >= ring.order() {
        return Err(Error::ElementOutOfRange {
            index: x,
            order: ring.order(),
        });
    }
    Ok(())
}

fn two_sided_products(ring: &FiniteRing, g: usize, into: &mut ElemSet) {
    let left = ElemSet::from_indices(ring.order(), ring.elements().map(|r| ring.mul_ix(r, g)));
    for l in left.iter() {
        for s in ring.elements() {
            into.insert(ring.mul_ix(l, s));
        }
    }
}

/// The least two-sided ideal containing `gens`: the additive span of all `r g s`.
pub fn ideal_generated(ring: &Arc<FiniteRing>, gens: &[usize]) -> Result<Ideal> {
    for &g in gens {
        check_index(ring, g)?;
    }
    let mut products = ElemSet::empty(ring.order());
    for &g in gens {
        two_sided_products(ring, g, &mut products);
    }
    let members = additive_closure(ring, zero_group(ring), products.iter());
    Ok(Ideal::trusted(ring, members, Some(gens.to_vec())))
}

/// Every two-sided ideal of `ring`, ordered by size and then by member list.
///
/// Each ideal is a finite sum of principal ideals, so closing the principal
/// ideals under pairwise sums reaches all of them.
pub fn all_ideals(ring: &Arc<FiniteRing>, cap: usize) -> Result<Vec<Ideal>> {
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut list: Vec<(ElemSet, Vec<usize>)> = Vec::new();
    for x in ring.elements() {
        let principal = ideal_generated(ring, &[x])?;
        if seen.insert(principal.members.clone()) {
            list.push((principal.members, vec![x]));
            if list.len() > cap {
                return Err(Error::CapExceeded { cap });
            }
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            if list[i].0.is_subset(&list[j].0) || list[j].0.is_subset(&list[i].0) {
                continue;
            }
            let sum = additive_closure(ring, list[i].0.clone(), list[j].0.iter());
            if seen.insert(sum.clone()) {
                let mut gens = list[i].1.clone();
                gens.extend(&list[j].1);
                list.push((sum, gens));
                if list.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
            }
        }
        i += 1;
    }
    list.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(list
        .into_iter()
        .map(|(members, gens)| Ideal::trusted(ring, members, Some(gens)))
        .collect())
}

fn same_ring(a: &Ideal, b: &Ideal) -> Result<()> {
    if a.ring.same_ring(&b.ring) {
        Ok(())
    } else {
        Err(Error::ElementRingMismatch)
    }
}

fn merged_generators(a: &Ideal, b: &Ideal) -> Option<Vec<usize>> {
    let mut g = a.generators.clone()?;
    g.extend(b.generators.as_ref()?);
    Some(g)
}

pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    same_ring(a, b)?;
    let members = additive_closure(&a.ring, a.members.clone(), b.members.iter());
    Ok(Ideal::trusted(&a.ring, members, merged_generators(a, b)))
}

/// The ideal generated by all products `ik`; that additive span is already
/// two-sided because both factors are ideals.
pub fn ideal_product(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    same_ring(a, b)?;
    let ring = &a.ring;
    let mut products = ElemSet::empty(ring.order());
    for x in a.iter() {
        for y in b.iter() {
            products.insert(ring.mul_ix(x, y));
        }
    }
    let members = additive_closure(ring, zero_group(ring), products.iter());
    Ok(Ideal::trusted(ring, members, None))
}

pub fn ideal_intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    same_ring(a, b)?;
    Ok(Ideal::trusted(
        &a.ring,
        a.members.intersection(&b.members),
        None,
    ))
}

/// True iff every member is nilpotent.
pub fn is_nil_ideal(ideal: &Ideal) -> bool {
    let ring = ideal.ring();
    ideal.iter().all(|x| ring.nil_index(x).is_some())
}

/// `{pi(x) : x in I}` as an ideal of the codomain.
pub fn image_ideal(projection: &Projection, ideal: &Ideal) -> Result<Ideal> {
    if !projection.domain().same_ring(ideal.ring()) {
        return Err(Error::ElementRingMismatch);
    }
    let codomain = projection.codomain();
    let set = ElemSet::from_indices(codomain.order(), ideal.iter().map(|x| projection.apply(x)));
    let mut image = Ideal::from_members(codomain, set)?;
    image.generators = ideal
        .generators
        .as_ref()
        .map(|g| g.iter().map(|&x| projection.apply(x)).collect());
    Ok(image)
}

/// `{e x e : x in I}` as an ideal of the corner ring `eRe`.
pub fn corner_ideal(embedding: &Embedding, ideal: &Ideal) -> Result<Ideal> {
    let ambient = embedding.ambient();
    if !ambient.same_ring(ideal.ring()) {
        return Err(Error::ElementRingMismatch);
    }
    let e = embedding.idempotent();
    let corner = embedding.corner();
    let mut set = ElemSet::empty(corner.order());
    for x in ideal.iter() {
        let exe = ambient.mul_ix(ambient.mul_ix(e, x), e);
        let k = embedding
            .restrict(exe)
            .ok_or_else(|| Error::InternalInvariantViolation("exe outside eRe".into()))?;
        set.insert(k);
    }
    Ideal::from_members(corner, set)
}
