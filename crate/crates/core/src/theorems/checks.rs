//! The registered checks. Each `run` function walks its instances, feeds
//! hypotheses and conclusions to the tally and re-derives every witness
//! object through the underlying predicates.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::constructors::{make_corner, make_zmod, Embedding};
use crate::decompose::{
    decomposition_within_ideal, is_clean_ideal, is_nil_clean_ideal, is_nil_clean_ring,
    is_strongly_nil_clean_ideal, lift_idempotent, lift_idempotent_mod_nil,
    nil_clean_decompositions, IdealProperty,
};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ideals::{
    all_ideals, corner_ideal, ideal_generated, ideal_intersect, ideal_product, image_ideal,
    is_nil_ideal, Ideal,
};
use crate::ring::{FiniteRing, Structure};

use super::context::Instance;
use super::{Context, Tally, TheoremCheck, Witness};

pub(crate) static REGISTRY: &[TheoremCheck] = &[
    TheoremCheck {
        id: "direct_sum",
        paper_result: "If R1 is a nil clean ring and R2 is not, then R1 x R2 is not nil clean while R1 x 0 is a nil clean ideal",
        commutative_only: false,
        run: direct_sum,
    },
    TheoremCheck {
        id: "L1",
        paper_result: "Every nil clean ideal is a clean ideal",
        commutative_only: false,
        run: l1,
    },
    TheoremCheck {
        id: "PPP1",
        paper_result: "If I is a nil clean ideal then I meet J(R) is a nil ideal",
        commutative_only: false,
        run: ppp1,
    },
    TheoremCheck {
        id: "PPP1_cor",
        paper_result: "In a nil clean ring the Jacobson radical consists of nilpotents",
        commutative_only: false,
        run: ppp1_cor,
    },
    TheoremCheck {
        id: "prod_ideals",
        paper_result: "In a commutative ring the product of two nil clean ideals is nil clean",
        commutative_only: true,
        run: prod_ideals,
    },
    TheoremCheck {
        id: "strong_iff",
        paper_result: "I is strongly nil clean iff I is strongly clean and a - a^2 is nilpotent for every a in I",
        commutative_only: false,
        run: strong_iff,
    },
    TheoremCheck {
        id: "strong_unique",
        paper_result: "A strongly nil clean ideal is uniquely strongly nil clean and uniquely strongly clean",
        commutative_only: false,
        run: strong_unique,
    },
    TheoremCheck {
        id: "TTT1",
        paper_result: "For commutative R and J(R) inside I: I/J(R) is boolean and J(R) is nil iff I is nil clean",
        commutative_only: true,
        run: ttt1,
    },
    TheoremCheck {
        id: "central_idem",
        paper_result: "Idempotents lying in a uniquely nil clean ideal are central",
        commutative_only: false,
        run: central_idem,
    },
    TheoremCheck {
        id: "main1",
        paper_result: "I is nil clean iff every element of I is an idempotent of I plus a nilpotent of I",
        commutative_only: false,
        run: main1,
    },
    TheoremCheck {
        id: "local_cor",
        paper_result: "If R has only trivial idempotents, every proper nil clean ideal is nil",
        commutative_only: false,
        run: local_cor,
    },
    TheoremCheck {
        id: "mmm",
        paper_result: "For commutative R: I is nil clean iff I/(I meet J(R)) is boolean and I meet J(R) is nil",
        commutative_only: true,
        run: mmm,
    },
    TheoremCheck {
        id: "main",
        paper_result: "R is nil clean iff some central idempotent e has <e> and <1-e> nil clean",
        commutative_only: false,
        run: main_thm,
    },
    TheoremCheck {
        id: "complete_set",
        paper_result: "R is nil clean iff some complete set of central idempotents e_i has every <e_i> nil clean",
        commutative_only: false,
        run: complete_set,
    },
    TheoremCheck {
        id: "corner",
        paper_result: "I is nil clean iff some complete set of central idempotents e_i has every e_i I e_i nil clean in e_i R e_i",
        commutative_only: false,
        run: corner,
    },
    TheoremCheck {
        id: "lift_mod_nil",
        paper_result: "For a nil ideal I inside I1: I1 is nil clean in R iff I1/I is nil clean in R/I",
        commutative_only: false,
        run: lift_mod_nil,
    },
    TheoremCheck {
        id: "hom_image",
        paper_result: "Homomorphic images of nil clean ideals are nil clean",
        commutative_only: false,
        run: hom_image,
    },
    TheoremCheck {
        id: "fin_prod",
        paper_result: "A finite product of ideals is nil clean iff every factor is nil clean",
        commutative_only: false,
        run: fin_prod,
    },
    TheoremCheck {
        id: "nilindex_growth",
        paper_result: "The nilpotency index of 2 in Z_(2^n) is n",
        commutative_only: false,
        run: nilindex_growth,
    },
    TheoremCheck {
        id: "D211",
        paper_result: "Diagonal entries of a triangular idempotent are idempotent; a triangular matrix is nilpotent iff its diagonal entries are",
        commutative_only: false,
        run: d211,
    },
    TheoremCheck {
        id: "TT1",
        paper_result: "I is nil clean in R iff T_n(I) is nil clean in T_n(R)",
        commutative_only: false,
        run: tt1,
    },
    TheoremCheck {
        id: "RM",
        paper_result: "In R(M): (r,m) is idempotent iff r is idempotent and m = 0; (r,m) is nilpotent iff r is",
        commutative_only: false,
        run: rm,
    },
    TheoremCheck {
        id: "RM1",
        paper_result: "For commutative R: I is nil clean in R iff I(N) is nil clean in R(M)",
        commutative_only: true,
        run: rm1,
    },
    TheoremCheck {
        id: "morita_proj",
        paper_result: "Ideals of a Morita context ring are exactly the block sets satisfying the module conditions",
        commutative_only: false,
        run: morita_proj,
    },
    TheoremCheck {
        id: "morita_corner",
        paper_result: "If a Morita context ideal is strongly nil clean, so are its diagonal blocks",
        commutative_only: false,
        run: morita_corner,
    },
    TheoremCheck {
        id: "morita_zero_iff",
        paper_result: "With zero pairing, a Morita context ideal is (strongly) nil clean iff its diagonal blocks are",
        commutative_only: false,
        run: morita_zero_iff,
    },
    TheoremCheck {
        id: "tri_cor",
        paper_result: "In T_2(R) the ideal [[I, R], [0, J]] is nil clean iff I and J are",
        commutative_only: false,
        run: tri_cor,
    },
];

// --- helpers ---

fn implies_with(
    t: &mut Tally,
    hypothesis: bool,
    conclusion: impl FnOnce() -> Result<Option<Witness>>,
) -> Result<()> {
    let failure = if hypothesis { conclusion()? } else { None };
    t.implies(hypothesis, || failure);
    Ok(())
}

/// Family rings followed by derived products not already in the family.
fn all_rings(ctx: &Context) -> Result<Vec<&Instance>> {
    let mut out: Vec<&Instance> = ctx.family().iter().collect();
    for p in ctx.products()? {
        if !out
            .iter()
            .any(|i| i.ring().label() == p.inst.ring().label())
        {
            out.push(&p.inst);
        }
    }
    Ok(out)
}

fn set_ideal(ring: &Arc<FiniteRing>, members: impl IntoIterator<Item = usize>) -> Result<Ideal> {
    Ideal::from_members(ring, ElemSet::from_indices(ring.order(), members))
}

/// Members of a tuple-shaped ring whose components lie in the given sets.
fn block_set(ring: &FiniteRing, accept: impl Fn(&[usize]) -> bool) -> Vec<usize> {
    ring.elements()
        .filter(|&x| accept(&ring.components(x).expect("tuple-shaped ring")))
        .collect()
}

/// True iff the image of `ideal` in `R / sub` consists of idempotents.
fn boolean_modulo(inst: &Instance, sub: &Ideal, ideal: &Ideal) -> Result<bool> {
    let (q, pi) = inst.quotient_by(sub)?;
    let image = image_ideal(pi, ideal)?;
    let boolean = image.iter().all(|y| q.is_idempotent(y));
    // Cross-check against the defining congruence x^2 - x in sub.
    let ring = inst.ring();
    let direct = ideal
        .iter()
        .all(|x| sub.contains(ring.sub_ix(ring.mul_ix(x, x), x)));
    if boolean != direct {
        return Err(Error::InternalInvariantViolation(
            "quotient and congruence disagree on booleanness".into(),
        ));
    }
    Ok(boolean)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Subgroups `dZ_m` of `Z_m` as membership vectors.
fn cyclic_subgroups(m: usize) -> Vec<Vec<bool>> {
    divisors(m)
        .into_iter()
        .rev()
        .map(|d| (0..m).map(|x| x % d == 0).collect())
        .collect()
}

fn members_of(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect()
}

// --- checks ---

fn direct_sum(ctx: &Context, t: &mut Tally) -> Result<()> {
    for p in ctx.products()? {
        let ring = p.inst.ring();
        let nil_clean: Vec<bool> = p.parts.iter().map(|r| is_nil_clean_ring(r)).collect();
        for k in 0..p.parts.len() {
            let hyp = nil_clean[k] && nil_clean.iter().any(|b| !b);
            implies_with(t, hyp, || {
                if is_nil_clean_ring(ring) {
                    return Ok(Some(Witness::ring(
                        ring,
                        "product of a non nil clean factor is nil clean",
                    )));
                }
                let zeros: Vec<usize> = p.parts.iter().map(|r| r.zero_ix()).collect();
                let ideal = set_ideal(
                    ring,
                    block_set(ring, |c| (0..c.len()).all(|i| i == k || c[i] == zeros[i])),
                )?;
                Ok((!is_nil_clean_ideal(&ideal)).then(|| {
                    Witness::ideal(
                        &ideal,
                        format!("component ideal of factor {k} is not nil clean"),
                    )
                }))
            })?;
        }
    }
    Ok(())
}

fn l1(ctx: &Context, t: &mut Tally) -> Result<()> {
    let mut converse_failures = Vec::new();
    for inst in ctx.family() {
        let ring = inst.ring();
        for ideal in inst.ideals()? {
            let nil_clean = is_nil_clean_ideal(ideal);
            let clean = is_clean_ideal(ideal);
            if clean && !nil_clean {
                converse_failures.push(format!("{} {:?}", ring.label(), ideal.to_vec()));
            }
            t.implies(nil_clean, || {
                if !clean {
                    return Some(Witness::ideal(ideal, "nil clean ideal is not clean"));
                }
                // x = (1 - e) + (-1 - n) from a nil clean decomposition -x = e + n.
                for x in ideal.iter() {
                    let minus_x = ring.neg_ix(x);
                    let Some(d) = nil_clean_decompositions(ring, minus_x).into_iter().next() else {
                        return Some(
                            Witness::ideal(ideal, "-x has no nil clean decomposition")
                                .with_element(x),
                        );
                    };
                    let f = ring.sub_ix(ring.one_ix(), d.idempotent);
                    let u = ring.sub_ix(ring.neg_ix(ring.one_ix()), d.second);
                    if !ring.is_idempotent(f) || !ring.is_unit(u) || ring.add_ix(f, u) != x {
                        return Some(
                            Witness::ideal(ideal, "(1-e) + (-1-n) is not a clean decomposition")
                                .with_element(x),
                        );
                    }
                }
                None
            });
        }
    }
    let fixture = "Z6 [0, 2, 4]".to_string();
    if converse_failures.contains(&fixture) {
        t.note(format!(
            "expected negative fixture: {fixture} is clean but not nil clean"
        ));
    }
    if !converse_failures.is_empty() {
        t.note(format!(
            "converse fails on {} clean ideals that are not nil clean, first {}",
            converse_failures.len(),
            converse_failures[0]
        ));
    }
    Ok(())
}

fn ppp1(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in ctx.family() {
        let j = inst.jacobson()?;
        for ideal in inst.ideals()? {
            implies_with(t, is_nil_clean_ideal(ideal), || {
                let meet = ideal_intersect(ideal, &j)?;
                let bad = meet.iter().find(|&x| !inst.ring().is_nilpotent(x));
                Ok(bad.map(|x| {
                    Witness::ideal(ideal, "element of I meet J(R) is not nilpotent").with_element(x)
                }))
            })?;
        }
    }
    Ok(())
}

fn ppp1_cor(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in all_rings(ctx)? {
        let ring = inst.ring();
        implies_with(t, is_nil_clean_ring(ring), || {
            let j = inst.jacobson()?;
            let bad = j.iter().find(|&x| !ring.is_nilpotent(x));
            Ok(bad.map(|x| Witness::ring(ring, "J(R) member is not nilpotent").with_element(x)))
        })?;
    }
    Ok(())
}

fn prod_ideals(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in ctx.family() {
        let ideals = inst.ideals()?;
        if !inst.ring().is_commutative() {
            t.skip_n(ideals.len() * ideals.len());
            continue;
        }
        for a in ideals {
            for b in ideals {
                let hyp = is_nil_clean_ideal(a) && is_nil_clean_ideal(b);
                implies_with(t, hyp, || {
                    let p = ideal_product(a, b)?;
                    p.verify()?;
                    Ok((!is_nil_clean_ideal(&p)).then(|| {
                        Witness::ideal(
                            &p,
                            format!(
                                "product of {:?} and {:?} is not nil clean",
                                a.to_vec(),
                                b.to_vec()
                            ),
                        )
                    }))
                })?;
            }
        }
    }
    Ok(())
}

fn strong_iff(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in ctx.family() {
        let ring = inst.ring();
        for ideal in inst.ideals()? {
            let lhs = is_strongly_nil_clean_ideal(ideal);
            let rhs = IdealProperty::StronglyClean.holds(ideal)
                && ideal
                    .iter()
                    .all(|a| ring.is_nilpotent(ring.sub_ix(a, ring.mul_ix(a, a))));
            t.iff(lhs, rhs, || {
                Witness::ideal(
                    ideal,
                    "strongly nil clean versus strongly clean with a - a^2 nilpotent",
                )
            });
        }
    }
    Ok(())
}

fn strong_unique(ctx: &Context, t: &mut Tally) -> Result<()> {
    let mut divergent = 0usize;
    for inst in ctx.family() {
        for ideal in inst.ideals()? {
            let hyp = is_strongly_nil_clean_ideal(ideal);
            if hyp && !IdealProperty::UniquelyNilClean.holds(ideal) {
                divergent += 1;
            }
            t.implies(hyp, || {
                if let Some(x) = IdealProperty::UniquelyStronglyNilClean.witness(ideal) {
                    return Some(
                        Witness::ideal(ideal, "strongly nil clean decomposition is not unique")
                            .with_element(x),
                    );
                }
                IdealProperty::UniquelyStronglyClean
                    .witness(ideal)
                    .map(|x| {
                        Witness::ideal(ideal, "strongly clean decomposition is not unique")
                            .with_element(x)
                    })
            });
        }
    }
    t.note(format!(
        "uniqueness is read over commuting decompositions; {divergent} strongly nil clean ideals are not uniquely nil clean when commutation is dropped"
    ));
    Ok(())
}

fn ttt1(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in ctx.family() {
        let ring = inst.ring();
        let ideals = inst.ideals()?;
        if !ring.is_commutative() {
            t.skip_n(ideals.len());
            continue;
        }
        let j = inst.jacobson()?;
        for ideal in ideals {
            if !j.is_subset(ideal) {
                t.skip();
                continue;
            }
            let lhs = boolean_modulo(inst, &j, ideal)? && is_nil_ideal(&j);
            let rhs = is_nil_clean_ideal(ideal);
            t.iff(lhs, rhs, || {
                Witness::ideal(ideal, "boolean modulo a nil J(R) versus nil clean")
            });
            if lhs {
                // The forward proof: e = f(a) is idempotent with a - e in J(R).
                for a in ideal.iter() {
                    let ok = match lift_idempotent(ring, a) {
                        Ok(l) => {
                            ring.is_idempotent(l.idempotent)
                                && j.contains(ring.sub_ix(a, l.idempotent))
                                && l.iterates.len() as u32 <= l.bound + 1
                        }
                        Err(_) => false,
                    };
                    if !ok {
                        t.fail(
                            Witness::ideal(ideal, "polynomial idempotent lift fails")
                                .with_element(a),
                        );
                        break;
                    }
                }
            }
        }
    }
    Ok(())
}

fn central_idem(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in ctx.family() {
        let ring = inst.ring();
        for ideal in inst.ideals()? {
            t.implies(IdealProperty::UniquelyNilClean.holds(ideal), || {
                ring.idempotents()
                    .iter()
                    .find(|&&e| ideal.contains(e) && !ring.is_central(e))
                    .map(|&e| Witness::ideal(ideal, "idempotent is not central").with_element(e))
            });
        }
    }
    Ok(())
}

fn main1(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in ctx.family() {
        let ring = inst.ring();
        for ideal in inst.ideals()? {
            let lhs = is_nil_clean_ideal(ideal);
            let mut bad = None;
            for x in ideal.iter() {
                let within = decomposition_within_ideal(ideal, x);
                if within.is_empty() || !within.iter().all(|d| d.verify(ring)) {
                    bad = Some(x);
                    break;
                }
            }
            t.iff(lhs, bad.is_none(), || {
                let w = Witness::ideal(ideal, "nil clean versus decomposable inside I");
                match bad {
                    Some(x) => w.with_element(x),
                    None => w,
                }
            });
        }
    }
    Ok(())
}

fn local_cor(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in all_rings(ctx)? {
        let trivial = inst.ring().has_only_trivial_idempotents();
        for ideal in inst.ideals()? {
            let hyp = trivial && ideal.is_proper() && is_nil_clean_ideal(ideal);
            t.implies(hyp, || {
                (!is_nil_ideal(ideal))
                    .then(|| Witness::ideal(ideal, "proper nil clean ideal is not nil"))
            });
        }
    }
    Ok(())
}

fn mmm(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in ctx.family() {
        let ideals = inst.ideals()?;
        if !inst.ring().is_commutative() {
            t.skip_n(ideals.len());
            continue;
        }
        let j = inst.jacobson()?;
        for ideal in ideals {
            let meet = ideal_intersect(ideal, &j)?;
            let rhs = boolean_modulo(inst, &meet, ideal)? && is_nil_ideal(&meet);
            let lhs = is_nil_clean_ideal(ideal);
            t.iff(lhs, rhs, || {
                Witness::ideal(ideal, "nil clean versus boolean modulo a nil I meet J(R)")
            });
        }
    }
    Ok(())
}

fn main_thm(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in all_rings(ctx)? {
        let ring = inst.ring();
        let lhs = is_nil_clean_ring(ring);
        let mut found = None;
        for e in ring.central_idempotents() {
            let f = ring.sub_ix(ring.one_ix(), e);
            if is_nil_clean_ideal(&ideal_generated(ring, &[e])?)
                && is_nil_clean_ideal(&ideal_generated(ring, &[f])?)
            {
                found = Some(e);
                break;
            }
        }
        t.iff(lhs, found.is_some(), || {
            Witness::ring(ring, "nil clean versus split by a central idempotent")
        });
    }
    Ok(())
}

fn complete_set(ctx: &Context, t: &mut Tally) -> Result<()> {
    let size = ctx.config().complete_set_size;
    for inst in all_rings(ctx)? {
        let ring = inst.ring();
        let lhs = is_nil_clean_ring(ring);
        let mut rhs = false;
        for set in ring.complete_orthogonal_central_sets(size) {
            let mut all = true;
            for &e in &set {
                if !is_nil_clean_ideal(&ideal_generated(ring, &[e])?) {
                    all = false;
                    break;
                }
            }
            if all {
                rhs = true;
                break;
            }
        }
        t.iff(lhs, rhs, || {
            Witness::ring(ring, "nil clean versus complete set with nil clean ideals")
        });
    }
    Ok(())
}

fn corner(ctx: &Context, t: &mut Tally) -> Result<()> {
    let size = ctx.config().complete_set_size;
    for inst in ctx.family() {
        let ring = inst.ring();
        let sets = ring.complete_orthogonal_central_sets(size);
        let mut embeddings: BTreeMap<usize, Embedding> = BTreeMap::new();
        for &e in sets.iter().flatten() {
            if let Entry::Vacant(slot) = embeddings.entry(e) {
                slot.insert(make_corner(ring, e)?.1);
            }
        }
        for ideal in inst.ideals()? {
            let lhs = is_nil_clean_ideal(ideal);
            let mut rhs = false;
            for set in &sets {
                let mut all = true;
                for e in set {
                    if !is_nil_clean_ideal(&corner_ideal(&embeddings[e], ideal)?) {
                        all = false;
                        break;
                    }
                }
                if all {
                    rhs = true;
                    break;
                }
            }
            t.iff(lhs, rhs, || {
                Witness::ideal(
                    ideal,
                    "nil clean versus nil clean corners of a complete set",
                )
            });
        }
    }
    Ok(())
}

fn lift_mod_nil(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in ctx.family() {
        let ring = inst.ring();
        let ideals = inst.ideals()?;
        for nil in ideals {
            if !is_nil_ideal(nil) {
                t.skip_n(ideals.len());
                continue;
            }
            let (q, pi) = inst.quotient_by(nil)?;
            let Structure::Quotient { reps, .. } = q.structure() else {
                return Err(Error::InternalInvariantViolation(
                    "quotient without cosets".into(),
                ));
            };
            for i1 in ideals {
                if !nil.is_subset(i1) {
                    t.skip();
                    continue;
                }
                let image = image_ideal(pi, i1)?;
                let lhs = is_nil_clean_ideal(i1);
                let rhs = is_nil_clean_ideal(&image);
                t.iff(lhs, rhs, || {
                    Witness::ideal(
                        i1,
                        format!("nil clean versus nil clean modulo {:?}", nil.to_vec()),
                    )
                });
                if !rhs {
                    continue;
                }
                // Lift the idempotent part of each image and recover a decomposition.
                for x in i1.iter() {
                    let Some(d) = decomposition_within_ideal(&image, pi.apply(x))
                        .into_iter()
                        .next()
                    else {
                        t.fail(
                            Witness::ideal(i1, "image has no decomposition inside I1/I")
                                .with_element(x),
                        );
                        break;
                    };
                    let e0 = reps[d.idempotent] as usize;
                    let e = lift_idempotent_mod_nil(nil, e0)?;
                    let ok = ring.is_idempotent(e)
                        && i1.contains(e)
                        && nil.contains(ring.sub_ix(e, e0))
                        && ring.is_nilpotent(ring.sub_ix(x, e));
                    if !ok {
                        t.fail(
                            Witness::ideal(i1, "lifted idempotent gives no decomposition")
                                .with_element(x),
                        );
                        break;
                    }
                }
            }
        }
    }
    Ok(())
}

fn hom_image(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in ctx.family() {
        let ideals = inst.ideals()?;
        for ideal in ideals {
            let hyp = is_nil_clean_ideal(ideal);
            for (k, kernel) in ideals.iter().enumerate() {
                if kernel.is_whole() {
                    t.skip();
                    continue;
                }
                implies_with(t, hyp, || {
                    let (_, pi) = inst.quotient(k)?;
                    let image = image_ideal(pi, ideal)?;
                    Ok((!is_nil_clean_ideal(&image)).then(|| {
                        Witness::ideal(
                            ideal,
                            format!("image modulo {:?} is not nil clean", kernel.to_vec()),
                        )
                    }))
                })?;
            }
        }
    }
    Ok(())
}

fn fin_prod(ctx: &Context, t: &mut Tally) -> Result<()> {
    let cap = ctx.config().ideal_cap;
    for p in ctx.products()? {
        let ring = p.inst.ring();
        let part_ideals = p
            .parts
            .iter()
            .map(|r| all_ideals(r, cap))
            .collect::<Result<Vec<_>>>()?;
        let mut choice = vec![0usize; p.parts.len()];
        loop {
            let factors: Vec<&Ideal> = choice
                .iter()
                .zip(&part_ideals)
                .map(|(&k, l)| &l[k])
                .collect();
            let product = set_ideal(
                ring,
                block_set(ring, |c| {
                    c.iter().zip(&factors).all(|(&x, f)| f.contains(x))
                }),
            )?;
            let lhs = is_nil_clean_ideal(&product);
            let rhs = factors.iter().all(|f| is_nil_clean_ideal(f));
            t.iff(lhs, rhs, || {
                Witness::ideal(&product, "product ideal versus its factors")
            });
            // Next tuple in mixed-radix order.
            let mut k = choice.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < part_ideals[k].len() {
                    break;
                }
                choice[k] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    Ok(())
}

fn nilindex_growth(ctx: &Context, t: &mut Tally) -> Result<()> {
    for n in 1..=ctx.config().nil_index_sweep {
        let ring = make_zmod(1usize << n)?;
        let two = 2 % ring.order();
        let index = ring.nilpotency_index(two);
        t.implies(true, || {
            (index != Some(n)).then(|| {
                Witness::ring(&ring, format!("index of 2 is {index:?}, expected {n}"))
                    .with_element(two)
            })
        });
    }
    Ok(())
}

/// Positions of the diagonal entries in the row-major upper layout.
fn diagonal_positions(size: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(size);
    let mut pos = 0;
    for i in 0..size {
        out.push(pos);
        pos += size - i;
    }
    out
}

fn d211(ctx: &Context, t: &mut Tally) -> Result<()> {
    for tri in ctx.triangulars()? {
        let base = ctx.family()[tri.base].ring();
        let diag = diagonal_positions(tri.size);
        for x in tri.ring.elements() {
            let c = tri.ring.components(x).expect("triangular ring");
            let lhs = tri.ring.is_nilpotent(x);
            let rhs = diag.iter().all(|&p| base.is_nilpotent(c[p]));
            t.iff(lhs, rhs, || {
                Witness::ring(&tri.ring, "nilpotent versus nilpotent diagonal").with_element(x)
            });
            if tri.ring.is_idempotent(x) && !diag.iter().all(|&p| base.is_idempotent(c[p])) {
                t.fail(
                    Witness::ring(&tri.ring, "idempotent with a non idempotent diagonal entry")
                        .with_element(x),
                );
            }
        }
    }
    Ok(())
}

fn tt1(ctx: &Context, t: &mut Tally) -> Result<()> {
    for tri in ctx.triangulars()? {
        let inst = &ctx.family()[tri.base];
        for ideal in inst.ideals()? {
            let lifted = set_ideal(
                &tri.ring,
                block_set(&tri.ring, |c| c.iter().all(|&x| ideal.contains(x))),
            )?;
            let lhs = is_nil_clean_ideal(ideal);
            let rhs = is_nil_clean_ideal(&lifted);
            t.iff(lhs, rhs, || {
                Witness::ideal(
                    &lifted,
                    format!("T_{}(I) versus I = {:?}", tri.size, ideal.to_vec()),
                )
            });
        }
    }
    Ok(())
}

fn idealization_params(ring: &FiniteRing) -> Option<(usize, usize)> {
    match ring.structure() {
        Structure::Idealization {
            ring_modulus,
            module_modulus,
        } => Some((*ring_modulus, *module_modulus)),
        _ => None,
    }
}

fn rm(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in ctx.family() {
        let ring = inst.ring();
        let Some((n, m)) = idealization_params(ring) else {
            continue;
        };
        let z = make_zmod(n)?;
        for x in ring.elements() {
            let c = ring.components(x).expect("idealization");
            let (r, u) = (c[0], c[1]);
            // (r,u)^k = (r^k, k r^(k-1) u).
            for k in 1..=8u64 {
                let p = ring.components(ring.pow_ix(x, k)).expect("idealization");
                let second = (k as usize % m) * (z.pow_ix(r, k - 1) % m) % m * u % m;
                if p[0] != z.pow_ix(r, k) || p[1] != second {
                    t.fail(
                        Witness::ring(ring, format!("power formula fails for k = {k}"))
                            .with_element(x),
                    );
                }
            }
            t.iff(ring.is_nilpotent(x), z.is_nilpotent(r), || {
                Witness::ring(ring, "nilpotent versus nilpotent first coordinate").with_element(x)
            });
            if ring.is_idempotent(x) != (z.is_idempotent(r) && u == 0) {
                t.fail(Witness::ring(ring, "idempotent criterion fails").with_element(x));
            }
        }
    }
    Ok(())
}

fn rm1(ctx: &Context, t: &mut Tally) -> Result<()> {
    let mut not_ideal = 0usize;
    for inst in ctx.family() {
        let ring = inst.ring();
        let Some((n, m)) = idealization_params(ring) else {
            continue;
        };
        let z = make_zmod(n)?;
        for ideal in all_ideals(&z, ctx.config().ideal_cap)? {
            for sub in cyclic_subgroups(m) {
                let members = block_set(ring, |c| ideal.contains(c[0]) && sub[c[1]]);
                let Ok(block) = set_ideal(ring, members) else {
                    // I(N) is an ideal only when I M lies in N.
                    not_ideal += 1;
                    t.skip();
                    continue;
                };
                let lhs = is_nil_clean_ideal(&ideal);
                let rhs = is_nil_clean_ideal(&block);
                t.iff(lhs, rhs, || {
                    Witness::ideal(&block, format!("I(N) versus I = {:?}", ideal.to_vec()))
                });
            }
        }
    }
    if not_ideal > 0 {
        t.note(format!(
            "{not_ideal} pairs (I, N) with I M not inside N give a non ideal I(N) and were not counted"
        ));
    }
    Ok(())
}

fn morita_params(ring: &FiniteRing) -> Option<(usize, usize, usize)> {
    match ring.structure() {
        Structure::MoritaZero { a, b, g } => Some((*a, *b, *g)),
        _ => None,
    }
}

/// The four block projections of a subset of a Morita context ring.
struct Blocks {
    a1: Vec<bool>,
    m1: Vec<bool>,
    n1: Vec<bool>,
    b1: Vec<bool>,
}

impl Blocks {
    fn of(ring: &FiniteRing, set: &Ideal, (a, b, g): (usize, usize, usize)) -> Blocks {
        let mut out = Blocks {
            a1: vec![false; a],
            m1: vec![false; g],
            n1: vec![false; g],
            b1: vec![false; b],
        };
        for x in set.iter() {
            let c = ring.components(x).expect("Morita ring");
            out.a1[c[0]] = true;
            out.m1[c[1]] = true;
            out.n1[c[2]] = true;
            out.b1[c[3]] = true;
        }
        out
    }

    fn members(&self, ring: &FiniteRing) -> Vec<usize> {
        block_set(ring, |c| {
            self.a1[c[0]] && self.m1[c[1]] && self.n1[c[2]] && self.b1[c[3]]
        })
    }

    /// The module conditions; the pairing conditions are void since both
    /// pairings vanish.
    fn conditions(&self, g: usize) -> bool {
        let a1 = members_of(&self.a1);
        let b1 = members_of(&self.b1);
        let closed = |set: &[usize], target: &[bool]| {
            set.iter().all(|&s| (0..g).all(|y| target[(s % g) * y % g]))
        };
        // A1 M, M B1 inside M1; N A1, B1 N inside N1.
        closed(&a1, &self.m1)
            && closed(&b1, &self.m1)
            && closed(&a1, &self.n1)
            && closed(&b1, &self.n1)
    }
}

fn morita_proj(ctx: &Context, t: &mut Tally) -> Result<()> {
    let cap = ctx.config().ideal_cap;
    for inst in ctx.family() {
        let ring = inst.ring();
        let Some((a, b, g)) = morita_params(ring) else {
            continue;
        };
        let za = make_zmod(a)?;
        let zb = make_zmod(b)?;
        // Every ideal is the block set of its projections.
        for ideal in inst.ideals()? {
            let blocks = Blocks::of(ring, ideal, (a, b, g));
            t.implies(true, || {
                let mut members = blocks.members(ring);
                members.sort_unstable();
                if members != ideal.to_vec() {
                    return Some(Witness::ideal(
                        ideal,
                        "ideal is not the block set of its projections",
                    ));
                }
                let blocks_ok = set_ideal(&za, members_of(&blocks.a1)).is_ok()
                    && set_ideal(&zb, members_of(&blocks.b1)).is_ok()
                    && cyclic_subgroups(g).contains(&blocks.m1)
                    && cyclic_subgroups(g).contains(&blocks.n1)
                    && blocks.conditions(g);
                (!blocks_ok)
                    .then(|| Witness::ideal(ideal, "projections violate the block conditions"))
            });
        }
        // Block tuples: ideal iff the conditions hold.
        let a_ideals = all_ideals(&za, cap)?;
        let b_ideals = all_ideals(&zb, cap)?;
        let subs = cyclic_subgroups(g);
        for ia in &a_ideals {
            for ib in &b_ideals {
                for m1 in &subs {
                    for n1 in &subs {
                        let blocks = Blocks {
                            a1: (0..a).map(|x| ia.contains(x)).collect(),
                            m1: m1.clone(),
                            n1: n1.clone(),
                            b1: (0..b).map(|x| ib.contains(x)).collect(),
                        };
                        let members = blocks.members(ring);
                        let is_ideal = set_ideal(ring, members.iter().copied()).is_ok();
                        t.iff(blocks.conditions(g), is_ideal, || Witness {
                            ring: ring.label().to_string(),
                            ideal: Some(members.clone()),
                            element: None,
                            reason: "block conditions versus ideal".into(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Diagonal block projections as ideals of `Z_a` and `Z_b`.
fn diagonal_blocks(
    ring: &FiniteRing,
    ideal: &Ideal,
    za: &Arc<FiniteRing>,
    zb: &Arc<FiniteRing>,
    params: (usize, usize, usize),
) -> Result<(Ideal, Ideal)> {
    let blocks = Blocks::of(ring, ideal, params);
    Ok((
        set_ideal(za, members_of(&blocks.a1))?,
        set_ideal(zb, members_of(&blocks.b1))?,
    ))
}

const BLOCK_NOTE: &str = "the lower right diagonal block is read as B1, the projection to B";

fn morita_corner(ctx: &Context, t: &mut Tally) -> Result<()> {
    for inst in ctx.family() {
        let ring = inst.ring();
        let Some(params) = morita_params(ring) else {
            continue;
        };
        let za = make_zmod(params.0)?;
        let zb = make_zmod(params.1)?;
        for ideal in inst.ideals()? {
            implies_with(t, is_strongly_nil_clean_ideal(ideal), || {
                let (a1, b1) = diagonal_blocks(ring, ideal, &za, &zb, params)?;
                Ok(
                    (!is_strongly_nil_clean_ideal(&a1) || !is_strongly_nil_clean_ideal(&b1)).then(
                        || Witness::ideal(ideal, "a diagonal block is not strongly nil clean"),
                    ),
                )
            })?;
        }
    }
    t.note(BLOCK_NOTE);
    Ok(())
}

fn morita_zero_iff(ctx: &Context, t: &mut Tally) -> Result<()> {
    let mut plain = Tally::default();
    let mut strong = Tally::default();
    for inst in ctx.family() {
        let ring = inst.ring();
        let Some(params) = morita_params(ring) else {
            continue;
        };
        let za = make_zmod(params.0)?;
        let zb = make_zmod(params.1)?;
        for ideal in inst.ideals()? {
            let (a1, b1) = diagonal_blocks(ring, ideal, &za, &zb, params)?;
            plain.iff(
                is_nil_clean_ideal(ideal),
                is_nil_clean_ideal(&a1) && is_nil_clean_ideal(&b1),
                || Witness::ideal(ideal, "nil clean versus nil clean diagonal blocks"),
            );
            strong.iff(
                is_strongly_nil_clean_ideal(ideal),
                is_strongly_nil_clean_ideal(&a1) && is_strongly_nil_clean_ideal(&b1),
                || {
                    Witness::ideal(
                        ideal,
                        "strongly nil clean versus strongly nil clean diagonal blocks",
                    )
                },
            );
        }
    }
    t.absorb(plain, "plain");
    t.absorb(strong, "strong");
    t.note(BLOCK_NOTE);
    Ok(())
}

fn tri_cor(ctx: &Context, t: &mut Tally) -> Result<()> {
    for tri in ctx.triangulars()? {
        if tri.size != 2 {
            continue;
        }
        let ideals = ctx.family()[tri.base].ideals()?;
        for i in ideals {
            for j in ideals {
                let block = set_ideal(
                    &tri.ring,
                    block_set(&tri.ring, |c| i.contains(c[0]) && j.contains(c[2])),
                )?;
                let lhs = is_nil_clean_ideal(&block);
                let rhs = is_nil_clean_ideal(i) && is_nil_clean_ideal(j);
                t.iff(lhs, rhs, || {
                    Witness::ideal(
                        &block,
                        format!(
                            "[[I, R], [0, J]] with I = {:?}, J = {:?}",
                            i.to_vec(),
                            j.to_vec()
                        ),
                    )
                });
            }
        }
    }
    Ok(())
}
