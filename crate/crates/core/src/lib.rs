//! Exact computations in finite unital rings: idempotents, nilpotents,
//! units, the Jacobson radical, ideal lattices, and clean / nil clean
//! decompositions of elements and ideals, together with a registry of
//! executable checks of the nil clean ideal theory on small rings.

pub mod classify;
pub mod cli;
pub mod constructors;
pub mod decompose;
pub mod elemset;
pub mod error;
pub mod ideals;
pub mod ring;
pub mod spec;
pub mod table;
pub mod theorems;

pub use classify::jacobson_radical;
pub use constructors::{
    make_corner, make_idealization, make_morita_zero, make_product, make_quotient,
    make_upper_triangular, make_zmod, Embedding, Projection, DEFAULT_ORDER_CAP,
};
pub use decompose::{
    clean_decompositions, decomposition_within_ideal, is_clean_ideal, is_nil_clean_ideal,
    is_nil_clean_ring, is_strongly_nil_clean_ideal, is_uniquely_nil_clean_ideal,
    is_uniquely_strongly_nil_clean_ideal, lift_idempotent, lift_idempotent_mod_nil,
    nil_clean_decompositions, strongly_filter, Decomposition, DecompositionKind, IdealProperty,
    IdempotentLift,
};
pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use ideals::{
    all_ideals, corner_ideal, ideal_generated, ideal_intersect, ideal_product, ideal_sum,
    image_ideal, is_nil_ideal, Ideal, IdealJson,
};
pub use ring::{Axiom, AxiomMode, AxiomReport, AxiomViolation, Elem, FiniteRing, Structure};
pub use spec::RingSpec;
