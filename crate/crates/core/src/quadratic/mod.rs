//! Square groups, quadratic pair modules, their morphisms and tracks, and
//! the natural action of the multiplicative monoid `(ℤ,·)`.
//!
//! Carriers are finitely generated abelian groups and free nil-2 groups,
//! both with canonical forms, so all equalities are decided exactly.
//! Universally quantified axioms are checked on generators plus
//! [`crate::sampling::SAMPLE_COUNT`] seeded samples with coefficients in
//! `[−2, 2]`; every axiom is multi-additive or has a multi-additive defect.

pub mod carrier;
pub mod format;
pub mod instances;
pub mod qpm;
pub mod square;
pub mod track;

use thiserror::Error;

pub use carrier::{AbGroup, Elem, GroupCarrier, Hom};
pub use instances::{
    abelian_square_group, qpm_doubling, qpm_eta, qpm_from_squad, qpm_nil, qpm_nil_convention_search,
    qpm_nil_mutations, qpm_nil_variant, z_nil_square_group, NilConvention,
};
pub use qpm::{
    crossed_module_shell, derived_identities, validate_morphism, validate_qpm, MorphismKind, Part,
    QpmMorphism, QuadraticPairModule,
};
pub use square::{
    validate_square_group, validate_square_group_morphism, z_tensor_action_check, QuadraticMap, SquareGroup,
    SquareGroupMorphism,
};
pub use track::{
    lemma_tec_check, track_nstar_naturality, track_validate, vert_compose, vert_inverse, LemmaTecReport, Track,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("torsion orders must be at least 2, got {0}")]
    BadTorsion(i64),
    #[error("malformed structure: {0}")]
    Shape(String),
    #[error(transparent)]
    Expr(#[from] crate::expr::ExprError),
    #[error("invalid JSON description: {0}")]
    Json(String),
}
