//! Crossed modules, the monoid-groupoid `M(∂)`, sign groups and their
//! actions on quadratic pair modules.
//!
//! Finite carriers are checked exhaustively. Quadratic pair modules follow
//! the sampling policy of [`crate::sampling`].

pub mod crossed;
pub mod group;
pub mod groupoid;
pub mod sign;

use thiserror::Error;

pub use crossed::{validate_crossed_module, CrossedModule, FiniteCrossedModule, QpmCrossedModule};
pub use group::FiniteGroup;
pub use groupoid::{monoid_groupoid_from_cm, validate_monoid_groupoid, MonoidGroupoid};
pub use sign::{
    crossed_action_from_sign_action, crossed_module_from_sign_group, lift_independence, sign_group_sym_track,
    trivial_sign_group_action, validate_crossed_action, validate_sign_action, validate_sign_group,
    CrossedModuleAction, SignActionFormula, SignGroup, SignGroupAction,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a sign group: {0}")]
    NotASignGroup(String),
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("malformed data: {0}")]
    Shape(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Pin(#[from] crate::pin::PinError),
}
