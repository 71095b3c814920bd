//! Exact algebra around the symmetric track group Sym~(n).
//!
//! The crate covers three layers:
//!
//! * [`clifford`] and [`pin`]: the positive Clifford algebra C₊(n) over
//!   ℚ(√2) and the subgroup of Pin⁺(n) whose twisted adjoint permutes the
//!   basis vectors. That subgroup is Sym~(n), a central extension of the
//!   symmetric group by ℤ/2.
//! * [`presentation`]: finite presentations, relator checks and Todd–Coxeter
//!   coset enumeration, used as an independent order oracle.
//! * [`nilgroup`], [`quadratic`] and [`actions`]: free nilpotent class-2
//!   groups, square groups, quadratic pair modules with their validators,
//!   crossed modules, sign groups and sign-group actions.
//!
//! Clifford arithmetic is generic over [`scalar::Scalar`]; the aliases below
//! fix the exact coefficient field used everywhere else.

pub mod actions;
pub mod clifford;
pub mod expr;
pub mod nilgroup;
pub mod pin;
pub mod presentation;
pub mod quadratic;
pub mod report;
pub mod sampling;
pub mod scalar;

use num_bigint::BigInt;

/// ℚ(√2) with arbitrary-precision rationals.
pub type Q2 = scalar::SqrtTwoRational<BigInt>;

/// ℚ(√2) over `i64` rationals. Faster, and adequate for group elements of
/// moderate dimension, whose coefficients are `±2^{-k/2}`.
pub type Q2Small = scalar::SqrtTwoRational<i64>;

/// Exact element of C₊(n).
pub type Multivector = clifford::Multivector<Q2>;

/// Floating-point element of C₊(n).
pub type FloatMultivector = clifford::Multivector<f64>;

/// Element of Sym~(n) with exact coefficients.
pub type SymTrackElement = pin::SymTrackElement<Q2>;

pub use clifford::{binom2, Blade, CliffordError, Matrix, Parity};
pub use pin::{Permutation, PinElement};
pub use report::{Check, CheckStatus, Report};
