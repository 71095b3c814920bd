//! Scalar types for Clifford arithmetic.
//!
//! Everything in [`crate::clifford`] is generic over [`Scalar`]. The exact
//! coefficient field used throughout the crate is ℚ(√2), provided by
//! [`SqrtTwoRational`]; `f64` implements the trait too so floating-point
//! shadows of exact computations can be evaluated with the same code.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Ring operations needed by multivectors.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// The scalar `√2`.
    fn sqrt2() -> Self;

    /// The scalar `1/√2`.
    fn frac_1_sqrt2() -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn checked_inv(&self) -> Option<Self>;
}

/// Scalars with decidable equality and a total structural order.
///
/// Group enumeration hashes and sorts elements, so it needs these.
pub trait ExactScalar: Scalar + Eq + Ord + Hash {}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }

    fn frac_1_sqrt2() -> Self {
        std::f64::consts::FRAC_1_SQRT_2
    }

    fn checked_inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
}

/// Integer backends usable inside [`SqrtTwoRational`].
pub trait RationalBase: Integer + Signed + Clone + Hash + Debug + Display + From<i32> {
    fn from_i64(v: i64) -> Self;
}

impl RationalBase for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl RationalBase for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// An exact element `a + b·√2` of ℚ(√2).
///
/// `a` and `b` are kept in lowest terms with positive denominators (the
/// `Ratio` invariant), so derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SqrtTwoRational<I: RationalBase> {
    a: Ratio<I>,
    b: Ratio<I>,
}

impl<I: RationalBase> SqrtTwoRational<I> {
    pub fn new(a: Ratio<I>, b: Ratio<I>) -> Self {
        Self { a, b }
    }

    pub fn from_rational(a: Ratio<I>) -> Self {
        Self { a, b: Ratio::zero() }
    }

    /// `p/q`; panics if `q` is zero.
    pub fn from_frac(p: i64, q: i64) -> Self {
        Self::from_rational(Ratio::new(I::from_i64(p), I::from_i64(q)))
    }

    /// Rational part `a`.
    pub fn rational_part(&self) -> &Ratio<I> {
        &self.a
    }

    /// Coefficient `b` of `√2`.
    pub fn sqrt2_part(&self) -> &Ratio<I> {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> Ratio<I> {
        let two = Ratio::from_integer(I::from(2));
        self.a.clone() * self.a.clone() - two * self.b.clone() * self.b.clone()
    }

    /// Sign of the real number `a + b√2`.
    pub fn signum(&self) -> Ordering {
        // Compare a with −b√2 by squaring when signs differ.
        let sa = ratio_sign(&self.a);
        let sb = ratio_sign(&self.b);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            (sa, _) => {
                // a and b√2 have opposite signs; |a|² vs 2|b|² decides.
                match self.norm().cmp(&Ratio::zero()) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Approximate value, for display and float cross-checks.
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.a) + std::f64::consts::SQRT_2 * ratio_to_f64(&self.b)
    }
}

fn ratio_sign<I: RationalBase>(r: &Ratio<I>) -> Ordering {
    r.cmp(&Ratio::zero())
}

fn ratio_to_f64<I: RationalBase>(r: &Ratio<I>) -> f64 {
    // Display round-trip keeps this independent of the backend.
    let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

impl<I: RationalBase> PartialOrd for SqrtTwoRational<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order on `(a, b)`; used only for canonical sorting.
impl<I: RationalBase> Ord for SqrtTwoRational<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a).then_with(|| self.b.cmp(&other.b))
    }
}

impl<I: RationalBase> Add for SqrtTwoRational<I> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl<I: RationalBase> Sub for SqrtTwoRational<I> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl<I: RationalBase> Neg for SqrtTwoRational<I> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b }
    }
}

impl<I: RationalBase> Mul for SqrtTwoRational<I> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let two = Ratio::from_integer(I::from(2));
        let a = self.a.clone() * rhs.a.clone() + two * self.b.clone() * rhs.b.clone();
        let b = self.a * rhs.b + self.b * rhs.a;
        Self { a, b }
    }
}

impl<I: RationalBase> Zero for SqrtTwoRational<I> {
    fn zero() -> Self {
        Self { a: Ratio::zero(), b: Ratio::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<I: RationalBase> One for SqrtTwoRational<I> {
    fn one() -> Self {
        Self { a: Ratio::one(), b: Ratio::zero() }
    }
}

impl<I: RationalBase> Scalar for SqrtTwoRational<I> {
    fn from_i64(v: i64) -> Self {
        Self::from_rational(Ratio::from_integer(I::from_i64(v)))
    }

    fn sqrt2() -> Self {
        Self { a: Ratio::zero(), b: Ratio::one() }
    }

    fn frac_1_sqrt2() -> Self {
        Self { a: Ratio::zero(), b: Ratio::new(I::one(), I::from(2)) }
    }

    fn checked_inv(&self) -> Option<Self> {
        // 1/(a + b√2) = (a − b√2)/(a² − 2b²); the norm vanishes only at 0.
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self { a: self.a.clone() / n.clone(), b: -self.b.clone() / n })
    }
}

impl<I: RationalBase> ExactScalar for SqrtTwoRational<I> {}

impl<I: RationalBase> Debug for SqrtTwoRational<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

/// Prints in the CLI expression syntax: `3/4`, `sqrt2`, `-1/2 sqrt2`,
/// `(1 + sqrt2)`.
impl<I: RationalBase> Display for SqrtTwoRational<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write_sqrt2_term(f, &self.b),
            (false, false) => {
                write!(f, "({} ", self.a)?;
                if self.b.is_negative() {
                    write!(f, "- ")?;
                    write_sqrt2_term(f, &-self.b.clone())?;
                } else {
                    write!(f, "+ ")?;
                    write_sqrt2_term(f, &self.b)?;
                }
                write!(f, ")")
            }
        }
    }
}

fn write_sqrt2_term<I: RationalBase>(f: &mut fmt::Formatter<'_>, b: &Ratio<I>) -> fmt::Result {
    if b.is_one() {
        write!(f, "sqrt2")
    } else if (-b.clone()).is_one() {
        write!(f, "-sqrt2")
    } else {
        write!(f, "{} sqrt2", b)
    }
}
