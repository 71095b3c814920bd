//! The positive Clifford algebra C₊(n): `eᵢ² = 1`, `eᵢeⱼ = −eⱼeᵢ`.
//!
//! Basis blades are bitmasks over `e₁..eₙ` (bit `i−1` is `eᵢ`); a
//! [`Multivector`] is a sparse map from blades to coefficients and never
//! stores a zero coefficient.

use std::collections::BTreeMap;
use std::fmt;


use thiserror::Error;

use crate::scalar::Scalar;

/// Largest supported dimension (blade masks are `u32`).
pub const MAX_DIM: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {0} exceeds the supported maximum of {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("element is not a versor")]
    NotVersor,
    #[error("argument is not a vector (grade-1 element)")]
    NotVector,
    #[error("twisted adjoint left the vector subspace")]
    NotGradeOne,
    #[error("representation matrix is not orthogonal")]
    NotOrthogonal,
}

/// A basis blade `e_{i₁}⋯e_{i_k}` with `i₁ < ⋯ < i_k`, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Blade(pub u32);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    /// Blade from 1-based indices (order and repetitions are ignored).
    pub fn from_indices(indices: &[usize]) -> Self {
        Blade(indices.iter().fold(0u32, |m, &i| m | (1 << (i - 1))))
    }

    /// The single basis vector `eᵢ` (1-based).
    pub fn vector(i: usize) -> Self {
        Blade(1 << (i - 1))
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                return None;
            }
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(j + 1)
        })
    }

    /// True if every index is at most `dim`.
    pub fn fits(self, dim: usize) -> bool {
        dim >= MAX_DIM || self.0 >> dim == 0
    }

    /// Product of two basis blades: `(sign, blade)`.
    ///
    /// Each `j ∈ B` must pass every `i ∈ A` with `i > j`; shared indices
    /// cancel with `eᵢ² = +1`.
    pub fn mul(self, other: Blade) -> (i8, Blade) {
        let mut swaps = 0u32;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            swaps += self.0.checked_shr(j + 1).unwrap_or(0).count_ones();
            b &= b - 1;
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        (sign, Blade(self.0 ^ other.0))
    }
}

/// `blade_mul` with a dimension check on both factors.
pub fn blade_product(dim: usize, a: Blade, b: Blade) -> Result<(i8, Blade), CliffordError> {
    for blade in [a, b] {
        if !blade.fits(dim) {
            let top = 32 - blade.0.leading_zeros() as usize;
            return Err(CliffordError::IndexOutOfRange { index: top, dim });
        }
    }
    Ok(a.mul(b))
}

/// `n(n−1)/2` for any integer `n`.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Grade parity of a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

/// An element of C₊(n).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multivector<S> {
    dim: usize,
    terms: BTreeMap<Blade, S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(dim: usize) -> Result<Self, CliffordError> {
        if dim > MAX_DIM {
            return Err(CliffordError::DimensionTooLarge(dim));
        }
        Ok(Self { dim, terms: BTreeMap::new() })
    }

    pub fn scalar(dim: usize, s: S) -> Result<Self, CliffordError> {
        Self::term(dim, Blade::SCALAR, s)
    }

    pub fn one(dim: usize) -> Result<Self, CliffordError> {
        Self::scalar(dim, S::one())
    }

    /// `coeff · blade`.
    pub fn term(dim: usize, blade: Blade, coeff: S) -> Result<Self, CliffordError> {
        let mut x = Self::zero(dim)?;
        if !blade.fits(dim) {
            let top = 32 - blade.0.leading_zeros() as usize;
            return Err(CliffordError::IndexOutOfRange { index: top, dim });
        }
        if !coeff.is_zero() {
            x.terms.insert(blade, coeff);
        }
        Ok(x)
    }

    /// Basis vector `eᵢ`, 1-based.
    pub fn basis(dim: usize, i: usize) -> Result<Self, CliffordError> {
        if i == 0 || i > dim {
            return Err(CliffordError::IndexOutOfRange { index: i, dim });
        }
        Self::term(dim, Blade::vector(i), S::one())
    }

    /// `Σ cᵢ eᵢ` from a coefficient slice of length `dim`.
    pub fn vector(coeffs: &[S]) -> Result<Self, CliffordError> {
        let mut x = Self::zero(coeffs.len())?;
        for (i, c) in coeffs.iter().enumerate() {
            x.add_term(Blade::vector(i + 1), c.clone());
        }
        Ok(x)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, blade: Blade) -> S {
        self.terms.get(&blade).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar value, if the element has no non-scalar blades.
    pub fn as_scalar(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&Blade::SCALAR).cloned(),
            _ => None,
        }
    }

    pub fn is_vector(&self) -> bool {
        self.terms.keys().all(|b| b.grade() == 1)
    }

    /// `Some(parity)` when all blades share one grade parity. Zero is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut odd = None;
        for b in self.terms.keys() {
            let this = b.grade() % 2 == 1;
            match odd {
                None => odd = Some(this),
                Some(o) if o != this => return None,
                _ => {}
            }
        }
        Some(if odd == Some(true) { Parity::Odd } else { Parity::Even })
    }

    /// Changes the ambient dimension; fails if a blade would not fit.
    pub fn with_dim(&self, dim: usize) -> Result<Self, CliffordError> {
        let mut x = Self::zero(dim)?;
        for (b, c) in &self.terms {
            if !b.fits(dim) {
                let top = 32 - b.0.leading_zeros() as usize;
                return Err(CliffordError::IndexOutOfRange { index: top, dim });
            }
            x.terms.insert(*b, c.clone());
        }
        Ok(x)
    }

    fn add_term(&mut self, blade: Blade, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&blade) {
            Some(old) => {
                let sum = old + coeff;
                if !sum.is_zero() {
                    self.terms.insert(blade, sum);
                }
            }
            None => {
                self.terms.insert(blade, coeff);
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<(), CliffordError> {
        if self.dim != other.dim {
            return Err(CliffordError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CliffordError> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CliffordError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| -c.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_coeffs(|_, c| c.clone() * s.clone())
    }

    /// Geometric product, the bilinear extension of [`Blade::mul`].
    pub fn checked_mul(&self, other: &Self) -> Result<Self, CliffordError> {
        self.check_dim(other)?;
        let mut out = Self { dim: self.dim, terms: BTreeMap::new() };
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (sign, c) = a.mul(*b);
                let prod = ca.clone() * cb.clone();
                out.add_term(c, if sign < 0 { -prod } else { prod });
            }
        }
        Ok(out)
    }

    /// `self^k` for `k ≥ 0`.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self { dim: self.dim, terms: BTreeMap::from([(Blade::SCALAR, S::one())]) };
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same dimension");
        }
        acc
    }

    /// Negates every blade of odd grade.
    pub fn grade_involution(&self) -> Self {
        self.map_coeffs(|b, c| if b.grade() % 2 == 1 { -c.clone() } else { c.clone() })
    }

    /// Reverses the factor order of every blade: grade `k` picks up
    /// `(−1)^{k(k−1)/2}`.
    pub fn reversal(&self) -> Self {
        self.map_coeffs(|b, c| {
            if binom2(b.grade() as i64) % 2 == 1 {
                -c.clone()
            } else {
                c.clone()
            }
        })
    }

    fn map_coeffs(&self, f: impl Fn(&Blade, &S) -> S) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(b, c)| {
                let v = f(b, c);
                (!v.is_zero()).then_some((*b, v))
            })
            .collect();
        Self { dim: self.dim, terms }
    }

    /// Versor certificate: homogeneous parity and `reversal(x)·x = 1`.
    pub fn is_versor(&self) -> bool {
        if self.parity().is_none() {
            return false;
        }
        let norm = self.reversal().checked_mul(self).expect("same dimension");
        norm.as_scalar().is_some_and(|s| s.is_one())
    }

    /// `α(x)·v·x̃` without the versor check; for floating-point shadows.
    pub fn twisted_adjoint_unchecked(&self, v: &Self) -> Result<Self, CliffordError> {
        self.grade_involution().checked_mul(v)?.checked_mul(&self.reversal())
    }

    /// The twisted adjoint action `v ↦ α(x)·v·x⁻¹` of a versor on a vector.
    ///
    /// For odd `x` this is `−x v x⁻¹`; a unit vector acts as the reflection in
    /// its orthogonal hyperplane.
    pub fn twisted_adjoint(&self, v: &Self) -> Result<Self, CliffordError> {
        self.check_dim(v)?;
        if !self.is_versor() {
            return Err(CliffordError::NotVersor);
        }
        if !v.is_vector() {
            return Err(CliffordError::NotVector);
        }
        let w = self.twisted_adjoint_unchecked(v)?;
        if !w.is_vector() {
            return Err(CliffordError::NotGradeOne);
        }
        Ok(w)
    }

    /// Matrix of the twisted adjoint: column `i` holds the image of `eᵢ`.
    /// Orthogonality is checked exactly.
    pub fn rho_matrix(&self) -> Result<Matrix<S>, CliffordError> {
        let n = self.dim;
        let mut m = Matrix::zeros(n);
        for i in 1..=n {
            let img = self.twisted_adjoint(&Self::basis(n, i)?)?;
            for j in 1..=n {
                m.rows[j - 1][i - 1] = img.coefficient(Blade::vector(j));
            }
        }
        if !m.transpose().mul(&m).is_identity() {
            return Err(CliffordError::NotOrthogonal);
        }
        Ok(m)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let mut coeff = c.to_string();
            let negative = coeff.starts_with('-');
            if k > 0 {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
                if negative {
                    coeff.remove(0);
                }
            }
            let blade: Vec<String> = b.indices().map(|i| format!("e{i}")).collect();
            if blade.is_empty() {
                write!(f, "{coeff}")?;
            } else {
                match coeff.as_str() {
                    "1" => {}
                    "-1" => write!(f, "-")?,
                    _ => write!(f, "{coeff} ")?,
                }
                write!(f, "{}", blade.join(" "))?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar + fmt::Display> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[C+({})] {}", self.dim, self)
    }
}

/// Dense square matrix over a scalar ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<S> {
    pub rows: Vec<Vec<S>>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(n: usize) -> Self {
        Self { rows: vec![vec![S::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i][i] = S::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.rows[row][col]
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.rows[j][i] = self.rows[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = S::zero();
                for k in 0..n {
                    acc = acc + self.rows[i][k].clone() * other.rows[k][j].clone();
                }
                out.rows[i][j] = acc;
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size())
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> S {
        let n = self.size();
        let mut a = self.rows.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return S::zero();
            };
            if pivot != col {
                a.swap(pivot, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det = det * p.clone();
            let inv = p.checked_inv().expect("nonzero pivot");
            for r in (col + 1)..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone() * inv.clone();
                for c in col..n {
                    let v = a[r][c].clone() - factor.clone() * a[col][c].clone();
                    a[r][c] = v;
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q2;
    use num_traits::{One, Zero};

    type Mv = Multivector<Q2>;

    fn e(dim: usize, i: usize) -> Mv {
        Mv::basis(dim, i).unwrap()
    }

    fn t(dim: usize, i: usize, j: usize) -> Mv {
        e(dim, i).checked_sub(&e(dim, j)).unwrap().scale(&Q2::frac_1_sqrt2())
    }

    #[test]
    fn binom2_values() {
        assert_eq!(binom2(4), 6);
        assert_eq!(binom2(-1), 1);
        assert_eq!(binom2(0), 0);
        assert_eq!(binom2(1), 0);
        assert_eq!(binom2(-2), 3);
    }

    #[test]
    fn blade_mul_examples() {
        let b1 = Blade::vector(1);
        let b2 = Blade::vector(2);
        assert_eq!(b1.mul(b2), (1, Blade(0b11)));
        assert_eq!(b2.mul(b1), (-1, Blade(0b11)));
        assert_eq!(b1.mul(b1), (1, Blade::SCALAR));
    }

    #[test]
    fn blade_product_rejects_out_of_range() {
        assert!(blade_product(2, Blade::vector(3), Blade::vector(1)).is_err());
        assert!(blade_product(3, Blade::vector(3), Blade::vector(1)).is_ok());
    }

    /// Reference sign: sort the concatenated index word by adjacent swaps,
    /// then cancel equal neighbours.
    fn naive_blade_mul(a: Blade, b: Blade) -> (i8, Blade) {
        let mut word: Vec<usize> = a.indices().chain(b.indices()).collect();
        let mut sign = 1i8;
        // bubble sort counting swaps of distinct letters
        for i in 0..word.len() {
            for j in 0..word.len() - 1 - i {
                if word[j] > word[j + 1] {
                    word.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        let mut out: Vec<usize> = Vec::new();
        for w in word {
            if out.last() == Some(&w) {
                out.pop();
            } else {
                out.push(w);
            }
        }
        (sign, Blade::from_indices(&out))
    }

    #[test]
    fn blade_mul_matches_sorting_oracle_n5() {
        for a in 0..32u32 {
            for b in 0..32u32 {
                assert_eq!(Blade(a).mul(Blade(b)), naive_blade_mul(Blade(a), Blade(b)));
            }
        }
    }

    #[test]
    fn blade_mul_associative_n5() {
        for a in 0..32u32 {
            for b in 0..32u32 {
                for c in 0..32u32 {
                    let (s1, ab) = Blade(a).mul(Blade(b));
                    let (s2, abc) = ab.mul(Blade(c));
                    let (s3, bc) = Blade(b).mul(Blade(c));
                    let (s4, abc2) = Blade(a).mul(bc);
                    assert_eq!(abc, abc2);
                    assert_eq!(s1 * s2, s3 * s4);
                }
            }
        }
    }

    #[test]
    fn normalized_difference_squares_to_one() {
        let x = t(2, 1, 2);
        assert_eq!(x.checked_mul(&x).unwrap(), Mv::one(2).unwrap());
    }

    #[test]
    fn unit_is_neutral() {
        let x = t(3, 1, 3).checked_add(&e(3, 2)).unwrap();
        let one = Mv::one(3).unwrap();
        assert_eq!(one.checked_mul(&x).unwrap(), x);
        assert_eq!(x.checked_mul(&one).unwrap(), x);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = e(2, 1).checked_mul(&e(3, 1)).unwrap_err();
        assert_eq!(err, CliffordError::DimensionMismatch { left: 2, right: 3 });
        assert!(Mv::basis(3, 0).is_err());
        assert!(Mv::basis(3, 4).is_err());
        assert!(Mv::zero(33).is_err());
    }

    #[test]
    fn involutions() {
        let e12 = e(3, 1).checked_mul(&e(3, 2)).unwrap();
        let e123 = e12.checked_mul(&e(3, 3)).unwrap();
        assert_eq!(e(3, 1).grade_involution(), e(3, 1).neg());
        assert_eq!(e12.grade_involution(), e12);
        let five = Mv::scalar(3, Q2::from_i64(5)).unwrap();
        assert_eq!(five.grade_involution(), five);
        assert_eq!(e12.reversal(), e(3, 2).checked_mul(&e(3, 1)).unwrap());
        assert_eq!(e(3, 1).reversal(), e(3, 1));
        assert_eq!(e123.reversal(), e123.neg());
    }

    #[test]
    fn twisted_adjoint_examples() {
        let e1 = e(2, 1);
        let e2 = e(2, 2);
        assert_eq!(e1.twisted_adjoint(&e1).unwrap(), e1.neg());
        assert_eq!(e1.twisted_adjoint(&e2).unwrap(), e2);
        assert_eq!(t(2, 1, 2).twisted_adjoint(&e1).unwrap(), e2);
    }

    #[test]
    fn twisted_adjoint_rejects_non_versors() {
        let x = e(2, 1).checked_add(&Mv::one(2).unwrap()).unwrap();
        assert_eq!(x.twisted_adjoint(&e(2, 1)).unwrap_err(), CliffordError::NotVersor);
        let two_e1 = e(2, 1).scale(&Q2::from_i64(2));
        assert_eq!(two_e1.twisted_adjoint(&e(2, 1)).unwrap_err(), CliffordError::NotVersor);
        let e12 = e(2, 1).checked_mul(&e(2, 2)).unwrap();
        assert_eq!(e(2, 1).twisted_adjoint(&e12).unwrap_err(), CliffordError::NotVector);
    }

    #[test]
    fn rho_matrix_examples() {
        assert!(Mv::one(3).unwrap().rho_matrix().unwrap().is_identity());
        assert!(Mv::one(3).unwrap().neg().rho_matrix().unwrap().is_identity());
        let m = t(2, 1, 2).rho_matrix().unwrap();
        let swap = Matrix { rows: vec![vec![Q2::zero(), Q2::one()], vec![Q2::one(), Q2::zero()]] };
        assert_eq!(m, swap);
        assert_eq!(m.det(), Q2::from_i64(-1));
    }

    #[test]
    fn reflection_in_rational_unit_vector() {
        // v = (3e1 + 4e2)/5; ρ(v) = I − 2vvᵀ.
        let v = Mv::vector(&[Q2::from_frac(3, 5), Q2::from_frac(4, 5)]).unwrap();
        let m = v.rho_matrix().unwrap();
        assert_eq!(*m.get(0, 0), Q2::from_frac(7, 25));
        assert_eq!(*m.get(1, 0), Q2::from_frac(-24, 25));
        assert_eq!(*m.get(1, 1), Q2::from_frac(-7, 25));
    }

    #[test]
    fn display_uses_expression_syntax() {
        assert_eq!(t(2, 1, 2).to_string(), "1/2 sqrt2 e1 - 1/2 sqrt2 e2");
        let e12 = e(2, 1).checked_mul(&e(2, 2)).unwrap();
        assert_eq!(e12.neg().to_string(), "-e1 e2");
        assert_eq!(Mv::zero(2).unwrap().to_string(), "0");
    }
}
