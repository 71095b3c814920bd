//! Free nilpotent class-2 groups ⟨E⟩_nil, free abelian groups ℤ[E], tensor
//! squares and reduced tensor squares.
//!
//! Group laws are written additively and the commutator is
//! `[x, y] = −x − y + x + y`, so `y + x = x + y + [y, x]`. Every element has
//! the canonical form `Σ aᵢeᵢ + Σ_{i<j} c_ij [eᵢ, eⱼ]`, the linear part in
//! generator order and the commutators central. Moving `b·eⱼ` left past
//! `a·e_k` (`j < k`) produces `−ab·[eⱼ, e_k]`, which gives
//!
//! ```text
//! (a, c) + (b, d) = (a + b, c + d − Σ_{j<k} a_k b_j [eⱼ, e_k])
//! −(a, c)         = (−a, −c − Σ_{j<k} a_j a_k [eⱼ, e_k])
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::binom2;
use crate::expr::{parse_element, ExprError, ExprTarget};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilError {
    #[error("generator sets differ: {left} vs {right} generators")]
    RankMismatch { left: usize, right: usize },
    #[error("duplicate generator name '{0}'")]
    DuplicateName(String),
    #[error("invalid generator name '{0}'")]
    InvalidName(String),
    #[error(transparent)]
    Parse(#[from] ExprError),
}

/// Ordered generator names of a pointed set; the base point is the zero
/// element and is not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointedSet {
    names: Vec<String>,
}

impl PointedSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, NilError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for n in &names {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(NilError::InvalidName(n.clone()));
            }
            if !seen.insert(n.as_str()) {
                return Err(NilError::DuplicateName(n.clone()));
            }
        }
        Ok(Self { names })
    }

    /// `e1, …, ek`.
    pub fn standard(k: usize) -> Self {
        Self { names: (1..=k).map(|i| format!("e{i}")).collect() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn generator(&self, i: usize) -> NilElement {
        NilElement::generator(self.len(), i)
    }

    pub fn parse(&self, src: &str) -> Result<NilElement, NilError> {
        Ok(parse_element(self, src)?)
    }

    pub fn show(&self, x: &NilElement) -> String {
        x.display_with(&self.names)
    }
}

impl ExprTarget for PointedSet {
    type Elem = NilElement;
    fn zero(&self) -> NilElement {
        NilElement::zero(self.len())
    }
    fn add(&self, a: &NilElement, b: &NilElement) -> NilElement {
        a + b
    }
    fn neg(&self, a: &NilElement) -> NilElement {
        -a
    }
    fn generator(&self, name: &str) -> Option<NilElement> {
        self.index(name).map(|i| NilElement::generator(self.len(), i))
    }
}

/// Element of ⟨E⟩_nil in canonical form. Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NilElement {
    rank: usize,
    linear: BTreeMap<usize, i64>,
    comm: BTreeMap<(usize, usize), i64>,
}

fn bump<K: Ord>(m: &mut BTreeMap<K, i64>, k: K, v: i64) {
    if v == 0 {
        return;
    }
    match m.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if *e.get() == 0 {
                e.remove();
            }
        }
    }
}

impl NilElement {
    pub fn zero(rank: usize) -> Self {
        Self { rank, linear: BTreeMap::new(), comm: BTreeMap::new() }
    }

    /// Panics if `i >= rank`.
    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i < rank, "generator index {i} out of range for rank {rank}");
        let mut x = Self::zero(rank);
        x.linear.insert(i, 1);
        x
    }

    /// Builds the canonical form from dense coordinates; `comm[(i, j)]`
    /// must have `i < j`.
    pub fn from_parts(rank: usize, linear: &[i64], comm: &BTreeMap<(usize, usize), i64>) -> Self {
        let mut x = Self::zero(rank);
        for (i, &a) in linear.iter().enumerate().take(rank) {
            bump(&mut x.linear, i, a);
        }
        for (&(i, j), &c) in comm {
            assert!(i < j && j < rank, "commutator index ({i},{j}) not canonical");
            bump(&mut x.comm, (i, j), c);
        }
        x
    }

    /// The central element `c·[eᵢ, eⱼ]`, any `i ≠ j`.
    pub fn basic_commutator(rank: usize, i: usize, j: usize, c: i64) -> Self {
        let mut x = Self::zero(rank);
        match i.cmp(&j) {
            std::cmp::Ordering::Less => bump(&mut x.comm, (i, j), c),
            std::cmp::Ordering::Greater => bump(&mut x.comm, (j, i), -c),
            std::cmp::Ordering::Equal => {}
        }
        x
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn linear(&self, i: usize) -> i64 {
        self.linear.get(&i).copied().unwrap_or(0)
    }

    /// Coefficient of `[eᵢ, eⱼ]`, `i < j`.
    pub fn comm(&self, i: usize, j: usize) -> i64 {
        self.comm.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn linear_terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.linear.iter().map(|(&i, &a)| (i, a))
    }

    pub fn comm_terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.comm.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_empty() && self.comm.is_empty()
    }

    pub fn is_central(&self) -> bool {
        self.linear.is_empty()
    }

    fn check_rank(&self, other: &Self) -> Result<(), NilError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(NilError::RankMismatch { left: self.rank, right: other.rank })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, NilError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (&k, &c) in &other.comm {
            bump(&mut out.comm, k, c);
        }
        for (&j, &b) in &other.linear {
            for (&k, &a) in self.linear.range(j + 1..) {
                bump(&mut out.comm, (j, k), -a * b);
            }
        }
        for (&i, &b) in &other.linear {
            bump(&mut out.linear, i, b);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, NilError> {
        self.checked_add(&other.inverse())
    }

    pub fn inverse(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (&i, &a) in &self.linear {
            bump(&mut out.linear, i, -a);
        }
        for (&k, &c) in &self.comm {
            bump(&mut out.comm, k, -c);
        }
        for (&j, &a) in &self.linear {
            for (&k, &b) in self.linear.range(j + 1..) {
                bump(&mut out.comm, (j, k), -a * b);
            }
        }
        out
    }

    /// `[x, y] = −x − y + x + y`.
    pub fn commutator(&self, other: &Self) -> Result<Self, NilError> {
        self.check_rank(other)?;
        // Bilinear in the abelianizations: Σ xᵢ yⱼ [eᵢ, eⱼ].
        let mut out = Self::zero(self.rank);
        for (&i, &a) in &self.linear {
            for (&j, &b) in &other.linear {
                if i < j {
                    bump(&mut out.comm, (i, j), a * b);
                } else if i > j {
                    bump(&mut out.comm, (j, i), -a * b);
                }
            }
        }
        Ok(out)
    }

    /// `n·x`: `x` added `n` times, or `−x` added `−n` times.
    pub fn times(&self, n: i64) -> Self {
        // n·(a, c) = (na, nc − binom2(n)·Σ_{j<k} a_j a_k) by the product rule
        let mut out = Self::zero(self.rank);
        for (&i, &a) in &self.linear {
            bump(&mut out.linear, i, n * a);
        }
        for (&k, &c) in &self.comm {
            bump(&mut out.comm, k, n * c);
        }
        let b = binom2(n);
        for (&j, &a) in &self.linear {
            for (&k, &c) in self.linear.range(j + 1..) {
                bump(&mut out.comm, (j, k), -b * a * c);
            }
        }
        out
    }

    /// Image in ℤ[E].
    pub fn abelianize(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.linear(i)).collect()
    }

    /// Canonical word: the linear part in generator order, then each
    /// commutator spelled out as `−eᵢ − eⱼ + eᵢ + eⱼ`. Letters are
    /// `(generator, ±1)`.
    pub fn canonical_word(&self) -> Vec<(usize, i8)> {
        let mut w = Vec::new();
        for (&i, &a) in &self.linear {
            let s = if a > 0 { 1 } else { -1 };
            w.extend(std::iter::repeat_n((i, s), a.unsigned_abs() as usize));
        }
        for (&(i, j), &c) in &self.comm {
            let (x, y) = if c > 0 { (i, j) } else { (j, i) };
            for _ in 0..c.unsigned_abs() {
                w.extend([(x, -1), (y, -1), (x, 1), (y, 1)]);
            }
        }
        w
    }

    pub fn display_with(&self, names: &[String]) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (&i, &a) in &self.linear {
            parts.push((a < 0, coeff_term(a.abs(), &names[i])));
        }
        for (&(i, j), &c) in &self.comm {
            parts.push((c < 0, coeff_term(c.abs(), &format!("[{},{}]", names[i], names[j]))));
        }
        join_signed(parts)
    }
}

fn coeff_term(abs: i64, atom: &str) -> String {
    if abs == 1 {
        atom.to_string()
    } else {
        format!("{abs}{atom}")
    }
}

/// Joins `(negative, text)` terms as `a - b + c`; empty means `0`.
pub(crate) fn join_signed(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (neg, t)) in parts.into_iter().enumerate() {
        match (k, neg) {
            (0, false) => s.push_str(&t),
            (0, true) => {
                s.push('-');
                s.push_str(&t);
            }
            (_, false) => {
                s.push_str(" + ");
                s.push_str(&t);
            }
            (_, true) => {
                s.push_str(" - ");
                s.push_str(&t);
            }
        }
    }
    s
}

impl fmt::Display for NilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&PointedSet::standard(self.rank).show(self))
    }
}

/// Panics on rank mismatch; see [`NilElement::checked_add`].
impl Add for &NilElement {
    type Output = NilElement;
    fn add(self, rhs: &NilElement) -> NilElement {
        self.checked_add(rhs).expect("nil elements over different generator sets")
    }
}

/// Panics on rank mismatch; see [`NilElement::checked_sub`].
impl Sub for &NilElement {
    type Output = NilElement;
    fn sub(self, rhs: &NilElement) -> NilElement {
        self.checked_sub(rhs).expect("nil elements over different generator sets")
    }
}

impl Neg for &NilElement {
    type Output = NilElement;
    fn neg(self) -> NilElement {
        self.inverse()
    }
}

/// Element of ⊗²ℤ[E] over the basis `eᵢ⊗eⱼ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElt {
    rank: usize,
    coeffs: BTreeMap<(usize, usize), i64>,
}

impl TensorElt {
    pub fn zero(rank: usize) -> Self {
        Self { rank, coeffs: BTreeMap::new() }
    }

    pub fn basis(rank: usize, i: usize, j: usize) -> Self {
        assert!(i < rank && j < rank);
        let mut t = Self::zero(rank);
        t.coeffs.insert((i, j), 1);
        t
    }

    /// `a ⊗ b` for vectors of ℤ[E].
    pub fn tensor(a: &[i64], b: &[i64]) -> Self {
        assert_eq!(a.len(), b.len());
        let mut t = Self::zero(a.len());
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                bump(&mut t.coeffs, (i, j), x * y);
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut t = Self::zero(self.rank);
        for (&key, &c) in &self.coeffs {
            bump(&mut t.coeffs, key, k * c);
        }
        t
    }

    /// `a⊗b ↦ b⊗a`.
    pub fn twist(&self) -> Self {
        let mut t = Self::zero(self.rank);
        for (&(i, j), &c) in &self.coeffs {
            t.coeffs.insert((j, i), c);
        }
        t
    }

    /// Dense coordinates, `eᵢ⊗eⱼ` at index `i·|E| + j`.
    pub fn to_vec(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank * self.rank];
        for (&(i, j), &c) in &self.coeffs {
            v[i * self.rank + j] = c;
        }
        v
    }

    pub fn from_vec(rank: usize, v: &[i64]) -> Self {
        assert_eq!(v.len(), rank * rank);
        let mut t = Self::zero(rank);
        for (k, &c) in v.iter().enumerate() {
            bump(&mut t.coeffs, (k / rank, k % rank), c);
        }
        t
    }
}

impl Add for &TensorElt {
    type Output = TensorElt;
    fn add(self, rhs: &TensorElt) -> TensorElt {
        assert_eq!(self.rank, rhs.rank, "tensors over different generator sets");
        let mut t = self.clone();
        for (&k, &c) in &rhs.coeffs {
            bump(&mut t.coeffs, k, c);
        }
        t
    }
}

impl Sub for &TensorElt {
    type Output = TensorElt;
    fn sub(self, rhs: &TensorElt) -> TensorElt {
        self + &rhs.scale(-1)
    }
}

impl fmt::Display for TensorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .coeffs
            .iter()
            .map(|(&(i, j), &c)| (c < 0, coeff_term(c.abs(), &format!("e{}.e{}", i + 1, j + 1))))
            .collect();
        f.write_str(&join_signed(parts))
    }
}

/// Element of the reduced tensor square `A⊗A / (a⊗b + b⊗a)` for
/// `A = ℤ[E]`: the classes of `eᵢ⊗eⱼ` (`i < j`) are free, those of `eᵢ⊗eᵢ`
/// have order 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RedTensorElt {
    rank: usize,
    offdiag: BTreeMap<(usize, usize), i64>,
    diag: BTreeSet<usize>,
}

impl RedTensorElt {
    pub fn zero(rank: usize) -> Self {
        Self { rank, offdiag: BTreeMap::new(), diag: BTreeSet::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coefficient of the class of `eᵢ⊗eⱼ`, `i < j`.
    pub fn offdiag(&self, i: usize, j: usize) -> i64 {
        self.offdiag.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Class of `eᵢ⊗eᵢ`, as 0 or 1.
    pub fn diag(&self, i: usize) -> i64 {
        i64::from(self.diag.contains(&i))
    }

    pub fn is_zero(&self) -> bool {
        self.offdiag.is_empty() && self.diag.is_empty()
    }

    /// Number of free coordinates, `|E|(|E|−1)/2`.
    pub fn free_rank(rank: usize) -> usize {
        rank * rank.saturating_sub(1) / 2
    }

    /// Coordinates: off-diagonal pairs in lexicographic order, then the
    /// diagonal classes reduced mod 2.
    pub fn to_vec(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(Self::free_rank(self.rank) + self.rank);
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                v.push(self.offdiag(i, j));
            }
        }
        v.extend((0..self.rank).map(|i| self.diag(i)));
        v
    }

    pub fn from_vec(rank: usize, v: &[i64]) -> Self {
        assert_eq!(v.len(), Self::free_rank(rank) + rank);
        let mut r = Self::zero(rank);
        let mut k = 0;
        for i in 0..rank {
            for j in i + 1..rank {
                bump(&mut r.offdiag, (i, j), v[k]);
                k += 1;
            }
        }
        for i in 0..rank {
            if v[k + i].rem_euclid(2) == 1 {
                r.diag.insert(i);
            }
        }
        r
    }
}

impl Add for &RedTensorElt {
    type Output = RedTensorElt;
    fn add(self, rhs: &RedTensorElt) -> RedTensorElt {
        assert_eq!(self.rank, rhs.rank, "tensors over different generator sets");
        let mut r = self.clone();
        for (&k, &c) in &rhs.offdiag {
            bump(&mut r.offdiag, k, c);
        }
        r.diag = r.diag.symmetric_difference(&rhs.diag).copied().collect();
        r
    }
}

impl fmt::Display for RedTensorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = self
            .offdiag
            .iter()
            .map(|(&(i, j), &c)| (c < 0, coeff_term(c.abs(), &format!("e{}:e{}", i + 1, j + 1))))
            .collect();
        parts.extend(self.diag.iter().map(|&i| (false, format!("e{}:e{}", i + 1, i + 1))));
        f.write_str(&join_signed(parts))
    }
}

/// `(s|t)_H = t̄ ⊗ s̄` for the 0-free quadratic map.
pub fn crossed_effect_0free(s: &NilElement, t: &NilElement) -> Result<TensorElt, NilError> {
    s.check_rank(t)?;
    Ok(TensorElt::tensor(&t.abelianize(), &s.abelianize()))
}

/// The quadratic map with `H(e) = 0` and `(s|t)_H = t⊗s`:
///
/// ```text
/// H(Σ aᵢeᵢ + Σ c_ij[eᵢ,eⱼ]) = Σ binom2(aᵢ) eᵢ⊗eᵢ + Σ_{i<j} aᵢaⱼ eⱼ⊗eᵢ
///                           + Σ c_ij (eⱼ⊗eᵢ − eᵢ⊗eⱼ)
/// ```
pub fn h_0free(x: &NilElement) -> TensorElt {
    let mut t = TensorElt::zero(x.rank);
    for (&i, &a) in &x.linear {
        bump(&mut t.coeffs, (i, i), binom2(a));
        for (&j, &b) in x.linear.range(i + 1..) {
            bump(&mut t.coeffs, (j, i), a * b);
        }
    }
    for (&(i, j), &c) in &x.comm {
        bump(&mut t.coeffs, (j, i), c);
        bump(&mut t.coeffs, (i, j), -c);
    }
    t
}

/// Projection `⊗²ℤ[E] → ⊗̂²ℤ[E]`.
pub fn sigma_bar(z: &TensorElt) -> RedTensorElt {
    let mut r = RedTensorElt::zero(z.rank);
    for (&(i, j), &c) in &z.coeffs {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => bump(&mut r.offdiag, (i, j), c),
            std::cmp::Ordering::Greater => bump(&mut r.offdiag, (j, i), -c),
            std::cmp::Ordering::Equal => {
                if c.rem_euclid(2) == 1 {
                    r.diag.insert(i);
                }
            }
        }
    }
    r
}
