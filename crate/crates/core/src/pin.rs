//! Sym~(n) inside Pin⁺(n).
//!
//! Sym~(n) is the group of versors `x ∈ C₊(n)` whose twisted adjoint sends
//! every basis vector `eᵢ` to some `e_{σ(i)}` with coefficient exactly `+1`.
//! The projection `δ(x) = σ` is a surjection onto the symmetric group with
//! kernel `{1, −1}`. Generators are `tᵢ = (eᵢ − e_{i+1})/√2` and `ω = −1`.

use std::collections::{HashSet, VecDeque};
use std::fmt;


use thiserror::Error;

use crate::clifford::{binom2, Blade, CliffordError, Multivector, Parity};
use crate::report::Check;
use crate::scalar::ExactScalar;

/// Largest `n` accepted by [`enumerate_group`].
pub const ENUMERATION_CAP: usize = 7;
/// Largest `k` accepted by [`lemma_a_check`].
pub const LEMMA_A_CAP: usize = 7;
/// Largest `n` accepted by [`extension_analysis`].
pub const EXTENSION_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PinError {
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error("generator index {index} out of range 1..={max}")]
    GeneratorOutOfRange { index: usize, max: usize },
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("argument must be at least {min}, got {value}")]
    TooSmall { value: usize, min: usize },
    #[error("element is not in Sym~(n)")]
    NotMember,
    #[error("expected an even integer, got {0}")]
    NotEven(i64),
}

/// A permutation of `{1..n}`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// From 1-based images `σ(1), …, σ(n)`; `None` if not a bijection.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return None;
            }
            seen[i - 1] = true;
            out.push(i - 1);
        }
        Some(Self { images: out })
    }

    /// The transposition `(i j)`, 1-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles of length ≥ 2, 1-based, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// `+1` for even permutations, `−1` for odd ones.
    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of `{1..n}` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A versor of homogeneous parity with `reversal(x)·x = 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PinElement<S> {
    mv: Multivector<S>,
    parity: Parity,
}

impl<S: ExactScalar + fmt::Display> PinElement<S> {
    pub fn new(mv: Multivector<S>) -> Result<Self, PinError> {
        if !mv.is_versor() {
            return Err(CliffordError::NotVersor.into());
        }
        let parity = mv.parity().expect("versors are homogeneous");
        Ok(Self { mv, parity })
    }

    pub fn one(dim: usize) -> Result<Self, PinError> {
        Ok(Self { mv: Multivector::one(dim)?, parity: Parity::Even })
    }

    pub fn multivector(&self) -> &Multivector<S> {
        &self.mv
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn dim(&self) -> usize {
        self.mv.dim()
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PinError> {
        let mv = self.mv.checked_mul(&other.mv)?;
        let parity = if self.parity == other.parity { Parity::Even } else { Parity::Odd };
        Ok(Self { mv, parity })
    }

    /// Inverse of a versor is its reversal.
    pub fn inverse(&self) -> Self {
        Self { mv: self.mv.reversal(), parity: self.parity }
    }

    pub fn neg(&self) -> Self {
        Self { mv: self.mv.neg(), parity: self.parity }
    }
}

impl<S: ExactScalar + fmt::Display> fmt::Debug for PinElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mv)
    }
}

/// Returns `δ(x)` if the twisted adjoint of `x` permutes the basis vectors
/// with coefficient `+1`, and `None` otherwise.
pub fn membership<S: ExactScalar + fmt::Display>(x: &PinElement<S>) -> Option<Permutation> {
    let n = x.dim();
    let mut images = Vec::with_capacity(n);
    for i in 1..=n {
        let ei = Multivector::basis(n, i).ok()?;
        let img = x.mv.twisted_adjoint(&ei).ok()?;
        let mut terms = img.terms();
        let (blade, coeff) = terms.next()?;
        if terms.next().is_some() || blade.grade() != 1 || !coeff.is_one() {
            return None;
        }
        images.push(blade.0.trailing_zeros() as usize + 1);
    }
    Permutation::from_images(&images)
}

/// An element of Sym~(n) together with its permutation `δ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymTrackElement<S> {
    pin: PinElement<S>,
    delta: Permutation,
}

impl<S: ExactScalar + fmt::Display> SymTrackElement<S> {
    /// Validates membership and caches `δ`.
    pub fn new(pin: PinElement<S>) -> Result<Self, PinError> {
        let delta = membership(&pin).ok_or(PinError::NotMember)?;
        Ok(Self { pin, delta })
    }

    pub fn identity(n: usize) -> Result<Self, PinError> {
        Ok(Self { pin: PinElement::one(n)?, delta: Permutation::identity(n) })
    }

    pub fn pin(&self) -> &PinElement<S> {
        &self.pin
    }

    pub fn multivector(&self) -> &Multivector<S> {
        &self.pin.mv
    }

    pub fn delta(&self) -> &Permutation {
        &self.delta
    }

    pub fn dim(&self) -> usize {
        self.pin.dim()
    }

    /// `ε = sign ∘ δ`.
    pub fn epsilon(&self) -> i64 {
        self.delta.sign()
    }

    /// Product; `δ(xy) = δ(x) ∘ δ(y)`.
    pub fn mul(&self, other: &Self) -> Result<Self, PinError> {
        Ok(Self { pin: self.pin.mul(&other.pin)?, delta: self.delta.compose(&other.delta) })
    }

    pub fn inverse(&self) -> Self {
        Self { pin: self.pin.inverse(), delta: self.delta.inverse() }
    }

    /// `ω·x = −x`.
    pub fn neg(&self) -> Self {
        Self { pin: self.pin.neg(), delta: self.delta.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.pin.mv.as_scalar().is_some_and(|s| s.is_one())
    }

    /// True for the central element `−1`.
    pub fn is_omega(&self) -> bool {
        self.pin.mv.as_scalar().is_some_and(|s| (-s).is_one())
    }

    /// Integer-valued `ρ` check: `det ρ(x)`.
    pub fn rho_det(&self) -> Result<S, PinError> {
        Ok(self.pin.mv.rho_matrix()?.det())
    }
}

impl<S: ExactScalar + fmt::Display> fmt::Debug for SymTrackElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ↦ {}", self.pin.mv, self.delta)
    }
}

impl<S: ExactScalar + fmt::Display> fmt::Display for SymTrackElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pin.mv)
    }
}

/// The lift `(eᵢ − eⱼ)/√2` of the transposition `(i j)`.
pub fn transposition_lift<S: ExactScalar + fmt::Display>(
    i: usize,
    j: usize,
    n: usize,
) -> Result<SymTrackElement<S>, PinError> {
    let v = Multivector::basis(n, i)?.checked_sub(&Multivector::basis(n, j)?)?;
    let mv = v.scale(&S::frac_1_sqrt2());
    let pin = PinElement { mv, parity: Parity::Odd };
    Ok(SymTrackElement { pin, delta: Permutation::transposition(n, i, j) })
}

/// The generator `tᵢ = (eᵢ − e_{i+1})/√2`, `1 ≤ i ≤ n−1`.
pub fn gen_t<S: ExactScalar + fmt::Display>(
    i: usize,
    n: usize,
) -> Result<SymTrackElement<S>, PinError> {
    if i == 0 || i + 1 > n {
        return Err(PinError::GeneratorOutOfRange { index: i, max: n.saturating_sub(1) });
    }
    transposition_lift(i, i + 1, n)
}

/// The central element `ω = −1`.
pub fn omega<S: ExactScalar + fmt::Display>(n: usize) -> Result<SymTrackElement<S>, PinError> {
    Ok(SymTrackElement::identity(n)?.neg())
}

/// Factors `(eᵢ − e_{i+k})/√2`, `i = 1..k`, of the block swap lift.
fn hat_tau_factors<S: ExactScalar + fmt::Display>(
    k: usize,
) -> Result<Vec<SymTrackElement<S>>, PinError> {
    (1..=k).map(|i| transposition_lift(i, i + k, 2 * k)).collect()
}

/// `τ̂ₖ ∈ Sym~(2k)`: the ascending product of `(eᵢ − e_{i+k})/√2`, a lift of
/// the permutation exchanging the two blocks of `k` letters.
pub fn hat_tau<S: ExactScalar + fmt::Display>(k: usize) -> Result<SymTrackElement<S>, PinError> {
    if k < 1 {
        return Err(PinError::TooSmall { value: k, min: 1 });
    }
    let mut acc = SymTrackElement::identity(2 * k)?;
    for f in hat_tau_factors(k)? {
        acc = acc.mul(&f)?;
    }
    Ok(acc)
}

/// `τ̂ₖ²`, computed by multiplying `τ̂ₖ` by its factors one at a time.
///
/// Avoids the quadratic blowup of squaring a `2^k`-term multivector, so it
/// reaches dimensions beyond [`LEMMA_A_CAP`].
pub fn hat_tau_square<S: ExactScalar + fmt::Display>(
    k: usize,
) -> Result<SymTrackElement<S>, PinError> {
    let factors = hat_tau_factors::<S>(k)?;
    let mut acc = hat_tau(k)?;
    for f in &factors {
        acc = acc.mul(f)?;
    }
    Ok(acc)
}

/// A letter of a word in the generators `t₁..t_{n−1}, ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    T(usize),
    Omega,
}

/// Left-to-right product of `(letter, inverse?)` pairs; `[]` is `1`.
pub fn eval_word<S: ExactScalar + fmt::Display>(
    word: &[(Letter, bool)],
    n: usize,
) -> Result<SymTrackElement<S>, PinError> {
    let mut acc = SymTrackElement::identity(n)?;
    for &(letter, inverse) in word {
        let g = match letter {
            Letter::T(i) => gen_t(i, n)?,
            Letter::Omega => omega(n)?,
        };
        let g = if inverse { g.inverse() } else { g };
        acc = acc.mul(&g)?;
    }
    Ok(acc)
}

/// BFS closure of `{1}` under right multiplication by `t₁..t_{n−1}, ω`,
/// sorted canonically (blade support, then coefficients).
pub fn enumerate_group<S: ExactScalar + fmt::Display>(
    n: usize,
) -> Result<Vec<SymTrackElement<S>>, PinError> {
    if n > ENUMERATION_CAP {
        return Err(PinError::CapExceeded { what: "n", value: n, cap: ENUMERATION_CAP });
    }
    if n == 0 {
        return Err(PinError::TooSmall { value: n, min: 1 });
    }
    let mut gens = vec![omega(n)?];
    for i in 1..n {
        gens.push(gen_t(i, n)?);
    }
    let start = SymTrackElement::identity(n)?;
    let mut seen: HashSet<Multivector<S>> = HashSet::new();
    seen.insert(start.multivector().clone());
    let mut queue = VecDeque::from([start.clone()]);
    let mut out = vec![start];
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.mul(g)?;
            if seen.insert(y.multivector().clone()) {
                queue.push_back(y.clone());
                out.push(y);
            }
        }
    }
    out.sort_by(|a, b| canonical_key(a).cmp(&canonical_key(b)));
    Ok(out)
}

fn canonical_key<S: ExactScalar>(x: &SymTrackElement<S>) -> (Vec<Blade>, Vec<S>) {
    let terms: Vec<(Blade, S)> = x.pin.mv.terms().map(|(b, c)| (*b, c.clone())).collect();
    (terms.iter().map(|t| t.0).collect(), terms.into_iter().map(|t| t.1).collect())
}

/// Evaluates the five relation families of the presentation of Sym~(n) in
/// the Clifford model, one check per relation instance.
pub fn check_presentation<S: ExactScalar + fmt::Display>(
    n: usize,
) -> Result<Vec<Check>, PinError> {
    if n < 2 {
        return Err(PinError::TooSmall { value: n, min: 2 });
    }
    let one = SymTrackElement::<S>::identity(n)?;
    let w = omega::<S>(n)?;
    let t: Vec<SymTrackElement<S>> = (1..n).map(|i| gen_t(i, n)).collect::<Result<_, _>>()?;
    let mut checks = Vec::new();
    let mut push = |name: String, lhs: SymTrackElement<S>, rhs: &SymTrackElement<S>| {
        if lhs == *rhs {
            checks.push(Check::pass(name));
        } else {
            checks.push(Check::fail(name, format!("lhs = {lhs}, rhs = {rhs}")));
        }
    };
    for i in 0..n - 1 {
        push(format!("t{}^2 = 1", i + 1), t[i].mul(&t[i])?, &one);
    }
    for i in 0..n.saturating_sub(2) {
        let p = t[i].mul(&t[i + 1])?;
        push(format!("(t{} t{})^3 = 1", i + 1, i + 2), p.mul(&p)?.mul(&p)?, &one);
    }
    push("w^2 = 1".to_string(), w.mul(&w)?, &one);
    for i in 0..n - 1 {
        push(format!("t{} w = w t{}", i + 1, i + 1), t[i].mul(&w)?, &w.mul(&t[i])?);
    }
    for i in 0..n - 1 {
        for j in i + 2..n - 1 {
            let lhs = t[i].mul(&t[j])?;
            let rhs = w.mul(&t[j])?.mul(&t[i])?;
            push(format!("t{} t{} = w t{} t{}", i + 1, j + 1, j + 1, i + 1), lhs, &rhs);
        }
    }
    Ok(checks)
}

/// Outcome of `τ̂ₖ² = ω^{binom(k,2)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaA<S> {
    pub k: usize,
    pub exponent: i64,
    /// The scalar `τ̂ₖ²`, if the square is a scalar at all.
    pub square: Option<S>,
    pub holds: bool,
}

impl<S: ExactScalar + fmt::Display> LemmaA<S> {
    /// `omega` exponent read off the computed square: 0 for `+1`, 1 for `−1`.
    pub fn observed_exponent(&self) -> Option<i64> {
        let s = self.square.as_ref()?;
        if s.is_one() {
            Some(0)
        } else if (-s.clone()).is_one() {
            Some(1)
        } else {
            None
        }
    }
}

/// Squares `τ̂ₖ` directly in C₊(2k) and compares with `(−1)^{binom(k,2)}`.
pub fn lemma_a_check<S: ExactScalar + fmt::Display>(k: usize) -> Result<LemmaA<S>, PinError> {
    if k > LEMMA_A_CAP {
        return Err(PinError::CapExceeded { what: "k", value: k, cap: LEMMA_A_CAP });
    }
    let x = hat_tau::<S>(k)?;
    let sq = x.multivector().checked_mul(x.multivector())?;
    let exponent = binom2(k as i64);
    let expected = if exponent % 2 == 0 { S::one() } else { -S::one() };
    let square = sq.as_scalar();
    let holds = square.as_ref() == Some(&expected);
    Ok(LemmaA { k, exponent, square, holds })
}

/// Result of the search for a homomorphic section of `δ`.
#[derive(Debug, Clone)]
pub struct ExtensionAnalysis {
    pub n: usize,
    pub order: usize,
    /// `ker δ` is exactly `{1, −1}`.
    pub kernel_is_sign: bool,
    pub kernel_size: usize,
    pub omega_central: bool,
    /// Signs `εᵢ` with `s(σᵢ) = εᵢ tᵢ` satisfying all Coxeter relations.
    pub section: Option<Vec<i8>>,
    pub candidates: usize,
    /// For each failing sign vector, the first Coxeter relation it breaks.
    pub failures: Vec<(Vec<i8>, String)>,
}

impl ExtensionAnalysis {
    pub fn splits(&self) -> bool {
        self.section.is_some()
    }
}

/// Checks `ker δ = {1, −1}`, centrality of `−1`, and searches all `2^{n−1}`
/// sign choices `s(σᵢ) = ±tᵢ` for one satisfying the Coxeter relations of
/// the symmetric group. Every homomorphic section is of this form, so an
/// empty search proves the extension does not split.
pub fn extension_analysis<S: ExactScalar + fmt::Display>(
    n: usize,
) -> Result<ExtensionAnalysis, PinError> {
    if n > EXTENSION_CAP {
        return Err(PinError::CapExceeded { what: "n", value: n, cap: EXTENSION_CAP });
    }
    if n < 2 {
        return Err(PinError::TooSmall { value: n, min: 2 });
    }
    let group = enumerate_group::<S>(n)?;
    let w = omega::<S>(n)?;
    let kernel: Vec<&SymTrackElement<S>> =
        group.iter().filter(|x| x.delta().is_identity()).collect();
    let kernel_is_sign = kernel.len() == 2
        && kernel.iter().any(|x| x.is_identity())
        && kernel.iter().any(|x| x.is_omega());
    let mut omega_central = true;
    for x in &group {
        if x.mul(&w)? != w.mul(x)? {
            omega_central = false;
            break;
        }
    }

    let t: Vec<SymTrackElement<S>> = (1..n).map(|i| gen_t(i, n)).collect::<Result<_, _>>()?;
    let one = SymTrackElement::<S>::identity(n)?;
    let m = n - 1;
    let candidates = 1usize << m;
    let mut section = None;
    let mut failures = Vec::new();
    for mask in 0..candidates {
        let signs: Vec<i8> = (0..m).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        let s: Vec<SymTrackElement<S>> = t
            .iter()
            .zip(&signs)
            .map(|(ti, &e)| if e < 0 { ti.neg() } else { ti.clone() })
            .collect();
        match first_coxeter_failure(&s, &one)? {
            None => {
                if section.is_none() {
                    section = Some(signs);
                }
            }
            Some(rel) => failures.push((signs, rel)),
        }
    }
    Ok(ExtensionAnalysis {
        n,
        order: group.len(),
        kernel_is_sign,
        kernel_size: kernel.len(),
        omega_central,
        section,
        candidates,
        failures,
    })
}

fn first_coxeter_failure<S: ExactScalar + fmt::Display>(
    s: &[SymTrackElement<S>],
    one: &SymTrackElement<S>,
) -> Result<Option<String>, PinError> {
    let m = s.len();
    for i in 0..m {
        if s[i].mul(&s[i])? != *one {
            return Ok(Some(format!("s{}^2 != 1", i + 1)));
        }
    }
    for i in 0..m.saturating_sub(1) {
        let p = s[i].mul(&s[i + 1])?;
        if p.mul(&p)?.mul(&p)? != *one {
            return Ok(Some(format!("(s{} s{})^3 != 1", i + 1, i + 2)));
        }
    }
    for i in 0..m {
        for j in i + 2..m {
            let p = s[i].mul(&s[j])?;
            let sq = p.mul(&p)?;
            if sq != *one {
                let what = if sq.is_omega() { "w" } else { "not 1" };
                return Ok(Some(format!("(s{} s{})^2 = {what}", i + 1, j + 1)));
            }
        }
    }
    Ok(None)
}

/// The coefficient `(n + m)/2 mod 2` of the cup-one formula, for even
/// `n, m ≥ 2`.
pub fn cup_one_exponent(n: i64, m: i64) -> Result<i64, PinError> {
    for v in [n, m] {
        if v % 2 != 0 {
            return Err(PinError::NotEven(v));
        }
        if v < 2 {
            return Err(PinError::TooSmall { value: v.max(0) as usize, min: 2 });
        }
    }
    Ok((n / 2 + m / 2).rem_euclid(2))
}

/// Cup-one exponent recomputed from Clifford squares: the parities of the
/// `ω`-exponents of `τ̂ₙ²` and `τ̂ₘ²` (in dimensions `2n` and `2m`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupOneCrossCheck {
    pub n: i64,
    pub m: i64,
    pub formula: i64,
    pub omega_exponent_n: i64,
    pub omega_exponent_m: i64,
}

impl CupOneCrossCheck {
    pub fn agrees(&self) -> bool {
        (self.omega_exponent_n + self.omega_exponent_m).rem_euclid(2) == self.formula
    }
}

pub fn cup_one_cross_check<S: ExactScalar + fmt::Display>(
    n: i64,
    m: i64,
) -> Result<CupOneCrossCheck, PinError> {
    let formula = cup_one_exponent(n, m)?;
    let exp = |k: i64| -> Result<i64, PinError> {
        let sq = hat_tau_square::<S>(k as usize)?;
        if sq.is_identity() {
            Ok(0)
        } else if sq.is_omega() {
            Ok(1)
        } else {
            Err(PinError::NotMember)
        }
    };
    Ok(CupOneCrossCheck { n, m, formula, omega_exponent_n: exp(n)?, omega_exponent_m: exp(m)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::Q2;

    type E = SymTrackElement<Q2>;

    #[test]
    fn permutation_basics() {
        let p = Permutation::transposition(3, 1, 2);
        let q = Permutation::transposition(3, 2, 3);
        let pq = p.compose(&q);
        assert_eq!(pq.apply(3), 1); // q: 3→2, p: 2→1
        assert_eq!(pq.to_string(), "(1 2 3)");
        assert_eq!(pq.sign(), 1);
        assert_eq!(p.sign(), -1);
        assert!(pq.compose(&pq.inverse()).is_identity());
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(Permutation::all(4).len(), 24);
        assert!(Permutation::from_images(&[1, 1]).is_none());
    }

    #[test]
    fn gen_t_examples() {
        let t1: E = gen_t(1, 2).unwrap();
        assert_eq!(*t1.delta(), Permutation::transposition(2, 1, 2));
        assert!(t1.mul(&t1).unwrap().is_identity());
        assert!(matches!(gen_t::<Q2>(3, 3), Err(PinError::GeneratorOutOfRange { .. })));
        assert!(gen_t::<Q2>(0, 3).is_err());
    }

    #[test]
    fn generators_pass_membership() {
        for n in 2..6 {
            for i in 1..n {
                let t: E = gen_t(i, n).unwrap();
                assert_eq!(membership(t.pin()).as_ref(), Some(t.delta()));
            }
        }
    }

    #[test]
    fn omega_examples() {
        let w: E = omega(3).unwrap();
        assert!(w.mul(&w).unwrap().is_identity());
        assert!(w.delta().is_identity());
        let t2: E = gen_t(2, 3).unwrap();
        assert_eq!(w.mul(&t2).unwrap(), t2.mul(&w).unwrap());
    }

    #[test]
    fn hat_tau_examples() {
        let x: E = hat_tau(2).unwrap();
        assert_eq!(x.delta().to_string(), "(1 3)(2 4)");
        assert_eq!(membership(x.pin()).as_ref(), Some(x.delta()));
        assert!(x.mul(&x).unwrap().is_omega());
        let y: E = hat_tau(4).unwrap();
        assert!(y.mul(&y).unwrap().is_identity());
        assert!(hat_tau::<Q2>(0).is_err());
        // odd k is accepted
        let z: E = hat_tau(3).unwrap();
        assert!(z.mul(&z).unwrap().is_omega());
    }

    #[test]
    fn hat_tau_square_matches_direct_square() {
        for k in 1..=5 {
            let x: E = hat_tau(k).unwrap();
            assert_eq!(hat_tau_square::<Q2>(k).unwrap(), x.mul(&x).unwrap());
        }
    }

    #[test]
    fn membership_examples() {
        let minus_one = PinElement::new(Multivector::<Q2>::one(3).unwrap().neg()).unwrap();
        assert!(membership(&minus_one).unwrap().is_identity());
        // (1 + e1e2)/√2 is a quarter turn: e1 ↦ −e2, so not a member.
        let e1 = Multivector::<Q2>::basis(2, 1).unwrap();
        let e2 = Multivector::<Q2>::basis(2, 2).unwrap();
        let v = e1.checked_add(&e2).unwrap().scale(&Q2::frac_1_sqrt2());
        let rot = PinElement::new(e1.checked_mul(&v).unwrap()).unwrap();
        assert!(membership(&rot).is_none());
        let m = rot.multivector().rho_matrix().unwrap();
        assert_eq!(*m.get(1, 0), Q2::from_i64(-1));
        // a bare reflection e1 sends e1 to −e1
        assert!(membership(&PinElement::new(e1).unwrap()).is_none());
        // a rational reflection has non-integral matrix entries
        let r = Multivector::vector(&[Q2::from_frac(3, 5), Q2::from_frac(4, 5)]).unwrap();
        assert!(membership(&PinElement::new(r).unwrap()).is_none());
    }

    #[test]
    fn eval_word_examples() {
        let one = eval_word::<Q2>(&[(Letter::T(1), false), (Letter::T(1), false)], 4).unwrap();
        assert!(one.is_identity());
        let p = eval_word::<Q2>(&[(Letter::T(1), false), (Letter::T(3), false)], 4).unwrap();
        assert!(p.mul(&p).unwrap().is_omega());
        assert!(eval_word::<Q2>(&[], 4).unwrap().is_identity());
        let inv = eval_word::<Q2>(&[(Letter::T(1), false), (Letter::T(2), true)], 3).unwrap();
        let t1: E = gen_t(1, 3).unwrap();
        let t2: E = gen_t(2, 3).unwrap();
        assert_eq!(inv, t1.mul(&t2.inverse()).unwrap());
        assert!(eval_word::<Q2>(&[(Letter::T(4), false)], 4).is_err());
    }

    #[test]
    fn enumerate_small_groups() {
        let g2 = enumerate_group::<Q2>(2).unwrap();
        assert_eq!(g2.len(), 4);
        let names: Vec<String> = g2.iter().map(|x| x.to_string()).collect();
        assert!(names.contains(&"1".to_string()));
        assert!(names.contains(&"-1".to_string()));
        assert!(names.contains(&"1/2 sqrt2 e1 - 1/2 sqrt2 e2".to_string()));
        assert!(names.contains(&"-1/2 sqrt2 e1 + 1/2 sqrt2 e2".to_string()));
        assert_eq!(enumerate_group::<Q2>(3).unwrap().len(), 12);
        assert_eq!(enumerate_group::<Q2>(4).unwrap().len(), 48);
        assert!(enumerate_group::<Q2>(8).is_err());
    }

    #[test]
    fn enumeration_order_is_canonical() {
        let a = enumerate_group::<Q2>(3).unwrap();
        let b = enumerate_group::<Q2>(3).unwrap();
        assert_eq!(a, b);
        let keys: Vec<_> = a.iter().map(canonical_key).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(a[0].is_identity() || a[0].is_omega());
    }

    #[test]
    fn presentation_families() {
        let c2 = check_presentation::<Q2>(2).unwrap();
        assert_eq!(c2.len(), 3);
        assert!(c2.iter().all(|c| c.passed()));
        let c4 = check_presentation::<Q2>(4).unwrap();
        assert!(c4.iter().all(|c| c.passed()));
        assert!(c4.iter().any(|c| c.name == "t1 t3 = w t3 t1"));
        assert!(check_presentation::<Q2>(1).is_err());
    }

    #[test]
    fn lemma_a_small() {
        for (k, exp) in [(2, Some(1)), (3, Some(1)), (4, Some(0))] {
            let r = lemma_a_check::<Q2>(k).unwrap();
            assert!(r.holds, "k = {k}");
            assert_eq!(r.observed_exponent(), exp);
        }
        assert!(lemma_a_check::<Q2>(8).is_err());
    }

    #[test]
    fn extension_examples() {
        let a3 = extension_analysis::<Q2>(3).unwrap();
        assert!(a3.splits());
        assert_eq!(a3.section, Some(vec![1, 1]));
        let a2 = extension_analysis::<Q2>(2).unwrap();
        assert!(a2.splits());
        let a4 = extension_analysis::<Q2>(4).unwrap();
        assert!(!a4.splits());
        assert_eq!(a4.failures.len(), 8);
        assert!(a4.kernel_is_sign && a4.omega_central);
        // sign patterns with ε₁ = ε₂ = ε₃ get as far as the commuting relation
        assert!(a4
            .failures
            .iter()
            .any(|(s, rel)| s == &vec![1, 1, 1] && rel == "(s1 s3)^2 = w"));
    }

    #[test]
    fn cup_one_values() {
        assert_eq!(cup_one_exponent(2, 2).unwrap(), 0);
        assert_eq!(cup_one_exponent(2, 4).unwrap(), 1);
        assert_eq!(cup_one_exponent(4, 4).unwrap(), 0);
        assert!(cup_one_exponent(3, 4).is_err());
        assert!(cup_one_exponent(0, 4).is_err());
        assert!(cup_one_cross_check::<Q2>(2, 4).unwrap().agrees());
    }
}
