//! Group carriers: finitely generated abelian groups and free nil-2 groups,
//! with homomorphisms given by generator images.

use std::fmt;

use crate::expr::{parse_element, ExprTarget};
use crate::nilgroup::{NilElement, PointedSet};
use crate::report::Check;
use crate::sampling::Sampler;

use super::QuadError;

/// `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with named generators. Elements are
/// coordinate vectors, torsion coordinates reduced into `[0, dᵢ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbGroup {
    names: Vec<String>,
    rank: usize,
    torsion: Vec<i64>,
}

fn valid_name(n: &str) -> bool {
    n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && n.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | ':'))
}

impl AbGroup {
    pub fn new(rank: usize, torsion: Vec<i64>) -> Result<Self, QuadError> {
        let names = (1..=rank + torsion.len()).map(|i| format!("g{i}")).collect();
        Self::with_names(names, rank, torsion)
    }

    pub fn with_names(names: Vec<String>, rank: usize, torsion: Vec<i64>) -> Result<Self, QuadError> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(QuadError::BadTorsion(d));
        }
        if names.len() != rank + torsion.len() {
            return Err(QuadError::Shape(format!(
                "{} names for {} generators",
                names.len(),
                rank + torsion.len()
            )));
        }
        for (k, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(QuadError::Shape(format!("invalid generator name '{n}'")));
            }
            if names[..k].contains(n) {
                return Err(QuadError::Shape(format!("duplicate generator name '{n}'")));
            }
        }
        Ok(Self { names, rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, vec![]).expect("free groups are well formed")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    /// Order of generator `i`, `None` if it is free.
    pub fn order(&self, i: usize) -> Option<i64> {
        i.checked_sub(self.rank).map(|k| self.torsion[k])
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.num_generators()]
    }

    pub fn generator(&self, i: usize) -> Vec<i64> {
        let mut v = self.zero();
        v[i] = 1;
        self.reduce(v)
    }

    pub fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (k, &d) in self.torsion.iter().enumerate() {
            v[self.rank + k] = v[self.rank + k].rem_euclid(d);
        }
        v
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        self.reduce(a.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &[i64], k: i64) -> Vec<i64> {
        self.reduce(a.iter().map(|x| k * x).collect())
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        a.len() == self.num_generators()
            && self.torsion.iter().enumerate().all(|(k, &d)| (0..d).contains(&a[self.rank + k]))
    }

    pub fn show(&self, a: &[i64]) -> String {
        let parts = a
            .iter()
            .zip(&self.names)
            .filter(|(c, _)| **c != 0)
            .map(|(&c, n)| (c < 0, if c.abs() == 1 { n.clone() } else { format!("{}{n}", c.abs()) }))
            .collect();
        crate::nilgroup::join_signed(parts)
    }

    pub fn sample(&self, s: &mut Sampler) -> Vec<i64> {
        self.reduce(s.coeffs(self.num_generators()))
    }
}

impl ExprTarget for AbGroup {
    type Elem = Vec<i64>;
    fn zero(&self) -> Vec<i64> {
        AbGroup::zero(self)
    }
    fn add(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        AbGroup::add(self, a, b)
    }
    fn neg(&self, a: &Vec<i64>) -> Vec<i64> {
        AbGroup::neg(self, a)
    }
    fn generator(&self, name: &str) -> Option<Vec<i64>> {
        self.names.iter().position(|n| n == name).map(|i| AbGroup::generator(self, i))
    }
}

/// Element of a [`GroupCarrier`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Nil(NilElement),
    Ab(Vec<i64>),
}

impl Elem {
    pub fn as_ab(&self) -> &[i64] {
        match self {
            Elem::Ab(v) => v,
            Elem::Nil(_) => panic!("expected an abelian-carrier element"),
        }
    }

    pub fn as_nil(&self) -> &NilElement {
        match self {
            Elem::Nil(x) => x,
            Elem::Ab(_) => panic!("expected a nil-carrier element"),
        }
    }
}

/// A group with a canonical form: a free nil-2 group or an abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupCarrier {
    Nil(PointedSet),
    Ab(AbGroup),
}

impl GroupCarrier {
    pub fn is_abelian(&self) -> bool {
        match self {
            GroupCarrier::Nil(e) => e.len() <= 1,
            GroupCarrier::Ab(_) => true,
        }
    }

    pub fn num_generators(&self) -> usize {
        match self {
            GroupCarrier::Nil(e) => e.len(),
            GroupCarrier::Ab(a) => a.num_generators(),
        }
    }

    pub fn generator_names(&self) -> &[String] {
        match self {
            GroupCarrier::Nil(e) => e.names(),
            GroupCarrier::Ab(a) => a.names(),
        }
    }

    pub fn generator(&self, i: usize) -> Elem {
        match self {
            GroupCarrier::Nil(e) => Elem::Nil(e.generator(i)),
            GroupCarrier::Ab(a) => Elem::Ab(a.generator(i)),
        }
    }

    pub fn generators(&self) -> Vec<Elem> {
        (0..self.num_generators()).map(|i| self.generator(i)).collect()
    }

    pub fn zero(&self) -> Elem {
        match self {
            GroupCarrier::Nil(e) => Elem::Nil(NilElement::zero(e.len())),
            GroupCarrier::Ab(a) => Elem::Ab(a.zero()),
        }
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match self {
            GroupCarrier::Nil(_) => Elem::Nil(x.as_nil() + y.as_nil()),
            GroupCarrier::Ab(a) => Elem::Ab(a.add(x.as_ab(), y.as_ab())),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match self {
            GroupCarrier::Nil(_) => Elem::Nil(x.as_nil().inverse()),
            GroupCarrier::Ab(a) => Elem::Ab(a.neg(x.as_ab())),
        }
    }

    /// `x − y`, i.e. `x + (−y)`.
    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a Elem>) -> Elem {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn times(&self, x: &Elem, n: i64) -> Elem {
        match self {
            GroupCarrier::Nil(_) => Elem::Nil(x.as_nil().times(n)),
            GroupCarrier::Ab(a) => Elem::Ab(a.scale(x.as_ab(), n)),
        }
    }

    /// `[x, y] = −x − y + x + y`.
    pub fn commutator(&self, x: &Elem, y: &Elem) -> Elem {
        match self {
            GroupCarrier::Nil(_) => Elem::Nil(x.as_nil().commutator(y.as_nil()).expect("same carrier")),
            GroupCarrier::Ab(a) => Elem::Ab(a.zero()),
        }
    }

    /// `−y + x + y`.
    pub fn conjugate(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(&self.add(&self.neg(y), x), y)
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Nil(n) => n.is_zero(),
            Elem::Ab(v) => v.iter().all(|&c| c == 0),
        }
    }

    /// Coordinates of the image in the abelianization, torsion coordinates
    /// as representatives in `[0, d)`.
    pub fn abelian_coords(&self, x: &Elem) -> Vec<i64> {
        match x {
            Elem::Nil(n) => n.abelianize(),
            Elem::Ab(v) => v.clone(),
        }
    }

    /// A word for `x` in the generators, letters `(generator, ±1)`.
    pub fn word(&self, x: &Elem) -> Vec<(usize, i8)> {
        match x {
            Elem::Nil(n) => n.canonical_word(),
            Elem::Ab(v) => v
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| {
                    let s = if c > 0 { 1 } else { -1 };
                    std::iter::repeat_n((i, s), c.unsigned_abs() as usize)
                })
                .collect(),
        }
    }

    /// Words that must vanish: commutators of generators and torsion powers
    /// for abelian carriers, `[[a, b], c]` for nil carriers.
    pub fn relators(&self) -> Vec<Vec<(usize, i8)>> {
        let k = self.num_generators();
        let comm = |x: &[(usize, i8)], y: &[(usize, i8)]| {
            crate::presentation::commutator(x, y)
        };
        match self {
            GroupCarrier::Nil(_) => {
                let mut out = Vec::new();
                for a in 0..k {
                    for b in 0..k {
                        for c in 0..k {
                            out.push(comm(&comm(&[(a, 1)], &[(b, 1)]), &[(c, 1)]));
                        }
                    }
                }
                out
            }
            GroupCarrier::Ab(g) => {
                let mut out = Vec::new();
                for a in 0..k {
                    for b in a + 1..k {
                        out.push(comm(&[(a, 1)], &[(b, 1)]));
                    }
                    if let Some(d) = g.order(a) {
                        out.push(vec![(a, 1); d as usize]);
                    }
                }
                out
            }
        }
    }

    pub fn eval_word(&self, w: &[(usize, i8)]) -> Elem {
        w.iter().fold(self.zero(), |acc, &(g, s)| {
            let x = self.generator(g);
            let x = if s > 0 { x } else { self.neg(&x) };
            self.add(&acc, &x)
        })
    }

    pub fn contains(&self, x: &Elem) -> bool {
        match (self, x) {
            (GroupCarrier::Nil(e), Elem::Nil(n)) => n.rank() == e.len(),
            (GroupCarrier::Ab(a), Elem::Ab(v)) => a.contains(v),
            _ => false,
        }
    }

    /// Random element with coefficients in `[−2, 2]` (commutator
    /// coefficients included for nil carriers).
    pub fn sample(&self, s: &mut Sampler) -> Elem {
        match self {
            GroupCarrier::Nil(e) => {
                let k = e.len();
                let linear = s.coeffs(k);
                let pairs: Vec<(usize, usize)> =
                    (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
                let comm = pairs.into_iter().zip(s.coeffs(k * k.saturating_sub(1) / 2)).collect();
                Elem::Nil(NilElement::from_parts(k, &linear, &comm))
            }
            GroupCarrier::Ab(a) => Elem::Ab(a.sample(s)),
        }
    }

    /// Generators followed by `count` samples.
    pub fn test_elements(&self, s: &mut Sampler, count: usize) -> Vec<Elem> {
        let mut v = self.generators();
        v.extend((0..count).map(|_| self.sample(s)));
        v
    }

    pub fn show(&self, x: &Elem) -> String {
        match (self, x) {
            (GroupCarrier::Nil(e), Elem::Nil(n)) => e.show(n),
            (GroupCarrier::Ab(a), Elem::Ab(v)) => a.show(v),
            _ => format!("{x:?}"),
        }
    }

    pub fn parse(&self, src: &str) -> Result<Elem, QuadError> {
        match self {
            GroupCarrier::Nil(e) => Ok(Elem::Nil(parse_element(e, src)?)),
            GroupCarrier::Ab(a) => Ok(Elem::Ab(parse_element(a, src)?)),
        }
    }
}

impl fmt::Display for GroupCarrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupCarrier::Nil(e) => write!(f, "<{}>_nil", e.names().join(", ")),
            GroupCarrier::Ab(a) => {
                let mut parts: Vec<String> = Vec::new();
                if a.rank() > 0 {
                    parts.push(if a.rank() == 1 { "Z".into() } else { format!("Z^{}", a.rank()) });
                }
                parts.extend(a.torsion().iter().map(|d| format!("Z/{d}")));
                if parts.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", parts.join(" + "))
                }
            }
        }
    }
}

/// A homomorphism given by the images of the source generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    pub source: GroupCarrier,
    pub target: GroupCarrier,
    images: Vec<Elem>,
}

impl Hom {
    pub fn new(source: GroupCarrier, target: GroupCarrier, images: Vec<Elem>) -> Result<Self, QuadError> {
        if images.len() != source.num_generators() {
            return Err(QuadError::Shape(format!(
                "{} generator images for {} generators",
                images.len(),
                source.num_generators()
            )));
        }
        if let Some(x) = images.iter().find(|x| !target.contains(x)) {
            return Err(QuadError::Shape(format!("image {x:?} is not an element of {target}")));
        }
        Ok(Self { source, target, images })
    }

    pub fn identity(c: &GroupCarrier) -> Self {
        Self { source: c.clone(), target: c.clone(), images: c.generators() }
    }

    pub fn zero(source: &GroupCarrier, target: &GroupCarrier) -> Self {
        let images = vec![target.zero(); source.num_generators()];
        Self { source: source.clone(), target: target.clone(), images }
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        match x {
            Elem::Ab(v) => {
                // Abelian source: Σ vᵢ·image(gᵢ).
                let terms: Vec<Elem> =
                    v.iter().zip(&self.images).map(|(&c, img)| self.target.times(img, c)).collect();
                self.target.sum(&terms)
            }
            Elem::Nil(n) => {
                let t = &self.target;
                let mut acc = t.zero();
                for (i, a) in n.linear_terms() {
                    acc = t.add(&acc, &t.times(&self.images[i], a));
                }
                for ((i, j), c) in n.comm_terms() {
                    let k = t.commutator(&self.images[i], &self.images[j]);
                    acc = t.add(&acc, &t.times(&k, c));
                }
                acc
            }
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Hom) -> Hom {
        let images = first.images.iter().map(|x| self.eval(x)).collect();
        Hom { source: first.source.clone(), target: self.target.clone(), images }
    }

    /// Every relator of the source maps to zero.
    pub fn well_defined(&self) -> Result<(), String> {
        for r in self.source.relators() {
            let v = r.iter().fold(self.target.zero(), |acc, &(g, s)| {
                let x = &self.images[g];
                let x = if s > 0 { x.clone() } else { self.target.neg(x) };
                self.target.add(&acc, &x)
            });
            if !self.target.is_zero(&v) {
                let names = self.source.generator_names();
                let word: Vec<String> = r
                    .iter()
                    .map(|&(g, s)| if s > 0 { names[g].clone() } else { format!("-{}", names[g]) })
                    .collect();
                return Err(format!(
                    "relator {} maps to {}",
                    word.join(" "),
                    self.target.show(&v)
                ));
            }
        }
        Ok(())
    }

    pub fn check(&self, name: &str) -> Check {
        Check::from_result(format!("{name} is a homomorphism"), self.well_defined())
    }
}
