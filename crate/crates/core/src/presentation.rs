//! Finite presentations: relator checks under generator images and
//! Todd–Coxeter coset enumeration over the trivial subgroup.
//!
//! Text format:
//!
//! ```text
//! gens: w t1 t2; rels: t1^2, t2^2, (t1 t2)^3, w^2, [t1, w], t1 t3 = w t3 t1
//! ```
//!
//! A relator is a product of generator names, parenthesised groups and
//! commutators `[a, b] = a⁻¹b⁻¹ab`, each optionally raised to an integer
//! power. `lhs = rhs` stands for the relator `lhs·rhs⁻¹`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::report::Check;

/// A letter: generator index and exponent `±1`.
pub type Letter = (usize, i8);
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("n must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("relator {relator} references undeclared generator {index}")]
    UnknownGenerator { relator: usize, index: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("coset table overflow: more than {0} cosets")]
    Overflow(usize),
    #[error("max_cosets must be at least 1")]
    NoCosets,
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl FinitePresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (r, w) in relators.iter().enumerate() {
            if let Some(&(g, _)) = w.iter().find(|(g, _)| *g >= generators.len()) {
                return Err(PresentationError::UnknownGenerator { relator: r, index: g });
            }
        }
        Ok(Self { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Same group with generators reordered: `order[k]` is the old index of
    /// the new `k`-th generator.
    pub fn reorder_generators(&self, order: &[usize]) -> Self {
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let generators = order.iter().map(|&o| self.generators[o].clone()).collect();
        let relators = self
            .relators
            .iter()
            .map(|w| w.iter().map(|&(g, e)| (new_index[g], e)).collect())
            .collect();
        Self { generators, relators }
    }

    pub fn word_to_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&(g, e)| {
                if e > 0 {
                    self.generators[g].clone()
                } else {
                    format!("{}^-1", self.generators[g])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses the text format described in the module docs.
    pub fn parse(src: &str) -> Result<Self, PresentationError> {
        let (gens_part, rels_part) = split_sections(src)?;
        let generators: Vec<String> =
            gens_part.1.split_whitespace().map(|s| s.trim_end_matches(',').to_string()).collect();
        let mut relators = Vec::new();
        for (offset, piece) in split_top_level(rels_part.1) {
            if piece.trim().is_empty() {
                continue;
            }
            let base = rels_part.0 + offset;
            let mut p = WordParser { src: piece.as_bytes(), pos: 0, base, gens: &generators };
            relators.push(p.relation()?);
        }
        Self::new(generators, relators)
    }
}

impl fmt::Display for FinitePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}; rels: ", self.generators.join(" "))?;
        let rels: Vec<String> = self.relators.iter().map(|w| self.word_to_string(w)).collect();
        write!(f, "{}", rels.join(", "))
    }
}

fn split_sections(src: &str) -> Result<((usize, &str), (usize, &str)), PresentationError> {
    let err = |column: usize, m: &str| PresentationError::Parse { column, message: m.to_string() };
    let g = src.find("gens:").ok_or_else(|| err(1, "missing 'gens:'"))?;
    let r = src.find("rels:").ok_or_else(|| err(1, "missing 'rels:'"))?;
    if r < g {
        return Err(err(r + 1, "'rels:' must follow 'gens:'"));
    }
    let gens_end = src[g..r].rfind(';').map(|i| g + i).unwrap_or(r);
    let gens = &src[g + 5..gens_end];
    let rels_start = r + 5;
    let rels = src[rels_start..].trim_end().trim_end_matches(';');
    Ok(((g + 5, gens), (rels_start, rels)))
}

/// Splits on commas outside brackets, keeping each piece's byte offset.
fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
    gens: &'a [String],
}

impl WordParser<'_> {
    fn err(&self, message: impl Into<String>) -> PresentationError {
        PresentationError::Parse { column: self.base + self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn relation(&mut self) -> Result<Word, PresentationError> {
        let lhs = self.product()?;
        let w = if self.peek() == Some(b'=') {
            self.pos += 1;
            let rhs = self.product()?;
            concat(&lhs, &invert(&rhs))
        } else {
            lhs
        };
        if self.peek().is_some() {
            return Err(self.err("unexpected character"));
        }
        Ok(w)
    }

    fn product(&mut self) -> Result<Word, PresentationError> {
        let mut w = Word::new();
        while let Some(c) = self.peek() {
            if c == b')' || c == b']' || c == b',' || c == b'=' {
                break;
            }
            let f = self.factor()?;
            w = concat(&w, &f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, PresentationError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            return Ok(power(&base, k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected an integer exponent"))
    }

    fn atom(&mut self) -> Result<Word, PresentationError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.product()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.product()?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected ',' in commutator"));
                }
                self.pos += 1;
                let b = self.product()?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']'"));
                }
                self.pos += 1;
                Ok(commutator(&a, &b))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::new())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let g = self.gens.iter().position(|g| g == name).ok_or_else(|| {
                    self.pos = start;
                    self.err(format!("unknown generator '{name}'"))
                })?;
                Ok(vec![(g, 1)])
            }
            _ => Err(self.err("expected a generator, '(' or '['")),
        }
    }
}

pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Concatenation with free cancellation at the junction.
pub fn concat(a: &[Letter], b: &[Letter]) -> Word {
    let mut out: Word = a.to_vec();
    for &l in b {
        match out.last() {
            Some(&(g, e)) if g == l.0 && e == -l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

pub fn power(w: &[Letter], k: i64) -> Word {
    let base = if k < 0 { invert(w) } else { w.to_vec() };
    (0..k.unsigned_abs()).fold(Word::new(), |acc, _| concat(&acc, &base))
}

/// `[a, b] = a⁻¹ b⁻¹ a b`.
pub fn commutator(a: &[Letter], b: &[Letter]) -> Word {
    concat(&concat(&invert(a), &invert(b)), &concat(a, b))
}

/// The presentation of Sym~(n): generators `w, t1..t_{n−1}` and relators
/// `tᵢ²`, `(tᵢt_{i+1})³`, `w²`, `[tᵢ, w]`, `tᵢtⱼ(wtⱼtᵢ)⁻¹` (`j ≥ i+2`).
pub fn sym_track_presentation(n: usize) -> Result<FinitePresentation, PresentationError> {
    if n < 2 {
        return Err(PresentationError::TooSmall(n));
    }
    let mut generators = vec!["w".to_string()];
    generators.extend((1..n).map(|i| format!("t{i}")));
    let w = 0usize;
    let t = |i: usize| i; // t_i has index i
    let mut rels: Vec<Word> = Vec::new();
    for i in 1..n {
        rels.push(vec![(t(i), 1), (t(i), 1)]);
    }
    for i in 1..n - 1 {
        rels.push(power(&[(t(i), 1), (t(i + 1), 1)], 3));
    }
    rels.push(vec![(w, 1), (w, 1)]);
    for i in 1..n {
        rels.push(commutator(&[(t(i), 1)], &[(w, 1)]));
    }
    for i in 1..n {
        for j in i + 2..n {
            let lhs = [(t(i), 1), (t(j), 1)];
            let rhs = [(w, 1), (t(j), 1), (t(i), 1)];
            rels.push(concat(&lhs, &invert(&rhs)));
        }
    }
    FinitePresentation::new(generators, rels)
}

/// Group operations for evaluating relators.
pub trait GroupOps {
    type Elem: Clone;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn describe(&self, a: &Self::Elem) -> String;
}

pub fn eval_relator<G: GroupOps>(group: &G, images: &[G::Elem], w: &[Letter]) -> G::Elem {
    w.iter().fold(group.identity(), |acc, &(g, e)| {
        let x = if e > 0 { images[g].clone() } else { group.inv(&images[g]) };
        group.mul(&acc, &x)
    })
}

/// Evaluates every relator under the generator images; one check each.
pub fn verify_images<G: GroupOps>(
    pres: &FinitePresentation,
    images: &[G::Elem],
    group: &G,
) -> Result<Vec<Check>, PresentationError> {
    if images.len() != pres.generators.len() {
        return Err(PresentationError::ImageCount {
            expected: pres.generators.len(),
            got: images.len(),
        });
    }
    let one = group.identity();
    Ok(pres
        .relators
        .iter()
        .map(|w| {
            let name = format!("{} = 1", pres.word_to_string(w));
            let v = eval_relator(group, images, w);
            if group.eq(&v, &one) {
                Check::pass(name)
            } else {
                Check::fail(name, format!("evaluates to {}", group.describe(&v)))
            }
        })
        .collect())
}

/// Clifford-model group operations on Sym~(n).
pub struct SymTrackOps {
    pub n: usize,
}

impl GroupOps for SymTrackOps {
    type Elem = crate::SymTrackElement;
    fn identity(&self) -> Self::Elem {
        crate::SymTrackElement::identity(self.n).expect("n within range")
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(b).expect("same dimension")
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        a.inverse()
    }
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }
    fn describe(&self, a: &Self::Elem) -> String {
        a.to_string()
    }
}

/// Images of `w, t1, …` in the Clifford model, in presentation order.
pub fn sym_track_images(pres: &FinitePresentation, n: usize) -> Result<Vec<crate::SymTrackElement>, crate::pin::PinError> {
    pres.generators
        .iter()
        .map(|g| {
            if g == "w" {
                crate::pin::omega(n)
            } else {
                let i: usize = g.trim_start_matches('t').parse().unwrap_or(0);
                crate::pin::gen_t(i, n)
            }
        })
        .collect()
}

/// Coset enumeration result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetEnumeration {
    pub order: usize,
    /// Total cosets defined, including those later identified.
    pub cosets_defined: usize,
}

/// HLT Todd–Coxeter over the trivial subgroup.
///
/// Each live coset in turn is scanned against every relator (filling
/// undefined entries as needed), then its row is completed. Coincidences
/// are merged through a union-find with a queue.
pub fn todd_coxeter(
    pres: &FinitePresentation,
    max_cosets: usize,
) -> Result<CosetEnumeration, PresentationError> {
    if max_cosets == 0 {
        return Err(PresentationError::NoCosets);
    }
    let mut t = CosetTable::new(pres.generators.len(), max_cosets);
    let rels: Vec<Vec<usize>> = pres
        .relators
        .iter()
        .map(|w| w.iter().map(|&(g, e)| 2 * g + usize::from(e < 0)).collect())
        .collect();
    let mut a = 0;
    while a < t.rows.len() {
        if t.live(a) {
            for r in &rels {
                if r.is_empty() {
                    continue;
                }
                t.scan_and_fill(a, r)?;
                if !t.live(a) {
                    break;
                }
            }
            if t.live(a) {
                for x in 0..t.cols {
                    if t.rows[a][x].is_none() {
                        t.define(a, x)?;
                    }
                }
            }
        }
        a += 1;
    }
    let order = (0..t.rows.len()).filter(|&c| t.live(c)).count();
    Ok(CosetEnumeration { order, cosets_defined: t.rows.len() })
}

struct CosetTable {
    cols: usize,
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    max: usize,
}

impl CosetTable {
    fn new(gens: usize, max: usize) -> Self {
        let cols = 2 * gens;
        Self { cols, rows: vec![vec![None; cols]], parent: vec![0], max }
    }

    fn inv(x: usize) -> usize {
        x ^ 1
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), PresentationError> {
        if self.rows.len() >= self.max {
            return Err(PresentationError::Overflow(self.max));
        }
        let d = self.rows.len();
        self.rows.push(vec![None; self.cols]);
        self.parent.push(d);
        self.rows[c][x] = Some(d);
        self.rows[d][Self::inv(x)] = Some(c);
        Ok(())
    }

    fn scan_and_fill(&mut self, a: usize, w: &[usize]) -> Result<(), PresentationError> {
        let mut f = a;
        let mut b = a;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                match self.rows[f][w[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != a {
                    self.coincidence(f, a);
                }
                return Ok(());
            }
            while j >= i as isize {
                match self.rows[b][Self::inv(w[j as usize])] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.rows[f][w[i]] = Some(b);
                self.rows[b][Self::inv(w[i])] = Some(f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut s = c;
        while self.parent[s] != r {
            let next = self.parent[s];
            self.parent[s] = r;
            s = next;
        }
        r
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut Vec<usize>) {
        let k = self.rep(k);
        let l = self.rep(l);
        if k != l {
            let (lo, hi) = (k.min(l), k.max(l));
            self.parent[hi] = lo;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.cols {
                if let Some(d) = self.rows[g][x] {
                    self.rows[d][Self::inv(x)] = None;
                    let mu = self.rep(g);
                    let nu = self.rep(d);
                    if let Some(e) = self.rows[mu][x] {
                        self.merge(nu, e, &mut queue);
                    } else if let Some(e) = self.rows[nu][Self::inv(x)] {
                        self.merge(mu, e, &mut queue);
                    } else {
                        self.rows[mu][x] = Some(nu);
                        self.rows[nu][Self::inv(x)] = Some(mu);
                    }
                }
            }
        }
    }
}

/// Builds a [`FinitePresentation`] from generator names and a map of named
/// relators; mostly a convenience for tests.
pub fn presentation_from_strs(gens: &[&str], rels: &[&str]) -> Result<FinitePresentation, PresentationError> {
    let src = format!("gens: {}; rels: {}", gens.join(" "), rels.join(", "));
    FinitePresentation::parse(&src)
}

/// Generator name → index map.
pub fn generator_map(pres: &FinitePresentation) -> HashMap<String, usize> {
    pres.generators.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_track_presentation_shapes() {
        let p2 = sym_track_presentation(2).unwrap();
        assert_eq!(p2.generators(), ["w", "t1"]);
        assert_eq!(p2.relators().len(), 3);
        let p3 = sym_track_presentation(3).unwrap();
        assert!(p3.relators().contains(&power(&[(1, 1), (2, 1)], 3)));
        let p4 = sym_track_presentation(4).unwrap();
        assert!(p4.relators().contains(&vec![(1, 1), (3, 1), (1, -1), (3, -1), (0, -1)]));
        assert!(sym_track_presentation(1).is_err());
    }

    #[test]
    fn cyclic_group_orders() {
        let p = presentation_from_strs(&["a"], &["a^3"]).unwrap();
        assert_eq!(todd_coxeter(&p, 100).unwrap().order, 3);
        let p = presentation_from_strs(&["a", "b"], &["a^2", "b^3", "(a b)^2"]).unwrap();
        assert_eq!(todd_coxeter(&p, 100).unwrap().order, 6);
    }

    #[test]
    fn trivial_and_free_cases() {
        let p = presentation_from_strs(&["a"], &["a"]).unwrap();
        assert_eq!(todd_coxeter(&p, 10).unwrap().order, 1);
        // Z is infinite: the enumeration must overflow
        let p = presentation_from_strs(&["a", "b"], &["b"]).unwrap();
        assert_eq!(todd_coxeter(&p, 50), Err(PresentationError::Overflow(50)));
        assert_eq!(todd_coxeter(&p, 0), Err(PresentationError::NoCosets));
    }

    #[test]
    fn sym_track_orders_small() {
        assert_eq!(todd_coxeter(&sym_track_presentation(2).unwrap(), 1000).unwrap().order, 4);
        assert_eq!(todd_coxeter(&sym_track_presentation(3).unwrap(), 10_000).unwrap().order, 12);
        assert_eq!(todd_coxeter(&sym_track_presentation(4).unwrap(), 100_000).unwrap().order, 48);
    }

    #[test]
    fn parse_text_format() {
        let p = FinitePresentation::parse("gens: w t1 t2; rels: t1^2, (t1 t2)^3, w^2, [t1, w]")
            .unwrap();
        assert_eq!(p.generators(), ["w", "t1", "t2"]);
        assert_eq!(p.relators()[0], vec![(1, 1), (1, 1)]);
        assert_eq!(p.relators()[1].len(), 6);
        assert_eq!(p.relators()[3], vec![(1, -1), (0, -1), (1, 1), (0, 1)]);
        let q = FinitePresentation::parse("gens: a b; rels: a b = b a").unwrap();
        assert_eq!(q.relators()[0], vec![(0, 1), (1, 1), (0, -1), (1, -1)]);
        let r = FinitePresentation::parse("gens: a; rels: a^-2").unwrap();
        assert_eq!(r.relators()[0], vec![(0, -1), (0, -1)]);
    }

    #[test]
    fn parse_errors_carry_columns() {
        let e = FinitePresentation::parse("gens: a; rels: a b").unwrap_err();
        assert_eq!(e, PresentationError::Parse { column: 18, message: "unknown generator 'b'".into() });
        assert!(FinitePresentation::parse("rels: a").is_err());
        assert!(FinitePresentation::parse("gens: a; rels: (a").is_err());
    }

    #[test]
    fn display_round_trips() {
        let p = sym_track_presentation(4).unwrap();
        let q = FinitePresentation::parse(&p.to_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn verify_images_in_clifford_model() {
        let p = sym_track_presentation(4).unwrap();
        let ops = SymTrackOps { n: 4 };
        let images = sym_track_images(&p, 4).unwrap();
        let checks = verify_images(&p, &images, &ops).unwrap();
        assert!(checks.iter().all(|c| c.passed()));

        // t1 ↦ 1 breaks t1 t3 = w t3 t1
        let mut bad = images.clone();
        bad[1] = ops.identity();
        let checks = verify_images(&p, &bad, &ops).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(failed.iter().any(|c| c.name.starts_with("t1 t3 t1^-1 t3^-1 w^-1")));

        let empty = FinitePresentation::new(vec!["a".into()], vec![]).unwrap();
        assert!(verify_images(&empty, &images[..1], &ops).unwrap().is_empty());
        assert!(verify_images(&empty, &images, &ops).is_err());
    }
}
