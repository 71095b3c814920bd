//! Tracks between morphisms of quadratic pair modules, and the
//! compatibility of tracks with the `(ℤ,·)`-action.

use crate::binom2;
use crate::report::Check;
use crate::sampling::{Sampler, SAMPLE_COUNT};

use super::carrier::{Elem, GroupCarrier, Hom};
use super::qpm::{Part, QpmMorphism, QuadraticPairModule};

/// A function `α: C₀ → D₁` determined by its values on the generators of
/// `C₀` through `α(x + y) = α(x)^{f₀(y)} + α(y)`, where `f` is the source
/// morphism of the track.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Track {
    pub values: Vec<Elem>,
}

impl Track {
    pub fn zero(c: &QuadraticPairModule, d: &QuadraticPairModule) -> Self {
        Self { values: vec![d.c1.zero(); c.c0.num_generators()] }
    }

    pub fn from_values(values: Vec<Elem>) -> Self {
        Self { values }
    }

    /// `α(x)` for `x` in the source of `f0`, via the canonical word of `x`.
    pub fn eval(&self, d: &QuadraticPairModule, f0: &Hom, x: &Elem) -> Elem {
        self.eval_word(d, f0, &f0.source.word(x))
    }

    /// `α` along an arbitrary word: `α(w + l) = α(w)^{f₀(l)} + α(l)` with
    /// `α(−e) = −(α(e)^{f₀(−e)})`.
    pub fn eval_word(&self, d: &QuadraticPairModule, f0: &Hom, w: &[(usize, i8)]) -> Elem {
        let src = &f0.source;
        let mut acc = d.c1.zero();
        for &(g, s) in w {
            let e = src.generator(g);
            let (letter, alpha) = if s > 0 {
                (e.clone(), self.values[g].clone())
            } else {
                let minus = src.neg(&e);
                let a = d.action_exponent(&self.values[g], &f0.eval(&minus));
                (minus, d.c1.neg(&a))
            };
            acc = d.c1.add(&d.action_exponent(&acc, &f0.eval(&letter)), &alpha);
        }
        acc
    }

    /// Every relator of `C₀` evaluates to zero, so the extension is well
    /// defined on the group and not just on words.
    pub fn well_defined(&self, d: &QuadraticPairModule, f0: &Hom) -> Result<(), String> {
        for r in f0.source.relators() {
            let v = self.eval_word(d, f0, &r);
            if !d.c1.is_zero(&v) {
                let names = f0.source.generator_names();
                let word: Vec<String> = r
                    .iter()
                    .map(|&(g, s)| if s > 0 { names[g].clone() } else { format!("-{}", names[g]) })
                    .collect();
                return Err(format!("alpha({}) = {} ≠ 0", word.join(" "), d.show(Part::C1, &v)));
            }
        }
        Ok(())
    }
}

/// Validates `α: f ⇒ g`: the extension is well defined, `g₀ = f₀ + ∂α` and
/// `g₁ = f₁ + α∂`.
pub fn track_validate(
    c: &QuadraticPairModule,
    d: &QuadraticPairModule,
    f: &QpmMorphism,
    g: &QpmMorphism,
    alpha: &Track,
) -> Vec<Check> {
    if alpha.values.len() != c.c0.num_generators() || !alpha.values.iter().all(|v| d.c1.contains(v)) {
        return vec![Check::fail("track shape", "one value in D1 per generator of C0 is required")];
    }
    let mut s = Sampler::standard();
    let xs = c.c0.test_elements(&mut s, SAMPLE_COUNT);
    let zs = c.c1.test_elements(&mut s, SAMPLE_COUNT);
    vec![
        Check::from_result("(1) alpha(x+y) = alpha(x)^f0(y) + alpha(y) is well defined", alpha.well_defined(d, &f.f0)),
        Check::all(
            "(2) g0 = f0 + d alpha",
            xs.iter().map(|x| {
                let l = g.f0.eval(x);
                let r = d.c0.add(&f.f0.eval(x), &d.boundary(&alpha.eval(d, &f.f0, x)));
                (l == r).then_some(()).ok_or_else(|| {
                    format!("x = {}: g0 = {}, f0 + d alpha = {}", c.show(Part::C0, x), d.show(Part::C0, &l), d.show(Part::C0, &r))
                })
            }),
        ),
        Check::all(
            "(3) g1 = f1 + alpha d",
            zs.iter().map(|z| {
                let l = g.f1.eval(z);
                let r = d.c1.add(&f.f1.eval(z), &alpha.eval(d, &f.f0, &c.boundary(z)));
                (l == r).then_some(()).ok_or_else(|| {
                    format!("z = {}: g1 = {}, f1 + alpha d = {}", c.show(Part::C1, z), d.show(Part::C1, &l), d.show(Part::C1, &r))
                })
            }),
        ),
    ]
}

/// `α: f ⇒ g` then `β: g ⇒ h` gives `x ↦ α(x) + β(x)`, a track `f ⇒ h`.
pub fn vert_compose(d: &QuadraticPairModule, alpha: &Track, beta: &Track) -> Track {
    Track { values: alpha.values.iter().zip(&beta.values).map(|(a, b)| d.c1.add(a, b)).collect() }
}

/// The inverse of `α: f ⇒ g` is `x ↦ −α(x)`, a track `g ⇒ f`.
pub fn vert_inverse(d: &QuadraticPairModule, alpha: &Track) -> Track {
    Track { values: alpha.values.iter().map(|a| d.c1.neg(a)).collect() }
}

/// `α(n*x) = n*α(x)` for every generator `x` of `C₀`, where `source` is
/// the morphism the track starts from.
pub fn track_nstar_naturality(
    c: &QuadraticPairModule,
    d: &QuadraticPairModule,
    source: &QpmMorphism,
    alpha: &Track,
    n: i64,
) -> bool {
    c.c0.generators().iter().all(|x| {
        alpha.eval(d, &source.f0, &c.n_star_0(n, x)) == d.n_star_1(n, &alpha.eval(d, &source.f0, x))
    })
}

/// Outcome of [`lemma_tec_check`]: the hypotheses are checked first and the
/// formula only when they hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaTecReport {
    pub preconditions: Vec<Check>,
    pub formula: Vec<Check>,
}

impl LemmaTecReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.preconditions.iter().all(Check::passed)
    }

    pub fn holds(&self) -> bool {
        self.hypotheses_hold() && !self.formula.is_empty() && self.formula.iter().all(Check::passed)
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.preconditions.iter().chain(&self.formula)
    }
}

/// For `C₀ = ⟨E⟩_nil`, an endomorphism `f` induced by the pointed map
/// `pointed_map` (`None` sends a generator to the base point), values of
/// `α` on `E` and an integer `m`: verifies the hypotheses
/// `α(x+y) = α(x)^{f(y)} + α(y)` and `m*x = f(x) + ∂α(x)`, then
///
/// ```text
/// α(n*x) = n*α(x) + binom2(m)·binom2(n)·P(x|x)_H
/// ```
///
/// for `n ∈ {−3..4}` on generators and seeded sums.
pub fn lemma_tec_check(
    c: &QuadraticPairModule,
    pointed_map: &[Option<usize>],
    alpha_values: &[Elem],
    m: i64,
) -> LemmaTecReport {
    let fail = |name: &str, w: String| LemmaTecReport { preconditions: vec![Check::fail(name, w)], formula: vec![] };
    let GroupCarrier::Nil(e) = &c.c0 else {
        return fail("precondition: C0 is a free nil-2 group", format!("C0 = {}", c.c0));
    };
    let k = e.len();
    if pointed_map.len() != k || pointed_map.iter().flatten().any(|&j| j >= k) {
        return fail("precondition: pointed map E -> E", format!("{pointed_map:?} on {k} generators"));
    }
    if alpha_values.len() != k || !alpha_values.iter().all(|v| c.c1.contains(v)) {
        return fail("precondition: alpha has one value in C1 per generator", format!("{} values", alpha_values.len()));
    }
    let images = pointed_map.iter().map(|j| j.map_or_else(|| c.c0.zero(), |j| c.c0.generator(j))).collect();
    let f0 = Hom::new(c.c0.clone(), c.c0.clone(), images).expect("images are generators");
    let alpha = Track::from_values(alpha_values.to_vec());
    let mut s = Sampler::standard();
    let xs = c.c0.test_elements(&mut s, SAMPLE_COUNT);
    let show0 = |x: &Elem| c.show(Part::C0, x);
    let show1 = |x: &Elem| c.show(Part::C1, x);
    let preconditions = vec![
        Check::from_result(
            "precondition: alpha(x+y) = alpha(x)^f(y) + alpha(y) is well defined",
            alpha.well_defined(c, &f0),
        ),
        Check::all(
            format!("precondition: {m}*x = f(x) + d alpha(x)"),
            xs.iter().map(|x| {
                let l = c.n_star_0(m, x);
                let r = c.c0.add(&f0.eval(x), &c.boundary(&alpha.eval(c, &f0, x)));
                (l == r).then_some(()).ok_or_else(|| {
                    format!("x = {}: {m}*x = {}, f(x) + d alpha(x) = {}", show0(x), show0(&l), show0(&r))
                })
            }),
        ),
    ];
    if !preconditions.iter().all(Check::passed) {
        return LemmaTecReport { preconditions, formula: vec![] };
    }
    let formula = (-3..=4i64)
        .map(|n| {
            Check::all(
                format!("alpha({n}*x) = {n}*alpha(x) + binom2({m}) binom2({n}) P(x|x)_H"),
                xs.iter().map(|x| {
                    let l = alpha.eval(c, &f0, &c.n_star_0(n, x));
                    let corr = c.cee.scale(&c.cross(x, x), binom2(m) * binom2(n));
                    let r = c.c1.add(&c.n_star_1(n, &alpha.eval(c, &f0, x)), &c.p_of(&corr));
                    (l == r).then_some(()).ok_or_else(|| format!("x = {}: {} vs {}", show0(x), show1(&l), show1(&r)))
                }),
            )
        })
        .collect();
    LemmaTecReport { preconditions, formula }
}
