//! Quadratic pair modules, their morphisms and the `(ℤ,·)`-action.

use std::fmt;

use crate::binom2;
use crate::report::Check;
use crate::sampling::{Sampler, SAMPLE_COUNT};

use super::carrier::{AbGroup, Elem, GroupCarrier, Hom};
use super::square::{test_pairs, validate_square_group, QuadraticMap, SquareGroup};
use super::QuadError;

/// `∂: C₁ → C₀` together with `P: C_ee → C₁` and `H: C₀ → C_ee`. The two
/// square groups are `(C₀, ∂P, H)` and `(C₁, P, H∂)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPairModule {
    pub name: String,
    pub c0: GroupCarrier,
    pub c1: GroupCarrier,
    pub cee: AbGroup,
    pub bd: Hom,
    pub p: Hom,
    pub h: QuadraticMap,
}

/// Which degree an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Part {
    C0,
    C1,
    Cee,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::C0 => "C0",
            Part::C1 => "C1",
            Part::Cee => "Cee",
        })
    }
}

impl QuadraticPairModule {
    pub fn new(
        name: impl Into<String>,
        c0: GroupCarrier,
        c1: GroupCarrier,
        cee: AbGroup,
        bd: Hom,
        p: Hom,
        h: QuadraticMap,
    ) -> Result<Self, QuadError> {
        let ee = GroupCarrier::Ab(cee.clone());
        if bd.source != c1 || bd.target != c0 {
            return Err(QuadError::Shape("boundary must map C1 to C0".into()));
        }
        if p.source != ee || p.target != c1 {
            return Err(QuadError::Shape("P must map Cee to C1".into()));
        }
        if h.source != c0 || h.target != cee {
            return Err(QuadError::Shape("H must map C0 to Cee".into()));
        }
        Ok(Self { name: name.into(), c0, c1, cee, bd, p, h })
    }

    pub fn ee_carrier(&self) -> GroupCarrier {
        GroupCarrier::Ab(self.cee.clone())
    }

    pub fn carrier(&self, part: Part) -> GroupCarrier {
        match part {
            Part::C0 => self.c0.clone(),
            Part::C1 => self.c1.clone(),
            Part::Cee => self.ee_carrier(),
        }
    }

    /// `(C₀, ∂P, H)`.
    pub fn square_group_0(&self) -> SquareGroup {
        let p0 = self.bd.after(&self.p);
        SquareGroup::new(self.c0.clone(), self.cee.clone(), p0, self.h.clone())
            .expect("shapes checked at construction")
    }

    /// `(C₁, P, H∂)`.
    pub fn square_group_1(&self) -> SquareGroup {
        SquareGroup::new(self.c1.clone(), self.cee.clone(), self.p.clone(), self.h.after(&self.bd))
            .expect("shapes checked at construction")
    }

    pub fn boundary(&self, x: &Elem) -> Elem {
        self.bd.eval(x)
    }

    pub fn p_of(&self, z: &[i64]) -> Elem {
        self.p.eval(&Elem::Ab(z.to_vec()))
    }

    pub fn h_of(&self, x: &Elem) -> Vec<i64> {
        self.h.eval(x)
    }

    pub fn cross(&self, x: &Elem, y: &Elem) -> Vec<i64> {
        self.h.cross_effect(x, y)
    }

    /// `T = HP − 1` on `C_ee`, with `HP` meaning `H∂P`.
    pub fn t(&self, z: &[i64]) -> Vec<i64> {
        self.cee.sub(&self.h_of(&self.boundary(&self.p_of(z))), z)
    }

    /// `x^y = x + P(∂x|y)_H` for `x ∈ C₁`, `y ∈ C₀`.
    pub fn action_exponent(&self, x: &Elem, y: &Elem) -> Elem {
        let c = self.cross(&self.boundary(x), y);
        self.c1.add(x, &self.p_of(&c))
    }

    /// `n*` on `C₀`: `n·x + binom2(n)·∂PH(x)`.
    pub fn n_star_0(&self, n: i64, x: &Elem) -> Elem {
        let c = self.cee.scale(&self.h_of(x), binom2(n));
        self.c0.add(&self.c0.times(x, n), &self.boundary(&self.p_of(&c)))
    }

    /// `n*` on `C₁`: `n·y + binom2(n)·PH∂(y)`.
    pub fn n_star_1(&self, n: i64, y: &Elem) -> Elem {
        let c = self.cee.scale(&self.h_of(&self.boundary(y)), binom2(n));
        self.c1.add(&self.c1.times(y, n), &self.p_of(&c))
    }

    /// `n*` on `C_ee`: `n²z`.
    pub fn n_star_ee(&self, n: i64, z: &[i64]) -> Vec<i64> {
        self.cee.scale(z, n * n)
    }

    pub fn n_star(&self, part: Part, n: i64, x: &Elem) -> Elem {
        match part {
            Part::C0 => self.n_star_0(n, x),
            Part::C1 => self.n_star_1(n, x),
            Part::Cee => Elem::Ab(self.n_star_ee(n, x.as_ab())),
        }
    }

    pub fn show(&self, part: Part, x: &Elem) -> String {
        self.carrier(part).show(x)
    }

    pub fn show_ee(&self, z: &[i64]) -> String {
        self.cee.show(z)
    }

    pub fn ee_elements(&self, s: &mut Sampler, count: usize) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = (0..self.cee.num_generators()).map(|i| self.cee.generator(i)).collect();
        v.extend((0..count).map(|_| self.cee.sample(s)));
        v
    }
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> impl Iterator<Item = Check> + '_ {
    checks.into_iter().map(move |mut c| {
        c.name = format!("{prefix}: {}", c.name);
        c
    })
}

/// Both induced square groups must pass [`validate_square_group`]; in
/// addition `∂` must be a homomorphism, `T² = 1` on `C_ee`, and
/// `2·P(x|x)_H = 0` for generators and samples of `C₀`.
pub fn validate_qpm(c: &QuadraticPairModule) -> Vec<Check> {
    let mut checks = vec![c.bd.check("boundary")];
    checks.extend(prefixed("C(0)", validate_square_group(&c.square_group_0())));
    checks.extend(prefixed("C(1)", validate_square_group(&c.square_group_1())));
    let mut s = Sampler::standard();
    let ees = c.ee_elements(&mut s, SAMPLE_COUNT);
    checks.push(Check::all(
        "T^2 = 1",
        ees.iter().map(|z| {
            let tt = c.t(&c.t(z));
            (tt == *z).then_some(()).ok_or_else(|| format!("z = {}: T²z = {}", c.show_ee(z), c.show_ee(&tt)))
        }),
    ));
    let xs = c.c0.test_elements(&mut s, SAMPLE_COUNT);
    checks.push(Check::all(
        "2 P(x|x)_H = 0",
        xs.iter().map(|x| {
            let v = c.p_of(&c.cross(x, x));
            let d = c.c1.add(&v, &v);
            c.c1.is_zero(&d).then_some(()).ok_or_else(|| {
                format!("x = {}: 2P(x|x)_H = {}", c.show(Part::C0, x), c.show(Part::C1, &d))
            })
        }),
    ));
    checks
}

/// Identities that follow from the axioms, re-checked on an instance:
/// `T² = 1`, `PT = P`, `2·P(x|x)_H = 0` and `(mn)* = m*∘n*` on all three
/// degrees for `m, n ∈ {−2..3}`.
pub fn derived_identities(c: &QuadraticPairModule) -> Vec<Check> {
    let mut s = Sampler::standard();
    let ees = c.ee_elements(&mut s, SAMPLE_COUNT);
    let mut checks = vec![
        Check::all(
            "T^2 = id",
            ees.iter().map(|z| (c.t(&c.t(z)) == *z).then_some(()).ok_or_else(|| c.show_ee(z))),
        ),
        Check::all(
            "P T = P",
            ees.iter().map(|z| (c.p_of(&c.t(z)) == c.p_of(z)).then_some(()).ok_or_else(|| c.show_ee(z))),
        ),
    ];
    let xs = c.c0.test_elements(&mut s, SAMPLE_COUNT);
    checks.push(Check::all(
        "2 P((x|x)_H) = 0",
        xs.iter().map(|x| {
            let v = c.p_of(&c.cross(x, x));
            c.c1.is_zero(&c.c1.add(&v, &v)).then_some(()).ok_or_else(|| c.show(Part::C0, x))
        }),
    ));
    for part in [Part::C0, Part::C1, Part::Cee] {
        let carrier = c.carrier(part);
        let elems = carrier.test_elements(&mut s, SAMPLE_COUNT);
        let cases = (-2..=3i64).flat_map(|m| (-2..=3i64).map(move |n| (m, n)));
        checks.push(Check::all(
            format!("(mn)* = m* n* on {part}"),
            cases.flat_map(|(m, n)| {
                let carrier = &carrier;
                elems.iter().map(move |x| {
                    let l = c.n_star(part, m * n, x);
                    let r = c.n_star(part, m, &c.n_star(part, n, x));
                    (l == r).then_some(()).ok_or_else(|| {
                        format!("m = {m}, n = {n}, x = {}: {} vs {}", carrier.show(x), carrier.show(&l), carrier.show(&r))
                    })
                })
            }),
        ));
    }
    checks
}

/// The crossed module `∂: C₁ → C₀` with `x^y = x + P(∂x|y)_H`: the right
/// action laws and both crossed-module axioms, on generators and samples.
pub fn crossed_module_shell(c: &QuadraticPairModule) -> Vec<Check> {
    let mut s = Sampler::standard();
    let ones = c.c1.test_elements(&mut s, SAMPLE_COUNT);
    let zeros = c.c0.test_elements(&mut s, SAMPLE_COUNT);
    let pairs1 = test_pairs(&c.c1, &mut s, SAMPLE_COUNT);
    let (c0, c1) = (&c.c0, &c.c1);
    let mixed: Vec<(Elem, Elem)> = ones.iter().cloned().zip(zeros.iter().cloned()).collect();
    let triples: Vec<(Elem, Elem, Elem)> =
        (0..SAMPLE_COUNT).map(|_| (c1.sample(&mut s), c0.sample(&mut s), c0.sample(&mut s))).collect();
    vec![
        Check::all(
            "x^0 = x",
            ones.iter().map(|x| (c.action_exponent(x, &c0.zero()) == *x).then_some(()).ok_or_else(|| c1.show(x))),
        ),
        Check::all(
            "(x^y)^z = x^(y+z)",
            triples.iter().map(|(x, y, z)| {
                let l = c.action_exponent(&c.action_exponent(x, y), z);
                let r = c.action_exponent(x, &c0.add(y, z));
                (l == r).then_some(()).ok_or_else(|| format!("x = {}, y = {}, z = {}", c1.show(x), c0.show(y), c0.show(z)))
            }),
        ),
        Check::all(
            "(x+x')^y = x^y + x'^y",
            pairs1.iter().zip(zeros.iter().cycle()).map(|((x, x2), y)| {
                let l = c.action_exponent(&c1.add(x, x2), y);
                let r = c1.add(&c.action_exponent(x, y), &c.action_exponent(x2, y));
                (l == r).then_some(()).ok_or_else(|| format!("x = {}, x' = {}, y = {}", c1.show(x), c1.show(x2), c0.show(y)))
            }),
        ),
        Check::all(
            "(1) d(x^y) = -y + d(x) + y",
            mixed.iter().map(|(x, y)| {
                let l = c.boundary(&c.action_exponent(x, y));
                let r = c0.conjugate(&c.boundary(x), y);
                (l == r).then_some(()).ok_or_else(|| format!("x = {}, y = {}", c1.show(x), c0.show(y)))
            }),
        ),
        Check::all(
            "(2) x^d(x') = -x' + x + x'",
            pairs1.iter().map(|(x, x2)| {
                let l = c.action_exponent(x, &c.boundary(x2));
                let r = c1.conjugate(x, x2);
                (l == r).then_some(()).ok_or_else(|| format!("x = {}, x' = {}", c1.show(x), c1.show(x2)))
            }),
        ),
    ]
}

/// Homomorphisms `f₀, f₁, f_ee` between quadratic pair modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QpmMorphism {
    pub f0: Hom,
    pub f1: Hom,
    pub fee: Hom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    /// Commutes with `H`, `P` and `∂`.
    Strict,
    /// Commutes with `T`, the crossed effect, `P` and `∂`.
    Weak,
}

impl QpmMorphism {
    pub fn identity(c: &QuadraticPairModule) -> Self {
        Self { f0: Hom::identity(&c.c0), f1: Hom::identity(&c.c1), fee: Hom::identity(&c.ee_carrier()) }
    }

    /// `n*` as a self-map, given by its values on generators.
    pub fn n_star(c: &QuadraticPairModule, n: i64) -> Self {
        let build = |part: Part| {
            let carrier = c.carrier(part);
            let images = carrier.generators().iter().map(|x| c.n_star(part, n, x)).collect();
            Hom::new(carrier.clone(), carrier, images).expect("n* preserves carriers")
        };
        Self { f0: build(Part::C0), f1: build(Part::C1), fee: build(Part::Cee) }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &QpmMorphism) -> QpmMorphism {
        QpmMorphism { f0: self.f0.after(&first.f0), f1: self.f1.after(&first.f1), fee: self.fee.after(&first.fee) }
    }

    pub fn apply(&self, part: Part, x: &Elem) -> Elem {
        match part {
            Part::C0 => self.f0.eval(x),
            Part::C1 => self.f1.eval(x),
            Part::Cee => self.fee.eval(x),
        }
    }

    pub fn apply_ee(&self, z: &[i64]) -> Vec<i64> {
        self.fee.eval(&Elem::Ab(z.to_vec())).as_ab().to_vec()
    }
}

pub fn validate_morphism(
    c: &QuadraticPairModule,
    d: &QuadraticPairModule,
    f: &QpmMorphism,
    kind: MorphismKind,
) -> Vec<Check> {
    let mut s = Sampler::standard();
    let xs = c.c0.test_elements(&mut s, SAMPLE_COUNT);
    let ys = c.c1.test_elements(&mut s, SAMPLE_COUNT);
    let zs = c.ee_elements(&mut s, SAMPLE_COUNT);
    let pairs = test_pairs(&c.c0, &mut s, SAMPLE_COUNT);
    let shapes = f.f0.source == c.c0
        && f.f0.target == d.c0
        && f.f1.source == c.c1
        && f.f1.target == d.c1
        && f.fee.source == c.ee_carrier()
        && f.fee.target == d.ee_carrier();
    if !shapes {
        return vec![Check::fail("morphism shapes", "components do not match the modules")];
    }
    let mut checks = vec![f.f0.check("f0"), f.f1.check("f1"), f.fee.check("fee")];
    match kind {
        MorphismKind::Strict => checks.push(Check::all(
            "fee H = H f0",
            xs.iter().map(|x| {
                let l = f.apply_ee(&c.h_of(x));
                let r = d.h_of(&f.f0.eval(x));
                (l == r).then_some(()).ok_or_else(|| {
                    format!("x = {}: fee H(x) = {}, H f0(x) = {}", c.show(Part::C0, x), d.show_ee(&l), d.show_ee(&r))
                })
            }),
        )),
        MorphismKind::Weak => {
            checks.push(Check::all(
                "fee T = T fee",
                zs.iter().map(|z| {
                    (f.apply_ee(&c.t(z)) == d.t(&f.apply_ee(z))).then_some(()).ok_or_else(|| c.show_ee(z))
                }),
            ));
            checks.push(Check::all(
                "fee (x|y)_H = (f0 x|f0 y)_H",
                pairs.iter().map(|(x, y)| {
                    let l = f.apply_ee(&c.cross(x, y));
                    let r = d.cross(&f.f0.eval(x), &f.f0.eval(y));
                    (l == r).then_some(()).ok_or_else(|| format!("x = {}, y = {}", c.show(Part::C0, x), c.show(Part::C0, y)))
                }),
            ));
        }
    }
    checks.push(Check::all(
        "f1 P = P fee",
        zs.iter().map(|z| {
            (f.f1.eval(&c.p_of(z)) == d.p_of(&f.apply_ee(z))).then_some(()).ok_or_else(|| c.show_ee(z))
        }),
    ));
    checks.push(Check::all(
        "f0 d = d f1",
        ys.iter().map(|y| {
            (f.f0.eval(&c.boundary(y)) == d.boundary(&f.f1.eval(y)))
                .then_some(())
                .ok_or_else(|| c.show(Part::C1, y))
        }),
    ));
    checks
}

/// Checks that `n*` as built from generator values agrees with the closed
/// formulas on samples, i.e. that the formulas define homomorphisms.
pub fn n_star_is_homomorphism(c: &QuadraticPairModule, n: i64) -> Vec<Check> {
    let f = QpmMorphism::n_star(c, n);
    let mut s = Sampler::standard();
    [Part::C0, Part::C1, Part::Cee]
        .into_iter()
        .map(|part| {
            let carrier = c.carrier(part);
            let xs = carrier.test_elements(&mut s, SAMPLE_COUNT);
            Check::all(
                format!("{n}* is additive on {part}"),
                xs.iter().map(|x| {
                    (f.apply(part, x) == c.n_star(part, n, x)).then_some(()).ok_or_else(|| carrier.show(x))
                }),
            )
        })
        .collect()
}
