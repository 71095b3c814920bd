//! Sign groups `{±1} ↪ G̃ ↠ G → {±1}`, their crossed modules, and sign-group
//! actions on quadratic pair modules.

use std::collections::HashMap;
use std::fmt;

use crate::binom2;
use crate::quadratic::{validate_morphism, Elem, MorphismKind, Part, QpmMorphism, QuadraticPairModule, Track};
use crate::report::Check;
use crate::sampling::{Sampler, SAMPLE_COUNT};
use crate::clifford::Multivector;
use crate::pin::SymTrackElement;
use crate::scalar::ExactScalar;

use super::crossed::FiniteCrossedModule;
use super::group::FiniteGroup;
use super::ActionError;

/// Largest `n` for which [`sign_group_sym_track`] tabulates Sym~(n).
pub const SIGN_GROUP_CAP: usize = 5;

/// `ι: {±1} → G̃` is recorded by `ω = ι(−1)`, `∂: G̃ → G` by its table of
/// images and `ε: G → {±1}` by signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignGroup {
    pub gt: FiniteGroup,
    pub g: FiniteGroup,
    pub omega: usize,
    pub bd: Vec<usize>,
    pub eps: Vec<i64>,
}

impl SignGroup {
    /// Validates the data; on failure the first failing check is returned.
    pub fn new(gt: FiniteGroup, g: FiniteGroup, omega: usize, bd: Vec<usize>, eps: Vec<i64>) -> Result<Self, ActionError> {
        let sg = Self { gt, g, omega, bd, eps };
        match validate_sign_group(&sg).into_iter().find(|c| !c.passed()) {
            Some(c) => Err(ActionError::NotASignGroup(format!("{}: {}", c.name, c.witness.unwrap_or_default()))),
            None => Ok(sg),
        }
    }

    /// `G = 1`, `G̃ = {1, ω}`.
    pub fn trivial() -> Self {
        let gt = FiniteGroup::from_table(vec!["1".into(), "omega".into()], vec![vec![0, 1], vec![1, 0]])
            .expect("Z/2 is a group");
        Self::new(gt, FiniteGroup::trivial(), 1, vec![0, 0], vec![1]).expect("the trivial sign group is valid")
    }

    /// `ε ∘ ∂` on `G̃`.
    pub fn eps_t(&self, t: usize) -> i64 {
        self.eps[self.bd[t]]
    }

    /// Elements of `G̃` over `h`.
    pub fn lifts(&self, h: usize) -> Vec<usize> {
        self.gt.elements().filter(|&t| self.bd[t] == h).collect()
    }

    /// Searches for a homomorphic section of `∂` by choosing lifts of a
    /// generating set of `G` and closing up. Returns the section's images
    /// of the chosen generators.
    pub fn section(&self) -> Option<Vec<(usize, usize)>> {
        let gens = self.g.generating_set();
        let k = gens.len();
        (0u64..1 << k).find_map(|mask| {
            let lifts: Vec<usize> = gens
                .iter()
                .enumerate()
                .map(|(i, &h)| {
                    let l = self.lifts(h)[0];
                    if mask >> i & 1 == 1 { self.gt.mul(l, self.omega) } else { l }
                })
                .collect();
            (self.gt.generated(&lifts).len() == self.g.order()).then(|| gens.iter().copied().zip(lifts).collect())
        })
    }

    pub fn splits(&self) -> bool {
        self.section().is_some()
    }
}

/// `ι` injective with central image of order 2, `∂` a surjective
/// homomorphism with kernel `{1, ω}`, `ε` a homomorphism to `{±1}`.
pub fn validate_sign_group(sg: &SignGroup) -> Vec<Check> {
    let (gt, g) = (&sg.gt, &sg.g);
    if sg.bd.len() != gt.order() || sg.eps.len() != g.order() || sg.omega >= gt.order() {
        return vec![Check::fail("sign group shape", "one image per element required")];
    }
    let signs = FiniteGroup::signs();
    let eps_idx: Vec<usize> = sg.eps.iter().map(|&e| usize::from(e != 1)).collect();
    let kernel: Vec<usize> = gt.elements().filter(|&t| sg.bd[t] == g.identity()).collect();
    let mut expected_kernel = vec![gt.identity(), sg.omega];
    expected_kernel.sort_unstable();
    vec![
        Check::from_result(
            "omega has order 2",
            (gt.element_order(sg.omega) == 2)
                .then_some(())
                .ok_or_else(|| format!("order of {} is {}", gt.name(sg.omega), gt.element_order(sg.omega))),
        ),
        Check::from_result(
            "omega is central",
            gt.is_central(sg.omega).then_some(()).ok_or_else(|| gt.name(sg.omega).to_string()),
        ),
        Check::from_result("d is a homomorphism", gt.check_homomorphism(g, &sg.bd)),
        Check::from_result(
            "d is surjective",
            g.elements().find(|h| !sg.bd.contains(h)).map_or(Ok(()), |h| Err(format!("{} not hit", g.name(h)))),
        ),
        Check::from_result(
            "kernel of d is {1, omega}",
            (kernel == expected_kernel)
                .then_some(())
                .ok_or_else(|| kernel.iter().map(|&t| gt.name(t)).collect::<Vec<_>>().join(", ")),
        ),
        Check::from_result(
            "epsilon is a homomorphism to {+1,-1}",
            if sg.eps.iter().any(|&e| e != 1 && e != -1) {
                Err("values must be +1 or -1".into())
            } else {
                g.check_homomorphism(&signs, &eps_idx)
            },
        ),
    ]
}

/// Sym~(n) from the Clifford model with its elements, in the canonical
/// order of [`crate::pin::enumerate_group`].
pub fn sym_track_table<S: ExactScalar + fmt::Display>(
    n: usize,
) -> Result<(FiniteGroup, Vec<SymTrackElement<S>>), ActionError> {
    if n > SIGN_GROUP_CAP {
        return Err(ActionError::CapExceeded { what: "n", value: n, cap: SIGN_GROUP_CAP });
    }
    let elems: Vec<SymTrackElement<S>> = crate::pin::enumerate_group(n)?;
    let key = |x: &SymTrackElement<S>| -> Multivector<S> { x.multivector().clone() };
    let index: HashMap<Multivector<S>, usize> = elems.iter().enumerate().map(|(i, x)| (key(x), i)).collect();
    let mut table = Vec::with_capacity(elems.len());
    for a in &elems {
        let row = elems
            .iter()
            .map(|b| index[&key(&a.mul(b).expect("same dimension"))])
            .collect();
        table.push(row);
    }
    let names = elems.iter().map(ToString::to_string).collect();
    Ok((FiniteGroup::from_table(names, table)?, elems))
}

/// `{±1} ↪ Sym~(n) —δ→ Sym(n) —sign→ {±1}` for `2 ≤ n ≤ 5`.
pub fn sign_group_sym_track(n: usize) -> Result<SignGroup, ActionError> {
    sign_group_sym_track_with_elements::<crate::Q2Small>(n).map(|(sg, _)| sg)
}

/// [`sign_group_sym_track`] together with the Clifford element behind
/// each index of `G̃`.
pub fn sign_group_sym_track_with_elements<S: ExactScalar + fmt::Display>(
    n: usize,
) -> Result<(SignGroup, Vec<SymTrackElement<S>>), ActionError> {
    if n < 2 {
        return Err(ActionError::Shape(format!("n = {n}: Sym~(n) is defined for n >= 2 here")));
    }
    let (gt, elems) = sym_track_table::<S>(n)?;
    let g = FiniteGroup::symmetric(n);
    let perms = crate::pin::Permutation::all(n);
    let bd = elems.iter().map(|x| perms.iter().position(|p| p == x.delta()).expect("δ lands in Sym(n)")).collect();
    let eps = perms.iter().map(crate::pin::Permutation::sign).collect();
    let omega = elems.iter().position(SymTrackElement::is_omega).expect("−1 is enumerated");
    Ok((SignGroup::new(gt, g, omega, bd, eps)?, elems))
}

/// Exponent of `ι(ε(g))` in the action of `{±1} × G` on `G̃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignActionFormula {
    /// `binom2(x·ε(h))`; satisfies both crossed-module axioms.
    Corrected,
    /// `binom2(x)`; a right action, but fails the Peiffer identity.
    Literal,
}

impl SignActionFormula {
    fn exponent(self, x: i64, eps_h: i64) -> i64 {
        match self {
            SignActionFormula::Corrected => binom2(x * eps_h),
            SignActionFormula::Literal => binom2(x),
        }
    }
}

/// `g^{(x,h)} = h̄⁻¹ g h̄ ι(ε(g)^e)` computed with a given lift `h̄` of `h`.
fn sign_action_with_lift(sg: &SignGroup, formula: SignActionFormula, g: usize, x: i64, h: usize, lift: usize) -> usize {
    let conj = sg.gt.conjugate(g, lift);
    let twist = sg.eps_t(g) == -1 && formula.exponent(x, sg.eps[h]).rem_euclid(2) == 1;
    if twist { sg.gt.mul(conj, sg.omega) } else { conj }
}

/// `∂° = (ε, ∂): G̃ → {±1} × G`; base elements are indexed
/// `s·|G| + h` with `s = 0` for `+1` and `s = 1` for `−1`.
pub fn crossed_module_from_sign_group(sg: &SignGroup, formula: SignActionFormula) -> FiniteCrossedModule {
    let base = FiniteGroup::direct_product(&FiniteGroup::signs(), &sg.g);
    let ng = sg.g.order();
    let bd = sg.gt.elements().map(|t| usize::from(sg.eps_t(t) == -1) * ng + sg.bd[t]).collect();
    let first_lift: Vec<usize> = sg.g.elements().map(|h| sg.lifts(h)[0]).collect();
    FiniteCrossedModule::new(sg.gt.clone(), base, bd, |g, n| {
        let (x, h) = (if n / ng == 0 { 1 } else { -1 }, n % ng);
        sign_action_with_lift(sg, formula, g, x, h, first_lift[h])
    })
    .expect("sign-group data is well formed")
}

/// The action does not depend on the lift `h̄`: checked over every `g`,
/// every `(x, h)` and both lifts of `h`.
pub fn lift_independence(sg: &SignGroup, formula: SignActionFormula) -> Check {
    let cases = sg.gt.elements().flat_map(|g| {
        sg.g.elements().flat_map(move |h| {
            [1i64, -1].into_iter().map(move |x| {
                let values: Vec<usize> =
                    sg.lifts(h).into_iter().map(|l| sign_action_with_lift(sg, formula, g, x, h, l)).collect();
                values.windows(2).all(|w| w[0] == w[1]).then_some(()).ok_or_else(|| {
                    format!("g = {}, (x,h) = ({x},{}): lifts give different results", sg.gt.name(g), sg.g.name(h))
                })
            })
        })
    });
    Check::all("action is independent of the lift of h", cases)
}

/// A sign group acting on a quadratic pair module: strict endomorphisms
/// `star[h]` for `h ∈ G` and bracket values `bracket[t][i] = ⟨eᵢ, t⟩` on
/// the generators of `C₀`, extended by `⟨x+y,t⟩ = ⟨x,t⟩^{∂(t)*y} + ⟨y,t⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignGroupAction {
    pub qpm: QuadraticPairModule,
    pub sg: SignGroup,
    pub star: Vec<QpmMorphism>,
    pub bracket: Vec<Vec<Elem>>,
}

impl SignGroupAction {
    pub fn bracket_track(&self, t: usize) -> Track {
        Track::from_values(self.bracket[t].clone())
    }

    /// `⟨x, t⟩`.
    pub fn bracket_of(&self, x: &Elem, t: usize) -> Elem {
        self.bracket_track(t).eval(&self.qpm, &self.star[self.sg.bd[t]].f0, x)
    }

    /// `∂(t)*` applied in degree `part`.
    pub fn bd_star(&self, part: Part, t: usize, x: &Elem) -> Elem {
        self.star[self.sg.bd[t]].apply(part, x)
    }

    /// `ε(t)*` applied in degree `part`, via the `(ℤ,·)`-action.
    pub fn eps_star(&self, part: Part, t: usize, x: &Elem) -> Elem {
        self.qpm.n_star(part, self.sg.eps_t(t), x)
    }
}

/// The unique action of the trivial sign group: `⟨x, 1⟩ = 0` and
/// `⟨x, ω⟩ = P(x|x)_H`.
pub fn trivial_sign_group_action(c: &QuadraticPairModule) -> SignGroupAction {
    let sg = SignGroup::trivial();
    let gens = c.c0.generators();
    let omega_values = gens.iter().map(|x| c.p_of(&c.cross(x, x))).collect();
    SignGroupAction {
        qpm: c.clone(),
        sg,
        star: vec![QpmMorphism::identity(c)],
        bracket: vec![vec![c.c1.zero(); gens.len()], omega_values],
    }
}

fn test_elements(c: &QuadraticPairModule) -> (Vec<Elem>, Vec<Elem>) {
    let mut s = Sampler::standard();
    let xs = c.c0.test_elements(&mut s, SAMPLE_COUNT);
    (xs, c.c1.test_elements(&mut s, SAMPLE_COUNT))
}

fn action_preconditions(a: &SignGroupAction) -> Vec<Check> {
    let (c, sg) = (&a.qpm, &a.sg);
    let k = c.c0.num_generators();
    if a.star.len() != sg.g.order()
        || a.bracket.len() != sg.gt.order()
        || a.bracket.iter().any(|row| row.len() != k || !row.iter().all(|v| c.c1.contains(v)))
    {
        return vec![Check::fail(
            "precondition: shapes",
            "one morphism per element of G and one bracket value in C1 per (t, generator) required",
        )];
    }
    let strict = sg.g.elements().map(|h| {
        match validate_morphism(c, c, &a.star[h], MorphismKind::Strict).into_iter().find(|ch| !ch.passed()) {
            Some(ch) => Err(format!("{}*: {} ({})", sg.g.name(h), ch.name, ch.witness.unwrap_or_default())),
            None => Ok(()),
        }
    });
    let unit = a.star[sg.g.identity()] == QpmMorphism::identity(c);
    let right = sg.g.elements().flat_map(|g| sg.g.elements().map(move |h| (g, h))).map(|(g, h)| {
        (a.star[sg.g.mul(g, h)] == a.star[h].after(&a.star[g]))
            .then_some(())
            .ok_or_else(|| format!("(g h)* ≠ h* g* for g = {}, h = {}", sg.g.name(g), sg.g.name(h)))
    });
    vec![
        Check::all("precondition: every g* is a strict morphism", strict),
        Check::from_result("precondition: 1* = id", unit.then_some(()).ok_or_else(|| "1* is not the identity".into())),
        Check::all("precondition: g -> g* is a right action", right),
    ]
}

/// Axioms (1)–(5) of a sign-group action, on generators and seeded samples
/// of `C₀` and `C₁` and all elements of `G̃`. Star images that are not
/// strict morphisms or do not form a right action are rejected first.
pub fn validate_sign_action(a: &SignGroupAction) -> Vec<Check> {
    let pre = action_preconditions(a);
    if !pre.iter().all(Check::passed) {
        return pre;
    }
    let (c, sg) = (&a.qpm, &a.sg);
    let (xs, zs) = test_elements(c);
    let ts: Vec<usize> = sg.gt.elements().collect();
    let tname = |t: usize| sg.gt.name(t).to_string();
    let show0 = |x: &Elem| c.show(Part::C0, x);
    let show1 = |x: &Elem| c.show(Part::C1, x);
    let mut checks = pre;
    checks.push(Check::all(
        "(1) <x+y,t> = <x,t>^(d(t)* y) + <y,t> is well defined",
        ts.iter().map(|&t| {
            a.bracket_track(t)
                .well_defined(c, &a.star[sg.bd[t]].f0)
                .map_err(|w| format!("t = {}: {w}", tname(t)))
        }),
    ));
    checks.push(Check::all(
        "(2) eps(t)* x = d(t)* x + d<x,t>",
        ts.iter().flat_map(|&t| {
            xs.iter().map(move |x| {
                let l = a.eps_star(Part::C0, t, x);
                let r = c.c0.add(&a.bd_star(Part::C0, t, x), &c.boundary(&a.bracket_of(x, t)));
                (l == r).then_some(()).ok_or_else(|| format!("x = {}, t = {}: {} vs {}", show0(x), tname(t), show0(&l), show0(&r)))
            })
        }),
    ));
    checks.push(Check::all(
        "(3) eps(t)* z = d(t)* z + <dz,t>",
        ts.iter().flat_map(|&t| {
            zs.iter().map(move |z| {
                let l = a.eps_star(Part::C1, t, z);
                let r = c.c1.add(&a.bd_star(Part::C1, t, z), &a.bracket_of(&c.boundary(z), t));
                (l == r).then_some(()).ok_or_else(|| format!("z = {}, t = {}: {} vs {}", show1(z), tname(t), show1(&l), show1(&r)))
            })
        }),
    ));
    checks.push(Check::all(
        "(4) <x,s t> = <d(s)* x,t> + <eps(t)* x,s>",
        ts.iter().flat_map(|&s| ts.iter().map(move |&t| (s, t))).flat_map(|(s, t)| {
            xs.iter().map(move |x| {
                let l = a.bracket_of(x, sg.gt.mul(s, t));
                let r = c.c1.add(
                    &a.bracket_of(&a.bd_star(Part::C0, s, x), t),
                    &a.bracket_of(&a.eps_star(Part::C0, t, x), s),
                );
                (l == r).then_some(()).ok_or_else(|| {
                    format!("x = {}, s = {}, t = {}: {} vs {}", show0(x), tname(s), tname(t), show1(&l), show1(&r))
                })
            })
        }),
    ));
    checks.push(Check::all(
        "(5) omega-formula <x,omega> = P(x|x)_H",
        xs.iter().map(|x| {
            let l = a.bracket_of(x, sg.omega);
            let r = c.p_of(&c.cross(x, x));
            (l == r).then_some(()).ok_or_else(|| format!("x = {}: {} vs {}", show0(x), show1(&l), show1(&r)))
        }),
    ));
    checks
}

/// The crossed module `∂°: G̃ → {±1} × G` acting on the same quadratic pair
/// module: `(x, h)* = h* ∘ x*` with `x*` from the `(ℤ,·)`-action, and
/// `⟨⟨x, t⟩⟩ = ⟨ε(t)*x, t⟩`.
#[derive(Debug, Clone)]
pub struct CrossedModuleAction {
    pub action: SignGroupAction,
    pub cm: FiniteCrossedModule,
}

impl CrossedModuleAction {
    fn split(&self, g: usize) -> (i64, usize) {
        let ng = self.action.sg.g.order();
        (if g / ng == 0 { 1 } else { -1 }, g % ng)
    }

    /// `g*` for `g ∈ {±1} × G`.
    pub fn star(&self, part: Part, g: usize, x: &Elem) -> Elem {
        let (s, h) = self.split(g);
        self.action.star[h].apply(part, &self.action.qpm.n_star(part, s, x))
    }

    /// `∂°(t)*`.
    pub fn bd_star(&self, part: Part, t: usize, x: &Elem) -> Elem {
        self.star(part, self.cm.bd[t], x)
    }

    /// `⟨⟨x, t⟩⟩`.
    pub fn bracket(&self, x: &Elem, t: usize) -> Elem {
        self.action.bracket_of(&self.action.eps_star(Part::C0, t, x), t)
    }
}

pub fn crossed_action_from_sign_action(a: &SignGroupAction) -> CrossedModuleAction {
    CrossedModuleAction {
        action: a.clone(),
        cm: crossed_module_from_sign_group(&a.sg, SignActionFormula::Corrected),
    }
}

/// Axioms (1)–(5) of a crossed-module action, with the second equality of
/// (4) reported separately as a consequence of (1)–(3).
pub fn validate_crossed_action(ca: &CrossedModuleAction) -> Vec<Check> {
    let c = &ca.action.qpm;
    let cm = &ca.cm;
    let (xs, zs) = test_elements(c);
    let pairs: Vec<(Elem, Elem)> = xs.iter().zip(xs.iter().rev()).map(|(x, y)| (x.clone(), y.clone())).collect();
    let ts: Vec<usize> = cm.top.elements().collect();
    let gs: Vec<usize> = cm.base.elements().collect();
    let tname = |t: usize| cm.top.name(t).to_string();
    let show0 = |x: &Elem| c.show(Part::C0, x);
    let show1 = |x: &Elem| c.show(Part::C1, x);
    let st_pairs: Vec<(usize, usize)> = ts.iter().flat_map(|&s| ts.iter().map(move |&t| (s, t))).collect();
    let fail = |what: String, l: &Elem, r: &Elem| format!("{what}: {} vs {}", show1(l), show1(r));
    vec![
        Check::all(
            "(1) <<x+y,t>> = <<x,t>>^(d(t)* y) + <<y,t>>",
            ts.iter().flat_map(|&t| {
                pairs.iter().map(move |(x, y)| {
                    let l = ca.bracket(&c.c0.add(x, y), t);
                    let r = c.c1.add(&c.action_exponent(&ca.bracket(x, t), &ca.bd_star(Part::C0, t, y)), &ca.bracket(y, t));
                    (l == r).then_some(()).ok_or_else(|| fail(format!("x = {}, y = {}, t = {}", show0(x), show0(y), tname(t)), &l, &r))
                })
            }),
        ),
        Check::all(
            "(2) x = d(t)* x + d<<x,t>>",
            ts.iter().flat_map(|&t| {
                xs.iter().map(move |x| {
                    let r = c.c0.add(&ca.bd_star(Part::C0, t, x), &c.boundary(&ca.bracket(x, t)));
                    (*x == r).then_some(()).ok_or_else(|| format!("x = {}, t = {}: {}", show0(x), tname(t), show0(&r)))
                })
            }),
        ),
        Check::all(
            "(3) z = d(t)* z + <<dz,t>>",
            ts.iter().flat_map(|&t| {
                zs.iter().map(move |z| {
                    let r = c.c1.add(&ca.bd_star(Part::C1, t, z), &ca.bracket(&c.boundary(z), t));
                    (*z == r).then_some(()).ok_or_else(|| fail(format!("z = {}, t = {}", show1(z), tname(t)), z, &r))
                })
            }),
        ),
        Check::all(
            "(4) <<x,s t>> = <<d(s)* x,t>> + <<x,s>>",
            st_pairs.iter().flat_map(|&(s, t)| {
                xs.iter().map(move |x| {
                    let l = ca.bracket(x, cm.top.mul(s, t));
                    let r = c.c1.add(&ca.bracket(&ca.bd_star(Part::C0, s, x), t), &ca.bracket(x, s));
                    (l == r).then_some(()).ok_or_else(|| fail(format!("x = {}, s = {}, t = {}", show0(x), tname(s), tname(t)), &l, &r))
                })
            }),
        ),
        Check::all(
            "(4) consequence: <<x,s t>> = d(t)* <<x,s>> + <<x,t>>",
            st_pairs.iter().flat_map(|&(s, t)| {
                xs.iter().map(move |x| {
                    let l = ca.bracket(x, cm.top.mul(s, t));
                    let r = c.c1.add(&ca.bd_star(Part::C1, t, &ca.bracket(x, s)), &ca.bracket(x, t));
                    (l == r).then_some(()).ok_or_else(|| fail(format!("x = {}, s = {}, t = {}", show0(x), tname(s), tname(t)), &l, &r))
                })
            }),
        ),
        Check::all(
            "(5) <<x,t^g>> = g* <<(g^-1)* x,t>>",
            gs.iter().flat_map(|&g| ts.iter().map(move |&t| (g, t))).flat_map(|(g, t)| {
                xs.iter().map(move |x| {
                    let l = ca.bracket(x, cm.act[t][g]);
                    let r = ca.star(Part::C1, g, &ca.bracket(&ca.star(Part::C0, cm.base.inv(g), x), t));
                    (l == r).then_some(()).ok_or_else(|| {
                        fail(format!("x = {}, t = {}, g = {}", show0(x), tname(t), cm.base.name(g)), &l, &r)
                    })
                })
            }),
        ),
    ]
}
