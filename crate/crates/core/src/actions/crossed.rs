//! Crossed modules `∂: T → N` with a right action of `N` on `T`.

use crate::quadratic::{Elem, QuadraticPairModule};
use crate::report::Check;
use crate::sampling::{Sampler, SAMPLE_COUNT};

use super::group::FiniteGroup;
use super::ActionError;

/// The data of a crossed module, in multiplicative notation. Checks run
/// over [`top_elements`](Self::top_elements) and
/// [`base_elements`](Self::base_elements); when
/// [`exhaustive`](Self::exhaustive) is false those are generators followed
/// by samples, and tuples are formed accordingly.
pub trait CrossedModule {
    type Top: Clone + PartialEq;
    type Base: Clone + PartialEq;

    fn top_mul(&self, a: &Self::Top, b: &Self::Top) -> Self::Top;
    fn top_inv(&self, a: &Self::Top) -> Self::Top;
    fn top_identity(&self) -> Self::Top;
    fn base_mul(&self, a: &Self::Base, b: &Self::Base) -> Self::Base;
    fn base_inv(&self, a: &Self::Base) -> Self::Base;
    fn base_identity(&self) -> Self::Base;
    fn boundary(&self, m: &Self::Top) -> Self::Base;
    /// `m^n`.
    fn act(&self, m: &Self::Top, n: &Self::Base) -> Self::Top;

    fn top_elements(&self) -> Vec<Self::Top>;
    fn base_elements(&self) -> Vec<Self::Base>;
    fn exhaustive(&self) -> bool;
    fn show_top(&self, m: &Self::Top) -> String;
    fn show_base(&self, n: &Self::Base) -> String;
}

/// Number of leading elements combined exhaustively in sampled mode.
const SAMPLED_CORE: usize = 4;

/// Index pairs: all of them in exhaustive mode, otherwise all pairs among
/// the first [`SAMPLED_CORE`] plus a diagonal sweep.
fn pairs(a: usize, b: usize, exhaustive: bool) -> Vec<(usize, usize)> {
    if exhaustive {
        return (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect();
    }
    let mut v: Vec<(usize, usize)> =
        (0..a.min(SAMPLED_CORE)).flat_map(|i| (0..b.min(SAMPLED_CORE)).map(move |j| (i, j))).collect();
    if b > 0 {
        v.extend((0..a).map(|i| (i, (i * 7 + 3) % b)));
    }
    v
}

fn triples(a: usize, b: usize, c: usize, exhaustive: bool) -> Vec<(usize, usize, usize)> {
    if exhaustive {
        return pairs(a, b, true).into_iter().flat_map(|(i, j)| (0..c).map(move |k| (i, j, k))).collect();
    }
    if c == 0 {
        return vec![];
    }
    pairs(a, b, false).into_iter().enumerate().map(|(n, (i, j))| (i, j, (n * 5 + 1) % c)).collect()
}

/// Checks that `∂` is a homomorphism, that `N` acts on the right by
/// automorphisms, and the two crossed-module axioms
///
/// 1. `∂(m^n) = n⁻¹ ∂(m) n`
/// 2. `m^{∂(m')} = m'⁻¹ m m'`
pub fn validate_crossed_module<X: CrossedModule + ?Sized>(x: &X) -> Vec<Check> {
    let ts = x.top_elements();
    let ns = x.base_elements();
    let ex = x.exhaustive();
    let st = |m: &X::Top| x.show_top(m);
    let sb = |n: &X::Base| x.show_base(n);
    let tt = pairs(ts.len(), ts.len(), ex);
    let tn = pairs(ts.len(), ns.len(), ex);
    vec![
        Check::all(
            "boundary is a homomorphism",
            tt.iter().map(|&(i, j)| {
                let (a, b) = (&ts[i], &ts[j]);
                (x.boundary(&x.top_mul(a, b)) == x.base_mul(&x.boundary(a), &x.boundary(b)))
                    .then_some(())
                    .ok_or_else(|| format!("m = {}, m' = {}", st(a), st(b)))
            }),
        ),
        Check::all(
            "action is by automorphisms: (m m')^n = m^n m'^n",
            triples(ts.len(), ts.len(), ns.len(), ex).into_iter().map(|(i, j, k)| {
                let (a, b, n) = (&ts[i], &ts[j], &ns[k]);
                (x.act(&x.top_mul(a, b), n) == x.top_mul(&x.act(a, n), &x.act(b, n)))
                    .then_some(())
                    .ok_or_else(|| format!("m = {}, m' = {}, n = {}", st(a), st(b), sb(n)))
            }),
        ),
        Check::all(
            "right action: m^1 = m and m^(n n') = (m^n)^n'",
            ts.iter().map(|m| (x.act(m, &x.base_identity()) == *m).then_some(()).ok_or_else(|| st(m))).chain(
                triples(ts.len(), ns.len(), ns.len(), ex).into_iter().map(|(i, j, k)| {
                    let (m, n, n2) = (&ts[i], &ns[j], &ns[k]);
                    (x.act(m, &x.base_mul(n, n2)) == x.act(&x.act(m, n), n2))
                        .then_some(())
                        .ok_or_else(|| format!("m = {}, n = {}, n' = {}", st(m), sb(n), sb(n2)))
                }),
            ),
        ),
        Check::all(
            "(1) d(m^n) = n^-1 d(m) n",
            tn.iter().map(|&(i, j)| {
                let (m, n) = (&ts[i], &ns[j]);
                let l = x.boundary(&x.act(m, n));
                let r = x.base_mul(&x.base_mul(&x.base_inv(n), &x.boundary(m)), n);
                (l == r).then_some(()).ok_or_else(|| {
                    format!("m = {}, n = {}: {} vs {}", st(m), sb(n), sb(&l), sb(&r))
                })
            }),
        ),
        Check::all(
            "(2) m^d(m') = m'^-1 m m'",
            tt.iter().map(|&(i, j)| {
                let (m, m2) = (&ts[i], &ts[j]);
                let l = x.act(m, &x.boundary(m2));
                let r = x.top_mul(&x.top_mul(&x.top_inv(m2), m), m2);
                (l == r).then_some(()).ok_or_else(|| {
                    format!("m = {}, m' = {}: {} vs {}", st(m), st(m2), st(&l), st(&r))
                })
            }),
        ),
    ]
}

/// A crossed module of finite groups with a tabulated action
/// `act[m][n] = m^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCrossedModule {
    pub top: FiniteGroup,
    pub base: FiniteGroup,
    pub bd: Vec<usize>,
    pub act: Vec<Vec<usize>>,
}

impl FiniteCrossedModule {
    pub fn new(
        top: FiniteGroup,
        base: FiniteGroup,
        bd: Vec<usize>,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, ActionError> {
        if bd.len() != top.order() || bd.iter().any(|&b| b >= base.order()) {
            return Err(ActionError::Shape("boundary needs one image in N per element of T".into()));
        }
        let table: Vec<Vec<usize>> = top.elements().map(|m| base.elements().map(|n| act(m, n)).collect()).collect();
        if table.iter().flatten().any(|&m| m >= top.order()) {
            return Err(ActionError::Shape("action leaves T".into()));
        }
        Ok(Self { top, base, bd, act: table })
    }

    /// `id: N → N` with conjugation `m^n = n⁻¹ m n`.
    pub fn inner(g: &FiniteGroup) -> Self {
        Self::new(g.clone(), g.clone(), g.elements().collect(), |m, n| g.conjugate(m, n)).expect("inner data is well formed")
    }

    /// `1 → N` with the trivial action.
    pub fn trivial_top(n: &FiniteGroup) -> Self {
        let t = FiniteGroup::trivial();
        Self::new(t, n.clone(), vec![n.identity()], |m, _| m).expect("trivial data is well formed")
    }
}

impl CrossedModule for FiniteCrossedModule {
    type Top = usize;
    type Base = usize;

    fn top_mul(&self, a: &usize, b: &usize) -> usize {
        self.top.mul(*a, *b)
    }
    fn top_inv(&self, a: &usize) -> usize {
        self.top.inv(*a)
    }
    fn top_identity(&self) -> usize {
        self.top.identity()
    }
    fn base_mul(&self, a: &usize, b: &usize) -> usize {
        self.base.mul(*a, *b)
    }
    fn base_inv(&self, a: &usize) -> usize {
        self.base.inv(*a)
    }
    fn base_identity(&self) -> usize {
        self.base.identity()
    }
    fn boundary(&self, m: &usize) -> usize {
        self.bd[*m]
    }
    fn act(&self, m: &usize, n: &usize) -> usize {
        self.act[*m][*n]
    }
    fn top_elements(&self) -> Vec<usize> {
        self.top.elements().collect()
    }
    fn base_elements(&self) -> Vec<usize> {
        self.base.elements().collect()
    }
    fn exhaustive(&self) -> bool {
        true
    }
    fn show_top(&self, m: &usize) -> String {
        self.top.name(*m).to_string()
    }
    fn show_base(&self, n: &usize) -> String {
        self.base.name(*n).to_string()
    }
}

/// `∂: C₁ → C₀` of a quadratic pair module with the exponent action
/// `x^y = x + P(∂x|y)_H`, written additively, checked on generators plus
/// seeded samples.
pub struct QpmCrossedModule<'a>(pub &'a QuadraticPairModule);

impl CrossedModule for QpmCrossedModule<'_> {
    type Top = Elem;
    type Base = Elem;

    fn top_mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.c1.add(a, b)
    }
    fn top_inv(&self, a: &Elem) -> Elem {
        self.0.c1.neg(a)
    }
    fn top_identity(&self) -> Elem {
        self.0.c1.zero()
    }
    fn base_mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.c0.add(a, b)
    }
    fn base_inv(&self, a: &Elem) -> Elem {
        self.0.c0.neg(a)
    }
    fn base_identity(&self) -> Elem {
        self.0.c0.zero()
    }
    fn boundary(&self, m: &Elem) -> Elem {
        self.0.boundary(m)
    }
    fn act(&self, m: &Elem, n: &Elem) -> Elem {
        self.0.action_exponent(m, n)
    }
    fn top_elements(&self) -> Vec<Elem> {
        self.0.c1.test_elements(&mut Sampler::standard(), SAMPLE_COUNT)
    }
    fn base_elements(&self) -> Vec<Elem> {
        self.0.c0.test_elements(&mut Sampler::new(crate::sampling::SAMPLE_SEED + 1), SAMPLE_COUNT)
    }
    fn exhaustive(&self) -> bool {
        false
    }
    fn show_top(&self, m: &Elem) -> String {
        self.0.c1.show(m)
    }
    fn show_base(&self, n: &Elem) -> String {
        self.0.c0.show(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilgroup::PointedSet;
    use crate::quadratic::{qpm_eta, qpm_nil};

    fn passes(c: &[Check]) -> bool {
        c.iter().all(Check::passed)
    }

    #[test]
    fn inner_crossed_modules_pass() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::symmetric(3), FiniteGroup::symmetric(4)] {
            assert!(passes(&validate_crossed_module(&FiniteCrossedModule::inner(&g))));
            assert!(passes(&validate_crossed_module(&FiniteCrossedModule::trivial_top(&g))));
        }
    }

    #[test]
    fn left_conjugation_breaks_peiffer() {
        let g = FiniteGroup::symmetric(3);
        let mut x = FiniteCrossedModule::inner(&g);
        x.act = g.elements().map(|m| g.elements().map(|n| g.conjugate(m, g.inv(n))).collect()).collect();
        let checks = validate_crossed_module(&x);
        let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().all(|c| c.witness.is_some()));
    }

    #[test]
    fn qpm_shells_pass() {
        let e = PointedSet::new(["a", "b"]).unwrap();
        assert!(passes(&validate_crossed_module(&QpmCrossedModule(&qpm_nil(&e)))));
        assert!(passes(&validate_crossed_module(&QpmCrossedModule(&qpm_eta()))));
    }
}
