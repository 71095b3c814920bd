//! The monoid-groupoid `M(∂)` of a finite crossed module.
//!
//! Objects are the elements `g` of `N`; morphisms are pairs `(g, t)` of
//! `N ⋉ T`, with `(g, t): g·∂(t) → g`, composition
//! `(g, t) ∘ (g·∂(t), t') = (g, t·t')` and the semidirect product
//! `(g, t)·(g', t') = (g g', t^{g'} t')` as monoidal product.

use crate::report::Check;
use crate::sampling::Sampler;

use super::crossed::FiniteCrossedModule;
use super::ActionError;

/// Largest `|N ⋉ T|` accepted by [`monoid_groupoid_from_cm`].
pub const MORPHISM_CAP: usize = 10_000;

/// Law checks enumerate all tuples up to this many and sample this many
/// otherwise.
pub const LAW_BUDGET: u64 = 1 << 21;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidGroupoid {
    cm: FiniteCrossedModule,
    opposite: bool,
}

pub fn monoid_groupoid_from_cm(x: &FiniteCrossedModule) -> Result<MonoidGroupoid, ActionError> {
    let size = x.base.order() * x.top.order();
    if size > MORPHISM_CAP {
        return Err(ActionError::CapExceeded { what: "|N x T|", value: size, cap: MORPHISM_CAP });
    }
    Ok(MonoidGroupoid { cm: x.clone(), opposite: false })
}

impl MonoidGroupoid {
    /// Same groupoid, product with its factors interchanged.
    pub fn opposite(&self) -> Self {
        Self { cm: self.cm.clone(), opposite: !self.opposite }
    }

    pub fn num_objects(&self) -> usize {
        self.cm.base.order()
    }

    pub fn num_morphisms(&self) -> usize {
        self.cm.base.order() * self.cm.top.order()
    }

    fn split(&self, a: usize) -> (usize, usize) {
        (a / self.cm.top.order(), a % self.cm.top.order())
    }

    fn join(&self, g: usize, t: usize) -> usize {
        g * self.cm.top.order() + t
    }

    pub fn object_name(&self, x: usize) -> &str {
        self.cm.base.name(x)
    }

    pub fn morphism_name(&self, a: usize) -> String {
        let (g, t) = self.split(a);
        format!("({},{})", self.cm.base.name(g), self.cm.top.name(t))
    }

    pub fn source(&self, a: usize) -> usize {
        let (g, t) = self.split(a);
        self.cm.base.mul(g, self.cm.bd[t])
    }

    pub fn target(&self, a: usize) -> usize {
        self.split(a).0
    }

    pub fn identity(&self, x: usize) -> usize {
        self.join(x, self.cm.top.identity())
    }

    /// `a ∘ b`, defined when `source(a) = target(b)`.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        if self.source(a) != self.target(b) {
            return None;
        }
        let (g, t) = self.split(a);
        let (_, t2) = self.split(b);
        Some(self.join(g, self.cm.top.mul(t, t2)))
    }

    pub fn inverse(&self, a: usize) -> usize {
        let (_, t) = self.split(a);
        self.join(self.source(a), self.cm.top.inv(t))
    }

    pub fn object_product(&self, x: usize, y: usize) -> usize {
        let (x, y) = if self.opposite { (y, x) } else { (x, y) };
        self.cm.base.mul(x, y)
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        let (a, b) = if self.opposite { (b, a) } else { (a, b) };
        let (g, t) = self.split(a);
        let (g2, t2) = self.split(b);
        self.join(self.cm.base.mul(g, g2), self.cm.top.mul(self.cm.act[t][g2], t2))
    }

    pub fn unit(&self) -> usize {
        self.cm.base.identity()
    }

    /// Morphisms `x → y`.
    pub fn hom_set(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.cm.top.order()).map(|t| self.join(y, t)).filter(|&a| self.source(a) == x).collect()
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.num_morphisms()).all(|a| self.source(a) == self.target(a) && a == self.identity(self.target(a)))
    }

    pub fn is_connected(&self) -> bool {
        let reach = |x: usize| -> Vec<usize> {
            (0..self.cm.top.order()).map(|t| self.cm.base.mul(x, self.cm.bd[t])).collect()
        };
        let mut seen = vec![false; self.num_objects()];
        let mut stack = vec![self.unit()];
        seen[self.unit()] = true;
        while let Some(x) = stack.pop() {
            for y in reach(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Morphisms with the given target, i.e. `(g, t)` for fixed `g`.
    fn into_object(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.cm.top.order()).map(move |t| self.join(x, t))
    }
}

/// Runs `law` over all index tuples of the given shape when there are at
/// most [`LAW_BUDGET`] of them, otherwise over that many seeded samples.
fn sweep(
    name: &str,
    dims: &[usize],
    mut law: impl FnMut(&[usize]) -> Result<(), String>,
) -> Check {
    let total: u64 = dims.iter().map(|&d| d as u64).product();
    let exhaustive = total <= LAW_BUDGET;
    let mut idx = vec![0usize; dims.len()];
    let mut result = Ok(());
    if exhaustive {
        'outer: for _ in 0..total {
            if let Err(w) = law(&idx) {
                result = Err(w);
                break 'outer;
            }
            for (i, d) in idx.iter_mut().zip(dims).rev() {
                *i += 1;
                if *i < *d {
                    break;
                }
                *i = 0;
            }
        }
    } else {
        let mut s = Sampler::standard();
        for _ in 0..LAW_BUDGET {
            for (i, &d) in idx.iter_mut().zip(dims) {
                *i = s.below(d);
            }
            if let Err(w) = law(&idx) {
                result = Err(w);
                break;
            }
        }
    }
    let name = if exhaustive {
        format!("{name} (all {total})")
    } else {
        format!("{name} ({LAW_BUDGET} samples of {total})")
    };
    Check::from_result(name, result)
}

/// Groupoid laws, monoid laws on objects and morphisms, functoriality of
/// the product and of the unit.
pub fn validate_monoid_groupoid(m: &MonoidGroupoid) -> Vec<Check> {
    let nm = m.num_morphisms();
    let no = m.num_objects();
    let nt = m.cm.top.order();
    let name = |a: usize| m.morphism_name(a);
    let eq = |l: usize, r: usize, what: String| (l == r).then_some(()).ok_or(what);
    vec![
        sweep("identities are neutral for composition", &[nm], |i| {
            let a = i[0];
            let l = m.compose(m.identity(m.target(a)), a);
            let r = m.compose(a, m.identity(m.source(a)));
            (l == Some(a) && r == Some(a)).then_some(()).ok_or_else(|| name(a))
        }),
        // a ∘ b ∘ c with b, c chosen among the |T| morphisms into the
        // relevant source.
        sweep("composition is associative", &[nm, nt, nt], |i| {
            let a = i[0];
            let b = m.into_object(m.source(a)).nth(i[1]).expect("index below |T|");
            let c = m.into_object(m.source(b)).nth(i[2]).expect("index below |T|");
            let ab = m.compose(a, b).expect("composable");
            let bc = m.compose(b, c).expect("composable");
            eq(m.compose(ab, c).unwrap(), m.compose(a, bc).unwrap(), format!("{}, {}, {}", name(a), name(b), name(c)))
        }),
        sweep("every morphism is invertible", &[nm], |i| {
            let a = i[0];
            let inv = m.inverse(a);
            let ok = m.compose(a, inv) == Some(m.identity(m.target(a)))
                && m.compose(inv, a) == Some(m.identity(m.source(a)));
            ok.then_some(()).ok_or_else(|| name(a))
        }),
        sweep("object product is associative with unit", &[no, no, no], |i| {
            let (x, y, z) = (i[0], i[1], i[2]);
            let ok = m.object_product(m.object_product(x, y), z) == m.object_product(x, m.object_product(y, z))
                && m.object_product(m.unit(), x) == x
                && m.object_product(x, m.unit()) == x;
            ok.then_some(()).ok_or_else(|| format!("{}, {}, {}", m.object_name(x), m.object_name(y), m.object_name(z)))
        }),
        sweep("morphism product is associative with unit", &[nm, nm, nm], |i| {
            let (a, b, c) = (i[0], i[1], i[2]);
            let u = m.identity(m.unit());
            let ok = m.product(m.product(a, b), c) == m.product(a, m.product(b, c))
                && m.product(u, a) == a
                && m.product(a, u) == a;
            ok.then_some(()).ok_or_else(|| format!("{}, {}, {}", name(a), name(b), name(c)))
        }),
        sweep("product respects source and target", &[nm, nm], |i| {
            let (a, b) = (i[0], i[1]);
            let p = m.product(a, b);
            let ok = m.source(p) == m.object_product(m.source(a), m.source(b))
                && m.target(p) == m.object_product(m.target(a), m.target(b));
            ok.then_some(()).ok_or_else(|| format!("{}, {}", name(a), name(b)))
        }),
        sweep("product preserves identities", &[no, no], |i| {
            let (x, y) = (i[0], i[1]);
            eq(
                m.product(m.identity(x), m.identity(y)),
                m.identity(m.object_product(x, y)),
                format!("{}, {}", m.object_name(x), m.object_name(y)),
            )
        }),
        sweep("interchange: (a∘b)·(c∘d) = (a·c)∘(b·d)", &[nm, nt, nm, nt], |i| {
            let (a, c) = (i[0], i[2]);
            let b = m.into_object(m.source(a)).nth(i[1]).expect("index below |T|");
            let d = m.into_object(m.source(c)).nth(i[3]).expect("index below |T|");
            let l = m.product(m.compose(a, b).unwrap(), m.compose(c, d).unwrap());
            let r = m.compose(m.product(a, c), m.product(b, d));
            (r == Some(l))
                .then_some(())
                .ok_or_else(|| format!("a = {}, b = {}, c = {}, d = {}", name(a), name(b), name(c), name(d)))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::FiniteGroup;

    fn passes(c: &[Check]) -> bool {
        c.iter().all(Check::passed)
    }

    #[test]
    fn trivial_top_is_discrete() {
        let g = FiniteGroup::symmetric(3);
        let m = monoid_groupoid_from_cm(&FiniteCrossedModule::trivial_top(&g)).unwrap();
        assert_eq!(m.num_morphisms(), 6);
        assert!(m.is_discrete());
        assert!(passes(&validate_monoid_groupoid(&m)));
    }

    #[test]
    fn inner_z2() {
        let m = monoid_groupoid_from_cm(&FiniteCrossedModule::inner(&FiniteGroup::cyclic(2))).unwrap();
        assert_eq!((m.num_objects(), m.num_morphisms()), (2, 4));
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(m.hom_set(x, y).len(), 1);
            }
        }
        assert!(m.is_connected());
        assert!(!m.is_discrete());
        assert!(passes(&validate_monoid_groupoid(&m)));
    }

    #[test]
    fn opposite_is_an_involution() {
        let m = monoid_groupoid_from_cm(&FiniteCrossedModule::inner(&FiniteGroup::symmetric(3))).unwrap();
        let op = m.opposite();
        assert_ne!(op, m);
        assert_eq!(op.opposite(), m);
        assert!(passes(&validate_monoid_groupoid(&op)));
        assert_eq!(op.product(1, 2), m.product(2, 1));
    }

    #[test]
    fn cap_is_enforced() {
        let g = FiniteGroup::cyclic(101);
        let r = monoid_groupoid_from_cm(&FiniteCrossedModule::inner(&g));
        assert!(matches!(r, Err(ActionError::CapExceeded { .. })));
    }

    #[test]
    fn sweep_reports_mode() {
        assert!(sweep("x", &[3, 3], |_| Ok(())).name.ends_with("(all 9)"));
        let big = sweep("x", &[1 << 11, 1 << 11], |_| Ok(()));
        assert!(big.name.contains("samples"));
        let bad = sweep("x", &[4], |i| if i[0] == 2 { Err("two".into()) } else { Ok(()) });
        assert_eq!(bad.witness.as_deref(), Some("two"));
    }
}
