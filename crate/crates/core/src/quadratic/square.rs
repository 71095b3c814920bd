//! Quadratic maps and square groups.

use crate::binom2;
use crate::report::Check;
use crate::sampling::{Sampler, SAMPLE_COUNT};

use super::carrier::{AbGroup, Elem, GroupCarrier, Hom};
use super::QuadError;

/// A map `H: X → A` into an abelian group whose crossed effect
/// `(a|b)_H = H(a+b) − H(b) − H(a)` is bilinear, stored as the values on
/// generators plus the table `(gᵢ|gⱼ)_H`.
///
/// On a canonical element `Σ aᵢgᵢ + Σ c_ij[gᵢ,gⱼ]` the recursion gives
///
/// ```text
/// H = Σ (aᵢH(gᵢ) + binom2(aᵢ)(gᵢ|gᵢ)) + Σ_{i<j} aᵢaⱼ(gᵢ|gⱼ)
///   + Σ c_ij((gᵢ|gⱼ) − (gⱼ|gᵢ))
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticMap {
    pub source: GroupCarrier,
    pub target: AbGroup,
    values: Vec<Vec<i64>>,
    cross: Vec<Vec<Vec<i64>>>,
}

impl QuadraticMap {
    pub fn new(
        source: GroupCarrier,
        target: AbGroup,
        values: Vec<Vec<i64>>,
        cross: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self, QuadError> {
        let k = source.num_generators();
        let ok = values.len() == k
            && cross.len() == k
            && cross.iter().all(|row| row.len() == k)
            && values.iter().chain(cross.iter().flatten()).all(|v| target.contains(v));
        if !ok {
            return Err(QuadError::Shape(format!(
                "quadratic map needs {k} values and a {k}x{k} table in {}",
                GroupCarrier::Ab(target.clone())
            )));
        }
        Ok(Self { source, target, values, cross })
    }

    pub fn zero(source: &GroupCarrier, target: &AbGroup) -> Self {
        let k = source.num_generators();
        Self {
            source: source.clone(),
            target: target.clone(),
            values: vec![target.zero(); k],
            cross: vec![vec![target.zero(); k]; k],
        }
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn table(&self) -> &[Vec<Vec<i64>>] {
        &self.cross
    }

    pub fn eval(&self, x: &Elem) -> Vec<i64> {
        let t = &self.target;
        let mut acc = t.zero();
        let mut add = |v: &[i64], k: i64| {
            if k != 0 {
                acc = t.add(&acc, &t.scale(v, k));
            }
        };
        let linear: Vec<(usize, i64)> = match x {
            Elem::Nil(n) => n.linear_terms().collect(),
            Elem::Ab(v) => v.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect(),
        };
        for (p, &(i, a)) in linear.iter().enumerate() {
            add(&self.values[i], a);
            add(&self.cross[i][i], binom2(a));
            for &(j, b) in &linear[p + 1..] {
                add(&self.cross[i][j], a * b);
            }
        }
        if let Elem::Nil(n) = x {
            for ((i, j), c) in n.comm_terms() {
                add(&self.cross[i][j], c);
                add(&self.cross[j][i], -c);
            }
        }
        acc
    }

    /// `(a|b)_H` from the bilinear table.
    pub fn cross_effect(&self, a: &Elem, b: &Elem) -> Vec<i64> {
        let (x, y) = (self.source.abelian_coords(a), self.source.abelian_coords(b));
        let t = &self.target;
        let mut acc = t.zero();
        for (i, &p) in x.iter().enumerate().filter(|(_, p)| **p != 0) {
            for (j, &q) in y.iter().enumerate().filter(|(_, q)| **q != 0) {
                acc = t.add(&acc, &t.scale(&self.cross[i][j], p * q));
            }
        }
        acc
    }

    /// `H∘f` for a homomorphism `f` into the source.
    pub fn after(&self, f: &Hom) -> QuadraticMap {
        let imgs = f.images();
        let values = imgs.iter().map(|x| self.eval(x)).collect();
        let cross = imgs
            .iter()
            .map(|a| imgs.iter().map(|b| self.cross_effect(a, b)).collect())
            .collect();
        QuadraticMap { source: f.source.clone(), target: self.target.clone(), values, cross }
    }

    /// On an abelian source the table must be symmetric and compatible with
    /// the torsion orders; on a nil source every table is admissible.
    pub fn well_defined(&self) -> Result<(), String> {
        let GroupCarrier::Ab(src) = &self.source else {
            return Ok(());
        };
        let t = &self.target;
        let names = src.names();
        let k = src.num_generators();
        for i in 0..k {
            for j in 0..k {
                if self.cross[i][j] != self.cross[j][i] {
                    return Err(format!(
                        "({}|{})_H = {} but ({}|{})_H = {} in an abelian group",
                        names[i],
                        names[j],
                        t.show(&self.cross[i][j]),
                        names[j],
                        names[i],
                        t.show(&self.cross[j][i])
                    ));
                }
            }
            if let Some(d) = src.order(i) {
                for j in 0..k {
                    if !t.is_zero(&t.scale(&self.cross[i][j], d)) {
                        return Err(format!("{d}·({}|{})_H ≠ 0 although {d}{} = 0", names[i], names[j], names[i]));
                    }
                }
                let h = t.add(&t.scale(&self.values[i], d), &t.scale(&self.cross[i][i], binom2(d)));
                if !t.is_zero(&h) {
                    return Err(format!("H({d}{}) = {} but {d}{} = 0", names[i], t.show(&h), names[i]));
                }
            }
        }
        Ok(())
    }
}

/// `X_e ⇄ X_ee` with `P` a homomorphism and `H` quadratic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareGroup {
    pub xe: GroupCarrier,
    pub xee: AbGroup,
    pub p: Hom,
    pub h: QuadraticMap,
}

impl SquareGroup {
    pub fn new(xe: GroupCarrier, xee: AbGroup, p: Hom, h: QuadraticMap) -> Result<Self, QuadError> {
        let ee = GroupCarrier::Ab(xee.clone());
        if p.source != ee || p.target != xe || h.source != xe || h.target != xee {
            return Err(QuadError::Shape("P or H has the wrong source or target".into()));
        }
        Ok(Self { xe, xee, p, h })
    }

    pub fn p(&self, z: &[i64]) -> Elem {
        self.p.eval(&Elem::Ab(z.to_vec()))
    }

    /// `T = HP − 1`.
    pub fn t(&self, z: &[i64]) -> Vec<i64> {
        self.xee.sub(&self.h.eval(&self.p(z)), z)
    }

    /// `n*x = n·x + binom2(n)·PH(x)`.
    pub fn n_star(&self, n: i64, x: &Elem) -> Elem {
        let c = self.xee.scale(&self.h.eval(x), binom2(n));
        self.xe.add(&self.xe.times(x, n), &self.p(&c))
    }

    pub fn ee_elements(&self, s: &mut Sampler, count: usize) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> =
            (0..self.xee.num_generators()).map(|i| self.xee.generator(i)).collect();
        v.extend((0..count).map(|_| self.xee.sample(s)));
        v
    }
}

/// Generator pairs followed by `count` sampled pairs.
pub(crate) fn test_pairs(c: &GroupCarrier, s: &mut Sampler, count: usize) -> Vec<(Elem, Elem)> {
    let g = c.generators();
    let mut v: Vec<(Elem, Elem)> =
        g.iter().flat_map(|a| g.iter().map(move |b| (a.clone(), b.clone()))).collect();
    v.extend((0..count).map(|_| (c.sample(s), c.sample(s))));
    v
}

/// Axioms of a square group, checked on generators and on
/// [`SAMPLE_COUNT`] seeded samples with coefficients in `[−2, 2]`:
///
/// 1. `(Px|b)_H = 0` and `(a|Py)_H = 0`
/// 2. `P(a|b)_H = −a − b + a + b`
/// 3. `PHP(x) = P(x) + P(x)`
///
/// together with well-definedness of `P` and `H` and agreement of the
/// crossed effect of `H` with its table.
pub fn validate_square_group(x: &SquareGroup) -> Vec<Check> {
    let mut s = Sampler::standard();
    let xe = &x.xe;
    let ee = &x.xee;
    let elems = xe.test_elements(&mut s, SAMPLE_COUNT);
    let ees = x.ee_elements(&mut s, SAMPLE_COUNT);
    let pairs = test_pairs(xe, &mut s, SAMPLE_COUNT);
    let show = |e: &Elem| xe.show(e);
    let mut checks = vec![
        x.p.check("P"),
        Check::from_result("H is well defined", x.h.well_defined()),
    ];
    checks.push(Check::all(
        "crossed effect of H is its bilinear table",
        pairs.iter().map(|(a, b)| {
            let lhs = ee.sub(&ee.sub(&x.h.eval(&xe.add(a, b)), &x.h.eval(b)), &x.h.eval(a));
            let rhs = x.h.cross_effect(a, b);
            (lhs == rhs).then_some(()).ok_or_else(|| {
                format!(
                    "a = {}, b = {}: H(a+b) − H(b) − H(a) = {}, table gives {}",
                    show(a),
                    show(b),
                    ee.show(&lhs),
                    ee.show(&rhs)
                )
            })
        }),
    ));
    let ax1 = ees.iter().flat_map(|z| elems.iter().map(move |b| (z, b)));
    checks.push(Check::all(
        "(1) (Px|b)_H = 0 and (a|Py)_H = 0",
        ax1.map(|(z, b)| {
            let pz = x.p(z);
            let l = x.h.cross_effect(&pz, b);
            let r = x.h.cross_effect(b, &pz);
            if !ee.is_zero(&l) {
                Err(format!("x = {}, b = {}: (Px|b)_H = {}", ee.show(z), show(b), ee.show(&l)))
            } else if !ee.is_zero(&r) {
                Err(format!("y = {}, a = {}: (a|Py)_H = {}", ee.show(z), show(b), ee.show(&r)))
            } else {
                Ok(())
            }
        }),
    ));
    checks.push(Check::all(
        "(2) P(a|b)_H = -a-b+a+b",
        pairs.iter().map(|(a, b)| {
            let l = x.p(&x.h.cross_effect(a, b));
            let r = xe.commutator(a, b);
            (l == r).then_some(()).ok_or_else(|| {
                format!("a = {}, b = {}: P(a|b)_H = {}, -a-b+a+b = {}", show(a), show(b), show(&l), show(&r))
            })
        }),
    ));
    checks.push(Check::all(
        "(3) PHP(x) = P(x) + P(x)",
        ees.iter().map(|z| {
            let pz = x.p(z);
            let l = x.p(&x.h.eval(&pz));
            let r = xe.add(&pz, &pz);
            (l == r).then_some(()).ok_or_else(|| {
                format!("x = {}: PHP(x) = {}, P(x)+P(x) = {}", ee.show(z), show(&l), show(&r))
            })
        }),
    ));
    checks
}

/// A morphism of square groups: `f_e`, `f_ee` commuting with `P` and `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareGroupMorphism {
    pub fe: Hom,
    pub fee: Hom,
}

impl SquareGroupMorphism {
    pub fn identity(x: &SquareGroup) -> Self {
        Self { fe: Hom::identity(&x.xe), fee: Hom::identity(&GroupCarrier::Ab(x.xee.clone())) }
    }

    pub fn apply_ee(&self, z: &[i64]) -> Vec<i64> {
        self.fee.eval(&Elem::Ab(z.to_vec())).as_ab().to_vec()
    }
}

pub fn validate_square_group_morphism(x: &SquareGroup, y: &SquareGroup, f: &SquareGroupMorphism) -> Vec<Check> {
    let mut s = Sampler::standard();
    let elems = x.xe.test_elements(&mut s, SAMPLE_COUNT);
    let ees = x.ee_elements(&mut s, SAMPLE_COUNT);
    vec![
        f.fe.check("f_e"),
        f.fee.check("f_ee"),
        Check::all(
            "f_e P = P f_ee",
            ees.iter().map(|z| {
                let l = f.fe.eval(&x.p(z));
                let r = y.p(&f.apply_ee(z));
                (l == r).then_some(()).ok_or_else(|| format!("z = {}", x.xee.show(z)))
            }),
        ),
        Check::all(
            "f_ee H = H f_e",
            elems.iter().map(|e| {
                let l = f.apply_ee(&x.h.eval(e));
                let r = y.h.eval(&f.fe.eval(e));
                (l == r).then_some(()).ok_or_else(|| format!("x = {}", x.xe.show(e)))
            }),
        ),
    ]
}

/// The `(ℤ,·)`-action on `X_e`: `(mn)* = m*∘n*` for `m, n ∈ {−2..3}`,
/// `1* = id`, `0* = 0`, and naturality `f∘n* = n*∘f` for the identity and
/// each supplied endomorphism.
pub fn z_tensor_action_check(x: &SquareGroup, endomorphisms: &[SquareGroupMorphism]) -> Vec<Check> {
    let mut s = Sampler::standard();
    let elems = x.xe.test_elements(&mut s, SAMPLE_COUNT);
    let range = -2..=3i64;
    let mut checks = vec![
        Check::all(
            "1* = id",
            elems.iter().map(|e| (x.n_star(1, e) == *e).then_some(()).ok_or_else(|| x.xe.show(e))),
        ),
        Check::all(
            "0* = 0",
            elems.iter().map(|e| x.xe.is_zero(&x.n_star(0, e)).then_some(()).ok_or_else(|| x.xe.show(e))),
        ),
        Check::all(
            "(mn)* = m* n*",
            range.clone().flat_map(|m| range.clone().map(move |n| (m, n))).flat_map(|(m, n)| {
                elems.iter().map(move |e| {
                    let l = x.n_star(m * n, e);
                    let r = x.n_star(m, &x.n_star(n, e));
                    (l == r).then_some(()).ok_or_else(|| {
                        format!("m = {m}, n = {n}, x = {}: {} vs {}", x.xe.show(e), x.xe.show(&l), x.xe.show(&r))
                    })
                })
            }),
        ),
    ];
    let mut maps = vec![("identity".to_string(), SquareGroupMorphism::identity(x))];
    maps.extend(endomorphisms.iter().enumerate().map(|(k, f)| (format!("endomorphism {}", k + 1), f.clone())));
    for (label, f) in maps {
        checks.push(Check::all(
            format!("f n* = n* f for the {label}"),
            range.clone().flat_map(|n| {
                let f = f.clone();
                elems.iter().map(move |e| {
                    let l = f.fe.eval(&x.n_star(n, e));
                    let r = x.n_star(n, &f.fe.eval(e));
                    (l == r).then_some(()).ok_or_else(|| format!("n = {n}, x = {}", x.xe.show(e)))
                })
            }),
        ));
    }
    checks
}
