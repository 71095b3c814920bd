//! Concrete square groups and quadratic pair modules.

use crate::nilgroup::{sigma_bar, PointedSet, RedTensorElt, TensorElt};
use crate::report::Check;

use super::carrier::{AbGroup, Elem, GroupCarrier, Hom};
use super::qpm::{validate_qpm, QpmMorphism, QuadraticPairModule};
use super::square::{QuadraticMap, SquareGroup};
use super::track::Track;

/// `ℤ ⇄ ℤ` with `P = 0` and `H(n) = binom2(n)`, so `(a|b)_H = ab`.
pub fn z_nil_square_group() -> SquareGroup {
    let xe = GroupCarrier::Ab(AbGroup::with_names(vec!["x".into()], 1, vec![]).unwrap());
    let xee = AbGroup::with_names(vec!["x.x".into()], 1, vec![]).unwrap();
    let p = Hom::zero(&GroupCarrier::Ab(xee.clone()), &xe);
    let h = QuadraticMap::new(xe.clone(), xee.clone(), vec![vec![0]], vec![vec![vec![1]]]).unwrap();
    SquareGroup::new(xe, xee, p, h).unwrap()
}

/// An abelian group as a square group with `X_ee = 0`.
pub fn abelian_square_group(a: AbGroup) -> SquareGroup {
    let xe = GroupCarrier::Ab(a);
    let xee = AbGroup::trivial();
    let p = Hom::zero(&GroupCarrier::Ab(xee.clone()), &xe);
    let h = QuadraticMap::zero(&xe, &xee);
    SquareGroup::new(xe, xee, p, h).unwrap()
}

/// A spread of abelian groups used as test instances.
pub fn sample_abelian_groups() -> Vec<AbGroup> {
    vec![
        AbGroup::trivial(),
        AbGroup::free(1),
        AbGroup::free(2),
        AbGroup::new(0, vec![2]).unwrap(),
        AbGroup::new(1, vec![2, 3]).unwrap(),
        AbGroup::new(0, vec![4, 6]).unwrap(),
    ]
}

/// Names `a.b` for the basis `a⊗b` of `⊗²ℤ[E]`, row-major.
pub fn tensor_square(e: &PointedSet) -> AbGroup {
    let n = e.names();
    let names = n.iter().flat_map(|a| n.iter().map(move |b| format!("{a}.{b}"))).collect();
    AbGroup::with_names(names, n.len() * n.len(), vec![]).unwrap()
}

/// `⊗̂²ℤ[E]`: free classes `a:b` for `a < b`, then classes `a:a` of order 2.
pub fn reduced_tensor_square(e: &PointedSet) -> AbGroup {
    let n = e.names();
    let k = n.len();
    let mut names: Vec<String> =
        (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).map(|(i, j)| format!("{}:{}", n[i], n[j])).collect();
    names.extend(n.iter().map(|a| format!("{a}:{a}")));
    AbGroup::with_names(names, RedTensorElt::free_rank(k), vec![2; k]).unwrap()
}

/// The 0-free quadratic map: `H(e) = 0`, `(s|t)_H = t⊗s`.
pub fn h_0free_map(e: &PointedSet) -> QuadraticMap {
    let k = e.len();
    let cee = tensor_square(e);
    let cross = (0..k)
        .map(|i| (0..k).map(|j| TensorElt::basis(k, j, i).to_vec()).collect())
        .collect();
    QuadraticMap::new(GroupCarrier::Nil(e.clone()), cee.clone(), vec![cee.zero(); k], cross).unwrap()
}

/// `C₀ = ℤ` on one generator `e`, `C_ee = ℤ`, `C₁ = ℤ/2`, `∂ = 0`, `P` the
/// reduction mod 2 and `H = binom2`.
pub fn qpm_eta() -> QuadraticPairModule {
    let e = PointedSet::new(["e"]).unwrap();
    let c0 = GroupCarrier::Nil(e.clone());
    let cee = tensor_square(&e);
    let c1 = GroupCarrier::Ab(AbGroup::with_names(vec!["eta".into()], 0, vec![2]).unwrap());
    let bd = Hom::zero(&c1, &c0);
    let p = Hom::new(GroupCarrier::Ab(cee.clone()), c1.clone(), vec![Elem::Ab(vec![1])]).unwrap();
    QuadraticPairModule::new("qpm_eta", c0, c1, cee, bd, p, h_0free_map(&e)).unwrap()
}

/// Sign and orientation conventions for [`qpm_nil_variant`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NilConvention {
    /// `P(a⊗b) = sign·σ̄(b⊗a)`.
    pub p_sign: i64,
    /// `∂(class of x⊗y)` is `[y, x]` instead of `[x, y]`.
    pub swap_boundary: bool,
}

impl NilConvention {
    pub const STANDARD: Self = Self { p_sign: 1, swap_boundary: false };

    pub fn all() -> [Self; 4] {
        [
            Self { p_sign: 1, swap_boundary: false },
            Self { p_sign: 1, swap_boundary: true },
            Self { p_sign: -1, swap_boundary: false },
            Self { p_sign: -1, swap_boundary: true },
        ]
    }
}

/// `C₀ = ⟨E⟩_nil`, `C_ee = ⊗²ℤ[E]`, `C₁ = ⊗̂²ℤ[E]` with the given
/// conventions for `P` and `∂`.
pub fn qpm_nil_variant(e: &PointedSet, conv: NilConvention) -> QuadraticPairModule {
    let k = e.len();
    let c0 = GroupCarrier::Nil(e.clone());
    let cee = tensor_square(e);
    let c1_group = reduced_tensor_square(e);
    let c1 = GroupCarrier::Ab(c1_group.clone());
    let mut bd_images = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let (x, y) = if conv.swap_boundary { (j, i) } else { (i, j) };
            bd_images.push(c0.commutator(&c0.generator(x), &c0.generator(y)));
        }
    }
    bd_images.extend((0..k).map(|_| c0.zero()));
    let bd = Hom::new(c1.clone(), c0.clone(), bd_images).unwrap();
    let p_images = (0..k * k)
        .map(|n| {
            let (i, j) = (n / k, n % k);
            let v = sigma_bar(&TensorElt::basis(k, j, i)).to_vec();
            Elem::Ab(c1_group.scale(&v, conv.p_sign))
        })
        .collect();
    let p = Hom::new(GroupCarrier::Ab(cee.clone()), c1.clone(), p_images).unwrap();
    QuadraticPairModule::new(format!("qpm_nil({})", e.names().join(",")), c0, c1, cee, bd, p, h_0free_map(e))
        .unwrap()
}

pub fn qpm_nil(e: &PointedSet) -> QuadraticPairModule {
    qpm_nil_variant(e, NilConvention::STANDARD)
}

/// Runs the validator on all four conventions.
pub fn qpm_nil_convention_search(e: &PointedSet) -> Vec<(NilConvention, bool)> {
    NilConvention::all()
        .into_iter()
        .map(|c| (c, validate_qpm(&qpm_nil_variant(e, c)).iter().all(Check::passed)))
        .collect()
}

/// Builds the 0-free quadratic pair module of a 0-free stable quadratic
/// module `⊗²ℤ[E] —w→ M —∂→ ⟨E⟩_nil` via `P(a⊗b) = w(b⊗a)`, and validates
/// it. On failure the validator's checks are returned.
pub fn qpm_from_squad(
    e: &PointedSet,
    m: GroupCarrier,
    bd: Hom,
    w: Hom,
) -> Result<QuadraticPairModule, Vec<Check>> {
    let k = e.len();
    let c0 = GroupCarrier::Nil(e.clone());
    let cee = tensor_square(e);
    let ee = GroupCarrier::Ab(cee.clone());
    if bd.source != m || bd.target != c0 || w.source != ee || w.target != m {
        return Err(vec![Check::fail("stable quadratic module shape", "w: ⊗²Z[E] -> M and d: M -> <E>_nil required")]);
    }
    let images = (0..k * k).map(|n| w.images()[(n % k) * k + n / k].clone()).collect();
    let p = Hom::new(ee, m.clone(), images).expect("twist permutes valid images");
    let c = QuadraticPairModule::new("0-free", c0, m, cee, bd, p, h_0free_map(e))
        .map_err(|err| vec![Check::fail("shape", err.to_string())])?;
    let checks = validate_qpm(&c);
    if checks.iter().all(Check::passed) {
        Ok(c)
    } else {
        Err(checks)
    }
}

/// `C₀ = ℤ` on `e`, `C_ee = ℤ`, `C₁ = ℤ ⊕ ℤ/2` on `u, v` with `∂u = 2e`,
/// `∂v = 0` and `P(e⊗e) = v`. Its `(ℤ,·)`-action on `C₁` is not
/// multiplication, which makes the correction term of the track formula
/// visible.
pub fn qpm_doubling() -> QuadraticPairModule {
    let e = PointedSet::new(["e"]).unwrap();
    let c0 = GroupCarrier::Nil(e.clone());
    let cee = tensor_square(&e);
    let c1 = GroupCarrier::Ab(AbGroup::with_names(vec!["u".into(), "v".into()], 1, vec![2]).unwrap());
    let bd = Hom::new(c1.clone(), c0.clone(), vec![c0.times(&c0.generator(0), 2), c0.zero()]).unwrap();
    let p = Hom::new(GroupCarrier::Ab(cee.clone()), c1.clone(), vec![Elem::Ab(vec![0, 1])]).unwrap();
    QuadraticPairModule::new("qpm_doubling", c0, c1, cee, bd, p, h_0free_map(&e)).unwrap()
}

/// On [`qpm_doubling`]: the weak morphism `g = (3·, (a, b) ↦ (3a, b), 9·)`
/// and the track `α: id ⇒ g` with `α(e) = u`. `g` is not strict, and `α`
/// does not commute with `n*` for `n = 2`.
pub fn doubling_weak_track() -> (QpmMorphism, Track) {
    let c = qpm_doubling();
    let g = QpmMorphism {
        f0: Hom::new(c.c0.clone(), c.c0.clone(), vec![c.c0.times(&c.c0.generator(0), 3)]).unwrap(),
        f1: Hom::new(c.c1.clone(), c.c1.clone(), vec![Elem::Ab(vec![3, 0]), Elem::Ab(vec![0, 1])]).unwrap(),
        fee: Hom::new(c.ee_carrier(), c.ee_carrier(), vec![Elem::Ab(vec![9])]).unwrap(),
    };
    (g, Track::from_values(vec![Elem::Ab(vec![1, 0])]))
}

/// `(pointed map, α values, m)` for the track formula on
/// `qpm_nil({a, b})`: `f = id`, `α(e) = P(e⊗e)`, `m = 1`.
pub fn lemma_tec_nil_data(c: &QuadraticPairModule) -> (Vec<Option<usize>>, Vec<Elem>, i64) {
    let k = c.c0.num_generators();
    let alpha = (0..k)
        .map(|i| {
            let x = c.c0.generator(i);
            c.p_of(&c.cross(&x, &x))
        })
        .collect();
    ((0..k).map(Some).collect(), alpha, 1)
}

/// `(pointed map, α values, m)` on [`qpm_doubling`]: `f = id`, `α(e) = u`,
/// `m = 3`, where the correction `binom2(3)·binom2(n)·P(e|e)_H` is nonzero
/// for `n ≡ 2, 3 mod 4`.
pub fn lemma_tec_doubling_data() -> (Vec<Option<usize>>, Vec<Elem>, i64) {
    (vec![Some(0)], vec![Elem::Ab(vec![1, 0])], 3)
}

/// Ten single-field corruptions of `qpm_nil({a, b})`, each of which the
/// validator must reject.
pub fn qpm_nil_mutations() -> Vec<(&'static str, QuadraticPairModule)> {
    let e = PointedSet::new(["a", "b"]).unwrap();
    let base = qpm_nil(&e);
    let c0 = base.c0.clone();
    let c1 = base.c1.clone();
    let ee = base.ee_carrier();
    let (a, b) = (c0.generator(0), c0.generator(1));
    let ab = c0.commutator(&a, &b);
    // C1 coordinates: (a:b, a:a, b:b); Cee: (a.a, a.b, b.a, b.b)
    let with_bd = |imgs: Vec<Elem>| {
        let mut c = base.clone();
        c.bd = Hom::new(c1.clone(), c0.clone(), imgs).unwrap();
        c
    };
    let with_p = |imgs: Vec<[i64; 3]>| {
        let mut c = base.clone();
        c.p = Hom::new(ee.clone(), c1.clone(), imgs.into_iter().map(|v| Elem::Ab(v.to_vec())).collect()).unwrap();
        c
    };
    let with_cross = |edit: &dyn Fn(&mut Vec<Vec<Vec<i64>>>, &mut Vec<Vec<i64>>)| {
        let mut c = base.clone();
        let mut table = c.h.table().to_vec();
        let mut values = c.h.values().to_vec();
        edit(&mut table, &mut values);
        c.h = QuadraticMap::new(c0.clone(), c.cee.clone(), values, table).unwrap();
        c
    };
    let standard_p = [[0, 1, 0], [-1, 0, 0], [1, 0, 0], [0, 0, 1]];
    let mut out = vec![
        ("boundary negated", with_bd(vec![c0.neg(&ab), c0.zero(), c0.zero()])),
        ("boundary doubled", with_bd(vec![c0.times(&ab, 2), c0.zero(), c0.zero()])),
        ("boundary sends a:a to [a,b]", with_bd(vec![ab.clone(), ab.clone(), c0.zero()])),
        ("P negated", with_p(vec![[0, 1, 0], [1, 0, 0], [-1, 0, 0], [0, 0, 1]])),
        ("P(a.b) sign flipped", with_p(vec![[0, 1, 0], [1, 0, 0], [1, 0, 0], [0, 0, 1]])),
        ("P(a.a) picks up a:b", with_p(vec![[1, 1, 0], standard_p[1], standard_p[2], standard_p[3]])),
        (
            "crossed effect (a|b) negated",
            with_cross(&|t, _| t[0][1] = t[0][1].iter().map(|x| -x).collect()),
        ),
        (
            "crossed effect transposed",
            with_cross(&|t, _| {
                let old = t.clone();
                for (i, row) in t.iter_mut().enumerate() {
                    for (j, v) in row.iter_mut().enumerate() {
                        *v = old[j][i].clone();
                    }
                }
            }),
        ),
        ("crossed effect (b|a) = b.a", with_cross(&|t, _| t[1][0] = vec![0, 0, 1, 0])),
    ];
    // Drop the quotient: C1 = ⊗²Z[E] with P the twist and ∂(x.y) = [x, y].
    let free = super::instances::tensor_square(&e);
    let c1f = GroupCarrier::Ab(free.clone());
    let bd_imgs = (0..4).map(|n| c0.commutator(&c0.generator(n / 2), &c0.generator(n % 2))).collect();
    let p_imgs = (0..4).map(|n| Elem::Ab(TensorElt::basis(2, n % 2, n / 2).to_vec())).collect();
    let mut unreduced = base.clone();
    unreduced.c1 = c1f.clone();
    unreduced.bd = Hom::new(c1f.clone(), c0.clone(), bd_imgs).unwrap();
    unreduced.p = Hom::new(ee.clone(), c1f, p_imgs).unwrap();
    out.push(("reduced quotient dropped", unreduced));
    out
}
