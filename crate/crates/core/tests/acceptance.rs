//! Acceptance suite: one PASS/FAIL line per criterion, each with its time
//! limit. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; the test fails if any criterion does.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use symtrack::actions::{
    crossed_module_from_sign_group, lift_independence, sign_group_sym_track, trivial_sign_group_action,
    validate_crossed_module, validate_sign_action, SignActionFormula,
};
use symtrack::nilgroup::PointedSet;
use symtrack::pin::{
    check_presentation, cup_one_cross_check, cup_one_exponent, enumerate_group, extension_analysis, hat_tau_square,
    lemma_a_check,
};
use symtrack::presentation::{sym_track_presentation, todd_coxeter};
use symtrack::quadratic::instances::{lemma_tec_nil_data, sample_abelian_groups};
use symtrack::quadratic::{
    abelian_square_group, derived_identities, lemma_tec_check, qpm_doubling, qpm_eta, qpm_nil, qpm_nil_mutations,
    validate_qpm, validate_square_group, z_nil_square_group, QuadraticPairModule, SquareGroup,
};
use symtrack::sampling::{Sampler, SAMPLE_COUNT};
use symtrack::scalar::Scalar;
use symtrack::{Check, Permutation, Q2Small, Q2};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn failures(checks: &[Check]) -> Option<String> {
    checks.iter().find(|c| !c.passed()).map(|c| format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("")))
}

fn require(checks: &[Check], context: &str) -> Result<(), String> {
    match failures(checks) {
        Some(f) => Err(format!("{context}: {f}")),
        None => Ok(()),
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn set(k: usize) -> PointedSet {
    PointedSet::new(["a", "b", "c"].into_iter().take(k)).unwrap()
}

fn lemma_a() -> Outcome {
    // τ̂ₖ² for k = 2..6 is the sign (−1)^binom2(k).
    let pattern = [-1, -1, 1, 1, -1];
    for (k, want) in (2..=6).zip(pattern) {
        let a = lemma_a_check::<Q2>(k).map_err(|e| e.to_string())?;
        if a.square != Some(Q2::from_i64(want)) || !a.holds {
            return Err(format!("k = {k}: square {:?}, expected {want}", a.square.map(|s| s.to_string())));
        }
    }
    Ok("k = 2..6 -> -1, -1, +1, +1, -1".into())
}

fn presentation_soundness() -> Outcome {
    let mut total = 0;
    for n in 2..=7 {
        let checks = check_presentation::<Q2>(n).map_err(|e| e.to_string())?;
        require(&checks, &format!("n = {n}"))?;
        total += checks.len();
    }
    Ok(format!("{total} relation instances for n = 2..7"))
}

fn order_agreement() -> Outcome {
    for n in 2..=6 {
        let bfs = enumerate_group::<Q2Small>(n).map_err(|e| e.to_string())?.len();
        if bfs != 2 * factorial(n) {
            return Err(format!("n = {n}: BFS order {bfs}"));
        }
        if n <= 5 {
            let pres = sym_track_presentation(n).map_err(|e| e.to_string())?;
            let tc = todd_coxeter(&pres, 1 << 20).map_err(|e| e.to_string())?;
            if tc.order != bfs {
                return Err(format!("n = {n}: Todd-Coxeter {} vs BFS {bfs}", tc.order));
            }
        }
    }
    Ok("BFS = 2 n! for n = 2..6, Todd-Coxeter agrees for n = 2..5".into())
}

fn extension_dichotomy() -> Outcome {
    let mut notes = Vec::new();
    for n in 2..=6 {
        let a = extension_analysis::<Q2Small>(n).map_err(|e| e.to_string())?;
        if !a.kernel_is_sign || !a.omega_central {
            return Err(format!("n = {n}: kernel or centrality fails"));
        }
        match (n <= 3, &a.section) {
            (true, Some(s)) => notes.push(format!("n={n} section {s:?}")),
            (false, None) if a.failures.len() == a.candidates => {
                notes.push(format!("n={n} {0}/{0} fail", a.candidates))
            }
            _ => return Err(format!("n = {n}: splits = {}, {} failures", a.splits(), a.failures.len())),
        }
    }
    Ok(notes.join("; "))
}

fn delta_fibers() -> Outcome {
    for n in 2..=5 {
        let group = enumerate_group::<Q2Small>(n).map_err(|e| e.to_string())?;
        let mut fibers: HashMap<Permutation, usize> = HashMap::new();
        for x in &group {
            *fibers.entry(x.delta().clone()).or_default() += 1;
        }
        if fibers.len() != factorial(n) || fibers.values().any(|&s| s != 2) {
            return Err(format!("n = {n}: {} fibers, sizes not all 2", fibers.len()));
        }
        let kernel: Vec<_> = group.iter().filter(|x| x.delta().is_identity()).collect();
        if kernel.len() != 2 || !kernel.iter().any(|x| x.is_identity()) || !kernel.iter().any(|x| x.is_omega()) {
            return Err(format!("n = {n}: kernel of delta is not {{1, -1}}"));
        }
        let w = kernel.iter().find(|x| x.is_omega()).unwrap();
        for x in &group {
            if x.mul(w).unwrap() != w.mul(x).unwrap() {
                return Err(format!("n = {n}: -1 does not commute with {x}"));
            }
            let det = x.rho_det().map_err(|e| e.to_string())?;
            if det != Q2Small::from_i64(x.delta().sign()) {
                return Err(format!("n = {n}: det rho({x}) = {det}, sign delta = {}", x.delta().sign()));
            }
        }
    }
    Ok("n = 2..5".into())
}

fn shipped_square_groups() -> Vec<SquareGroup> {
    let mut v = vec![z_nil_square_group()];
    v.extend(sample_abelian_groups().into_iter().map(abelian_square_group));
    v
}

fn shipped_qpms() -> Vec<QuadraticPairModule> {
    vec![qpm_eta(), qpm_nil(&set(1)), qpm_nil(&set(2)), qpm_nil(&set(3)), qpm_doubling()]
}

fn axiom_suites() -> Outcome {
    for x in shipped_square_groups() {
        require(&validate_square_group(&x), &format!("square group {}", x.xe))?;
    }
    for c in shipped_qpms() {
        require(&validate_qpm(&c), &c.name)?;
    }
    let mutations = qpm_nil_mutations();
    if mutations.len() != 10 {
        return Err(format!("{} mutations", mutations.len()));
    }
    for (what, c) in &mutations {
        let checks = validate_qpm(c);
        match checks.iter().find(|c| !c.passed()) {
            Some(f) if f.witness.as_deref().is_some_and(|w| !w.is_empty()) => {}
            Some(f) => return Err(format!("mutation '{what}' fails '{}' without a witness", f.name)),
            None => return Err(format!("mutation '{what}' is accepted")),
        }
    }
    Ok("7 square groups, 5 qpms, 10/10 mutations rejected".into())
}

/// Square-group versions of the derived identities, computed here from
/// `P`, `H` and `n*` directly.
fn square_group_identities(x: &SquareGroup) -> Result<(), String> {
    let mut s = Sampler::standard();
    for z in x.ee_elements(&mut s, SAMPLE_COUNT) {
        if x.t(&x.t(&z)) != z {
            return Err(format!("T^2 on {}", x.xee.show(&z)));
        }
        if x.p(&x.t(&z)) != x.p(&z) {
            return Err(format!("P T on {}", x.xee.show(&z)));
        }
    }
    for a in x.xe.test_elements(&mut s, SAMPLE_COUNT) {
        let v = x.p(&x.h.cross_effect(&a, &a));
        if !x.xe.is_zero(&x.xe.add(&v, &v)) {
            return Err(format!("2 P(x|x)_H at {}", x.xe.show(&a)));
        }
        for m in -2..=3 {
            for n in -2..=3 {
                if x.n_star(m * n, &a) != x.n_star(m, &x.n_star(n, &a)) {
                    return Err(format!("(mn)* at m = {m}, n = {n}, x = {}", x.xe.show(&a)));
                }
            }
        }
    }
    Ok(())
}

fn derived() -> Outcome {
    for x in shipped_square_groups() {
        square_group_identities(&x).map_err(|e| format!("square group {}: {e}", x.xe))?;
    }
    for c in shipped_qpms() {
        require(&derived_identities(&c), &c.name)?;
    }
    Ok("all shipped square groups and qpms".into())
}

fn lemma_tec() -> Outcome {
    let c = qpm_nil(&set(2));
    let (f, alpha, m) = lemma_tec_nil_data(&c);
    let r = lemma_tec_check(&c, &f, &alpha, m);
    let checks: Vec<Check> = r.checks().cloned().collect();
    require(&checks, "qpm_nil(a,b)")?;
    if !r.holds() || r.formula.len() != 8 {
        return Err(format!("{} formula checks", r.formula.len()));
    }
    Ok("n = -3..4 on generators and 64 samples".into())
}

fn actions_bridge() -> Outcome {
    for n in 2..=4 {
        let sg = sign_group_sym_track(n).map_err(|e| e.to_string())?;
        let cm = crossed_module_from_sign_group(&sg, SignActionFormula::Corrected);
        require(&validate_crossed_module(&cm), &format!("Sym~({n})"))?;
        require(&[lift_independence(&sg, SignActionFormula::Corrected)], &format!("Sym~({n})"))?;
    }
    for c in [qpm_eta(), qpm_nil(&set(1)), qpm_nil(&set(2)), qpm_nil(&set(3))] {
        require(&validate_sign_action(&trivial_sign_group_action(&c)), &c.name)?;
    }
    Ok("n = 2..4; trivial action on eta and nil(E), |E| = 1..3".into())
}

/// The ω-exponent of `τ̂ₖ²` in Sym~(2k), read off the Clifford square.
fn omega_exponent(k: usize) -> Result<i64, String> {
    let sq = hat_tau_square::<Q2>(k).map_err(|e| e.to_string())?;
    match (sq.is_identity(), sq.is_omega()) {
        (true, _) => Ok(0),
        (_, true) => Ok(1),
        _ => Err(format!("tau_hat_{k}^2 is not central")),
    }
}

fn cup_one() -> Outcome {
    let evens: Vec<i64> = (2..=12).step_by(2).collect();
    for &n in &evens {
        for &m in &evens {
            let x = cup_one_cross_check::<Q2>(n, m).map_err(|e| e.to_string())?;
            if !x.agrees() {
                return Err(format!("(n, m) = ({n}, {m}): formula {}, exponents {:?}", x.formula, x));
            }
        }
    }
    // The same comparison with τ̂ taken at half the degree does not hold.
    let half = |v: i64| omega_exponent(v as usize / 2);
    let mut mismatches = 0;
    for &n in &evens {
        for &m in &evens {
            let formula = cup_one_exponent(n, m).map_err(|e| e.to_string())?;
            if (half(n)? + half(m)?).rem_euclid(2) != formula {
                mismatches += 1;
            }
        }
    }
    Ok(format!("36/36 pairs via tau_hat_n in Sym~(2n); reading tau_hat_(n/2) mismatches {mismatches}/36"))
}

#[test]
fn acceptance_criteria() {
    let criteria = [
        Criterion { id: 1, title: "Lemma A exact reproduction", limit: secs(1), run: lemma_a },
        Criterion { id: 2, title: "presentation soundness", limit: secs(5), run: presentation_soundness },
        Criterion { id: 3, title: "order agreement", limit: secs(60), run: order_agreement },
        Criterion { id: 4, title: "extension dichotomy", limit: secs(10), run: extension_dichotomy },
        Criterion { id: 5, title: "delta-fiber structure", limit: secs(10), run: delta_fibers },
        Criterion { id: 6, title: "quadratic axiom suites", limit: secs(10), run: axiom_suites },
        Criterion { id: 7, title: "derived identities", limit: secs(5), run: derived },
        Criterion { id: 8, title: "Lemma tec property check", limit: secs(5), run: lemma_tec },
        Criterion { id: 9, title: "actions bridge", limit: secs(60), run: actions_bridge },
        Criterion { id: 10, title: "cup-one exponent consistency", limit: secs(5), run: cup_one },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(note) if elapsed > c.limit => Err(format!("{note}; over the {:?} limit", c.limit)),
            other => other,
        };
        let (tag, note) = match &outcome {
            Ok(n) => ("PASS", n),
            Err(e) => ("FAIL", e),
        };
        println!("{tag}  [{:>2}] {} ({:.2} s, limit {} s)  {note}", c.id, c.title, elapsed.as_secs_f64(), c.limit.as_secs());
        if outcome.is_err() {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
