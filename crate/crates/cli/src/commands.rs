//! Subcommands. Each one builds a [`Report`]; printing and exit codes are
//! handled once in [`run`].

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symtrack::actions::{
    crossed_action_from_sign_action, crossed_module_from_sign_group, lift_independence, monoid_groupoid_from_cm,
    sign_group_sym_track, trivial_sign_group_action, validate_crossed_action, validate_crossed_module,
    validate_monoid_groupoid, validate_sign_action, ActionError, SignActionFormula,
};
use symtrack::nilgroup::PointedSet;
use symtrack::pin::{check_presentation, enumerate_group, extension_analysis, lemma_a_check, PinError};
use symtrack::presentation::{todd_coxeter, FinitePresentation, PresentationError};
use symtrack::quadratic::format::{from_json, Structure};
use symtrack::quadratic::{
    derived_identities, qpm_eta, qpm_nil, validate_qpm, validate_square_group, Part, QuadError, QuadraticPairModule,
};
use symtrack::{Check, PinElement, Q2Small, Report, Q2};
use thiserror::Error;

use crate::lang::{parse, parse_for_dim, LangError};

#[derive(Debug, Parser)]
#[command(name = "symtrack", version, about = "Exact computations in Sym~(n), square groups and quadratic pair modules")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Clifford algebra C+(n).
    #[command(subcommand)]
    Clifford(CliffordCmd),
    /// The symmetric track group Sym~(n) inside Pin+(n).
    #[command(subcommand)]
    Pin(PinCmd),
    /// Finite presentations.
    #[command(subcommand)]
    Present(PresentCmd),
    /// Square groups and quadratic pair modules from JSON descriptions.
    #[command(subcommand)]
    Qpm(QpmCmd),
    /// Crossed modules, sign groups and their actions.
    #[command(subcommand)]
    Actions(ActionsCmd),
}

#[derive(Debug, Subcommand)]
pub enum CliffordCmd {
    /// Evaluates an expression and prints its canonical form.
    Eval {
        #[arg(long)]
        dim: Option<usize>,
        expr: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum PinCmd {
    /// Prints delta(x) in cycle notation, or NOT-MEMBER.
    Delta {
        #[arg(long)]
        dim: Option<usize>,
        word: String,
    },
    /// Compares the BFS order of Sym~(n) with 2*n!.
    Order {
        #[arg(long)]
        n: usize,
    },
    /// Evaluates every relation of the presentation in the Clifford model.
    Relations {
        #[arg(long)]
        n: usize,
    },
    /// Squares tau_hat_k in C+(2k).
    LemmaA {
        #[arg(long)]
        k: usize,
    },
    /// Searches for a section of Sym~(n) -> Sym(n).
    Split {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PresentCmd {
    /// Todd-Coxeter enumeration over the trivial subgroup.
    Tc {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        max: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum QpmCmd {
    /// Runs the axiom suite on a square group or qpm.
    Validate {
        #[arg(long)]
        file: PathBuf,
    },
    /// Evaluates n*x.
    Nstar {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        elem: String,
        /// Degree of the element; ignored for square groups.
        #[arg(long, value_enum, default_value_t = PartArg::C0)]
        part: PartArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PartArg {
    C0,
    C1,
}

#[derive(Debug, Subcommand)]
pub enum ActionsCmd {
    /// Runs one of the action validators.
    Check(ActionsCheck),
}

#[derive(Debug, Args)]
pub struct ActionsCheck {
    #[arg(long, value_enum)]
    pub which: Which,
    /// Degree of Sym~(n) for sym-track-cm and m-of-partial.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Qpm for trivial-action; defaults to eta, nil({a}) and nil({a,b}).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Exponent used in the action of {+-1} x G.
    #[arg(long, value_enum, default_value_t = FormulaArg::Corrected)]
    pub formula: FormulaArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    TrivialAction,
    SymTrackCm,
    MOfPartial,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormulaArg {
    Corrected,
    Literal,
}

impl From<FormulaArg> for SignActionFormula {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::Corrected => SignActionFormula::Corrected,
            FormulaArg::Literal => SignActionFormula::Literal,
        }
    }
}

/// Failures that prevent a report from being produced (exit code 2).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("expression: {0}")]
    Lang(#[from] LangError),
    #[error(transparent)]
    Pin(#[from] PinError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn execute(cmd: &Command) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = match cmd {
        Command::Clifford(CliffordCmd::Eval { dim, expr }) => clifford_eval(*dim, expr)?,
        Command::Pin(c) => pin(c)?,
        Command::Present(PresentCmd::Tc { file, max }) => present_tc(file, *max)?,
        Command::Qpm(c) => qpm(c)?,
        Command::Actions(ActionsCmd::Check(c)) => actions(c)?,
    };
    report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    Ok(report)
}

fn expr_dim(dim: Option<usize>, src: &str) -> Result<(crate::lang::Expr, usize), CliError> {
    Ok(match dim {
        Some(d) => (parse_for_dim(src, d)?, d),
        None => {
            let e = parse(src)?;
            let d = e.min_dim();
            (e, d)
        }
    })
}

fn clifford_eval(dim: Option<usize>, src: &str) -> Result<Report, CliError> {
    let (e, dim) = expr_dim(dim, src)?;
    let value = e.eval(dim)?;
    let mut r = Report::new("clifford eval").input("dim", dim).input("expr", &e);
    r.summary = Some(value.to_string());
    Ok(r)
}

fn pin(cmd: &PinCmd) -> Result<Report, CliError> {
    Ok(match cmd {
        PinCmd::Delta { dim, word } => {
            let (e, dim) = expr_dim(*dim, word)?;
            let value = e.eval(dim)?;
            let delta = PinElement::new(value).ok().and_then(|x| symtrack::pin::membership(&x));
            let mut r = Report::new("pin delta").input("dim", dim).input("word", &e);
            r.summary = Some(delta.map_or_else(|| "NOT-MEMBER".to_string(), |p| p.to_string()));
            r
        }
        PinCmd::Order { n } => {
            let order = enumerate_group::<Q2Small>(*n)?.len();
            let expected = 2 * factorial(*n);
            let mut r = Report::new("pin order").input("n", n);
            let rel = if order == expected { "=" } else { "!=" };
            r.summary = Some(format!("{order} {rel} 2*{n}!"));
            r.push(Check::from_result(
                format!("|Sym~({n})| = 2*{n}!"),
                if order == expected { Ok(()) } else { Err(format!("BFS found {order}, expected {expected}")) },
            ));
            r
        }
        PinCmd::Relations { n } => {
            let checks = check_presentation::<Q2>(*n)?;
            let mut r = Report::new("pin relations").input("n", n);
            let ok = checks.iter().filter(|c| c.passed()).count();
            r.summary = Some(format!("{ok}/{} relations hold", checks.len()));
            r.extend(checks);
            r
        }
        PinCmd::LemmaA { k } => {
            let a = lemma_a_check::<Q2>(*k)?;
            let shown = a.square.as_ref().map_or_else(|| "(not a scalar)".to_string(), ToString::to_string);
            let status = if a.holds { "PASS" } else { "FAIL" };
            let mut r = Report::new("pin lemma-a").input("k", k);
            r.summary = Some(format!("tau_hat^2 = {shown} = omega^{}: {status}", a.exponent));
            r.push(Check::from_result(
                format!("tau_hat_{k}^2 = omega^binom2({k})"),
                if a.holds { Ok(()) } else { Err(format!("square is {shown}")) },
            ));
            r
        }
        PinCmd::Split { n } => {
            let a = extension_analysis::<Q2Small>(*n)?;
            let mut r = Report::new("pin split").input("n", n);
            r.summary = Some(match &a.section {
                Some(signs) => {
                    let s: Vec<String> = signs
                        .iter()
                        .enumerate()
                        .map(|(i, &e)| format!("{}t{}", if e < 0 { "-" } else { "+" }, i + 1))
                        .collect();
                    format!("split: s(sigma_i) = {}", s.join(", "))
                }
                None => format!("non-split: {0}/{0} candidate sections fail", a.candidates),
            });
            r.push(Check::from_result(
                "ker delta = {1, -1}",
                if a.kernel_is_sign { Ok(()) } else { Err(format!("kernel has {} elements", a.kernel_size)) },
            ));
            r.push(Check::from_result(
                "-1 is central",
                if a.omega_central { Ok(()) } else { Err("-1 does not commute with some element".into()) },
            ));
            r.push(Check::from_result(
                "splits iff n = 2 or 3",
                if a.splits() == (*n <= 3) { Ok(()) } else { Err(format!("splits = {} at n = {n}", a.splits())) },
            ));
            r
        }
    })
}

fn present_tc(file: &Path, max: usize) -> Result<Report, CliError> {
    let pres = FinitePresentation::parse(&read(file)?)?;
    let mut r = Report::new("present tc").input("file", file.display()).input("max", max);
    match todd_coxeter(&pres, max) {
        Ok(tc) => {
            r.summary = Some(format!("order {} ({} cosets defined)", tc.order, tc.cosets_defined));
            r.push(Check::pass("coset enumeration completes"));
        }
        Err(PresentationError::Overflow(m)) => {
            r.push(Check::fail("coset enumeration completes", format!("more than {m} cosets")));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn qpm(cmd: &QpmCmd) -> Result<Report, CliError> {
    Ok(match cmd {
        QpmCmd::Validate { file } => {
            let mut r = Report::new("qpm validate").input("file", file.display());
            match from_json(&read(file)?)? {
                Structure::SquareGroup(x) => r.extend(validate_square_group(&x)),
                Structure::Qpm(c) => {
                    let checks = validate_qpm(&c);
                    let ok = checks.iter().all(Check::passed);
                    r.extend(checks);
                    // Derived identities are only meaningful once the axioms hold.
                    if ok {
                        r.extend(derived_identities(&c));
                    }
                }
            }
            let ok = r.checks.iter().filter(|c| c.passed()).count();
            r.summary = Some(format!("{ok}/{} checks pass", r.checks.len()));
            r
        }
        QpmCmd::Nstar { file, n, elem, part } => {
            let mut r = Report::new("qpm nstar").input("file", file.display()).input("n", n).input("elem", elem);
            let shown = match from_json(&read(file)?)? {
                Structure::SquareGroup(x) => {
                    let v = x.xe.parse(elem)?;
                    x.xe.show(&x.n_star(*n, &v))
                }
                Structure::Qpm(c) => {
                    let part = match part {
                        PartArg::C0 => Part::C0,
                        PartArg::C1 => Part::C1,
                    };
                    let v = c.carrier(part).parse(elem)?;
                    c.show(part, &c.n_star(part, *n, &v))
                }
            };
            r.summary = Some(shown);
            r
        }
    })
}

fn actions(c: &ActionsCheck) -> Result<Report, CliError> {
    let which = c.which.to_possible_value().expect("no skipped variants").get_name().to_string();
    let mut r = Report::new("actions check").input("which", &which);
    match c.which {
        Which::TrivialAction => {
            let qpms: Vec<QuadraticPairModule> = match &c.file {
                Some(path) => match from_json(&read(path)?)? {
                    Structure::Qpm(q) => vec![q],
                    Structure::SquareGroup(_) => {
                        return Err(QuadError::Shape("trivial-action needs a qpm, not a square group".into()).into())
                    }
                },
                None => {
                    let set = |names: &[&str]| PointedSet::new(names.iter().copied()).expect("distinct names");
                    vec![qpm_eta(), qpm_nil(&set(&["a"])), qpm_nil(&set(&["a", "b"]))]
                }
            };
            for q in &qpms {
                let a = trivial_sign_group_action(q);
                let tag = |c: Check| Check { name: format!("{}: {}", q.name, c.name), ..c };
                let checks = validate_sign_action(&a);
                let ok = checks.iter().all(Check::passed);
                r.extend(checks.into_iter().map(tag));
                if ok {
                    r.extend(validate_crossed_action(&crossed_action_from_sign_action(&a)).into_iter().map(tag));
                }
            }
        }
        Which::SymTrackCm => {
            r = r.input("n", c.n).input("formula", format!("{:?}", c.formula).to_lowercase());
            let sg = sign_group_sym_track(c.n)?;
            let cm = crossed_module_from_sign_group(&sg, c.formula.into());
            r.extend(validate_crossed_module(&cm));
            r.push(lift_independence(&sg, c.formula.into()));
        }
        Which::MOfPartial => {
            r = r.input("n", c.n).input("formula", format!("{:?}", c.formula).to_lowercase());
            let sg = sign_group_sym_track(c.n)?;
            let m = monoid_groupoid_from_cm(&crossed_module_from_sign_group(&sg, c.formula.into()))?;
            r.summary = Some(format!("{} objects, {} morphisms", m.num_objects(), m.num_morphisms()));
            r.extend(validate_monoid_groupoid(&m));
        }
    }
    if r.summary.is_none() {
        let ok = r.checks.iter().filter(|c| c.passed()).count();
        r.summary = Some(format!("{ok}/{} checks pass", r.checks.len()));
    }
    Ok(r)
}

/// Exit code for a finished report: 0 if every check passed, 1 otherwise.
pub fn exit_code(report: &Report) -> i32 {
    i32::from(!report.all_pass())
}

/// Human-readable form: the summary line followed by the failing checks,
/// or every check when there is no summary.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    if let Some(s) = &report.summary {
        out.push_str(s);
        out.push('\n');
    }
    let all = report.summary.is_none();
    for c in report.checks.iter().filter(|c| all || !c.passed()) {
        out.push_str(&c.to_string());
        out.push('\n');
    }
    out
}
