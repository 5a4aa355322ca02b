//! `entsym` — batch front-end for the entropy-symbol toolkit.
//!
//! Subcommands: `identities`, `entropy`, `joint`, `diagram`, `deform`.
//! Human-readable summary goes to stdout; structured JSON to `--json <path>`.
//! Exit codes: 0 all checks pass, 1 check failure, 2 input error.

mod random;
mod suites;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use entsym::deform::{check_dual_lemmas, deform_five_term, five_term_dual, four_term_element};
use entsym::diagram::{boundary_signature, evaluate, jmath, parse_diagram};
use entsym::entropy::{
    chain_decompose, conditional_entropy, joint_entropy, mutual_information_all, shannon,
    Axis, Distribution, JointTable, Mode,
};
use entsym::exact::parse_number;
use entsym::symbols::{chi, eval_entropy_real, is_zero_beta, rat_to_f64};
use entsym::{Error, JExpr, Rat};
use serde_json::{json, Value};

use random::{rand_rat_where, trial_rng};
use suites::{exact_suites, numeric_suites, SuiteResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RunMode {
    Exact,
    Numeric,
    Both,
}

#[derive(Parser)]
#[command(name = "entsym", version, about = "Exact and numeric checks for entropy symbol algebra")]
struct Cli {
    /// RNG seed; every report is reproducible from it
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Trials per randomized suite
    #[arg(long, global = true, default_value_t = 100)]
    trials: u64,
    /// Logarithm base: e, 2, 10, or any real > 0, != 1
    #[arg(long, global = true, default_value = "e")]
    base: String,
    /// Which identity suites to run
    #[arg(long, global = true, value_enum, default_value_t = RunMode::Both)]
    mode: RunMode,
    /// Numeric tolerance for residual checks
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
    /// Write the JSON report here
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the randomized exact/numeric identity suites
    Identities,
    /// Entropy of a distribution, optionally with its chain decomposition
    Entropy {
        /// Comma-separated probabilities (decimal or p/q)
        #[arg(long)]
        dist: String,
        /// Emit the symbolic chain decomposition
        #[arg(long)]
        decompose: bool,
    },
    /// Joint/conditional entropy and mutual information from a CSV table
    Joint {
        /// CSV file, rows = X outcomes, columns = Y outcomes
        file: PathBuf,
    },
    /// Evaluate a diagram DSL file
    Diagram {
        file: PathBuf,
        /// Absorb the invariant into the boundary wall
        #[arg(long)]
        wall: bool,
        /// Compare invariants of this file against a second one
        #[arg(long, value_name = "FILE")]
        check_invariance: Option<PathBuf>,
    },
    /// Check the dual-number deformation at (a,b), or over random trials
    Deform {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
}

/// Validated run configuration shared by all subcommands.
pub struct RunConfig {
    pub seed: u64,
    pub trials: u64,
    pub base: f64,
    pub mode: RunMode,
    pub tolerance: f64,
}

fn parse_base(s: &str) -> Result<f64, String> {
    let b = match s {
        "e" => std::f64::consts::E,
        other => other
            .parse::<f64>()
            .map_err(|_| format!("base must be `e` or a real number, got `{other}`"))?,
    };
    if !b.is_finite() || b <= 0.0 || b == 1.0 {
        return Err(format!("base must be positive and != 1, got {b}"));
    }
    Ok(b)
}

fn config(cli: &Cli) -> Result<RunConfig, String> {
    if cli.tolerance <= 0.0 || !cli.tolerance.is_finite() {
        return Err(format!("tolerance must be > 0, got {}", cli.tolerance));
    }
    if cli.trials < 1 {
        return Err("trials must be >= 1".into());
    }
    Ok(RunConfig {
        seed: cli.seed,
        trials: cli.trials,
        base: parse_base(&cli.base)?,
        mode: cli.mode,
        tolerance: cli.tolerance,
    })
}

fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::Propagation { .. } => 1,
        Error::Domain(_) | Error::Input(_) => 2,
    }
}

fn write_report(path: &Option<PathBuf>, report: &Value) -> Result<(), String> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(report).expect("report serializes");
        fs::write(p, text + "\n").map_err(|e| format!("cannot write {}: {e}", p.display()))?;
    }
    Ok(())
}

fn cmd_identities(cfg: &RunConfig, json_path: &Option<PathBuf>) -> Result<u8, String> {
    let start = Instant::now();
    let mut results: Vec<SuiteResult> = Vec::new();
    if cfg.mode != RunMode::Numeric {
        results.extend(exact_suites(cfg));
    }
    if cfg.mode != RunMode::Exact {
        results.extend(numeric_suites(cfg));
    }
    let mut all_pass = true;
    for r in &results {
        let verdict = if r.all_pass() { "pass" } else { "FAIL" };
        println!("{:<36} {:>6}/{:<6} {}", r.name, r.passes, r.trials, verdict);
        all_pass &= r.all_pass();
    }
    let report = json!({
        "command": "identities",
        "config": {
            "seed": cfg.seed, "trials": cfg.trials, "base": cfg.base,
            "mode": format!("{:?}", cfg.mode).to_lowercase(), "tolerance": cfg.tolerance,
        },
        "suites": results.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "all_pass": all_pass,
        "elapsed_ms": start.elapsed().as_millis() as u64,
    });
    write_report(json_path, &report)?;
    println!("identities: {}", if all_pass { "all pass" } else { "FAILURES" });
    Ok(if all_pass { 0 } else { 1 })
}

fn parse_dist(spec: &str) -> Result<Distribution, Error> {
    let probs: Vec<Rat> = spec
        .split(',')
        .map(|tok| parse_number(tok.trim()))
        .collect::<Result<_, _>>()?;
    Distribution::new(probs, Mode::Lenient)
}

fn cmd_entropy(
    cfg: &RunConfig,
    dist: &str,
    decompose: bool,
    json_path: &Option<PathBuf>,
) -> Result<u8, String> {
    let d = match parse_dist(dist) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(2);
        }
    };
    let h = shannon(&d, cfg.base);
    println!("H = {h} (base {})", cfg.base);
    let mut report = json!({
        "command": "entropy",
        "dist": d.probs().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "base": cfg.base,
        "H": h,
    });
    if decompose {
        let e = if d.len() >= 2 { chain_decompose(&d).map_err(|e| e.to_string())? } else { JExpr::zero() };
        for (c, a, b) in e.terms() {
            let one = j_symbol_value(a, b, cfg.base);
            println!("  {c}·<{a},{b}>  =  {}", rat_to_f64(c) * one);
        }
        let total = eval_entropy_real(&e, cfg.base);
        println!("  decomposition total = {total} (residual {})", (total - h).abs());
        report["decomposition"] = e.to_json();
        report["decomposition_value"] = json!(total);
        report["residual"] = json!((total - h).abs());
    }
    write_report(json_path, &report)?;
    Ok(0)
}

/// Numeric value of a single <a,b> = (a+b) H(a/(a+b)).
fn j_symbol_value(a: &Rat, b: &Rat, base: f64) -> f64 {
    let sum = a + b;
    rat_to_f64(&sum) * entsym::entropy::h_extended(rat_to_f64(a) / rat_to_f64(&sum), base)
}

fn parse_csv(path: &PathBuf) -> Result<JointTable, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (j, cell) in line.split(',').enumerate() {
            let v = parse_number(cell.trim()).map_err(|_| {
                Error::Input(format!(
                    "malformed cell `{}` at row {}, column {}",
                    cell.trim(),
                    i + 1,
                    j + 1
                ))
            })?;
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Input(format!(
                    "row {} has {} cells, expected {}",
                    i + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    let (n, m) = (rows.len(), rows.first().map_or(0, |r| r.len()));
    JointTable::new(n, m, rows.into_iter().flatten().collect())
}

fn cmd_joint(cfg: &RunConfig, file: &PathBuf, json_path: &Option<PathBuf>) -> Result<u8, String> {
    let t = match parse_csv(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(error_exit_code(&e));
        }
    };
    let base = cfg.base;
    let hxy = joint_entropy(&t, base);
    let hx_given_y = conditional_entropy(&t, Axis::Y, base).map_err(|e| e.to_string())?;
    let hy_given_x = conditional_entropy(&t, Axis::X, base).map_err(|e| e.to_string())?;
    let mi = mutual_information_all(&t, base).map_err(|e| e.to_string())?;
    let decomposition_residual =
        (hxy - eval_entropy_real(&entsym::entropy::joint_decompose(&t), base)).abs();
    println!("H(X,Y) = {hxy}");
    println!("H(X|Y) = {hx_given_y}");
    println!("H(Y|X) = {hy_given_x}");
    println!("I(X;Y) = {} (formulas: {:?})", mi[0], mi);
    println!("decomposition residual = {decomposition_residual}");
    let ok = decomposition_residual <= cfg.tolerance;
    let report = json!({
        "command": "joint",
        "rows": t.rows(), "cols": t.cols(), "base": base,
        "H_XY": hxy, "H_X_given_Y": hx_given_y, "H_Y_given_X": hy_given_x,
        "I_XY": mi.to_vec(),
        "decomposition_residual": decomposition_residual,
        "pass": ok,
    });
    write_report(json_path, &report)?;
    Ok(if ok { 0 } else { 1 })
}

fn load_diagram(path: &PathBuf) -> Result<entsym::diagram::Diagram, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        2u8
    })?;
    parse_diagram(&text).map_err(|errs| {
        for e in errs {
            eprintln!("{}: {e}", path.display());
        }
        1u8
    })
}

fn cmd_diagram(
    cfg: &RunConfig,
    file: &PathBuf,
    wall: bool,
    other: &Option<PathBuf>,
    json_path: &Option<PathBuf>,
) -> Result<u8, String> {
    let d = match load_diagram(file) {
        Ok(d) => d,
        Err(code) => return Ok(code),
    };
    if let Some(other) = other {
        let d2 = match load_diagram(other) {
            Ok(d) => d,
            Err(code) => return Ok(code),
        };
        let (s1, s2) = (
            boundary_signature(&d).map_err(|e| e.to_string())?,
            boundary_signature(&d2).map_err(|e| e.to_string())?,
        );
        if s1 != s2 {
            eprintln!("error: boundary signatures differ; invariance comparison undefined");
            return Ok(2);
        }
        let (j1, j2) = (jmath(&d).map_err(|e| e.to_string())?, jmath(&d2).map_err(|e| e.to_string())?);
        let diff = j1.clone() - j2.clone();
        let equal = chi(&diff).map_err(|e| e.to_string())?.is_zero();
        println!("chi-equal: {equal}");
        let report = json!({
            "command": "diagram",
            "files": [file.display().to_string(), other.display().to_string()],
            "invariant_left": j1.to_json(),
            "invariant_right": j2.to_json(),
            "chi_equal": equal,
        });
        write_report(json_path, &report)?;
        return Ok(if equal { 0 } else { 1 });
    }
    match evaluate(&d, cfg.base, wall) {
        Ok(res) => {
            println!("invariant: {}", jmath(&d).map_err(|e| e.to_string())?);
            println!("entropy value = {} (base {})", res.entropy_value, cfg.base);
            let report = json!({
                "command": "diagram",
                "file": file.display().to_string(),
                "result": res.to_json(),
            });
            write_report(json_path, &report)?;
            Ok(0)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(error_exit_code(&e))
        }
    }
}

fn deform_pair_report(a: &Rat, b: &Rat) -> Result<(Value, bool), Error> {
    let lemmas = check_dual_lemmas(a, b)?;
    let five = five_term_dual(a, b)?;
    let lin = deform_five_term(a, b)?;
    let four = four_term_element(a, b)?;
    let termwise = lin == four;
    let oracle = is_zero_beta(&lin)?;
    let pass = lemmas.all_pass() && termwise && oracle;
    let report = json!({
        "a": a.to_string(), "b": b.to_string(),
        "lemmas": lemmas.to_json(),
        "five_term_args": five.to_json()["terms"],
        "linearized": lin.to_json(),
        "four_term": four.to_json(),
        "termwise_equal": termwise,
        "oracle_zero": oracle,
    });
    Ok((report, pass))
}

fn cmd_deform(
    cfg: &RunConfig,
    a: &Option<String>,
    b: &Option<String>,
    json_path: &Option<PathBuf>,
) -> Result<u8, String> {
    match (a, b) {
        (Some(a), Some(b)) => {
            let parse = |s: &str| parse_number(s).map_err(|e| e.to_string());
            let (a, b) = (parse(a)?, parse(b)?);
            match deform_pair_report(&a, &b) {
                Ok((report, pass)) => {
                    println!(
                        "deform ({a},{b}): lemmas {}, termwise_equal {}, oracle_zero {}",
                        report["lemmas"], report["termwise_equal"], report["oracle_zero"]
                    );
                    write_report(json_path, &report)?;
                    Ok(if pass { 0 } else { 1 })
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(error_exit_code(&e))
                }
            }
        }
        (None, None) => {
            let mut passes = 0u64;
            let mut counterexample = None;
            for trial in 0..cfg.trials {
                let mut rng = trial_rng(cfg.seed, 20, trial);
                let a = rand_rat_where(&mut rng, |r| {
                    use num_traits::{One, Zero};
                    !r.is_zero() && !r.is_one()
                });
                let b = rand_rat_where(&mut rng, |r| {
                    use num_traits::{One, Zero};
                    !r.is_zero() && !r.is_one() && r != &a
                });
                match deform_pair_report(&a, &b) {
                    Ok((_, true)) => passes += 1,
                    Ok((report, false)) => {
                        counterexample.get_or_insert(json!({"trial": trial, "report": report}));
                    }
                    Err(e) => {
                        counterexample.get_or_insert(
                            json!({"trial": trial, "a": a.to_string(), "b": b.to_string(), "error": e.to_string()}),
                        );
                    }
                }
            }
            let all = passes == cfg.trials;
            println!("deform: {passes}/{} pass", cfg.trials);
            let report = json!({
                "command": "deform",
                "seed": cfg.seed, "trials": cfg.trials,
                "passes": passes, "all_pass": all,
                "counterexample": counterexample,
            });
            write_report(json_path, &report)?;
            Ok(if all { 0 } else { 1 })
        }
        _ => Err("provide both --a and --b, or neither (trial mode)".into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(&cli) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.cmd {
        Cmd::Identities => cmd_identities(&cfg, &cli.json),
        Cmd::Entropy { dist, decompose } => cmd_entropy(&cfg, dist, *decompose, &cli.json),
        Cmd::Joint { file } => cmd_joint(&cfg, file, &cli.json),
        Cmd::Diagram { file, wall, check_invariance } => {
            cmd_diagram(&cfg, file, *wall, check_invariance, &cli.json)
        }
        Cmd::Deform { a, b } => cmd_deform(&cfg, a, b, &cli.json),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
