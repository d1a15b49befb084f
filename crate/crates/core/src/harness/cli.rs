//! Command-line front end. Every subcommand reads and writes the JSON forms
//! of the library types; `experiment run` writes CSV.
//!
//! Exit codes: 0 success, 1 a check or experiment cell failed, 2 bad input.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::designs::{
    build_verified, verify_list_disjunct, verify_list_union_free, verify_strongly_list_disjunct,
    verify_strongly_list_union_free, BinaryDesign, DesignKind, DesignRequest, ListSize, VerificationReport,
    VerifyOptions, DEFAULT_PAIR_BUDGET,
};
use crate::error::{Error, Result};
use crate::harness::{decode, parse_records, run_experiment, ExperimentConfig, Scheme};
use crate::oracles::{
    cauchy_check, descartes_check, gaussian_separation_estimate, kernel_independence_check,
    lower_bound_measurements, random_polynomial, separation_closed_form, SparsePolynomial,
};
use crate::recovery::trim_to_approximate;
use crate::seed::rng_from_seed;
use crate::sensing::{
    attach_generic_constants, build_dynamic_range, build_gaussian, build_prime_log, build_same_sign, FloatTolerance,
    SensingMatrix, SignVector,
};
use crate::signals::{random_sparse, SignalClass, SparseSignal};

#[derive(Parser, Debug)]
#[command(name = "onebitcs", version, about = "Universal support recovery from one-bit measurements")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build or certify a binary design.
    #[command(subcommand)]
    Design(DesignCommand),
    /// Build a real sensing matrix.
    #[command(subcommand)]
    Sense(SenseCommand),
    /// Generate signals.
    #[command(subcommand)]
    Signal(SignalCommand),
    /// Compute y = sign(Ax).
    Measure(MeasureArgs),
    /// Decode a support estimate from y.
    Recover(RecoverArgs),
    /// Run an oracle check.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run a parameter sweep.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Args, Debug, Clone, Copy)]
struct SeedArg {
    /// Master seed.
    #[arg(long, env = "ONEBITCS_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct OutArg {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum KindArg {
    ListDisjunct,
    StronglyListDisjunct,
    ListUnionFree,
    StronglyListUnionFree,
}

#[derive(Subcommand, Debug)]
enum DesignCommand {
    Build {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Fixed list size (list_disjunct, list_union_free).
        #[arg(long)]
        ell: Option<usize>,
        /// List fraction (strongly_* kinds).
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        m_scale: f64,
        /// Skip brute-force verification.
        #[arg(long)]
        no_verify: bool,
        #[arg(long, default_value_t = 50)]
        max_attempts: u32,
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        budget: u64,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Verify a design against its recorded parameters, or the given ones.
    Verify {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        budget: u64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FamilyArg {
    GenericReal,
    DynamicRange,
    PrimeLog,
    SameSign,
    Gaussian,
}

#[derive(Subcommand, Debug)]
enum SenseCommand {
    Build {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Base design (all families but gaussian).
        #[arg(long)]
        design: Option<PathBuf>,
        #[arg(long)]
        eta: Option<f64>,
        /// Same-sign bound R.
        #[arg(long)]
        r: Option<usize>,
        /// Gaussian rows.
        #[arg(long)]
        m: Option<usize>,
        /// Gaussian columns.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ClassArg {
    GeneralReal,
    Rational,
    BoundedKappa,
    BoundedRho,
    Binary,
}

#[derive(Subcommand, Debug)]
enum SignalCommand {
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        denom_bound: Option<u32>,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Args, Debug)]
struct ToleranceArgs {
    /// Float-path zero threshold relative to ‖A^i‖₁·‖x‖_∞.
    #[arg(long, default_value_t = 1e-9)]
    tol_relative: f64,
    /// Absolute float-path zero threshold (overrides --tol-relative).
    #[arg(long)]
    tol_absolute: Option<f64>,
}

impl ToleranceArgs {
    fn tolerance(&self) -> FloatTolerance {
        match self.tol_absolute {
            Some(t) => FloatTolerance::Absolute(t),
            None => FloatTolerance::Relative(self.tol_relative),
        }
    }
}

#[derive(Args, Debug)]
struct MeasureArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    signal: PathBuf,
    #[command(flatten)]
    tol: ToleranceArgs,
    #[command(flatten)]
    out: OutArg,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum AlgorithmArg {
    Approx,
    SupersetReals,
    Dynrange,
    Rationals,
    SameSign,
}

impl From<AlgorithmArg> for Scheme {
    fn from(a: AlgorithmArg) -> Scheme {
        match a {
            AlgorithmArg::Approx => Scheme::Approx,
            AlgorithmArg::SupersetReals => Scheme::SupersetReals,
            AlgorithmArg::Dynrange => Scheme::Dynrange,
            AlgorithmArg::Rationals => Scheme::Rationals,
            AlgorithmArg::SameSign => Scheme::SameSign,
        }
    }
}

#[derive(Args, Debug)]
struct RecoverArgs {
    #[arg(long, value_enum)]
    algorithm: AlgorithmArg,
    #[arg(long)]
    matrix: PathBuf,
    /// Sign vector: a string over `-0+`, optionally JSON-quoted.
    #[arg(long)]
    y: PathBuf,
    #[arg(long)]
    eps: Option<f64>,
    /// Sparsity bound (superset_reals regime check).
    #[arg(long)]
    k: Option<usize>,
    /// Attach the diff against this signal's support.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Trim a superset estimate to an approximate one at --eps.
    #[arg(long)]
    trim: bool,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Root-magnitude check; random polynomials unless --poly is given.
    Cauchy {
        /// Terms as `coef@exponent`, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long, default_value_t = 4.0)]
        eta: f64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Positive-root count against coefficient sign changes.
    Descartes {
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Full-weight generic columns stay outside the span of the others.
    Kernel {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Sign disagreement rate of two unit vectors at inner product --dot.
    Separation {
        #[arg(long, allow_hyphen_values = true)]
        dot: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Measurement lower-bound estimate.
    LowerBound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        eps: f64,
    },
}

#[derive(Subcommand, Debug)]
enum ExperimentCommand {
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's seed.
        #[arg(long, env = "ONEBITCS_SEED")]
        seed: Option<u64>,
        /// Write per-trial records (JSON lines) here.
        #[arg(long)]
        records: Option<PathBuf>,
        /// Emit the full JSON report instead of CSV.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        out: OutArg,
    },
    /// Recompute a JSON report's rates from its per-trial records.
    Audit {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        records: PathBuf,
    },
}

/// Result of a subcommand: its output and whether its check passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }

    fn check(text: String, passed: bool) -> Self {
        Outcome { text, passed }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &OutArg, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn list_size(ell: Option<usize>, delta: Option<f64>, strong: bool) -> Result<ListSize> {
    match (strong, ell, delta) {
        (false, Some(ell), None) => Ok(ListSize::Ell(ell)),
        (true, None, Some(delta)) => Ok(ListSize::Delta(delta)),
        (false, _, _) => Err(Error::invalid("this kind needs --ell (and no --delta)")),
        (true, _, _) => Err(Error::invalid("strongly_* kinds need --delta (and no --ell)")),
    }
}

fn design_build(cmd: &DesignCommand) -> Result<Outcome> {
    let DesignCommand::Build {
        kind,
        n,
        k,
        ell,
        delta,
        alpha,
        m_scale,
        no_verify,
        max_attempts,
        budget,
        seed,
        out,
    } = cmd
    else {
        unreachable!()
    };
    let (n, k, alpha) = (*n, *k, *alpha);
    let request = match kind {
        KindArg::ListDisjunct => match list_size(*ell, *delta, false)? {
            ListSize::Ell(l) => DesignRequest::list_disjunct(n, k, l),
            ListSize::Delta(_) => unreachable!(),
        },
        KindArg::ListUnionFree => match list_size(*ell, *delta, false)? {
            ListSize::Ell(l) => DesignRequest::list_union_free(n, k, l, alpha),
            ListSize::Delta(_) => unreachable!(),
        },
        KindArg::StronglyListDisjunct => match list_size(*ell, *delta, true)? {
            ListSize::Delta(d) => DesignRequest::strongly_list_disjunct(n, k, d),
            ListSize::Ell(_) => unreachable!(),
        },
        KindArg::StronglyListUnionFree => match list_size(*ell, *delta, true)? {
            ListSize::Delta(d) => DesignRequest::strongly_list_union_free(n, k, d, alpha),
            ListSize::Ell(_) => unreachable!(),
        },
    }
    .with_m_scale(*m_scale);
    let options = VerifyOptions {
        enabled: !no_verify,
        max_attempts: *max_attempts,
        budget: *budget,
    };
    let design = build_verified(&request, seed.seed, options)?;
    emit(out, &design.to_json())?;
    Ok(Outcome::ok(String::new()))
}

fn design_verify(cmd: &DesignCommand) -> Result<Outcome> {
    let DesignCommand::Verify {
        design,
        k,
        ell,
        delta,
        alpha,
        budget,
    } = cmd
    else {
        unreachable!()
    };
    let design = BinaryDesign::from_json(&read(design)?)?;
    let p = design.params().clone();
    let k = k.unwrap_or(p.k);
    let kind = match p.kind {
        DesignKind::Explicit => match (alpha.is_some(), delta.is_some()) {
            (false, false) => DesignKind::ListDisjunct,
            (false, true) => DesignKind::StronglyListDisjunct,
            (true, false) => DesignKind::ListUnionFree,
            (true, true) => DesignKind::StronglyListUnionFree,
        },
        kind => kind,
    };
    let alpha = alpha.or(p.alpha).unwrap_or(0.5);
    let ell = || ell.or(p.ell).ok_or_else(|| Error::invalid("--ell required"));
    let delta = || delta.or(p.delta).ok_or_else(|| Error::invalid("--delta required"));
    let report: VerificationReport = match kind {
        DesignKind::ListUnionFree => verify_list_union_free(&design, k, ell()?, alpha, *budget)?,
        DesignKind::StronglyListUnionFree => verify_strongly_list_union_free(&design, k, delta()?, alpha, *budget)?,
        DesignKind::StronglyListDisjunct => verify_strongly_list_disjunct(&design, k, delta()?, *budget)?,
        _ => verify_list_disjunct(&design, k, ell()?, *budget)?,
    };
    let text = serde_json::json!({
        "passed": report.passed,
        "pairs_checked": report.pairs_checked,
        "witness": report.witness.as_ref().map(|w| serde_json::json!({"s": w.s, "t": w.t})),
    });
    Ok(Outcome::check(text.to_string(), report.passed))
}

fn sense_build(cmd: &SenseCommand) -> Result<Outcome> {
    let SenseCommand::Build {
        family,
        design,
        eta,
        r,
        m,
        n,
        seed,
        out,
    } = cmd;
    let base = || -> Result<BinaryDesign> {
        let path = design.as_ref().ok_or_else(|| Error::invalid("--design required"))?;
        BinaryDesign::from_json(&read(path)?)
    };
    let matrix = match family {
        FamilyArg::GenericReal => attach_generic_constants(&base()?, &mut rng_from_seed(seed.seed)),
        FamilyArg::DynamicRange => {
            build_dynamic_range(&base()?, eta.ok_or_else(|| Error::invalid("--eta required"))?)?
        }
        FamilyArg::PrimeLog => build_prime_log(&base()?),
        FamilyArg::SameSign => build_same_sign(&base()?, r.ok_or_else(|| Error::invalid("--r required"))?),
        FamilyArg::Gaussian => build_gaussian(
            m.ok_or_else(|| Error::invalid("--m required"))?,
            n.ok_or_else(|| Error::invalid("--n required"))?,
            &mut rng_from_seed(seed.seed),
        )?,
    };
    emit(out, &matrix.to_json())?;
    Ok(Outcome::ok(String::new()))
}

fn signal_random(cmd: &SignalCommand) -> Result<Outcome> {
    let SignalCommand::Random {
        n,
        k,
        class,
        eta,
        r,
        denom_bound,
        seed,
        out,
    } = cmd;
    let need = |what: &str| Error::invalid(format!("--{what} required for this class"));
    let class = match class {
        ClassArg::GeneralReal => SignalClass::GeneralReal,
        ClassArg::Rational => SignalClass::Rational {
            denom_bound: denom_bound.ok_or_else(|| need("denom-bound"))?,
        },
        ClassArg::BoundedKappa => SignalClass::BoundedKappa {
            eta: eta.ok_or_else(|| need("eta"))?,
        },
        ClassArg::BoundedRho => SignalClass::BoundedRho {
            r: r.ok_or_else(|| need("r"))?,
        },
        ClassArg::Binary => SignalClass::Binary,
    };
    let x = random_sparse(*n, *k, class, &mut rng_from_seed(seed.seed))?;
    emit(out, &x.to_json())?;
    Ok(Outcome::ok(String::new()))
}

fn parse_signs(text: &str) -> Result<SignVector> {
    text.trim().trim_matches('"').parse()
}

fn measure(args: &MeasureArgs) -> Result<Outcome> {
    let a = SensingMatrix::from_json(&read(&args.matrix)?)?;
    let x = SparseSignal::from_json(&read(&args.signal)?)?;
    let y = a.measure(&x, args.tol.tolerance())?;
    emit(&args.out, &y.to_string())?;
    Ok(Outcome::ok(String::new()))
}

fn recover(args: &RecoverArgs) -> Result<Outcome> {
    let a = SensingMatrix::from_json(&read(&args.matrix)?)?;
    let y = parse_signs(&read(&args.y)?)?;
    let scheme = Scheme::from(args.algorithm);
    let needs_eps = matches!(scheme, Scheme::Approx | Scheme::SupersetReals) || args.trim;
    let eps = match args.eps {
        Some(e) => e,
        None if needs_eps => return Err(Error::invalid("--eps required")),
        None => 0.0,
    };
    let k = match (scheme, args.k) {
        (Scheme::SupersetReals, None) => return Err(Error::invalid("--k required for superset_reals")),
        (_, k) => k.unwrap_or(0),
    };
    if matches!(scheme, Scheme::Approx) && a.base().is_none() {
        return Err(Error::invalid("approx needs a matrix with a base design"));
    }
    let mut est = decode(scheme, &a, &y, eps, k)?;
    if let Some(path) = &args.truth {
        est = est.with_truth(&SparseSignal::from_json(&read(path)?)?.support());
    }
    if args.trim {
        est = trim_to_approximate(&est, eps)?;
    }
    emit(&args.out, &est.to_json())?;
    Ok(Outcome::ok(String::new()))
}

/// Parses `coef@exp,coef@exp,...`; coefficients may be `a/b` rationals.
fn parse_poly(text: &str) -> Result<SparsePolynomial> {
    let mut terms = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (c, e) = part
            .split_once('@')
            .ok_or_else(|| Error::invalid(format!("term {part:?} is not coef@exponent")))?;
        let e: u32 = e
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad exponent in {part:?}")))?;
        let c = match crate::rational::parse(c) {
            Ok(c) => c,
            Err(_) => crate::rational::from_f64(
                c.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::invalid(format!("bad coefficient in {part:?}")))?,
            )?,
        };
        terms.push((c, e));
    }
    Ok(SparsePolynomial::new(terms))
}

fn oracle(cmd: &OracleCommand) -> Result<Outcome> {
    let summary = |name: &str, passed: usize, total: usize| {
        Outcome::check(
            serde_json::json!({"oracle": name, "passed": passed, "total": total}).to_string(),
            passed == total,
        )
    };
    match cmd {
        OracleCommand::Cauchy {
            poly,
            eta,
            count,
            max_degree,
            seed,
        } => {
            let polys = match poly {
                Some(p) => vec![parse_poly(p)?],
                None => {
                    let mut rng = rng_from_seed(seed.seed);
                    (0..*count).map(|_| random_polynomial(*max_degree, 6, *eta, &mut rng)).collect()
                }
            };
            let mut passed = 0;
            for p in &polys {
                passed += cauchy_check(p, *eta)? as usize;
            }
            Ok(summary("cauchy", passed, polys.len()))
        }
        OracleCommand::Descartes {
            poly,
            count,
            max_degree,
            seed,
        } => {
            let polys = match poly {
                Some(p) => vec![parse_poly(p)?],
                None => {
                    let mut rng = rng_from_seed(seed.seed);
                    (0..*count).map(|_| random_polynomial(*max_degree, 6, 10.0, &mut rng)).collect()
                }
            };
            let mut passed = 0;
            for p in &polys {
                passed += descartes_check(p)? as usize;
            }
            Ok(summary("descartes", passed, polys.len()))
        }
        OracleCommand::Kernel { r, s, trials, seed } => {
            let ok = kernel_independence_check(*r, *s, *trials, &mut rng_from_seed(seed.seed))?;
            Ok(Outcome::check(
                serde_json::json!({"oracle": "kernel", "r": r, "s": s, "trials": trials, "passed": ok}).to_string(),
                ok,
            ))
        }
        OracleCommand::Separation { dot, trials, seed } => {
            if !(-1.0..=1.0).contains(dot) {
                return Err(Error::invalid(format!("--dot must lie in [-1, 1], got {dot}")));
            }
            let x = [1.0, 0.0];
            let y = [*dot, (1.0 - dot * dot).sqrt()];
            let freq = gaussian_separation_estimate(&x, &y, *trials, &mut rng_from_seed(seed.seed))?;
            let expected = separation_closed_form(&x, &y);
            let se = (expected * (1.0 - expected) / *trials as f64).sqrt();
            let ok = (freq - expected).abs() <= 4.0 * se + 1e-12;
            Ok(Outcome::check(
                serde_json::json!({"oracle": "separation", "frequency": freq, "expected": expected, "trials": trials})
                    .to_string(),
                ok,
            ))
        }
        OracleCommand::LowerBound { n, k, eps } => {
            let v = lower_bound_measurements(*n, *k, *eps)?;
            Ok(Outcome::ok(
                serde_json::json!({"oracle": "lower_bound", "n": n, "k": k, "eps": eps, "measurements": v}).to_string(),
            ))
        }
    }
}

fn experiment(cmd: &ExperimentCommand) -> Result<Outcome> {
    match cmd {
        ExperimentCommand::Run {
            config,
            seed,
            records,
            json,
            out,
        } => {
            let mut cfg = ExperimentConfig::from_json(&read(config)?)?;
            if let Some(seed) = seed {
                cfg.seed = *seed;
            }
            let report = run_experiment(&cfg)?;
            if let Some(path) = records {
                fs::write(path, report.records_jsonl())
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            emit(out, &if *json { report.to_json() } else { report.to_csv() })?;
            Ok(Outcome::check(String::new(), !report.any_failed()))
        }
        ExperimentCommand::Audit { report, records } => {
            let report = crate::harness::ExperimentReport::from_json(&read(report)?)?;
            let records = parse_records(&read(records)?)?;
            let verdict = report.audit(&records);
            Ok(Outcome::check(
                match &verdict {
                    Ok(()) => "audit: rates match trial records".to_string(),
                    Err(e) => format!("audit: {e}"),
                },
                verdict.is_ok(),
            ))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Design(cmd @ DesignCommand::Build { .. }) => design_build(cmd),
        Command::Design(cmd @ DesignCommand::Verify { .. }) => design_verify(cmd),
        Command::Sense(cmd) => sense_build(cmd),
        Command::Signal(cmd) => signal_random(cmd),
        Command::Measure(args) => measure(args),
        Command::Recover(args) => recover(args),
        Command::Oracle(cmd) => oracle(cmd),
        Command::Experiment(cmd) => experiment(cmd),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            if !outcome.text.is_empty() {
                println!("{}", outcome.text);
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
