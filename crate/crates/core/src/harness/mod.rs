//! Experiment runner: sweeps `(n, k, ε)` cells, builds the scheme's design
//! and matrix per cell, decodes random signals against ground truth, and
//! aggregates the results into a CSV-ready report.
//!
//! Cell `c` (0-based, enumeration order of [`ExperimentConfig::cells`]) runs
//! from seed `master ^ c`. Its design, matrix and signal seeds are the first
//! three outputs of a ChaCha8 stream on that seed.

pub mod cli;
mod config;

use std::fmt::Write as _;
use std::time::Instant;

use rand::RngCore;
use serde::{Deserialize, Serialize};

pub use config::{ExperimentConfig, Scheme};

use crate::designs::{build_verified, BinaryDesign, DesignRequest, VerifyOptions};
use crate::error::{Error, Result};
use crate::oracles::lower_bound_measurements;
use crate::recovery::{
    approx_recover, clamp_epsilon, superset_dynrange, superset_rationals, superset_reals, superset_same_sign,
    SupportEstimate,
};
use crate::seed::rng_from_seed;
use crate::sensing::{
    attach_generic_constants, build_dynamic_range, build_prime_log, build_same_sign, SensingMatrix, SignVector,
};
use crate::signals::{random_sparse, SignalClass};

pub const CSV_HEADER: &str = "scheme,n,k,eps,m,d,trials,fp_rate,fn_rate,superset_success_rate,\
mean_decode_time,lower_bound_estimate,guarantee_rate,verified,status";

/// Outcome of one decoded signal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub cell: usize,
    pub trial: usize,
    pub sparsity: usize,
    pub estimate_size: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub superset_ok: bool,
    pub guarantee_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decode_seconds: Option<f64>,
}

/// Aggregates of one cell's trials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rates {
    /// Mean of `min(1, |C \ supp x| / ‖x‖₀)`.
    pub fp_rate: f64,
    /// Mean of `|supp x \ C| / ‖x‖₀`.
    pub fn_rate: f64,
    pub superset_success_rate: f64,
    /// Fraction of trials meeting the scheme's recovery definition at `eps`.
    pub guarantee_rate: f64,
    pub mean_decode_time: Option<f64>,
}

impl Rates {
    /// Recomputes the aggregates from per-trial records, in record order.
    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a TrialRecord>) -> Option<Rates> {
        let (mut count, mut fp, mut fnr, mut ss, mut ok) = (0usize, 0.0, 0.0, 0usize, 0usize);
        let mut time = Some(0.0);
        for r in records {
            let s = r.sparsity.max(1) as f64;
            count += 1;
            fp += (r.false_positives as f64 / s).min(1.0);
            fnr += r.false_negatives as f64 / s;
            ss += r.superset_ok as usize;
            ok += r.guarantee_ok as usize;
            time = match (time, r.decode_seconds) {
                (Some(t), Some(d)) => Some(t + d),
                _ => None,
            };
        }
        if count == 0 {
            return None;
        }
        let c = count as f64;
        Some(Rates {
            fp_rate: fp / c,
            fn_rate: fnr / c,
            superset_success_rate: ss as f64 / c,
            guarantee_rate: ok as f64 / c,
            mean_decode_time: time.map(|t| t / c),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub cell: usize,
    pub scheme: Scheme,
    pub n: usize,
    pub k: usize,
    /// The ε the decoder ran with (clamped for `superset_reals`).
    pub eps: f64,
    pub m: Option<usize>,
    pub d: Option<usize>,
    pub trials: usize,
    pub rates: Option<Rates>,
    pub lower_bound_estimate: Option<f64>,
    pub verified: Option<bool>,
    /// `None` on success, otherwise the error that stopped the cell.
    pub error: Option<String>,
}

impl CellReport {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub cells: Vec<CellReport>,
    pub records: Vec<TrialRecord>,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

impl ExperimentReport {
    pub fn any_failed(&self) -> bool {
        self.cells.iter().any(CellReport::failed)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            let r = c.rates.as_ref();
            let status = c.error.as_deref().map_or_else(|| "ok".to_string(), |e| format!("error: {e}"));
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                c.scheme.name(),
                c.n,
                c.k,
                c.eps,
                opt(c.m),
                opt(c.d),
                c.trials,
                opt(r.map(|r| r.fp_rate)),
                opt(r.map(|r| r.fn_rate)),
                opt(r.map(|r| r.superset_success_rate)),
                opt(r.and_then(|r| r.mean_decode_time)),
                opt(c.lower_bound_estimate),
                opt(r.map(|r| r.guarantee_rate)),
                opt(c.verified),
                csv_field(&status),
            )
            .expect("write to string");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::malformed("report", &e))
    }

    /// Per-trial records, one JSON object per line.
    pub fn records_jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
            .collect()
    }

    /// Checks that every cell's rates equal a recomputation from `records`.
    pub fn audit(&self, records: &[TrialRecord]) -> Result<()> {
        for c in &self.cells {
            let recomputed = Rates::from_records(records.iter().filter(|r| r.cell == c.cell));
            if recomputed != c.rates {
                return Err(Error::InvalidConfig(format!(
                    "cell {} rates do not match its trial records",
                    c.cell
                )));
            }
        }
        Ok(())
    }
}

/// Parses the output of [`ExperimentReport::records_jsonl`].
pub fn parse_records(text: &str) -> Result<Vec<TrialRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Malformed {
                what: "trial record",
                line: i + 1,
                column: e.column(),
                message: e.to_string(),
            })
        })
        .collect()
}

/// Design request, decoder ε, and matrix built for one cell.
pub struct CellSetup {
    pub eps: f64,
    pub design: BinaryDesign,
    pub matrix: SensingMatrix,
}

/// The design a scheme uses at `(n, k, eps)`, and the ε its decoder runs with.
pub fn scheme_request(cfg: &ExperimentConfig, n: usize, k: usize, eps: f64) -> (DesignRequest, f64) {
    let (request, eps) = match cfg.scheme {
        Scheme::Approx => (DesignRequest::strongly_list_union_free(n, k, eps / 2.0, cfg.alpha), eps),
        Scheme::SupersetReals => {
            let clamped = clamp_epsilon(n, k, eps);
            (DesignRequest::strongly_list_union_free(n, k, clamped / 2.0, cfg.alpha), clamped)
        }
        Scheme::Dynrange | Scheme::Rationals | Scheme::SameSign => {
            (DesignRequest::strongly_list_disjunct(n, k, eps), eps)
        }
    };
    (request.with_m_scale(cfg.m_scale), eps)
}

/// Builds the sensing matrix of `scheme` over `design`.
pub fn scheme_matrix(scheme: Scheme, signal: &SignalClass, design: &BinaryDesign, seed: u64) -> Result<SensingMatrix> {
    Ok(match scheme {
        Scheme::Approx | Scheme::SupersetReals => attach_generic_constants(design, &mut rng_from_seed(seed)),
        Scheme::Dynrange => match *signal {
            SignalClass::BoundedKappa { eta } => build_dynamic_range(design, eta)?,
            _ => return Err(Error::InvalidConfig("dynrange needs a bounded_kappa signal".into())),
        },
        Scheme::Rationals => build_prime_log(design),
        Scheme::SameSign => match *signal {
            SignalClass::BoundedRho { r } => build_same_sign(design, r),
            _ => build_same_sign(design, 0),
        },
    })
}

/// Runs the scheme's decoder.
pub fn decode(scheme: Scheme, a: &SensingMatrix, y: &SignVector, eps: f64, k: usize) -> Result<SupportEstimate> {
    match scheme {
        Scheme::Approx => approx_recover(a.base().expect("generic matrices have a base"), y, eps),
        Scheme::SupersetReals => superset_reals(a, y, eps, k),
        Scheme::Dynrange => superset_dynrange(a, y),
        Scheme::Rationals => superset_rationals(a, y),
        Scheme::SameSign => superset_same_sign(a, y),
    }
}

/// Builds the cell's (optionally verified) design and its matrix.
pub fn setup_cell(cfg: &ExperimentConfig, n: usize, k: usize, eps: f64, design_seed: u64, matrix_seed: u64) -> Result<CellSetup> {
    let (request, eps) = scheme_request(cfg, n, k, eps);
    let options = VerifyOptions {
        enabled: cfg.verify,
        max_attempts: cfg.max_attempts,
        budget: cfg.budget,
    };
    let design = build_verified(&request, design_seed, options)?;
    let matrix = scheme_matrix(cfg.scheme, &cfg.signal, &design, matrix_seed)?;
    Ok(CellSetup { eps, design, matrix })
}

fn run_cell(cfg: &ExperimentConfig, index: usize, report: &mut CellReport) -> Result<Vec<TrialRecord>> {
    let (n, k) = (report.n, report.k);
    let mut stream = rng_from_seed(cfg.seed ^ index as u64);
    let design_seed = stream.next_u64();
    let matrix_seed = stream.next_u64();
    let mut signal_rng = rng_from_seed(stream.next_u64());

    let setup = setup_cell(cfg, n, k, report.eps, design_seed, matrix_seed)?;
    report.eps = setup.eps;
    report.m = Some(setup.matrix.m());
    report.d = setup.design.d();
    report.verified = setup.design.params().verified;

    let mut records = Vec::with_capacity(cfg.trials);
    for trial in 0..cfg.trials {
        let x = random_sparse(n, k, cfg.signal, &mut signal_rng)?;
        let y = setup.matrix.measure(&x, cfg.tolerance)?;
        let start = Instant::now();
        let est = decode(cfg.scheme, &setup.matrix, &y, setup.eps, k)?;
        let elapsed = start.elapsed().as_secs_f64();
        let est = est.with_truth(&x.support());
        let truth = est.truth.as_ref().expect("truth attached");
        let guarantee_ok = if cfg.scheme.is_superset() {
            est.meets_superset(setup.eps)
        } else {
            est.meets_approximate(setup.eps)
        };
        records.push(TrialRecord {
            cell: index,
            trial,
            sparsity: x.sparsity(),
            estimate_size: est.len(),
            false_positives: truth.false_positives,
            false_negatives: truth.false_negatives,
            superset_ok: truth.superset_ok,
            guarantee_ok: guarantee_ok.unwrap_or(false),
            decode_seconds: cfg.timing.then_some(elapsed),
        });
    }
    Ok(records)
}

/// Runs every cell of `cfg`. Cell failures are recorded in the report, not
/// returned; only an invalid config is an error.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let mut cells = Vec::new();
    let mut records = Vec::new();
    for (index, (n, k, eps)) in cfg.cells().into_iter().enumerate() {
        let mut report = CellReport {
            cell: index,
            scheme: cfg.scheme,
            n,
            k,
            eps,
            m: None,
            d: None,
            trials: cfg.trials,
            rates: None,
            lower_bound_estimate: None,
            verified: None,
            error: None,
        };
        match run_cell(cfg, index, &mut report) {
            Ok(cell_records) => {
                report.rates = Rates::from_records(&cell_records);
                records.extend(cell_records);
            }
            Err(e) => report.error = Some(e.to_string()),
        }
        report.lower_bound_estimate = lower_bound_measurements(n, k, report.eps).ok();
        cells.push(report);
    }
    Ok(ExperimentReport { cells, records })
}
