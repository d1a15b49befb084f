//! Support decoders: approximate recovery from a union-free design, the
//! two-pass superset decoder for real signals, the zero-row deletion
//! decoders of the exact families, and the superset-to-approximate trim.

use serde::{Deserialize, Serialize};

use crate::designs::{BinaryDesign, BitSet};
use crate::error::{Error, Result};
use crate::sensing::{Family, SensingMatrix, SignVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Approximate,
    Superset,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Approximate => "approximate",
            Mode::Superset => "superset",
        }
    }
}

/// Comparison of an estimate against the true support.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruthDiff {
    pub support: Vec<usize>,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub superset_ok: bool,
}

impl TruthDiff {
    /// `⌈ε·‖x‖₀⌉`, the integer cap used for every fractional bound.
    pub fn cap(&self, eps: f64) -> usize {
        error_cap(eps, self.support.len())
    }
}

/// `⌈ε·s⌉` with a small guard against representation error.
pub fn error_cap(eps: f64, s: usize) -> usize {
    (eps * s as f64 - 1e-9).ceil().max(0.0) as usize
}

/// `⌊x⌋` with a small guard against representation error.
fn floor_guarded(x: f64) -> usize {
    (x + 1e-12).floor().max(0.0) as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportEstimate {
    pub indices: Vec<usize>,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth: Option<TruthDiff>,
}

impl SupportEstimate {
    pub fn new(mut indices: Vec<usize>, mode: Mode, eps: Option<f64>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        SupportEstimate {
            indices,
            mode,
            eps,
            truth: None,
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.indices.binary_search(&j).is_ok()
    }

    /// Attaches the diff against `support` (any order).
    pub fn with_truth(mut self, support: &[usize]) -> Self {
        let mut support = support.to_vec();
        support.sort_unstable();
        support.dedup();
        let false_negatives = support.iter().filter(|&&j| !self.contains(j)).count();
        let false_positives = self.indices.iter().filter(|j| support.binary_search(j).is_err()).count();
        self.truth = Some(TruthDiff {
            support,
            false_positives,
            false_negatives,
            superset_ok: false_negatives == 0,
        });
        self
    }

    /// Approximate-recovery conditions at `eps`: `|S| ≤ ‖x‖₀`, at most
    /// `⌈ε‖x‖₀⌉` misses and at most `⌈ε‖x‖₀⌉` extras.
    pub fn meets_approximate(&self, eps: f64) -> Option<bool> {
        let t = self.truth.as_ref()?;
        let cap = t.cap(eps);
        Some(self.len() <= t.support.len() && t.false_negatives <= cap && t.false_positives <= cap)
    }

    /// Superset conditions at `eps`: no misses and at most `⌈ε‖x‖₀⌉` extras.
    pub fn meets_superset(&self, eps: f64) -> Option<bool> {
        let t = self.truth.as_ref()?;
        Some(t.superset_ok && t.false_positives <= t.cap(eps))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("estimate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut est: SupportEstimate = serde_json::from_str(text).map_err(|e| Error::malformed("estimate", &e))?;
        est.indices.sort_unstable();
        est.indices.dedup();
        Ok(est)
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::invalid(format!("eps must be positive and finite, got {eps}")));
    }
    Ok(())
}

fn check_len(y: &SignVector, m: usize) -> Result<()> {
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: y.len(),
        });
    }
    Ok(())
}

fn zero_rows(y: &SignVector) -> BitSet {
    BitSet::from_indices(y.len(), y.iter().enumerate().filter(|(_, s)| s.is_zero()).map(|(i, _)| i))
}

/// Approximate support recovery from the nonzero pattern of `y`.
///
/// Keeps every column with `|B_j ∩ supp(y)| ≥ d/2`, then drops
/// `⌊ε/(2+ε)·|C|⌋` of them, lowest score first (larger index first on ties).
pub fn approx_recover(design: &BinaryDesign, y: &SignVector, eps: f64) -> Result<SupportEstimate> {
    check_eps(eps)?;
    check_len(y, design.m())?;
    let d = design.d().ok_or(Error::MissingColumnWeight)?;
    let mut scored: Vec<(usize, usize)> = design
        .column_supports()
        .iter()
        .enumerate()
        .filter_map(|(j, rows)| {
            let score = rows.iter().filter(|&&i| !y.get(i).is_zero()).count();
            (2 * score >= d).then_some((score, j))
        })
        .collect();
    let drop = floor_guarded(eps / (2.0 + eps) * scored.len() as f64);
    scored.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let kept = scored[drop..].iter().map(|&(_, j)| j).collect();
    Ok(SupportEstimate::new(kept, Mode::Approximate, Some(eps)))
}

/// `min(ε, √(ln(n/k)/k))`: the largest admissible ε for [`superset_reals`].
pub fn clamp_epsilon(n: usize, k: usize, eps: f64) -> f64 {
    eps.min(reals_eps_cap(n, k))
}

/// `√(ln(n/k)/k)`, zero when `n ≤ k`.
pub fn reals_eps_cap(n: usize, k: usize) -> f64 {
    if k == 0 || n <= k {
        return 0.0;
    }
    ((n as f64 / k as f64).ln() / k as f64).sqrt()
}

fn require_family(a: &SensingMatrix, family: Family) -> Result<&BinaryDesign> {
    if a.family() != family {
        return Err(Error::WrongFamily {
            expected: family.name(),
            found: a.family().name(),
        });
    }
    Ok(a.base().expect("families with a base"))
}

/// Output of both passes of [`superset_reals`].
#[derive(Clone, Debug, PartialEq)]
pub struct TwoPass {
    pub first: SupportEstimate,
    pub second: SupportEstimate,
}

/// Superset recovery for arbitrary real signals over a generic-constant
/// matrix, returning both passes.
///
/// Pass 1 keeps columns losing fewer than `d/2` rows to zero responses.
/// Pass 2 scans the rest in ascending order and adds `j` when fewer than
/// `d/2` of its zero rows are uncovered by columns already in `C`.
pub fn superset_reals_passes(a: &SensingMatrix, y: &SignVector, eps: f64, k: usize) -> Result<TwoPass> {
    let base = require_family(a, Family::GenericReal)?;
    check_eps(eps)?;
    let cap = reals_eps_cap(a.n(), k);
    if eps > cap * (1.0 + 1e-12) {
        return Err(Error::EpsOutOfRegime { eps, cap });
    }
    check_len(y, a.m())?;
    let d = base.d().ok_or(Error::MissingColumnWeight)?;
    let zeros = zero_rows(y);
    let columns = base.column_sets();

    let mut in_c = vec![false; a.n()];
    let mut covered = BitSet::new(a.m());
    for (j, col) in columns.iter().enumerate() {
        if 2 * col.intersection_count(&zeros) < d {
            in_c[j] = true;
            covered.union_with(col);
        }
    }
    let first: Vec<usize> = (0..a.n()).filter(|&j| in_c[j]).collect();
    for (j, col) in columns.iter().enumerate() {
        if !in_c[j] && 2 * col.intersection_difference_count(&zeros, &covered) < d {
            in_c[j] = true;
            covered.union_with(col);
        }
    }
    let second = (0..a.n()).filter(|&j| in_c[j]).collect();
    Ok(TwoPass {
        first: SupportEstimate::new(first, Mode::Superset, Some(eps)),
        second: SupportEstimate::new(second, Mode::Superset, Some(eps)),
    })
}

/// Superset recovery for arbitrary real signals; see [`superset_reals_passes`].
pub fn superset_reals(a: &SensingMatrix, y: &SignVector, eps: f64, k: usize) -> Result<SupportEstimate> {
    superset_reals_passes(a, y, eps, k).map(|p| p.second)
}

/// Starts from `[n]` and deletes the support of every base row whose block
/// of `block` consecutive measurements is entirely zero.
fn delete_zero_blocks(base: &BinaryDesign, y: &SignVector, block: usize) -> SupportEstimate {
    let mut keep = vec![true; base.n()];
    for z in 0..base.m() {
        if (z * block..(z + 1) * block).all(|i| y.get(i).is_zero()) {
            for j in base.row_support(z) {
                keep[j] = false;
            }
        }
    }
    let indices = (0..base.n()).filter(|&j| keep[j]).collect();
    SupportEstimate::new(indices, Mode::Superset, None)
}

/// Superset recovery for signals of bounded dynamic range.
pub fn superset_dynrange(a: &SensingMatrix, y: &SignVector) -> Result<SupportEstimate> {
    let base = require_family(a, Family::DynamicRange)?;
    check_len(y, a.m())?;
    Ok(delete_zero_blocks(base, y, 1))
}

/// Superset recovery for rational signals.
pub fn superset_rationals(a: &SensingMatrix, y: &SignVector) -> Result<SupportEstimate> {
    let base = require_family(a, Family::PrimeLog)?;
    check_len(y, a.m())?;
    Ok(delete_zero_blocks(base, y, 1))
}

/// Superset recovery for signals with at most `R` entries of the minority sign.
pub fn superset_same_sign(a: &SensingMatrix, y: &SignVector) -> Result<SupportEstimate> {
    let base = require_family(a, Family::SameSign)?;
    let block = a.block();
    if a.m() != base.m() * block {
        return Err(Error::BlockSizeMismatch {
            rows: a.m(),
            base_rows: base.m(),
            block,
        });
    }
    check_len(y, a.m())?;
    Ok(delete_zero_blocks(base, y, block))
}

/// Turns a superset estimate into an approximate one by dropping
/// `⌊ε/(1+ε)·|C|⌋` indices, largest first.
pub fn trim_to_approximate(c: &SupportEstimate, eps: f64) -> Result<SupportEstimate> {
    if c.mode != Mode::Superset {
        return Err(Error::ModeMismatch {
            expected: Mode::Superset.name(),
        });
    }
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::invalid(format!("eps must be nonnegative and finite, got {eps}")));
    }
    let drop = floor_guarded(eps / (1.0 + eps) * c.len() as f64);
    let kept = c.indices[..c.len() - drop].to_vec();
    let out = SupportEstimate::new(kept, Mode::Approximate, Some(eps));
    Ok(match &c.truth {
        Some(t) => out.with_truth(&t.support),
        None => out,
    })
}
