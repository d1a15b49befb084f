use serde::{Deserialize, Serialize};

use crate::designs::DEFAULT_PAIR_BUDGET;
use crate::error::{Error, Result};
use crate::sensing::FloatTolerance;
use crate::signals::SignalClass;

/// Decoder plus the design and matrix family it runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Approximate recovery over a strongly list union-free design.
    Approx,
    /// Two-pass superset recovery for real signals.
    SupersetReals,
    /// Zero-row deletion with a bounded-dynamic-range matrix.
    Dynrange,
    /// Zero-row deletion with a prime-log matrix.
    Rationals,
    /// Block deletion with a same-sign matrix.
    SameSign,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Approx => "approx",
            Scheme::SupersetReals => "superset_reals",
            Scheme::Dynrange => "dynrange",
            Scheme::Rationals => "rationals",
            Scheme::SameSign => "same_sign",
        }
    }

    pub fn is_superset(self) -> bool {
        self != Scheme::Approx
    }

    /// Whether the scheme's guarantee covers signals of `class`.
    pub fn admits(self, class: &SignalClass) -> bool {
        match self {
            Scheme::Approx | Scheme::SupersetReals => true,
            Scheme::Dynrange => matches!(class, SignalClass::BoundedKappa { .. }),
            Scheme::Rationals => matches!(class, SignalClass::Rational { .. } | SignalClass::Binary),
            Scheme::SameSign => matches!(class, SignalClass::BoundedRho { .. } | SignalClass::Binary),
        }
    }
}

fn default_true() -> bool {
    true
}

fn default_scale() -> f64 {
    1.0
}

fn default_alpha() -> f64 {
    0.5
}

fn default_attempts() -> u32 {
    50
}

fn default_budget() -> u64 {
    DEFAULT_PAIR_BUDGET
}

/// A parameter sweep. Cells enumerate `n`, then `k`, then `eps`, in list order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scheme: Scheme,
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub eps: Vec<f64>,
    pub signal: SignalClass,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_true")]
    pub verify: bool,
    /// Multiplies the sizing-formula row count.
    #[serde(default = "default_scale")]
    pub m_scale: f64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_attempts")]
    pub max_attempts: u32,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub tolerance: FloatTolerance,
    /// Record decode wall-clock time. Off by default so reports are
    /// byte-reproducible.
    #[serde(default)]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(scheme: Scheme, n: Vec<usize>, k: Vec<usize>, eps: Vec<f64>, signal: SignalClass, trials: usize) -> Self {
        ExperimentConfig {
            scheme,
            n,
            k,
            eps,
            signal,
            trials,
            seed: 0,
            verify: true,
            m_scale: 1.0,
            alpha: 0.5,
            max_attempts: 50,
            budget: DEFAULT_PAIR_BUDGET,
            tolerance: FloatTolerance::default(),
            timing: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::malformed("config", &e))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n.is_empty() || self.k.is_empty() || self.eps.is_empty() {
            return bad("n, k and eps lists must be nonempty".into());
        }
        if self.trials == 0 {
            return bad("trials must be >= 1".into());
        }
        if let Some(e) = self.eps.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            return bad(format!("eps values must be positive, got {e}"));
        }
        if self.n.contains(&0) || self.k.contains(&0) {
            return bad("n and k values must be >= 1".into());
        }
        if !(self.m_scale > 0.0 && self.m_scale.is_finite()) {
            return bad(format!("m_scale must be positive, got {}", self.m_scale));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if !self.scheme.admits(&self.signal) {
            return bad(format!(
                "scheme {} does not cover {} signals",
                self.scheme.name(),
                self.signal.name()
            ));
        }
        match self.signal {
            SignalClass::BoundedKappa { eta } if !(eta >= 1.0 && eta.is_finite()) => {
                bad(format!("eta must be >= 1, got {eta}"))
            }
            SignalClass::Rational { denom_bound: 0 } => bad("denom_bound must be >= 1".into()),
            _ => Ok(()),
        }
    }

    pub fn cells(&self) -> Vec<(usize, usize, f64)> {
        let mut cells = Vec::with_capacity(self.n.len() * self.k.len() * self.eps.len());
        for &n in &self.n {
            for &k in &self.k {
                for &eps in &self.eps {
                    cells.push((n, k, eps));
                }
            }
        }
        cells
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_defaults() {
        let cfg = ExperimentConfig::from_json(
            r#"{"scheme": "rationals", "n": [12], "k": [2], "eps": [0.5],
                "signal": {"class": "rational", "params": {"denom_bound": 50}}, "trials": 10}"#,
        )
        .unwrap();
        assert!(cfg.verify);
        assert_eq!((cfg.m_scale, cfg.alpha, cfg.max_attempts), (1.0, 0.5, 50));
        assert_eq!(ExperimentConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn rejects_bad_configs() {
        let base = ExperimentConfig::new(Scheme::Dynrange, vec![12], vec![2], vec![0.5], SignalClass::BoundedKappa { eta: 4.0 }, 5);
        assert!(base.validate().is_ok());
        let mut c = base.clone();
        c.trials = 0;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
        let mut c = base.clone();
        c.signal = SignalClass::GeneralReal;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
        let mut c = base;
        c.eps.clear();
        assert!(c.validate().is_err());
        assert!(matches!(ExperimentConfig::from_json("{\"scheme\": "), Err(Error::Malformed { .. })));
        assert!(ExperimentConfig::from_json(r#"{"scheme": "approx", "bogus": 1}"#).is_err());
    }

    #[test]
    fn cell_order() {
        let cfg = ExperimentConfig::new(Scheme::Approx, vec![10, 20], vec![1, 2], vec![0.5], SignalClass::Binary, 1);
        assert_eq!(cfg.cells(), vec![(10, 1, 0.5), (10, 2, 0.5), (20, 1, 0.5), (20, 2, 0.5)]);
    }
}
