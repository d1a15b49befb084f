//! k-sparse test signals and the dynamic-range / same-sign metrics.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational;
use crate::sensing::SensingMatrix;

/// Side-information class a signal was drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", content = "params", rename_all = "snake_case")]
pub enum SignalClass {
    GeneralReal,
    Rational { denom_bound: u32 },
    BoundedKappa { eta: f64 },
    BoundedRho { r: usize },
    Binary,
}

impl SignalClass {
    pub fn name(&self) -> &'static str {
        match self {
            SignalClass::GeneralReal => "general_real",
            SignalClass::Rational { .. } => "rational",
            SignalClass::BoundedKappa { .. } => "bounded_kappa",
            SignalClass::BoundedRho { .. } => "bounded_rho",
            SignalClass::Binary => "binary",
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            SignalClass::Rational { denom_bound: 0 } => {
                Err(Error::invalid("denom_bound must be >= 1"))
            }
            SignalClass::BoundedKappa { eta } if !(eta >= 1.0 && eta.is_finite()) => {
                Err(Error::invalid(format!("eta must be a finite value >= 1, got {eta}")))
            }
            _ => Ok(()),
        }
    }
}

/// One nonzero entry: exact value plus its nearest float.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub exact: BigRational,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SparseSignal {
    n: usize,
    entries: BTreeMap<usize, Entry>,
    class: SignalClass,
}

impl SparseSignal {
    pub fn zero(n: usize) -> Self {
        SparseSignal {
            n,
            entries: BTreeMap::new(),
            class: SignalClass::GeneralReal,
        }
    }

    /// Zero values are dropped. Fails on non-finite floats.
    pub fn from_f64(n: usize, values: impl IntoIterator<Item = (usize, f64)>, class: SignalClass) -> Result<Self> {
        let mut signal = SparseSignal {
            n,
            entries: BTreeMap::new(),
            class,
        };
        for (j, v) in values {
            signal.insert(j, rational::from_f64(v)?)?;
        }
        Ok(signal)
    }

    pub fn from_rationals(
        n: usize,
        values: impl IntoIterator<Item = (usize, BigRational)>,
        class: SignalClass,
    ) -> Result<Self> {
        let mut signal = SparseSignal {
            n,
            entries: BTreeMap::new(),
            class,
        };
        for (j, v) in values {
            signal.insert(j, v)?;
        }
        Ok(signal)
    }

    pub fn from_dense(values: &[f64]) -> Result<Self> {
        SparseSignal::from_f64(values.len(), values.iter().copied().enumerate(), SignalClass::GeneralReal)
    }

    fn insert(&mut self, j: usize, exact: BigRational) -> Result<()> {
        if j >= self.n {
            return Err(Error::InvalidColumns(format!("index {j} out of range for n = {}", self.n)));
        }
        if exact.is_zero() {
            self.entries.remove(&j);
        } else {
            let value = rational::to_f64(&exact);
            self.entries.insert(j, Entry { exact, value });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> SignalClass {
        self.class
    }

    /// `‖x‖₀`
    pub fn sparsity(&self) -> usize {
        self.entries.len()
    }

    /// `supp(x)`, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Entry)> {
        self.entries.iter().map(|(&j, e)| (j, e))
    }

    pub fn exact(&self, j: usize) -> Option<&BigRational> {
        self.entries.get(&j).map(|e| &e.exact)
    }

    pub fn value(&self, j: usize) -> f64 {
        self.entries.get(&j).map_or(0.0, |e| e.value)
    }

    pub fn to_dense(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.value(j)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|e| e.value.abs()).fold(0.0, f64::max)
    }

    /// Whether the signal satisfies the invariant of its recorded class.
    pub fn satisfies_class(&self) -> bool {
        match self.class {
            SignalClass::GeneralReal => true,
            SignalClass::Rational { denom_bound } => self.entries.values().all(|e| {
                let bound = num_bigint::BigInt::from(denom_bound);
                e.exact.numer().abs() <= bound && e.exact.denom() <= &bound
            }),
            SignalClass::BoundedKappa { eta } => match (kappa_exact(self), rational::from_f64(eta)) {
                (Ok(k), Ok(eta)) => k <= eta,
                (Err(_), _) => true,
                _ => false,
            },
            SignalClass::BoundedRho { r } => rho(self) <= r,
            SignalClass::Binary => self.entries.values().all(|e| e.value == 1.0),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SignalJson::from(self)).expect("signal serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SignalJson = serde_json::from_str(text).map_err(|e| Error::malformed("signal", &e))?;
        let mut entries = Vec::with_capacity(raw.entries.len());
        for (j, v) in raw.entries {
            let j = j
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("signal entry index {j:?} is not an integer")))?;
            entries.push((j, rational::parse(&v)?));
        }
        SparseSignal::from_rationals(raw.n, entries, raw.class)
    }
}

#[derive(Serialize, Deserialize)]
struct SignalJson {
    n: usize,
    #[serde(flatten)]
    class: SignalClass,
    entries: BTreeMap<String, String>,
}

impl From<&SparseSignal> for SignalJson {
    fn from(x: &SparseSignal) -> Self {
        SignalJson {
            n: x.n,
            class: x.class,
            entries: x
                .entries
                .iter()
                .map(|(&j, e)| (j.to_string(), rational::format(&e.exact)))
                .collect(),
        }
    }
}

/// Exact dynamic range `max|x_j| / min|x_j|` over the support.
pub fn kappa_exact(x: &SparseSignal) -> Result<BigRational> {
    let mut mags = x.entries.values().map(|e| e.exact.abs());
    let first = mags.next().ok_or(Error::EmptySupport)?;
    let (lo, hi) = mags.fold((first.clone(), first), |(lo, hi), v| {
        (if v < lo { v.clone() } else { lo }, if v > hi { v } else { hi })
    });
    Ok(hi / lo)
}

/// Dynamic range `κ(x) ≥ 1`.
pub fn kappa(x: &SparseSignal) -> Result<f64> {
    kappa_exact(x).map(|k| rational::to_f64(&k))
}

/// `min(#positive, #negative)` entries.
pub fn rho(x: &SparseSignal) -> usize {
    let positive = x.entries.values().filter(|e| e.exact.is_positive()).count();
    positive.min(x.sparsity() - positive)
}

/// Uniformly random size-`k` support, ascending.
pub fn random_support(n: usize, k: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut support = index::sample(rng, n, k).into_vec();
    support.sort_unstable();
    support
}

const NEAR_ZERO: f64 = 1e-3;

fn random_sign(rng: &mut impl Rng) -> f64 {
    if rng.random_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

/// Draws a signal of sparsity exactly `k` from `class`.
pub fn random_sparse(n: usize, k: usize, class: SignalClass, rng: &mut impl Rng) -> Result<SparseSignal> {
    if k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    class.validate()?;
    let support = random_support(n, k, rng);
    let signal = match class {
        SignalClass::GeneralReal => {
            let values = support.iter().map(|&j| {
                let v = loop {
                    let v: f64 = rng.random_range(-1.0..1.0);
                    if v.abs() >= NEAR_ZERO {
                        break v;
                    }
                };
                (j, v)
            });
            SparseSignal::from_f64(n, values.collect::<Vec<_>>(), class)?
        }
        SignalClass::Rational { denom_bound } => {
            let b = denom_bound as i64;
            let values: Vec<_> = support
                .iter()
                .map(|&j| {
                    let u = rng.random_range(1..=b) * if rng.random_bool(0.5) { 1 } else { -1 };
                    let v = rng.random_range(1..=b);
                    (j, BigRational::new(u.into(), v.into()))
                })
                .collect();
            SparseSignal::from_rationals(n, values, class)?
        }
        SignalClass::BoundedKappa { eta } => {
            let values: Vec<_> = support
                .iter()
                .map(|&j| {
                    let mag = if eta > 1.0 { rng.random_range(1.0..=eta) } else { 1.0 };
                    (j, random_sign(&mut *rng) * mag)
                })
                .collect();
            SparseSignal::from_f64(n, values, class)?
        }
        SignalClass::BoundedRho { r } => {
            let minority = rng.random_range(0..=r.min(k / 2));
            let majority_sign = random_sign(&mut *rng);
            let flipped = index::sample(rng, k, minority).into_vec();
            let values: Vec<_> = support
                .iter()
                .enumerate()
                .map(|(pos, &j)| {
                    let mag = rng.random_range(0.1..1.0);
                    let sign = if flipped.contains(&pos) { -majority_sign } else { majority_sign };
                    (j, sign * mag)
                })
                .collect();
            SparseSignal::from_f64(n, values, class)?
        }
        SignalClass::Binary => SparseSignal::from_f64(n, support.iter().map(|&j| (j, 1.0)), class)?,
    };
    debug_assert!(signal.satisfies_class());
    Ok(signal)
}

/// Signal on `{j1, j2}` with `x_{j1} = A_{i,j2}` and `x_{j2} = -A_{i,j1}`, so
/// row `i` measures exactly zero although it overlaps the support.
pub fn cancellation_signal(a: &SensingMatrix, row: usize, j1: usize, j2: usize) -> Result<SparseSignal> {
    if row >= a.m() {
        return Err(Error::InvalidColumns(format!("row {row} out of range")));
    }
    if j1 == j2 || j1 >= a.n() || j2 >= a.n() {
        return Err(Error::InvalidColumns(format!("need two distinct columns, got {j1}, {j2}")));
    }
    let e1 = a.entry_rational(row, j1);
    let e2 = a.entry_rational(row, j2);
    if e1.is_zero() || e2.is_zero() {
        return Err(Error::InvalidColumns(format!(
            "row {row} is zero at column {}",
            if e1.is_zero() { j1 } else { j2 }
        )));
    }
    SparseSignal::from_rationals(a.n(), [(j1, e2), (j2, -e1)], SignalClass::GeneralReal)
}
