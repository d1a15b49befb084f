//! Real-valued sensing matrices built from binary designs, and sign
//! measurements `y = sign(Ax)`.
//!
//! The `dynamic_range`, `same_sign` and `prime_log` families are measured
//! exactly (big-rational or big-integer arithmetic); `generic_real` and
//! `gaussian` use float accumulation guarded by a [`FloatTolerance`].

pub mod primes;
mod sign;

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

pub use sign::{combine_sign_star, sign_scalar, sign_star, Sign, SignVector};

use crate::designs::{BinaryDesign, DesignJson};
use crate::error::{Error, Result};
use crate::rational;
use crate::signals::SparseSignal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    GenericReal,
    DynamicRange,
    PrimeLog,
    SameSign,
    Gaussian,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::GenericReal => "generic_real",
            Family::DynamicRange => "dynamic_range",
            Family::PrimeLog => "prime_log",
            Family::SameSign => "same_sign",
            Family::Gaussian => "gaussian",
        }
    }

    /// Whether `measure` evaluates this family with exact arithmetic.
    pub fn is_exact(self) -> bool {
        matches!(self, Family::DynamicRange | Family::PrimeLog | Family::SameSign)
    }
}

/// Zero threshold for the float measurement path.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FloatTolerance {
    /// `c · ‖A^i‖₁ · ‖x‖_∞` for row `i`.
    Relative(f64),
    Absolute(f64),
}

impl Default for FloatTolerance {
    fn default() -> Self {
        FloatTolerance::Relative(1e-9)
    }
}

impl FloatTolerance {
    pub fn threshold(self, row_l1: f64, x_max: f64) -> f64 {
        match self {
            FloatTolerance::Relative(c) => c * row_l1 * x_max,
            FloatTolerance::Absolute(t) => t,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Payload {
    /// Per base row, one constant per nonzero (row support order).
    Constants(Vec<Vec<f64>>),
    /// Per row base `a_z`; entry `t` of the row is `a_z^t`.
    RowBases(Vec<BigRational>),
    /// Per base row, one prime per nonzero (row support order).
    Primes(Vec<Vec<u64>>),
    /// Block bases `a_1..a_{R'}` shared by every base row.
    BlockBases(Vec<BigRational>),
    /// Row-major dense entries.
    Dense(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SensingMatrix {
    family: Family,
    m: usize,
    n: usize,
    base: Option<BinaryDesign>,
    row_supports: Vec<Vec<usize>>,
    payload: Payload,
    eta: Option<f64>,
    r: Option<usize>,
}

fn base_row_supports(base: &BinaryDesign) -> Vec<Vec<usize>> {
    (0..base.m()).map(|i| base.row_support(i)).collect()
}

/// Attaches an independent uniform(1, 2) constant to every nonzero of `base`.
pub fn attach_generic_constants(base: &BinaryDesign, rng: &mut impl Rng) -> SensingMatrix {
    let row_supports = base_row_supports(base);
    let constants = row_supports
        .iter()
        .map(|row| row.iter().map(|_| rng.random_range(1.0..2.0)).collect())
        .collect();
    SensingMatrix {
        family: Family::GenericReal,
        m: base.m(),
        n: base.n(),
        base: Some(base.clone()),
        row_supports,
        payload: Payload::Constants(constants),
        eta: None,
        r: None,
    }
}

/// Row `z` becomes `(a_z^0, a_z^1, ...)` on its nonzeros, left to right,
/// with `a_z = 2(1 + η)`.
pub fn build_dynamic_range(base: &BinaryDesign, eta: f64) -> Result<SensingMatrix> {
    if !(eta >= 1.0 && eta.is_finite()) {
        return Err(Error::invalid(format!("eta must be a finite value >= 1, got {eta}")));
    }
    let a = (BigRational::one() + rational::from_f64(eta)?) * BigRational::from_integer(2.into());
    Ok(SensingMatrix {
        family: Family::DynamicRange,
        m: base.m(),
        n: base.n(),
        base: Some(base.clone()),
        row_supports: base_row_supports(base),
        payload: Payload::RowBases(vec![a; base.m()]),
        eta: Some(eta),
        r: None,
    })
}

/// Nonzero `(i, j)` gets `log q_ij`, where `q` runs over the first `m·n`
/// primes in row-major order.
pub fn build_prime_log(base: &BinaryDesign) -> SensingMatrix {
    let row_supports = base_row_supports(base);
    let last = row_supports
        .iter()
        .enumerate()
        .filter_map(|(i, row)| row.last().map(|&j| i * base.n() + j + 1))
        .max()
        .unwrap_or(0);
    let table = primes::first_primes(last);
    let primes = row_supports
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().map(|&j| table[i * base.n() + j]).collect())
        .collect();
    SensingMatrix {
        family: Family::PrimeLog,
        m: base.m(),
        n: base.n(),
        base: Some(base.clone()),
        row_supports,
        payload: Payload::Primes(primes),
        eta: None,
        r: None,
    }
}

/// Every base row expands into `R' = 2R + 1` rows with the same support;
/// block row `i` (0-based) uses base `a = i + 2`.
pub fn build_same_sign(base: &BinaryDesign, r: usize) -> SensingMatrix {
    let block = 2 * r + 1;
    let bases = (0..block).map(|i| BigRational::from_integer((i as i64 + 2).into())).collect();
    let supports = base_row_supports(base);
    let row_supports = supports
        .iter()
        .flat_map(|row| std::iter::repeat_n(row.clone(), block))
        .collect();
    SensingMatrix {
        family: Family::SameSign,
        m: base.m() * block,
        n: base.n(),
        base: Some(base.clone()),
        row_supports,
        payload: Payload::BlockBases(bases),
        eta: None,
        r: Some(r),
    }
}

/// Dense matrix with i.i.d. `N(0, 1)` entries.
pub fn build_gaussian(m: usize, n: usize, rng: &mut impl Rng) -> Result<SensingMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidDimensions(format!("need m, n >= 1, got {m} x {n}")));
    }
    let entries = (0..m * n).map(|_| rng.sample(StandardNormal)).collect();
    let all: Vec<usize> = (0..n).collect();
    Ok(SensingMatrix {
        family: Family::Gaussian,
        m,
        n,
        base: None,
        row_supports: vec![all; m],
        payload: Payload::Dense(entries),
        eta: None,
        r: None,
    })
}

impl SensingMatrix {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> Option<&BinaryDesign> {
        self.base.as_ref()
    }

    pub fn eta(&self) -> Option<f64> {
        self.eta
    }

    /// Same-sign bound `R` (`same_sign` only).
    pub fn same_sign_bound(&self) -> Option<usize> {
        self.r
    }

    /// Rows per base row: `2R + 1` for `same_sign`, otherwise 1.
    pub fn block(&self) -> usize {
        match &self.payload {
            Payload::BlockBases(b) => b.len(),
            _ => 1,
        }
    }

    /// Columns where row `i` is nonzero, ascending.
    pub fn row_support(&self, i: usize) -> &[usize] {
        &self.row_supports[i]
    }

    /// Position of column `j` inside row `i`'s support.
    fn rank_in_row(&self, i: usize, j: usize) -> Option<usize> {
        self.row_supports[i].binary_search(&j).ok()
    }

    fn power_base(&self, i: usize) -> Option<&BigRational> {
        match &self.payload {
            Payload::RowBases(b) => Some(&b[i]),
            Payload::BlockBases(b) => Some(&b[i % b.len()]),
            _ => None,
        }
    }

    /// Power-family bases: one per row for `dynamic_range`, one per block
    /// position for `same_sign`.
    pub fn rational_bases(&self) -> &[BigRational] {
        match &self.payload {
            Payload::RowBases(b) | Payload::BlockBases(b) => b,
            _ => &[],
        }
    }

    /// Prime attached to nonzero `(i, j)` (`prime_log` only).
    pub fn prime(&self, i: usize, j: usize) -> Option<u64> {
        match &self.payload {
            Payload::Primes(p) => self.rank_in_row(i, j).map(|t| p[i][t]),
            _ => None,
        }
    }

    /// Exponent `t` of nonzero `(i, j)` in a power family: its 0-based rank
    /// within the row.
    pub fn exponent(&self, i: usize, j: usize) -> Option<usize> {
        self.power_base(i)?;
        self.rank_in_row(i, j)
    }

    /// Float value of `A_ij`.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if let Payload::Dense(v) = &self.payload {
            return v[i * self.n + j];
        }
        let Some(t) = self.rank_in_row(i, j) else {
            return 0.0;
        };
        match &self.payload {
            Payload::Constants(c) => c[i][t],
            Payload::Primes(p) => (p[i][t] as f64).ln(),
            Payload::RowBases(_) | Payload::BlockBases(_) => {
                rational::to_f64(self.power_base(i).expect("power family")).powi(t as i32)
            }
            Payload::Dense(_) => unreachable!(),
        }
    }

    /// Exact value of `A_ij`. For `prime_log` the entry `log q` is
    /// irrational; its nearest float is returned as a rational.
    pub fn entry_rational(&self, i: usize, j: usize) -> BigRational {
        match (&self.payload, self.rank_in_row(i, j)) {
            (Payload::RowBases(_) | Payload::BlockBases(_), Some(t)) => {
                Pow::pow(self.power_base(i).expect("power family"), t)
            }
            (Payload::RowBases(_) | Payload::BlockBases(_), None) => BigRational::zero(),
            _ => rational::from_f64(self.entry(i, j)).unwrap_or_else(|_| BigRational::zero()),
        }
    }

    /// `‖A^i‖₁` of the float mirror.
    pub fn row_l1(&self, i: usize) -> f64 {
        self.row_supports[i].iter().map(|&j| self.entry(i, j).abs()).sum()
    }

    /// Float inner product `⟨A^i, x⟩`, accumulated over `supp(x)` in index order.
    pub fn dot_f64(&self, i: usize, x: &SparseSignal) -> f64 {
        x.entries()
            .map(|(j, e)| {
                let a = self.entry(i, j);
                if a == 0.0 {
                    0.0
                } else {
                    a * e.value
                }
            })
            .sum()
    }

    /// Float inner products `Ax`.
    pub fn apply_f64(&self, x: &SparseSignal) -> Result<Vec<f64>> {
        self.check_dims(x)?;
        Ok((0..self.m).map(|i| self.dot_f64(i, x)).collect())
    }

    fn check_dims(&self, x: &SparseSignal) -> Result<()> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.n(),
            });
        }
        Ok(())
    }

    /// Exact `⟨A^i, x⟩` for the power families.
    fn dot_power(&self, i: usize, x: &SparseSignal) -> BigRational {
        let a = self.power_base(i).expect("power family");
        let mut acc = BigRational::zero();
        for (j, e) in x.entries() {
            if let Some(t) = self.rank_in_row(i, j) {
                acc += &e.exact * Pow::pow(a, t);
            }
        }
        acc
    }

    fn sign_prime_log(&self, i: usize, x: &SparseSignal) -> Result<Sign> {
        let Payload::Primes(p) = &self.payload else {
            unreachable!()
        };
        let terms: Vec<(u64, &BigRational)> = x
            .entries()
            .filter_map(|(j, e)| self.rank_in_row(i, j).map(|t| (p[i][t], &e.exact)))
            .collect();
        prime_power_sign(&terms)
    }

    /// `sign(Ax)`: exact for the exact families, tolerance-guarded float
    /// accumulation for `generic_real` and `gaussian`.
    pub fn measure(&self, x: &SparseSignal, tol: FloatTolerance) -> Result<SignVector> {
        self.check_dims(x)?;
        (0..self.m).map(|i| self.measure_row(i, x, tol)).collect()
    }

    /// One entry of [`SensingMatrix::measure`].
    pub fn measure_row(&self, i: usize, x: &SparseSignal, tol: FloatTolerance) -> Result<Sign> {
        Ok(match self.family {
            Family::DynamicRange | Family::SameSign => sign_of_rational(&self.dot_power(i, x)),
            Family::PrimeLog => self.sign_prime_log(i, x)?,
            Family::GenericReal | Family::Gaussian => self.float_sign(i, x, tol),
        })
    }

    fn float_sign(&self, i: usize, x: &SparseSignal, tol: FloatTolerance) -> Sign {
        let threshold = tol.threshold(self.row_l1(i), x.max_abs());
        sign_scalar(self.dot_f64(i, x), threshold)
    }

    /// Float-path signs for any family, ignoring exact payloads.
    pub fn measure_float(&self, x: &SparseSignal, tol: FloatTolerance) -> Result<SignVector> {
        self.check_dims(x)?;
        Ok((0..self.m).map(|i| self.float_sign(i, x, tol)).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson::from(self)).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MatrixJson = serde_json::from_str(text).map_err(|e| Error::malformed("matrix", &e))?;
        raw.try_into()
    }
}

fn sign_of_rational(v: &BigRational) -> Sign {
    if v.is_zero() {
        Sign::Zero
    } else if v.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

const EXACT_BIT_LIMIT: f64 = (1u64 << 26) as f64;

/// Sign of `Σ x_j log q_j` for distinct primes `q_j` and rationals `x_j`.
///
/// Clearing denominators gives integers `z_j` with the same sign pattern, and
/// the sum is positive iff `∏_{z>0} q^z > ∏_{z<0} q^{|z|}`. A float estimate
/// with a wide safety margin settles most mixed-sign cases; the rest are
/// compared as big integers.
pub fn prime_power_sign(terms: &[(u64, &BigRational)]) -> Result<Sign> {
    let z = cleared_exponents(terms);
    if z.is_empty() {
        return Ok(Sign::Zero);
    }
    if z.iter().all(|(_, e)| e.is_positive()) {
        return Ok(Sign::Positive);
    }
    if z.iter().all(|(_, e)| e.is_negative()) {
        return Ok(Sign::Negative);
    }
    let (mut sum, mut scale) = (0.0f64, 0.0f64);
    for (q, e) in &z {
        let term = e.to_f64().unwrap_or(f64::NAN) * (*q as f64).ln();
        sum += term;
        scale += term.abs();
    }
    if sum.is_finite() && sum.abs() > 1e-9 * scale {
        return Ok(if sum > 0.0 { Sign::Positive } else { Sign::Negative });
    }
    compare_prime_powers(&z)
}

/// Integers `z_j = x_j · lcm(denominators)`, divided by their gcd.
fn cleared_exponents(terms: &[(u64, &BigRational)]) -> Vec<(u64, BigInt)> {
    let terms: Vec<_> = terms.iter().filter(|(_, x)| !x.is_zero()).collect();
    let lcm = terms.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let mut z: Vec<(u64, BigInt)> = terms
        .iter()
        .map(|(q, x)| (*q, x.numer() * (&lcm / x.denom())))
        .collect();
    let g = z.iter().fold(BigInt::zero(), |acc, (_, e)| acc.gcd(e));
    if !g.is_zero() && !g.is_one() {
        for (_, e) in &mut z {
            *e /= &g;
        }
    }
    z
}

/// Exact comparison of `∏_{z>0} q^z` against `∏_{z<0} q^{|z|}`.
pub(crate) fn compare_prime_powers(z: &[(u64, BigInt)]) -> Result<Sign> {
    let bits: f64 = z
        .iter()
        .map(|(q, e)| e.abs().to_f64().unwrap_or(f64::INFINITY) * (*q as f64).log2())
        .sum();
    if bits > EXACT_BIT_LIMIT {
        return Err(Error::ExactTooLarge {
            bits: bits.min(u64::MAX as f64) as u64,
        });
    }
    let (mut pos, mut neg) = (BigUint::one(), BigUint::one());
    for (q, e) in z {
        let power = Pow::pow(BigUint::from(*q), e.magnitude().to_u32().expect("bounded by bit limit"));
        if e.is_positive() {
            pos *= power;
        } else if e.is_negative() {
            neg *= power;
        }
    }
    Ok(match pos.cmp(&neg) {
        std::cmp::Ordering::Greater => Sign::Positive,
        std::cmp::Ordering::Less => Sign::Negative,
        std::cmp::Ordering::Equal => Sign::Zero,
    })
}

/// Free-function form of [`SensingMatrix::measure`].
pub fn measure(a: &SensingMatrix, x: &SparseSignal, tol: FloatTolerance) -> Result<SignVector> {
    a.measure(x, tol)
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    family: Family,
    m: usize,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<DesignJson>,
    payload: PayloadJson,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum PayloadJson {
    Constants(Vec<Vec<f64>>),
    RowBases(Vec<String>),
    Primes(Vec<Vec<u64>>),
    BlockBases(Vec<String>),
    Dense(Vec<f64>),
}

impl From<&SensingMatrix> for MatrixJson {
    fn from(a: &SensingMatrix) -> Self {
        let payload = match &a.payload {
            Payload::Constants(c) => PayloadJson::Constants(c.clone()),
            Payload::RowBases(b) => PayloadJson::RowBases(b.iter().map(rational::format).collect()),
            Payload::Primes(p) => PayloadJson::Primes(p.clone()),
            Payload::BlockBases(b) => PayloadJson::BlockBases(b.iter().map(rational::format).collect()),
            Payload::Dense(v) => PayloadJson::Dense(v.clone()),
        };
        MatrixJson {
            family: a.family,
            m: a.m,
            n: a.n,
            eta: a.eta,
            r: a.r,
            base: a.base.as_ref().map(DesignJson::from),
            payload,
        }
    }
}

fn bad(message: impl Into<String>) -> Error {
    Error::Malformed {
        what: "matrix",
        line: 0,
        column: 0,
        message: message.into(),
    }
}

fn parse_all(values: &[String]) -> Result<Vec<BigRational>> {
    values.iter().map(|v| rational::parse(v)).collect()
}

fn check_aligned<T>(rows: &[Vec<usize>], values: &[Vec<T>]) -> Result<()> {
    if rows.len() != values.len() || rows.iter().zip(values).any(|(r, v)| r.len() != v.len()) {
        return Err(bad("payload does not match the base design's nonzeros"));
    }
    Ok(())
}

impl TryFrom<MatrixJson> for SensingMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        let base = raw.base.map(BinaryDesign::try_from).transpose()?;
        let matrix = match (raw.family, raw.payload, base) {
            (Family::Gaussian, PayloadJson::Dense(entries), None) => {
                if entries.len() != raw.m * raw.n || raw.m == 0 || raw.n == 0 {
                    return Err(bad("dense payload length is not m * n"));
                }
                SensingMatrix {
                    family: Family::Gaussian,
                    m: raw.m,
                    n: raw.n,
                    base: None,
                    row_supports: vec![(0..raw.n).collect(); raw.m],
                    payload: Payload::Dense(entries),
                    eta: None,
                    r: None,
                }
            }
            (Family::GenericReal, PayloadJson::Constants(c), Some(base)) => {
                let rows = base_row_supports(&base);
                check_aligned(&rows, &c)?;
                if c.iter().flatten().any(|v| !v.is_finite() || *v == 0.0) {
                    return Err(bad("constants must be finite and nonzero"));
                }
                SensingMatrix {
                    payload: Payload::Constants(c),
                    ..attach_generic_constants(&base, &mut crate::seed::rng_from_seed(0))
                }
            }
            (Family::DynamicRange, PayloadJson::RowBases(b), Some(base)) => {
                let eta = raw.eta.ok_or_else(|| bad("dynamic_range needs eta"))?;
                let bases = parse_all(&b)?;
                let floor = BigRational::one() + rational::from_f64(eta)?;
                if bases.len() != base.m() || bases.iter().any(|a| *a <= floor) {
                    return Err(bad("row bases must number m and exceed 1 + eta"));
                }
                SensingMatrix {
                    payload: Payload::RowBases(bases),
                    ..build_dynamic_range(&base, eta)?
                }
            }
            (Family::PrimeLog, PayloadJson::Primes(p), Some(base)) => {
                let rows = base_row_supports(&base);
                check_aligned(&rows, &p)?;
                let mut seen = HashMap::new();
                for &q in p.iter().flatten() {
                    if q < 2 || seen.insert(q, ()).is_some() {
                        return Err(bad(format!("prime {q} is invalid or repeated")));
                    }
                }
                SensingMatrix {
                    family: Family::PrimeLog,
                    m: base.m(),
                    n: base.n(),
                    row_supports: rows,
                    base: Some(base),
                    payload: Payload::Primes(p),
                    eta: None,
                    r: None,
                }
            }
            (Family::SameSign, PayloadJson::BlockBases(b), Some(base)) => {
                let r = raw.r.ok_or_else(|| bad("same_sign needs r"))?;
                let bases = parse_all(&b)?;
                let mut sorted = bases.clone();
                sorted.sort();
                sorted.dedup();
                if bases.len() != 2 * r + 1 || sorted.len() != bases.len() || sorted[0] <= BigRational::zero() {
                    return Err(bad("same_sign needs 2r + 1 distinct positive bases"));
                }
                SensingMatrix {
                    payload: Payload::BlockBases(bases),
                    ..build_same_sign(&base, r)
                }
            }
            (family, _, _) => return Err(bad(format!("payload or base does not fit family {}", family.name()))),
        };
        if matrix.m != raw.m || matrix.n != raw.n {
            return Err(bad(format!(
                "declared {} x {}, payload implies {} x {}",
                raw.m, raw.n, matrix.m, matrix.n
            )));
        }
        Ok(matrix)
    }
}
