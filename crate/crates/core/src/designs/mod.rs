//! Binary combinatorial designs: list-disjunct and list union-free matrices.
//!
//! A [`BinaryDesign`] is an `m × n` 0/1 matrix stored row-major in 64-bit
//! words, with the per-column row supports `B_j` materialized once. Random
//! constructions live on [`DesignRequest`]; brute-force certification lives in
//! [`verify`]. [`build_verified`] ties the two together with a rejection loop.

mod bits;
pub mod sizing;
pub mod verify;

pub use bits::BitSet;
pub use verify::{
    verify_list_disjunct, verify_list_union_free, verify_strongly_list_disjunct,
    verify_strongly_list_union_free, VerificationReport, Witness, DEFAULT_PAIR_BUDGET,
};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::{derive_seed, rng_from_seed};
use bits::words_for;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignKind {
    ListDisjunct,
    StronglyListDisjunct,
    ListUnionFree,
    StronglyListUnionFree,
    /// Hand-built matrix with no construction attached.
    Explicit,
}

impl DesignKind {
    pub fn is_union_free(self) -> bool {
        matches!(self, DesignKind::ListUnionFree | DesignKind::StronglyListUnionFree)
    }

    pub fn is_strong(self) -> bool {
        matches!(
            self,
            DesignKind::StronglyListDisjunct | DesignKind::StronglyListUnionFree
        )
    }
}

/// Construction record carried by every design.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignParams {
    pub kind: DesignKind,
    pub k: usize,
    pub ell: Option<usize>,
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
    /// Seed of the sample actually returned.
    pub seed: Option<u64>,
    /// Alphabet size of the q-ary union-free construction.
    pub q: Option<usize>,
    /// Number of q-ary rows before one-hot expansion.
    pub m_prime: Option<usize>,
    pub m_scale: f64,
    /// `None` when verification was never attempted.
    pub verified: Option<bool>,
    pub attempts: Option<u32>,
}

impl DesignParams {
    pub fn explicit() -> Self {
        DesignParams {
            kind: DesignKind::Explicit,
            k: 0,
            ell: None,
            delta: None,
            alpha: None,
            seed: None,
            q: None,
            m_prime: None,
            m_scale: 1.0,
            verified: None,
            attempts: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryDesign {
    n: usize,
    m: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    column_supports: Vec<Vec<usize>>,
    d: Option<usize>,
    params: DesignParams,
}

impl BinaryDesign {
    fn from_bits(m: usize, n: usize, bits: Vec<u64>, d: Option<usize>, params: DesignParams) -> Self {
        let words_per_row = words_for(n);
        debug_assert_eq!(bits.len(), m * words_per_row);
        let mut column_supports = vec![Vec::new(); n];
        for i in 0..m {
            let row = &bits[i * words_per_row..(i + 1) * words_per_row];
            for (w, &word) in row.iter().enumerate() {
                let mut rest = word;
                while rest != 0 {
                    let j = w * 64 + rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    column_supports[j].push(i);
                }
            }
        }
        BinaryDesign {
            n,
            m,
            words_per_row,
            bits,
            column_supports,
            d,
            params,
        }
    }

    /// Builds an explicit design from 0/1 rows. `d` is set when every column
    /// has the same weight.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        if m == 0 || n == 0 {
            return Err(Error::InvalidDimensions("design needs at least one row and column".into()));
        }
        let wpr = words_for(n);
        let mut bits = vec![0u64; m * wpr];
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => bits[i * wpr + j / 64] |= 1 << (j % 64),
                    other => return Err(Error::invalid(format!("entry {other} is not binary"))),
                }
            }
        }
        let mut design = BinaryDesign::from_bits(m, n, bits, None, DesignParams::explicit());
        design.d = design.common_column_weight();
        Ok(design)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Constant column weight, when the design has one.
    pub fn d(&self) -> Option<usize> {
        self.d
    }

    pub fn params(&self) -> &DesignParams {
        &self.params
    }

    pub fn is_verified(&self) -> bool {
        self.params.verified == Some(true)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    /// Rows where column `j` is 1 (the set `B_j`), ascending.
    pub fn column_support(&self, j: usize) -> &[usize] {
        &self.column_supports[j]
    }

    pub fn column_supports(&self) -> &[Vec<usize>] {
        &self.column_supports
    }

    /// Columns where row `i` is 1, ascending.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        let row = &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row];
        BitSet::from_words(self.n, row.to_vec()).iter().collect()
    }

    /// `B_j` as a bitset over rows.
    pub fn column_set(&self, j: usize) -> BitSet {
        BitSet::from_indices(self.m, self.column_supports[j].iter().copied())
    }

    pub fn column_sets(&self) -> Vec<BitSet> {
        (0..self.n).map(|j| self.column_set(j)).collect()
    }

    fn common_column_weight(&self) -> Option<usize> {
        let w = self.column_supports.first()?.len();
        self.column_supports.iter().all(|c| c.len() == w).then_some(w)
    }

    /// Row `i` as bytes, column `j` at bit `j % 8` of byte `j / 8`.
    fn row_bytes(&self, i: usize) -> Vec<u8> {
        let row = &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row];
        let mut out: Vec<u8> = row.iter().flat_map(|w| w.to_le_bytes()).collect();
        out.truncate(self.n.div_ceil(8));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DesignJson::from(self)).expect("design serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: DesignJson = serde_json::from_str(text).map_err(|e| Error::malformed("design", &e))?;
        raw.try_into()
    }
}

/// Wire form: rows are hex strings, row-major, little-endian bit order
/// within each byte.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub(crate) struct DesignJson {
    n: usize,
    m: usize,
    d: Option<usize>,
    params: DesignParams,
    rows: Vec<String>,
}

impl From<&BinaryDesign> for DesignJson {
    fn from(design: &BinaryDesign) -> Self {
        DesignJson {
            n: design.n,
            m: design.m,
            d: design.d,
            params: design.params.clone(),
            rows: (0..design.m).map(|i| hex::encode(design.row_bytes(i))).collect(),
        }
    }
}

impl TryFrom<DesignJson> for BinaryDesign {
    type Error = Error;

    fn try_from(raw: DesignJson) -> Result<Self> {
        let bad = |message: String| Error::Malformed {
            what: "design",
            line: 0,
            column: 0,
            message,
        };
        if raw.rows.len() != raw.m {
            return Err(bad(format!("{} rows listed, m = {}", raw.rows.len(), raw.m)));
        }
        let wpr = words_for(raw.n);
        let nbytes = raw.n.div_ceil(8);
        let mut bits = vec![0u64; raw.m * wpr];
        for (i, row) in raw.rows.iter().enumerate() {
            let bytes = hex::decode(row).map_err(|e| bad(format!("row {i}: {e}")))?;
            if bytes.len() != nbytes {
                return Err(bad(format!("row {i}: {} bytes, expected {nbytes}", bytes.len())));
            }
            for (b, &byte) in bytes.iter().enumerate() {
                for bit in 0..8 {
                    if byte >> bit & 1 == 1 {
                        let j = b * 8 + bit;
                        if j >= raw.n {
                            return Err(bad(format!("row {i}: bit {j} beyond n = {}", raw.n)));
                        }
                        bits[i * wpr + j / 64] |= 1 << (j % 64);
                    }
                }
            }
        }
        let design = BinaryDesign::from_bits(raw.m, raw.n, bits, raw.d, raw.params);
        if let Some(d) = design.d {
            if design.column_supports.iter().any(|c| c.len() != d) {
                return Err(bad(format!("column weights disagree with d = {d}")));
            }
        }
        Ok(design)
    }
}

/// List-size parameter: a fixed `ℓ` or a fraction `δ` (list size `⌈δt⌉`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ListSize {
    Ell(usize),
    Delta(f64),
}

/// Everything needed to sample (and re-verify) one random design.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignRequest {
    pub kind: DesignKind,
    pub n: usize,
    pub k: usize,
    pub list: ListSize,
    pub alpha: Option<f64>,
    pub m_scale: f64,
}

impl DesignRequest {
    pub fn list_disjunct(n: usize, k: usize, ell: usize) -> Self {
        DesignRequest {
            kind: DesignKind::ListDisjunct,
            n,
            k,
            list: ListSize::Ell(ell),
            alpha: None,
            m_scale: 1.0,
        }
    }

    pub fn strongly_list_disjunct(n: usize, k: usize, delta: f64) -> Self {
        DesignRequest {
            kind: DesignKind::StronglyListDisjunct,
            n,
            k,
            list: ListSize::Delta(delta),
            alpha: None,
            m_scale: 1.0,
        }
    }

    pub fn list_union_free(n: usize, k: usize, ell: usize, alpha: f64) -> Self {
        DesignRequest {
            kind: DesignKind::ListUnionFree,
            n,
            k,
            list: ListSize::Ell(ell),
            alpha: Some(alpha),
            m_scale: 1.0,
        }
    }

    pub fn strongly_list_union_free(n: usize, k: usize, delta: f64, alpha: f64) -> Self {
        DesignRequest {
            kind: DesignKind::StronglyListUnionFree,
            n,
            k,
            list: ListSize::Delta(delta),
            alpha: Some(alpha),
            m_scale: 1.0,
        }
    }

    pub fn with_m_scale(mut self, m_scale: f64) -> Self {
        self.m_scale = m_scale;
        self
    }

    /// `ℓ` used by the sizing formulas: the fixed list size, or `⌈δk⌉`.
    pub fn sizing_ell(&self) -> usize {
        match self.list {
            ListSize::Ell(ell) => ell,
            ListSize::Delta(delta) => sizing::list_size(delta, self.k),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let DesignRequest { n, k, .. } = *self;
        if k == 0 || k >= n {
            return Err(Error::invalid(format!("need 1 <= k < n, got k = {k}, n = {n}")));
        }
        if !(self.m_scale > 0.0 && self.m_scale.is_finite()) {
            return Err(Error::invalid(format!("m_scale must be positive, got {}", self.m_scale)));
        }
        match (self.kind, self.list) {
            (DesignKind::ListDisjunct | DesignKind::ListUnionFree, ListSize::Ell(ell)) => {
                if ell == 0 {
                    return Err(Error::invalid("list size ell must be >= 1"));
                }
            }
            (DesignKind::StronglyListDisjunct | DesignKind::StronglyListUnionFree, ListSize::Delta(delta)) => {
                if !(delta > 0.0 && delta <= 1.0) {
                    return Err(Error::invalid(format!("delta must lie in (0, 1], got {delta}")));
                }
            }
            (DesignKind::Explicit, _) => {
                return Err(Error::invalid("explicit designs cannot be sampled"));
            }
            (kind, list) => {
                return Err(Error::invalid(format!("{kind:?} does not take list parameter {list:?}")));
            }
        }
        if self.kind.is_union_free() {
            let alpha = self.alpha.ok_or_else(|| Error::invalid("union-free designs need alpha"))?;
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::invalid(format!("alpha must lie in (0, 1), got {alpha}")));
            }
        }
        if self.kind != DesignKind::StronglyListDisjunct && k + self.sizing_ell() > n {
            return Err(Error::invalid(format!(
                "k + ell = {} exceeds n = {n}",
                k + self.sizing_ell()
            )));
        }
        Ok(())
    }

    /// Draws one random design from the construction matching `kind`.
    pub fn sample(&self, seed: u64) -> Result<BinaryDesign> {
        self.validate()?;
        let mut rng = rng_from_seed(seed);
        let (n, k) = (self.n, self.k);
        let mut params = DesignParams {
            kind: self.kind,
            k,
            ell: None,
            delta: None,
            alpha: self.alpha,
            seed: Some(seed),
            q: None,
            m_prime: None,
            m_scale: self.m_scale,
            verified: None,
            attempts: None,
        };
        match self.list {
            ListSize::Ell(ell) => params.ell = Some(ell),
            ListSize::Delta(delta) => params.delta = Some(delta),
        }
        let design = match self.kind {
            DesignKind::ListDisjunct | DesignKind::StronglyListDisjunct => {
                let rows = match self.list {
                    ListSize::Ell(ell) => sizing::list_disjunct_rows(n, k, ell),
                    ListSize::Delta(delta) => sizing::strongly_list_disjunct_rows(n, k, delta),
                };
                let m = sizing::scaled(rows, self.m_scale);
                bernoulli_design(m, n, 1.0 / (k as f64 + 1.0), &mut rng, params)
            }
            DesignKind::ListUnionFree | DesignKind::StronglyListUnionFree => {
                let ell = self.sizing_ell();
                let alpha = self.alpha.expect("validated");
                let q = sizing::union_free_alphabet(k, ell, alpha);
                let m_prime = sizing::scaled(sizing::union_free_blocks(n, k, ell, alpha), self.m_scale);
                if self.kind == DesignKind::StronglyListUnionFree {
                    params.ell = Some(ell);
                }
                params.q = Some(q);
                params.m_prime = Some(m_prime);
                one_hot_design(m_prime, q, n, &mut rng, params)
            }
            DesignKind::Explicit => unreachable!("rejected by validate"),
        };
        Ok(design)
    }

    /// Runs the verifier matching `kind` (all `t ≤ k` for strongly-* kinds).
    pub fn verify(&self, design: &BinaryDesign, budget: u64) -> Result<VerificationReport> {
        let k = self.k;
        match (self.kind, self.list) {
            (DesignKind::ListDisjunct, ListSize::Ell(ell)) => verify_list_disjunct(design, k, ell, budget),
            (DesignKind::StronglyListDisjunct, ListSize::Delta(delta)) => {
                verify_strongly_list_disjunct(design, k, delta, budget)
            }
            (DesignKind::ListUnionFree, ListSize::Ell(ell)) => {
                verify_list_union_free(design, k, ell, self.alpha.unwrap_or(1.0), budget)
            }
            (DesignKind::StronglyListUnionFree, ListSize::Delta(delta)) => {
                verify_strongly_list_union_free(design, k, delta, self.alpha.unwrap_or(1.0), budget)
            }
            _ => Err(Error::invalid("request has no matching verifier")),
        }
    }
}

fn bernoulli_design(m: usize, n: usize, p: f64, rng: &mut impl Rng, params: DesignParams) -> BinaryDesign {
    let wpr = words_for(n);
    let mut bits = vec![0u64; m * wpr];
    for i in 0..m {
        for j in 0..n {
            if rng.random_bool(p) {
                bits[i * wpr + j / 64] |= 1 << (j % 64);
            }
        }
    }
    BinaryDesign::from_bits(m, n, bits, None, params)
}

/// Uniform q-ary `m′ × n` matrix, each symbol expanded to a one-hot block of
/// height `q`. Column weight is exactly `m′`.
fn one_hot_design(m_prime: usize, q: usize, n: usize, rng: &mut impl Rng, params: DesignParams) -> BinaryDesign {
    let m = m_prime * q;
    let wpr = words_for(n);
    let mut bits = vec![0u64; m * wpr];
    for block in 0..m_prime {
        for j in 0..n {
            let symbol = rng.random_range(0..q);
            let i = block * q + symbol;
            bits[i * wpr + j / 64] |= 1 << (j % 64);
        }
    }
    BinaryDesign::from_bits(m, n, bits, Some(m_prime), params)
}

pub fn build_list_disjunct(n: usize, k: usize, ell: usize, seed: u64) -> Result<BinaryDesign> {
    DesignRequest::list_disjunct(n, k, ell).sample(seed)
}

/// i.i.d. Bernoulli(1/(k+1)) design with `m = ⌈20kδ⁻¹ln(ne²/k)⌉` rows.
pub fn build_strongly_list_disjunct(n: usize, k: usize, delta: f64, seed: u64) -> Result<BinaryDesign> {
    DesignRequest::strongly_list_disjunct(n, k, delta).sample(seed)
}

pub fn build_list_union_free(n: usize, k: usize, ell: usize, alpha: f64, seed: u64) -> Result<BinaryDesign> {
    DesignRequest::list_union_free(n, k, ell, alpha).sample(seed)
}

/// The union-free construction at `ℓ = ⌈δk⌉`.
pub fn build_strongly_list_union_free(
    n: usize,
    k: usize,
    delta: f64,
    alpha: f64,
    seed: u64,
) -> Result<BinaryDesign> {
    DesignRequest::strongly_list_union_free(n, k, delta, alpha).sample(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub enabled: bool,
    pub max_attempts: u32,
    pub budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            enabled: true,
            max_attempts: 50,
            budget: DEFAULT_PAIR_BUDGET,
        }
    }
}

impl VerifyOptions {
    pub fn disabled() -> Self {
        VerifyOptions {
            enabled: false,
            ..Default::default()
        }
    }
}

/// Resamples until the matching verifier passes. Attempt `i` uses
/// `derive_seed(seed, i)`, so attempt 0 is the plain sample at `seed`.
pub fn build_verified(request: &DesignRequest, seed: u64, options: VerifyOptions) -> Result<BinaryDesign> {
    request.validate()?;
    if options.max_attempts == 0 {
        return Err(Error::AttemptsExhausted { attempts: 0 });
    }
    if !options.enabled {
        let mut design = request.sample(seed)?;
        design.params.verified = Some(false);
        design.params.attempts = Some(1);
        return Ok(design);
    }
    for attempt in 0..options.max_attempts {
        let mut design = request.sample(derive_seed(seed, attempt as u64))?;
        if request.verify(&design, options.budget)?.passed {
            design.params.verified = Some(true);
            design.params.attempts = Some(attempt + 1);
            return Ok(design);
        }
    }
    Err(Error::AttemptsExhausted {
        attempts: options.max_attempts,
    })
}
