//! Exhaustive certification of the list-disjunct and list union-free
//! properties.
//!
//! Pairs `(S, T)` are enumerated lexicographically: `S` over `ℓ`-subsets of
//! `[n]` in lex order, then `T` over `k`-subsets of `[n] \ S` in lex order.
//! The first violating pair is returned as the witness.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{sizing, BinaryDesign, BitSet};
use crate::error::{Error, Result};

pub const DEFAULT_PAIR_BUDGET: u64 = 10_000_000;

/// A disjoint pair `(S, T)` that violates the checked property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub witness: Option<Witness>,
    pub pairs_checked: u64,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Number of disjoint `(S, T)` pairs with `|S| = ell`, `|T| = k`.
pub fn pair_count(n: usize, k: usize, ell: usize) -> u128 {
    binomial(n, ell).saturating_mul(binomial(n.saturating_sub(ell), k))
}

fn check_sizes(design: &BinaryDesign, k: usize, ell: usize) -> Result<()> {
    if k == 0 || ell == 0 {
        return Err(Error::invalid("k and ell must be >= 1"));
    }
    if k + ell > design.n() {
        return Err(Error::invalid(format!(
            "k + ell = {} exceeds n = {}",
            k + ell,
            design.n()
        )));
    }
    Ok(())
}

fn check_budget(pairs: u128, budget: u64) -> Result<()> {
    if pairs > budget as u128 {
        Err(Error::BudgetExceeded { pairs, budget })
    } else {
        Ok(())
    }
}

/// Walks every disjoint `(S, T)` in lexicographic order and stops at the first
/// pair for which `good` is false.
fn scan_pairs(
    n: usize,
    k: usize,
    ell: usize,
    mut good: impl FnMut(&[usize], &[usize]) -> bool,
) -> VerificationReport {
    let mut pairs_checked = 0u64;
    for s in (0..n).combinations(ell) {
        let rest: Vec<usize> = (0..n).filter(|j| !s.contains(j)).collect();
        for t in rest.into_iter().combinations(k) {
            pairs_checked += 1;
            if !good(&s, &t) {
                return VerificationReport {
                    passed: false,
                    witness: Some(Witness { s, t }),
                    pairs_checked,
                };
            }
        }
    }
    VerificationReport {
        passed: true,
        witness: None,
        pairs_checked,
    }
}

fn union_of(columns: &[BitSet], idx: impl IntoIterator<Item = usize>, rows: usize) -> BitSet {
    let mut u = BitSet::new(rows);
    for j in idx {
        u.union_with(&columns[j]);
    }
    u
}

/// Some column of `S` has a row where it is 1 and all of `T` is 0.
pub(crate) fn disjunct_pair_ok(columns: &[BitSet], rows: usize, s: &[usize], t: &[usize]) -> bool {
    let covered = union_of(columns, t.iter().copied(), rows);
    s.iter().any(|&j| columns[j].difference_count(&covered) > 0)
}

/// Some `j ∈ S` overlaps the union of the other members of `S ∪ T` in fewer
/// than `α·d` rows.
pub(crate) fn union_free_pair_ok(
    columns: &[BitSet],
    rows: usize,
    d: usize,
    alpha: f64,
    s: &[usize],
    t: &[usize],
) -> bool {
    let t_union = union_of(columns, t.iter().copied(), rows);
    let limit = alpha * d as f64;
    s.iter().any(|&j| {
        let mut others = t_union.clone();
        for &i in s.iter().filter(|&&i| i != j) {
            others.union_with(&columns[i]);
        }
        (columns[j].intersection_count(&others) as f64) < limit
    })
}

/// Checks the `(k, ℓ)`-list-disjunct property over all disjoint `(S, T)` with
/// `|S| = ℓ`, `|T| = k`.
pub fn verify_list_disjunct(design: &BinaryDesign, k: usize, ell: usize, budget: u64) -> Result<VerificationReport> {
    check_sizes(design, k, ell)?;
    check_budget(pair_count(design.n(), k, ell), budget)?;
    let columns = design.column_sets();
    Ok(scan_pairs(design.n(), k, ell, |s, t| disjunct_pair_ok(&columns, design.m(), s, t)))
}

/// Checks the `(n, m, d, k, ℓ, α)`-list union-free property.
pub fn verify_list_union_free(
    design: &BinaryDesign,
    k: usize,
    ell: usize,
    alpha: f64,
    budget: u64,
) -> Result<VerificationReport> {
    check_sizes(design, k, ell)?;
    let d = design.d().ok_or(Error::MissingColumnWeight)?;
    check_budget(pair_count(design.n(), k, ell), budget)?;
    let columns = design.column_sets();
    Ok(scan_pairs(design.n(), k, ell, |s, t| {
        union_free_pair_ok(&columns, design.m(), d, alpha, s, t)
    }))
}

fn verify_every_t(
    n: usize,
    k: usize,
    delta: f64,
    budget: u64,
    mut verify_at: impl FnMut(usize, usize) -> Result<VerificationReport>,
) -> Result<VerificationReport> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::invalid(format!("delta must lie in (0, 1], got {delta}")));
    }
    let total: u128 = (1..=k)
        .map(|t| pair_count(n, t, sizing::list_size(delta, t)))
        .fold(0u128, |a, b| a.saturating_add(b));
    check_budget(total, budget)?;
    let mut pairs_checked = 0;
    for t in 1..=k {
        let report = verify_at(t, sizing::list_size(delta, t))?;
        pairs_checked += report.pairs_checked;
        if !report.passed {
            return Ok(VerificationReport {
                pairs_checked,
                ..report
            });
        }
    }
    Ok(VerificationReport {
        passed: true,
        witness: None,
        pairs_checked,
    })
}

/// `(t, ⌈δt⌉)`-list-disjunct for every `t ≤ k`.
pub fn verify_strongly_list_disjunct(
    design: &BinaryDesign,
    k: usize,
    delta: f64,
    budget: u64,
) -> Result<VerificationReport> {
    verify_every_t(design.n(), k, delta, budget, |t, ell| {
        verify_list_disjunct(design, t, ell, u64::MAX)
    })
}

/// `(n, m, d, t, ⌈δt⌉, α)`-list union-free for every `t ≤ k`.
pub fn verify_strongly_list_union_free(
    design: &BinaryDesign,
    k: usize,
    delta: f64,
    alpha: f64,
    budget: u64,
) -> Result<VerificationReport> {
    design.d().ok_or(Error::MissingColumnWeight)?;
    verify_every_t(design.n(), k, delta, budget, |t, ell| {
        verify_list_union_free(design, t, ell, alpha, u64::MAX)
    })
}

impl Witness {
    /// Re-checks the witness directly against the design.
    pub fn violates_list_disjunct(&self, design: &BinaryDesign) -> bool {
        !disjunct_pair_ok(&design.column_sets(), design.m(), &self.s, &self.t)
    }

    pub fn violates_list_union_free(&self, design: &BinaryDesign, alpha: f64) -> bool {
        match design.d() {
            Some(d) => !union_free_pair_ok(&design.column_sets(), design.m(), d, alpha, &self.s, &self.t),
            None => false,
        }
    }
}
