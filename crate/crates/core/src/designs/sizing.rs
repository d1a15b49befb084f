//! Row-count and alphabet sizing for the random design constructions.
//!
//! All logarithms are natural. Every function returns the unscaled ceiling;
//! [`scaled`] applies the optional row-scale knob used by empirical sweeps.

use std::f64::consts::E;

/// Rows of the Bernoulli strongly list-disjunct design:
/// `⌈20·k·δ⁻¹·ln(n·e²/k)⌉`.
pub fn strongly_list_disjunct_rows(n: usize, k: usize, delta: f64) -> usize {
    let (n, k) = (n as f64, k as f64);
    (20.0 * k / delta * (n * E * E / k).ln()).ceil() as usize
}

/// Rows of a `(k, ℓ)`-list-disjunct design from the classical existence bound
/// `2k(k/ℓ + 1)(ln(n/(k+ℓ)) + 1)`.
pub fn list_disjunct_rows(n: usize, k: usize, ell: usize) -> usize {
    let (n, k, ell) = (n as f64, k as f64, ell as f64);
    (2.0 * k * (k / ell + 1.0) * ((n / (k + ell)).ln() + 1.0)).ceil() as usize
}

/// Alphabet size `q = ⌈(k+ℓ)(e/α)²⌉` of the q-ary union-free construction.
pub fn union_free_alphabet(k: usize, ell: usize, alpha: f64) -> usize {
    ((k + ell) as f64 * (E / alpha).powi(2)).ceil() as usize
}

/// Number of q-ary rows `m′ = ⌈(2/α)(k/ℓ + 1)(ln(n/(k+ℓ)) + e)(ln(e/α))⁻¹⌉`.
/// This is also the constant column weight `d` after one-hot expansion.
pub fn union_free_blocks(n: usize, k: usize, ell: usize, alpha: f64) -> usize {
    let (n, k, ell) = (n as f64, k as f64, ell as f64);
    (2.0 / alpha * (k / ell + 1.0) * ((n / (k + ell)).ln() + E) / (E / alpha).ln()).ceil() as usize
}

/// List size `⌈δt⌉`, clamped to at least one.
pub fn list_size(delta: f64, t: usize) -> usize {
    // Guards products such as (2/3)·3 that land a hair above an integer.
    let raw = (delta * t as f64 - 1e-9).ceil();
    (raw.max(1.0)) as usize
}

/// Applies the row-scale factor; `scale = 1` is the identity.
pub fn scaled(rows: usize, scale: f64) -> usize {
    if scale == 1.0 {
        rows
    } else {
        ((rows as f64 * scale).ceil() as usize).max(1)
    }
}
