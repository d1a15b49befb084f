//! Brute-force and analytic checks of the facts the constructions rely on:
//! root bounds for the power families, linear independence of generic
//! columns, Gaussian hyperplane separation, and the measurement lower bound.

mod poly;

pub use poly::{
    cauchy_check, descartes_check, random_polynomial, real_roots, row_polynomial, SparsePolynomial, BISECTION_TOL, SCAN_STEP,
};

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::sensing::{build_gaussian, FloatTolerance};
use crate::signals::SparseSignal;

/// Rank by Gaussian elimination with partial pivoting; pivots of magnitude
/// at most `tol` count as zero. `rows` is row-major.
pub fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let height = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        if r == height {
            break;
        }
        let pivot = (r..height)
            .max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs()))
            .expect("nonempty range");
        if a[pivot][c].abs() <= tol {
            continue;
        }
        a.swap(r, pivot);
        let (top, below) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below {
            let f = row[c] / pivot_row[c];
            if f != 0.0 {
                for (v, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *v -= f * p;
                }
            }
        }
        r += 1;
    }
    r
}

fn drop_column(rows: &[Vec<f64>], c: usize) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| *v).collect())
        .collect()
}

/// Whether column `c` lies outside the span of the other columns.
pub fn column_is_independent(rows: &[Vec<f64>], c: usize) -> bool {
    let max = rows.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-8 * max;
    rank(rows, tol) == rank(&drop_column(rows, c), tol) + 1
}

/// Draws `trials` random `r × s` matrices with uniform(1, 2) values on a
/// random support in which column 0 has weight at least `s`, and checks that
/// every column of weight `≥ s` is outside the span of the rest.
pub fn kernel_independence_check(r: usize, s: usize, trials: usize, rng: &mut impl Rng) -> Result<bool> {
    if s == 0 || r < s {
        return Err(Error::InvalidDimensions(format!("need r >= s >= 1, got r = {r}, s = {s}")));
    }
    for _ in 0..trials {
        let mut x = vec![vec![0.0; s]; r];
        let heavy = rng.random_range(s..=r);
        for i in index::sample(rng, r, heavy) {
            x[i][0] = rng.random_range(1.0..2.0);
        }
        for row in x.iter_mut() {
            for v in row.iter_mut().skip(1) {
                if rng.random_bool(0.5) {
                    *v = rng.random_range(1.0..2.0);
                }
            }
        }
        for c in 0..s {
            let weight = x.iter().filter(|row| row[c] != 0.0).count();
            if weight >= s && !column_is_independent(&x, c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_unit(v: &[f64]) -> Result<()> {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NonUnitInput { norm });
    }
    Ok(())
}

/// Fraction of i.i.d. standard-normal rows `h` with `sign(h·x) ≠ sign(h·y)`.
pub fn gaussian_separation_estimate(x: &[f64], y: &[f64], trials: usize, rng: &mut impl Rng) -> Result<f64> {
    if x.len() != y.len() || x.is_empty() {
        return Err(Error::InvalidDimensions(format!(
            "vectors of length {} and {}",
            x.len(),
            y.len()
        )));
    }
    check_unit(x)?;
    check_unit(y)?;
    if trials == 0 {
        return Err(Error::invalid("trials must be >= 1"));
    }
    let a = build_gaussian(trials, x.len(), rng)?;
    let exact = FloatTolerance::Absolute(0.0);
    let sx = a.measure(&SparseSignal::from_dense(x)?, exact)?;
    let sy = a.measure(&SparseSignal::from_dense(y)?, exact)?;
    let differ = sx.iter().zip(sy.iter()).filter(|(a, b)| a != b).count();
    Ok(differ as f64 / trials as f64)
}

/// `arccos(⟨x, y⟩) / π`, the limit of [`gaussian_separation_estimate`].
pub fn separation_closed_form(x: &[f64], y: &[f64]) -> f64 {
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    dot.clamp(-1.0, 1.0).acos() / std::f64::consts::PI
}

/// `(k/ε) · ln((n−k)/(εk)) / ln(k/ε)` with unit constant: a reporting
/// estimate of the measurements any approximate-recovery scheme needs.
pub fn lower_bound_measurements(n: usize, k: usize, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0 / 3.0) {
        return Err(Error::invalid(format!("eps must lie in (0, 1/3), got {eps}")));
    }
    if k == 0 || n <= k {
        return Err(Error::invalid(format!("need n > k >= 1, got n = {n}, k = {k}")));
    }
    let ratio = k as f64 / eps;
    if ratio <= 1.0 {
        return Err(Error::invalid(format!("k/eps = {ratio} leaves ln(k/eps) <= 0")));
    }
    Ok(ratio / ratio.ln() * ((n - k) as f64 / (eps * k as f64)).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    #[test]
    fn rank_basics() {
        assert_eq!(rank(&[vec![1.5]], 1e-8), 1);
        assert_eq!(rank(&[vec![1.0, 2.0], vec![2.0, 4.0]], 1e-8), 1);
        assert_eq!(rank(&[vec![1.0, 0.0], vec![0.0, 0.0]], 1e-8), 1);
        assert!(column_is_independent(&[vec![1.0, 0.0], vec![1.0, 0.0]], 0));
        assert!(!column_is_independent(&[vec![1.0, 2.0], vec![1.0, 2.0]], 0));
    }

    #[test]
    fn kernel_check_examples() {
        let mut rng = rng_from_seed(0);
        assert!(kernel_independence_check(1, 1, 10, &mut rng).unwrap());
        assert!(kernel_independence_check(6, 4, 100, &mut rng).unwrap());
        assert!(kernel_independence_check(3, 4, 1, &mut rng).is_err());
    }

    #[test]
    fn separation_examples() {
        let mut rng = rng_from_seed(1);
        let x = [1.0, 0.0];
        assert_eq!(gaussian_separation_estimate(&x, &x, 1000, &mut rng).unwrap(), 0.0);
        let f = gaussian_separation_estimate(&x, &[0.0, 1.0], 20_000, &mut rng).unwrap();
        assert!((f - 0.5).abs() < 4.0 * (0.25f64 / 20_000.0).sqrt());
        assert!((separation_closed_form(&x, &[0.5, 0.75f64.sqrt()]) - 1.0 / 3.0).abs() < 1e-12);
        assert!(matches!(
            gaussian_separation_estimate(&[2.0, 0.0], &x, 10, &mut rng),
            Err(Error::NonUnitInput { .. })
        ));
    }

    #[test]
    fn lower_bound_examples() {
        let v = lower_bound_measurements(1000, 10, 0.1).unwrap();
        assert!((v - 100.0 / 100f64.ln() * 990f64.ln()).abs() < 1e-9);
        assert!((v - 149.8).abs() < 0.05);
        assert!(lower_bound_measurements(1000, 10, 0.4).is_err());
        assert!(lower_bound_measurements(1000, 1, 0.3).is_ok());
        assert!(lower_bound_measurements(10, 10, 0.1).is_err());
    }
}
