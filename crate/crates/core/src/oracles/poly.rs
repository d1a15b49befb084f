//! Sparse polynomials, a bracketing real-root finder, and the Cauchy and
//! Descartes checks.

use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rational;
use crate::sensing::{Family, SensingMatrix};
use crate::signals::SparseSignal;

/// Grid spacing of the sign-change scan.
pub const SCAN_STEP: f64 = 1e-3;
/// Bracket width at which bisection stops.
pub const BISECTION_TOL: f64 = 1e-10;

/// `Σ c_t r^{e_t}` with nonzero rational coefficients and strictly
/// increasing exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePolynomial {
    terms: Vec<(BigRational, u32)>,
}

impl SparsePolynomial {
    /// Merges repeated exponents and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (BigRational, u32)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        terms.sort_by_key(|(_, e)| *e);
        let mut merged: Vec<(BigRational, u32)> = Vec::with_capacity(terms.len());
        for (c, e) in terms {
            match merged.last_mut() {
                Some((acc, last)) if *last == e => *acc += c,
                _ => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        SparsePolynomial { terms: merged }
    }

    /// Float coefficients, converted exactly.
    pub fn from_f64(terms: &[(f64, u32)]) -> Result<Self> {
        let exact = terms
            .iter()
            .map(|&(c, e)| rational::from_f64(c).map(|c| (c, e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparsePolynomial::new(exact))
    }

    pub fn terms(&self) -> &[(BigRational, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(_, e)| *e)
    }

    pub fn eval_exact(&self, r: &BigRational) -> BigRational {
        self.terms.iter().map(|(c, e)| c * Pow::pow(r, *e)).sum()
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| rational::to_f64(c) * r.powi(*e as i32))
            .sum()
    }

    /// `max|c| / min|c|` over the coefficients.
    pub fn coefficient_ratio(&self) -> Result<f64> {
        let mags: Vec<BigRational> = self.terms.iter().map(|(c, _)| c.abs()).collect();
        let hi = mags.iter().max().ok_or(Error::TrivialPolynomial)?;
        let lo = mags.iter().min().ok_or(Error::TrivialPolynomial)?;
        Ok(rational::to_f64(&(hi / lo)))
    }

    /// Sign changes in the coefficient sequence, ordered by exponent.
    pub fn sign_changes(&self) -> usize {
        self.terms
            .windows(2)
            .filter(|w| w[0].0.is_positive() != w[1].0.is_positive())
            .count()
    }

    /// Same polynomial divided by `r^{lowest exponent}`.
    fn without_root_at_zero(&self) -> SparsePolynomial {
        let shift = self.terms.first().map_or(0, |(_, e)| *e);
        SparsePolynomial {
            terms: self.terms.iter().map(|(c, e)| (c.clone(), e - shift)).collect(),
        }
    }
}

/// Real roots in `[lo, hi]`: grid scan with step [`SCAN_STEP`], each sign
/// change refined by bisection. Roots of even multiplicity that do not land
/// on the grid are missed.
pub fn real_roots(p: &SparsePolynomial, lo: f64, hi: f64) -> Vec<f64> {
    let mut roots: Vec<f64> = Vec::new();
    let mut push = |r: f64| {
        if roots.last().is_none_or(|&last| (r - last).abs() > 1e-6) {
            roots.push(r);
        }
    };
    let steps = ((hi - lo) / SCAN_STEP).ceil() as usize;
    let point = |i: usize| if i == steps { hi } else { lo + i as f64 * SCAN_STEP };
    let mut a = lo;
    let mut fa = p.eval(a);
    if fa == 0.0 {
        push(a);
    }
    for i in 1..=steps {
        let b = point(i);
        let fb = p.eval(b);
        if fb == 0.0 {
            push(b);
        } else if fa != 0.0 && (fa < 0.0) != (fb < 0.0) {
            push(bisect(p, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    roots
}

fn bisect(p: &SparsePolynomial, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > BISECTION_TOL {
        let mid = 0.5 * (a + b);
        let fm = p.eval(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// With coefficient ratio at most `eta`, every real root found on
/// `[-(2+η), 2+η]` has magnitude at most `1 + η`.
pub fn cauchy_check(p: &SparsePolynomial, eta: f64) -> Result<bool> {
    let ratio = p.coefficient_ratio()?;
    if ratio > eta * (1.0 + 1e-12) {
        return Err(Error::invalid(format!("coefficient ratio {ratio} exceeds eta = {eta}")));
    }
    let reach = 2.0 + eta;
    let bound = 1.0 + eta;
    Ok(real_roots(p, -reach, reach).iter().all(|r| r.abs() <= bound + 1e-9))
}

/// Positive real roots found on `(0, 1 + ratio]` number at most the
/// coefficient sign changes.
pub fn descartes_check(p: &SparsePolynomial) -> Result<bool> {
    let q = p.without_root_at_zero();
    let bound = 1.0 + q.coefficient_ratio()?;
    let positive = real_roots(&q, 0.0, bound).into_iter().filter(|&r| r > 0.0).count();
    Ok(positive <= q.sign_changes())
}

/// Random polynomial with `1..=max_terms` terms, distinct exponents in
/// `0..=max_degree`, and coefficient magnitudes in `[1, ratio]` with random
/// signs, so the coefficient ratio is at most `ratio`.
pub fn random_polynomial(max_degree: u32, max_terms: usize, ratio: f64, rng: &mut impl Rng) -> SparsePolynomial {
    let slots = max_degree as usize + 1;
    let count = rng.random_range(1..=max_terms.clamp(1, slots));
    let terms = index::sample(rng, slots, count).into_iter().map(|e| {
        let mag = if ratio > 1.0 { rng.random_range(1.0..=ratio) } else { 1.0 };
        let c = if rng.random_bool(0.5) { mag } else { -mag };
        (rational::from_f64(c).expect("finite"), e as u32)
    });
    SparsePolynomial::new(terms.collect::<Vec<_>>())
}

/// The polynomial whose value at the row base equals `⟨A^i, x⟩` for a
/// `dynamic_range` or `same_sign` row: `Σ_j x_j r^{rank of j in the row}`.
pub fn row_polynomial(a: &SensingMatrix, i: usize, x: &SparseSignal) -> Result<SparsePolynomial> {
    if !matches!(a.family(), Family::DynamicRange | Family::SameSign) {
        return Err(Error::WrongFamily {
            expected: "dynamic_range or same_sign",
            found: a.family().name(),
        });
    }
    let terms = x
        .entries()
        .filter_map(|(j, e)| a.exponent(i, j).map(|t| (e.exact.clone(), t as u32)));
    Ok(SparsePolynomial::new(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(f64, u32)]) -> SparsePolynomial {
        SparsePolynomial::from_f64(terms).unwrap()
    }

    #[test]
    fn construction_normalizes() {
        let p = poly(&[(1.0, 2), (2.0, 0), (-1.0, 2), (0.0, 5)]);
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.degree(), Some(0));
        assert!(poly(&[(1.0, 1), (-1.0, 1)]).is_zero());
    }

    #[test]
    fn examples() {
        // r - 5
        let p = poly(&[(-5.0, 0), (1.0, 1)]);
        assert!(cauchy_check(&p, 5.0).unwrap());
        let roots = real_roots(&p, -7.0, 7.0);
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 5.0).abs() < 1e-9);
        // 1 - r
        let p = poly(&[(1.0, 0), (-1.0, 1)]);
        assert!(cauchy_check(&p, 1.0).unwrap());
        assert!(descartes_check(&p).unwrap());
        // (r - 1)(r - 2)
        let p = poly(&[(2.0, 0), (-3.0, 1), (1.0, 2)]);
        assert_eq!(p.sign_changes(), 2);
        let roots = real_roots(&p, 0.0, 4.0);
        assert_eq!(roots.len(), 2);
        assert!(descartes_check(&p).unwrap());
        assert_eq!(descartes_check(&SparsePolynomial::new([])), Err(Error::TrivialPolynomial));
        assert_eq!(cauchy_check(&SparsePolynomial::new([]), 2.0), Err(Error::TrivialPolynomial));
    }

    #[test]
    fn roots_at_zero_are_not_positive() {
        // r^3 - r^2 = r^2 (r - 1)
        let p = poly(&[(-1.0, 2), (1.0, 3)]);
        assert!(descartes_check(&p).unwrap());
        assert_eq!(p.eval_exact(&rational::parse("1").unwrap()), BigRational::zero());
    }
}
