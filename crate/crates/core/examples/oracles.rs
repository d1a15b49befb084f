//! The independent checks behind the constructions: root bounds, generic
//! column independence, Gaussian separation and the measurement lower bound.
//!
//! ```text
//! cargo run --release --example oracles
//! ```

use onebitcs::oracles::{
    cauchy_check, descartes_check, gaussian_separation_estimate, kernel_independence_check, lower_bound_measurements,
    random_polynomial, real_roots, separation_closed_form, SparsePolynomial,
};
use onebitcs::seed::rng_from_seed;

fn main() -> onebitcs::Result<()> {
    // (r - 1)(r - 2)(r + 3) = r^3 - 7r + 6
    let p = SparsePolynomial::from_f64(&[(6.0, 0), (-7.0, 1), (1.0, 3)])?;
    println!("roots of r^3 - 7r + 6: {:?}", real_roots(&p, -10.0, 10.0));
    println!("  cauchy (eta = 7): {}, descartes: {}", cauchy_check(&p, 7.0)?, descartes_check(&p)?);

    let mut rng = rng_from_seed(1);
    let cauchy = (0..200).filter(|_| cauchy_check(&random_polynomial(12, 6, 4.0, &mut rng), 4.0).unwrap_or(false));
    println!("random cauchy checks passed: {}/200", cauchy.count());

    println!("kernel (6, 4) x 100: {}", kernel_independence_check(6, 4, 100, &mut rng)?);

    let x = [1.0, 0.0];
    let y = [0.5, 0.75f64.sqrt()];
    let f = gaussian_separation_estimate(&x, &y, 100_000, &mut rng)?;
    println!("separation at <x,y> = 0.5: {f:.4} (limit {:.4})", separation_closed_form(&x, &y));

    println!("lower bound n = 1000, k = 10, eps = 0.1: {:.1}", lower_bound_measurements(1000, 10, 0.1)?);
    Ok(())
}
