//! Approximate support recovery of arbitrary real signals from one-bit
//! measurements with generic constants on a union-free design.
//!
//! ```text
//! cargo run --example approximate_recovery
//! ```

use onebitcs::designs::{build_verified, DesignRequest, VerifyOptions};
use onebitcs::recovery::approx_recover;
use onebitcs::seed::rng_from_seed;
use onebitcs::sensing::{attach_generic_constants, FloatTolerance};
use onebitcs::signals::{random_sparse, SignalClass};

fn main() -> onebitcs::Result<()> {
    let (n, k, eps) = (40, 3, 0.8);
    let request = DesignRequest::strongly_list_union_free(n, k, eps / 2.0, 0.5);
    // n = 40 is too large to certify exhaustively in a demo; sample instead.
    let design = build_verified(&request, 7, VerifyOptions::disabled())?;
    let a = attach_generic_constants(&design, &mut rng_from_seed(8));
    println!("n = {n}, k = {k}, eps = {eps}: m = {}", a.m());

    let mut rng = rng_from_seed(9);
    let mut exact = 0;
    for trial in 0..5 {
        let x = random_sparse(n, k, SignalClass::GeneralReal, &mut rng)?;
        let y = a.measure(&x, FloatTolerance::default())?;
        let est = approx_recover(&design, &y, eps)?.with_truth(&x.support());
        let t = est.truth.as_ref().expect("truth attached");
        exact += (t.false_positives == 0 && t.false_negatives == 0) as usize;
        println!(
            "trial {trial}: support {:?} -> {:?} (fp {}, fn {}, meets guarantee: {:?})",
            x.support(),
            est.indices,
            t.false_positives,
            t.false_negatives,
            est.meets_approximate(eps)
        );
    }
    println!("{exact}/5 exact");
    Ok(())
}
