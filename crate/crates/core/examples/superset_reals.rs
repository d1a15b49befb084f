//! Two-pass superset recovery of real signals, including a signal built to
//! cancel one measurement exactly.
//!
//! ```text
//! cargo run --example superset_reals
//! ```

use onebitcs::designs::{build_verified, DesignRequest, VerifyOptions};
use onebitcs::recovery::{clamp_epsilon, superset_reals_passes, trim_to_approximate};
use onebitcs::seed::rng_from_seed;
use onebitcs::sensing::{attach_generic_constants, FloatTolerance};
use onebitcs::signals::{cancellation_signal, random_sparse, SignalClass, SparseSignal};

fn show(a: &onebitcs::sensing::SensingMatrix, x: &SparseSignal, eps: f64, k: usize) -> onebitcs::Result<()> {
    let y = a.measure(x, FloatTolerance::default())?;
    let passes = superset_reals_passes(a, &y, eps, k)?;
    let c = passes.second.clone().with_truth(&x.support());
    println!(
        "  support {:?}: pass 1 {:?}, pass 2 {:?}, superset {:?}",
        x.support(),
        passes.first.indices,
        passes.second.indices,
        c.meets_superset(eps)
    );
    println!("  trimmed to approximate: {:?}", trim_to_approximate(&passes.second, eps)?.indices);
    Ok(())
}

fn main() -> onebitcs::Result<()> {
    let (n, k) = (12, 2);
    // Requested eps above the regime cap is clamped.
    let eps = clamp_epsilon(n, k, 1.0);
    let design = build_verified(
        &DesignRequest::strongly_list_union_free(n, k, eps / 2.0, 0.5),
        4,
        VerifyOptions::default(),
    )?;
    let a = attach_generic_constants(&design, &mut rng_from_seed(5));
    println!("eps = {eps:.4}, m = {}", a.m());

    println!("random signal:");
    show(&a, &random_sparse(n, k, SignalClass::GeneralReal, &mut rng_from_seed(6))?, eps, k)?;

    let row = (0..a.m()).find(|&i| a.row_support(i).len() >= 2).expect("a row with two columns");
    let (j1, j2) = (a.row_support(row)[0], a.row_support(row)[1]);
    let x = cancellation_signal(&a, row, j1, j2)?;
    println!("signal zeroing row {row} (columns {j1}, {j2}):");
    show(&a, &x, eps, k)
}
