//! Superset recovery for signals with few entries of the minority sign, using
//! blocks of `2R + 1` measurements per design row.
//!
//! ```text
//! cargo run --example same_sign
//! ```

use onebitcs::designs::DesignRequest;
use onebitcs::recovery::superset_same_sign;
use onebitcs::seed::rng_from_seed;
use onebitcs::sensing::{build_same_sign, FloatTolerance};
use onebitcs::signals::{random_sparse, rho, SignalClass};

fn main() -> onebitcs::Result<()> {
    let (n, k, r) = (16, 4, 1);
    let base = DesignRequest::strongly_list_disjunct(n, k, 0.5).sample(31)?;
    let a = build_same_sign(&base, r);
    println!("R = {r}: {} base rows, blocks of {}, m = {}", base.m(), a.block(), a.m());

    let mut rng = rng_from_seed(32);
    for _ in 0..3 {
        let x = random_sparse(n, k, SignalClass::BoundedRho { r }, &mut rng)?;
        let y = a.measure(&x, FloatTolerance::default())?;
        let c = superset_same_sign(&a, &y)?.with_truth(&x.support());
        println!(
            "support {:?} with {} minority entries -> {} candidates, superset {:?}",
            x.support(),
            rho(&x),
            c.len(),
            c.meets_superset(0.5)
        );
    }
    Ok(())
}
