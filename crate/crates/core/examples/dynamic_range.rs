//! Superset recovery for signals of bounded dynamic range: exact measurements
//! with powers of one rational base per row, then zero-row deletion.
//!
//! ```text
//! cargo run --example dynamic_range
//! ```

use onebitcs::designs::DesignRequest;
use onebitcs::oracles::row_polynomial;
use onebitcs::recovery::superset_dynrange;
use onebitcs::seed::rng_from_seed;
use onebitcs::sensing::{build_dynamic_range, FloatTolerance};
use onebitcs::signals::{kappa, random_sparse, SignalClass};

fn main() -> onebitcs::Result<()> {
    let (n, k, eta) = (20, 3, 4.0);
    let base = DesignRequest::strongly_list_disjunct(n, k, 0.5).sample(11)?;
    let a = build_dynamic_range(&base, eta)?;
    println!("n = {n}, k = {k}, eta = {eta}: m = {}, row base {}", a.m(), a.rational_bases()[0]);

    let x = random_sparse(n, k, SignalClass::BoundedKappa { eta }, &mut rng_from_seed(12))?;
    println!("signal support {:?}, dynamic range {:.3}", x.support(), kappa(&x)?);
    let y = a.measure(&x, FloatTolerance::default())?;
    println!("{} of {} responses are zero", y.zeros(), y.len());

    let c = superset_dynrange(&a, &y)?.with_truth(&x.support());
    println!("recovered {:?}, superset: {:?}", c.indices, c.meets_superset(0.5));

    if let Some(i) = (0..a.m()).find(|&i| !y.get(i).is_zero()) {
        let p = row_polynomial(&a, i, &x)?;
        println!("row {i} value as a polynomial in its base: {:?}", p.terms().iter().map(|(c, e)| format!("{c}*r^{e}")).collect::<Vec<_>>());
    }
    Ok(())
}
