//! Superset recovery for rational signals: each entry is the logarithm of a
//! distinct prime, and signs are decided with exact integer arithmetic.
//!
//! ```text
//! cargo run --example rational_signals
//! ```

use num_rational::BigRational;
use onebitcs::designs::DesignRequest;
use onebitcs::recovery::superset_rationals;
use onebitcs::seed::rng_from_seed;
use onebitcs::sensing::{build_prime_log, prime_power_sign, FloatTolerance};
use onebitcs::signals::{random_sparse, SignalClass};

fn main() -> onebitcs::Result<()> {
    // 2 log 3 = log 9 exceeds 3 log 2 = log 8 by about 0.118.
    let two = BigRational::from_integer(2.into());
    let minus_three = BigRational::from_integer((-3).into());
    println!("sign(2 log 3 - 3 log 2) = {:?}", prime_power_sign(&[(3, &two), (2, &minus_three)])?);

    let (n, k) = (16, 2);
    let base = DesignRequest::strongly_list_disjunct(n, k, 0.5).sample(21)?;
    let a = build_prime_log(&base);
    println!("m = {}, largest prime {}", a.m(), (0..n).filter_map(|j| a.prime(a.m() - 1, j)).max().unwrap_or(0));

    let mut rng = rng_from_seed(22);
    for _ in 0..3 {
        let x = random_sparse(n, k, SignalClass::Rational { denom_bound: 50 }, &mut rng)?;
        let y = a.measure(&x, FloatTolerance::default())?;
        let c = superset_rationals(&a, &y)?.with_truth(&x.support());
        let values: Vec<String> = x.entries().map(|(j, e)| format!("x{j} = {}", e.exact)).collect();
        println!("{} -> {:?} (superset {:?})", values.join(", "), c.indices, c.meets_superset(0.5));
    }
    Ok(())
}
