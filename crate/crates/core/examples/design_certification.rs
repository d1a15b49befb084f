//! Sample a strongly list union-free design, certify it by brute force, and
//! compare its size with a list-disjunct design for the same `(n, k)`.
//!
//! ```text
//! cargo run --example design_certification
//! ```

use onebitcs::designs::{build_verified, DesignRequest, VerifyOptions};

fn main() -> onebitcs::Result<()> {
    let (n, k) = (12, 2);

    let luf = DesignRequest::strongly_list_union_free(n, k, 0.5, 0.5);
    let design = build_verified(&luf, 1, VerifyOptions::default())?;
    let p = design.params();
    println!(
        "union-free: m = {} ({} blocks of {} rows), column weight {:?}, verified after {:?} attempt(s)",
        design.m(),
        p.m_prime.unwrap_or(0),
        p.q.unwrap_or(0),
        design.d(),
        p.attempts,
    );

    let sld = DesignRequest::strongly_list_disjunct(n, k, 0.5);
    let design = build_verified(&sld, 1, VerifyOptions::default())?;
    println!(
        "list-disjunct: m = {}, verified = {}, attempts {:?}",
        design.m(),
        design.is_verified(),
        design.params().attempts
    );

    // A smaller-than-prescribed design is cheap to try and may fail certification.
    let tight = DesignRequest::strongly_list_disjunct(n, k, 0.5).with_m_scale(0.05);
    let small = tight.sample(2)?;
    let report = tight.verify(&small, 1_000_000)?;
    println!("scaled to m = {}: passed = {}, witness {:?}", small.m(), report.passed, report.witness);
    Ok(())
}
