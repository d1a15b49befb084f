//! Run a small parameter sweep and print the CSV report, then audit the
//! aggregated rates against the per-trial records.
//!
//! ```text
//! cargo run --release --example experiment_sweep
//! ```

use onebitcs::harness::{run_experiment, ExperimentConfig, Scheme};
use onebitcs::signals::SignalClass;

fn main() -> onebitcs::Result<()> {
    let mut cfg = ExperimentConfig::new(
        Scheme::Dynrange,
        vec![12, 24],
        vec![2, 3],
        vec![0.5],
        SignalClass::BoundedKappa { eta: 4.0 },
        50,
    );
    cfg.seed = 2024;
    // Large sweeps would skip exhaustive certification.
    cfg.verify = false;
    println!("config: {}", cfg.to_json());

    let report = run_experiment(&cfg)?;
    print!("{}", report.to_csv());
    report.audit(&report.records)?;
    println!("audit ok over {} trial records", report.records.len());
    Ok(())
}
