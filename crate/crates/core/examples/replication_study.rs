//! Bias and relative efficiency of the weighted estimators over seeded
//! replications of the built-in designs.
//!
//! ```text
//! cargo run --release --example replication_study -- 4 2000
//! ```
//! The arguments are the design id (1..=6) and the replication count.

use whl::report::write_simulation;
use whl::sim::{run_replications, SampleSpec, DEFAULT_SEED};
use whl::{EstimatorKind, PairScheme};

fn main() -> whl::Result<()> {
    let mut args = std::env::args().skip(1);
    let design: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);
    let reps: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(2_000);
    let kinds = EstimatorKind::replication_roster(&PairScheme::ALL);
    let sizes: Vec<usize> = if design == 1 { vec![4] } else { vec![5, 10, 15] };
    let blocks = sizes
        .into_iter()
        .map(|n| {
            let spec = SampleSpec::preset(design, n)?;
            Ok((
                spec.label().to_string(),
                run_replications(&spec, &kinds, reps, DEFAULT_SEED)?,
            ))
        })
        .collect::<whl::Result<Vec<_>>>()?;
    write_simulation(std::io::stdout().lock(), &blocks)
}
