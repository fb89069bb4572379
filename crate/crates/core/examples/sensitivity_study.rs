//! Average bias under growing outlier contamination for one case
//! (1..=12: four distributions by three weight constructions).
//!
//! ```text
//! cargo run --release --example sensitivity_study -- 5 200
//! ```

use whl::report::write_sensitivity;
use whl::sim::{sensitivity_sweep, SensitivityCase, SensitivityConfig, DEFAULT_SEED};
use whl::PairScheme;

fn main() -> whl::Result<()> {
    let mut args = std::env::args().skip(1);
    let case: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(5);
    let reps: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(200);
    let info = SensitivityCase::new(case)?;
    eprintln!(
        "case {case}: {} with {} weights",
        info.distribution.label(),
        info.weights.label()
    );
    let config = SensitivityConfig::new(reps, DEFAULT_SEED, &[PairScheme::All]);
    let rows = sensitivity_sweep(case, &config)?;
    write_sensitivity(std::io::stdout().lock(), &rows, config.shift_multiplier)
}
