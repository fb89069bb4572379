//! Finite-sample breakdown points for n = 1..=20: median, weighted median
//! bounds, WHL1 (closed form) and WHL2 bounds under a weight family.
//!
//! ```text
//! cargo run --example breakdown_table            # equal weights
//! cargo run --example breakdown_table -- arith   # arithmetic sweep
//! ```

use whl::breakdown::{bp_table, WeightFamily};
use whl::report::write_breakdown;

fn main() -> whl::Result<()> {
    let family = match std::env::args().nth(1).as_deref() {
        Some("arith") => WeightFamily::Arithmetic {
            grid: WeightFamily::DEFAULT_GRID,
        },
        _ => WeightFamily::Equal,
    };
    let rows = bp_table(20, &family)?;
    write_breakdown(std::io::stdout().lock(), &rows, &family.describe())
}
