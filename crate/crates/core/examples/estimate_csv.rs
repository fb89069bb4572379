//! Every estimator on a `value,weight` CSV.
//!
//! ```text
//! cargo run --example estimate_csv -- data.csv
//! ```
//!
//! Without an argument a small built-in sample with one gross outlier is
//! used.

use std::fs::File;

use whl::report::{read_sample, write_estimates};
use whl::WeightedSample;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sample = match std::env::args().nth(1) {
        Some(path) => read_sample(File::open(path)?)?,
        None => WeightedSample::new(
            vec![9.8, 10.1, 10.0, 9.9, 10.3, 55.0],
            vec![2.0, 1.0, 3.0, 1.0, 2.0, 1.0],
        )?,
    };
    write_estimates(std::io::stdout().lock(), &sample)?;
    Ok(())
}
