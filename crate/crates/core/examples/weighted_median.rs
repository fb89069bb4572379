//! Weighted median selection and its boundary convention: when the
//! cumulative weight lands exactly on 1/2 the next order statistic is taken.

use whl::{median, order_by_value, sample_weighted_median, weighted_median, WeightedSample};

fn main() -> whl::Result<()> {
    let set = order_by_value(&[3.0, 1.0, 2.0], &[0.2, 0.5, 0.3])?;
    println!("sorted values {:?}", set.values());
    println!("cumulative    {:?}", set.cumulative());
    println!("weighted median = {}", weighted_median(&set)?);

    let even = WeightedSample::equal_weights(vec![1.0, 2.0, 3.0, 4.0])?;
    println!(
        "equal weights, n = 4: median {} vs weighted median {} (upper middle)",
        median(&even),
        sample_weighted_median(&even)
    );
    Ok(())
}
