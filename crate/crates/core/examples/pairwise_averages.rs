//! The pairwise weighted averages behind WHL1/WHL2 and their pair weights,
//! for each pair scheme.

use whl::{build_pairs, whl1, whl2, PairScheme, WeightedSample};

fn main() -> whl::Result<()> {
    let sample = WeightedSample::new(vec![1.0, 2.0, 6.0], vec![1.0, 2.0, 1.0])?;
    for scheme in PairScheme::ALL {
        let pairs = build_pairs(&sample, scheme);
        println!("{scheme}: {} pairs", pairs.len());
        for ((i, j), (v, w)) in scheme
            .indices(sample.len())
            .zip(pairs.values().iter().zip(pairs.weights()))
        {
            println!("  ({i},{j})  average {v:>8.4}  weight {w:.4}");
        }
        println!(
            "  WHL1 = {:.4}, WHL2 = {:.4}",
            whl1(&sample, scheme)?,
            whl2(&sample, scheme)?
        );
    }
    Ok(())
}
