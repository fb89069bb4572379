//! Exhaustive contamination of a small sample compared with the analytic
//! breakdown points.

use whl::breakdown::{bp_whl1, bp_whl2, empirical_breakdown, Breakdown, DEFAULT_MAGNITUDE};
use whl::{EstimatorKind, PairScheme, WeightedSample};

fn main() -> whl::Result<()> {
    let sample = WeightedSample::new(
        vec![4.1, 3.7, 5.2, 4.8, 4.4, 3.9, 5.0, 4.6],
        vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
    )?;
    let n = sample.len();
    for kind in [
        EstimatorKind::Mean,
        EstimatorKind::Median,
        EstimatorKind::WeightedMedian,
    ] {
        println!(
            "{kind:<24} empirical {:.3}",
            empirical_breakdown(&sample, kind, DEFAULT_MAGNITUDE)?
        );
    }
    for scheme in PairScheme::ALL {
        let e1 = empirical_breakdown(&sample, EstimatorKind::Whl1(scheme), DEFAULT_MAGNITUDE)?;
        let e2 = empirical_breakdown(&sample, EstimatorKind::Whl2(scheme), DEFAULT_MAGNITUDE)?;
        let Breakdown::Bounds { lower, upper } = bp_whl2(&sample, scheme)?.bp else {
            unreachable!("WHL2 breakdown is reported as bounds");
        };
        println!(
            "{scheme:<6} WHL1 empirical {e1:.3} closed form {:.3} | WHL2 empirical {e2:.3} (observations), pair-weight bounds [{lower:.3}, {upper:.3}]",
            bp_whl1(n, scheme)
        );
    }
    Ok(())
}
