//! Outlier injection on a single sample and its effect on each estimator.

use whl::sim::{inject_outliers, ContaminationSpec, SensitivityCase, DEFAULT_SEED};
use whl::{estimate, EstimatorKind, PairScheme};

fn main() -> whl::Result<()> {
    let case = SensitivityCase::new(6)?;
    let clean = case.generate(DEFAULT_SEED, 0)?;
    let sd = case.distribution.sd();
    let kinds = EstimatorKind::sensitivity_roster(&[PairScheme::All]);
    println!(
        "proportion  {}",
        kinds.iter().map(|k| format!("{k:>14}")).collect::<String>()
    );
    for p in [0.0, 0.05, 0.10, 0.25] {
        let spec = ContaminationSpec::with_proportion(p)?;
        let dirty = inject_outliers(&clean, &spec, sd, DEFAULT_SEED, u64::from(case.id), 0)?;
        let row: String = kinds
            .iter()
            .map(|&k| estimate(&dirty, k).map(|e| format!("{e:>14.3}")))
            .collect::<whl::Result<_>>()?;
        println!("{:>10.2}  {row}  ({} shifted)", p, spec.count(clean.len()));
    }
    Ok(())
}
