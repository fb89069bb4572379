//! CSV input and output.
//!
//! Every writer emits a header row, `.` decimal separators and floats with
//! six significant digits ([`fmt_g`]). Tables produced by the simulation
//! and breakdown routines are preceded by `#`-prefixed metadata lines.

use std::io::{Read, Write};

use crate::breakdown::BreakdownRow;
use crate::error::{Error, Result};
use crate::estimators::{estimate, EstimatorKind};
use crate::sample::{build_pairs, PairScheme, WeightedSample};
use crate::sim::contamination::MECHANISM;
use crate::sim::rng::GENERATOR_ID;
use crate::sim::samples::SampleSpec;
use crate::sim::{MetricsRow, SensitivityRow};

/// Crate version, recorded in metadata lines.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Formats `x` like C's `%g`: six significant digits, trailing zeros
/// removed, scientific notation outside `[1e-4, 1e6)`.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    // `{:e}` rounds to the requested precision, which fixes the exponent
    let sci = format!("{:.5e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn input_err(line: u64, message: impl Into<String>) -> Error {
    Error::Input {
        line,
        message: message.into(),
    }
}

/// Reads a headed CSV whose columns must be exactly `expected`, returning
/// the parsed numeric rows. Lines starting with `#` are skipped.
fn read_numeric_table<R: Read>(reader: R, expected: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(|e| input_err(1, e.to_string()))?.clone();
    if headers.is_empty() {
        return Err(input_err(
            1,
            format!("missing header, expected `{}`", expected.join(",")),
        ));
    }
    if headers.iter().ne(expected.iter().copied()) {
        return Err(input_err(
            1,
            format!(
                "header `{}` does not match `{}`",
                headers.iter().collect::<Vec<_>>().join(","),
                expected.join(",")
            ),
        ));
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            input_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .zip(expected)
            .map(|(field, name)| {
                field
                    .parse::<f64>()
                    .map_err(|_| input_err(line, format!("{name} `{field}` is not a number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(input_err(1, "no data rows"));
    }
    Ok(rows)
}

/// Reads a `value,weight` CSV into a validated sample.
pub fn read_sample<R: Read>(reader: R) -> Result<WeightedSample> {
    let rows = read_numeric_table(reader, &["value", "weight"])?;
    for (idx, row) in rows.iter().enumerate() {
        // header is line 1
        let line = idx as u64 + 2;
        if !row[0].is_finite() {
            return Err(input_err(line, format!("value {} is not finite", row[0])));
        }
        if !(row[1].is_finite() && row[1] > 0.0) {
            return Err(input_err(
                line,
                format!("weight {} must be positive and finite", row[1]),
            ));
        }
    }
    let (values, weights) = rows.into_iter().map(|r| (r[0], r[1])).unzip();
    WeightedSample::new(values, weights)
}

/// Reads a single-column `weight` CSV (raw weights, not normalized).
pub fn read_weights<R: Read>(reader: R) -> Result<Vec<f64>> {
    let rows = read_numeric_table(reader, &["weight"])?;
    rows.into_iter()
        .enumerate()
        .map(|(idx, r)| {
            if r[0].is_finite() && r[0] > 0.0 {
                Ok(r[0])
            } else {
                Err(input_err(
                    idx as u64 + 2,
                    format!("weight {} must be positive and finite", r[0]),
                ))
            }
        })
        .collect()
}

/// Reads a `mu,sigma,weight` design for the replication study.
pub fn read_sample_spec<R: Read>(reader: R, label: Option<String>) -> Result<SampleSpec> {
    let rows = read_numeric_table(reader, &["mu", "sigma", "weight"])?;
    let mut mus = Vec::with_capacity(rows.len());
    let mut sigmas = Vec::with_capacity(rows.len());
    let mut weights = Vec::with_capacity(rows.len());
    for r in rows {
        mus.push(r[0]);
        sigmas.push(r[1]);
        weights.push(r[2]);
    }
    SampleSpec::new(label, mus, sigmas, weights)
}

fn write_metadata<W: Write>(out: &mut W, lines: &[String]) -> Result<()> {
    for line in lines {
        writeln!(out, "# {line}").map_err(io_err)?;
    }
    Ok(())
}

fn finish<W: Write>(wtr: csv::Writer<W>) -> Result<()> {
    wtr.into_inner().map_err(io_err)?.flush().map_err(io_err)
}

/// Every estimator variant on `sample`: `estimator,scheme,estimate`.
pub fn write_estimates<W: Write>(out: W, sample: &WeightedSample) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["estimator", "scheme", "estimate"]).map_err(io_err)?;
    for kind in EstimatorKind::all() {
        let value = match estimate(sample, kind) {
            Ok(v) => fmt_g(v),
            // a strict pair set is empty for a single observation
            Err(Error::EmptyPairSet { .. }) => String::new(),
            Err(e) => return Err(e),
        };
        wtr.write_record([kind.name(), kind.scheme_name(), &value])
            .map_err(io_err)?;
    }
    finish(wtr)
}

/// Pairwise averages and normalized pair weights, in row-major order.
pub fn write_pairs<W: Write>(out: W, sample: &WeightedSample, schemes: &[PairScheme]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["scheme", "i", "j", "value", "weight"])
        .map_err(io_err)?;
    for &scheme in schemes {
        let pairs = build_pairs(sample, scheme);
        for ((i, j), (v, w)) in scheme
            .indices(sample.len())
            .zip(pairs.values().iter().zip(pairs.weights()))
        {
            wtr.write_record([scheme.name(), &i.to_string(), &j.to_string(), &fmt_g(*v), &fmt_g(*w)])
                .map_err(io_err)?;
        }
    }
    finish(wtr)
}

/// Column names of the breakdown table.
pub fn breakdown_header() -> Vec<String> {
    let mut h: Vec<String> = ["n", "bp_median", "wm_lower", "wm_upper"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for s in PairScheme::ALL {
        let name = s.name();
        h.push(format!("pairs_{name}"));
        h.push(format!("bp_whl1_{name}"));
        h.push(format!("whl2_lower_{name}"));
        h.push(format!("whl2_upper_{name}"));
    }
    h
}

/// Breakdown table, one row per sample size. Breakdown points are printed
/// with three decimals; WHL2 cells are empty where the scheme has no pairs.
pub fn write_breakdown<W: Write>(mut out: W, rows: &[BreakdownRow], family: &str) -> Result<()> {
    write_metadata(
        &mut out,
        &[format!("whl {VERSION} breakdown"), format!("weight family: {family}")],
    )?;
    let bp = |x: f64| format!("{x:.3}");
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(breakdown_header()).map_err(io_err)?;
    for row in rows {
        let mut rec = vec![
            row.n.to_string(),
            bp(row.median),
            bp(row.weighted_median.0),
            bp(row.weighted_median.1),
        ];
        for idx in 0..3 {
            rec.push(row.pairs[idx].to_string());
            rec.push(bp(row.whl1[idx]));
            match row.whl2[idx] {
                Some((lo, hi)) => {
                    rec.push(bp(lo));
                    rec.push(bp(hi));
                }
                None => rec.extend([String::new(), String::new()]),
            }
        }
        wtr.write_record(&rec).map_err(io_err)?;
    }
    finish(wtr)
}

pub const SIMULATE_HEADER: [&str; 11] = [
    "sample",
    "n",
    "estimator",
    "scheme",
    "replications",
    "theta",
    "bias",
    "var_hat",
    "var_theta",
    "relative_efficiency",
    "seed",
];

/// Replication-study output. `blocks` pairs each design label with its rows.
pub fn write_simulation<W: Write>(mut out: W, blocks: &[(String, Vec<MetricsRow>)]) -> Result<()> {
    write_metadata(
        &mut out,
        &[format!("whl {VERSION} simulate"), format!("generator: {GENERATOR_ID}")],
    )?;
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(SIMULATE_HEADER).map_err(io_err)?;
    for (label, rows) in blocks {
        for r in rows {
            wtr.write_record([
                label.as_str(),
                &r.n.to_string(),
                r.estimator.name(),
                r.estimator.scheme_name(),
                &r.replications.to_string(),
                &fmt_g(r.theta),
                &fmt_g(r.bias),
                &fmt_g(r.var_hat),
                &fmt_g(r.var_theta),
                &fmt_g(r.relative_efficiency),
                &r.seed.to_string(),
            ])
            .map_err(io_err)?;
        }
    }
    finish(wtr)
}

pub const SENSITIVITY_HEADER: [&str; 8] = [
    "case",
    "proportion",
    "estimator",
    "scheme",
    "avg_bias",
    "stderr",
    "reps",
    "seed",
];

/// Sensitivity-sweep output with the contamination mechanism recorded in
/// the metadata.
pub fn write_sensitivity<W: Write>(mut out: W, rows: &[SensitivityRow], shift_multiplier: f64) -> Result<()> {
    write_metadata(
        &mut out,
        &[
            format!("whl {VERSION} sensitivity"),
            format!("generator: {GENERATOR_ID}"),
            format!("contamination: {MECHANISM}"),
            format!("shift multiplier: {}", fmt_g(shift_multiplier)),
            "bias reference: clean-sample weighted mean of the same replication".to_string(),
        ],
    )?;
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(SENSITIVITY_HEADER).map_err(io_err)?;
    for r in rows {
        wtr.write_record([
            &r.case.to_string(),
            &fmt_g(r.proportion),
            r.estimator.name(),
            r.estimator.scheme_name(),
            &fmt_g(r.avg_bias),
            &fmt_g(r.stderr),
            &r.reps.to_string(),
            &r.seed.to_string(),
        ])
        .map_err(io_err)?;
    }
    finish(wtr)
}

/// Which table a gnuplot script should plot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Breakdown,
    Simulation,
    Sensitivity,
}

/// A gnuplot script that reads `csv_path` and draws the matching figure.
pub fn gnuplot_script(kind: PlotKind, csv_path: &str) -> String {
    let preamble = format!(
        "set datafile separator ','\nset datafile commentschars '#'\nset key outside right\nset grid\ndata = '{csv_path}'\n"
    );
    let body = match kind {
        PlotKind::Breakdown => "\
set xlabel 'n'
set ylabel 'breakdown point'
set multiplot layout 1,2
set title 'WHL1'
plot data using 1:2 skip 1 with linespoints title 'median', \\
     data using 1:6 skip 1 with linespoints title 'strict', \\
     data using 1:10 skip 1 with linespoints title 'diag', \\
     data using 1:14 skip 1 with linespoints title 'all'
set title 'WHL2 bounds'
plot data using 1:15 skip 1 with linespoints title 'lower (all)', \\
     data using 1:16 skip 1 with linespoints title 'upper (all)', \\
     data using 1:3 skip 1 with linespoints title 'wm lower', \\
     data using 1:4 skip 1 with linespoints title 'wm upper'
unset multiplot
"
        .to_string(),
        PlotKind::Simulation => "\
set xlabel 'n'
set ylabel 'relative efficiency (%)'
keys = 'weighted_mean: weighted_median: whl1:strict whl1:diag whl1:all whl2:strict whl2:diag whl2:all'
plot for [k in keys] data using 2:(strcol(3).':'.strcol(4) eq k ? $10 : 1/0) skip 1 with linespoints title k
"
        .to_string(),
        PlotKind::Sensitivity => "\
set xlabel 'outlier proportion'
set ylabel 'average bias'
keys = 'weighted_mean: hl:all whl1:all whl2:all'
plot for [k in keys] data using 2:(strcol(3).':'.strcol(4) eq k ? $5 : 1/0) skip 1 with linespoints title k
"
        .to_string(),
    };
    preamble + &body
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format_matches_c() {
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(15.0), "15");
        assert_eq!(fmt_g(15.48981234), "15.4898");
        assert_eq!(fmt_g(96.85), "96.85");
        assert_eq!(fmt_g(0.1), "0.1");
        assert_eq!(fmt_g(-2.5), "-2.5");
        assert_eq!(fmt_g(123456.7), "123457");
        assert_eq!(fmt_g(999999.7), "1e+06");
        assert_eq!(fmt_g(1234567.0), "1.23457e+06");
        assert_eq!(fmt_g(0.0001234567), "0.000123457");
        assert_eq!(fmt_g(0.00001234567), "1.23457e-05");
        assert_eq!(fmt_g(2.0 / 3.0), "0.666667");
    }

    #[test]
    fn reads_sample_with_line_numbers() {
        let s = read_sample("value,weight\n1,1\n2, 3\n".as_bytes()).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0]);
        assert_eq!(s.weights(), &[0.25, 0.75]);

        let err = read_sample("value,weight\n1,1\n2,x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Input { line: 3, .. }), "{err:?}");
        let err = read_sample("value,weight\n1,1\n2,-1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Input { line: 3, .. }), "{err:?}");
        assert!(matches!(read_sample("".as_bytes()), Err(Error::Input { .. })));
        assert!(matches!(
            read_sample("value,weight\n".as_bytes()),
            Err(Error::Input { .. })
        ));
        assert!(matches!(
            read_sample("x,w\n1,1\n".as_bytes()),
            Err(Error::Input { line: 1, .. })
        ));
    }

    #[test]
    fn estimates_table_has_thirteen_rows() {
        let s = WeightedSample::new(vec![1.0, 2.0, 3.0], vec![1.0, 1.0, 1.0]).unwrap();
        let mut buf = Vec::new();
        write_estimates(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 14);
        assert!(text.contains("whl2,all,2\n"));
    }

    #[test]
    fn breakdown_header_layout() {
        let h = breakdown_header();
        assert_eq!(h.len(), 16);
        assert_eq!(h[4], "pairs_strict");
        assert_eq!(h[5], "bp_whl1_strict");
        assert_eq!(h[15], "whl2_upper_all");
    }
}
