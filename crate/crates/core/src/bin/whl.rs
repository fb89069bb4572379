//! Command-line front end: estimation on user data and the breakdown,
//! replication and contamination studies as CSV.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use whl::breakdown::{bp_table, WeightFamily};
use whl::report::{self, PlotKind};
use whl::sim::sensitivity::DEFAULT_GRID;
use whl::sim::{run_replications, sensitivity_sweep, SampleSpec, SensitivityConfig, DEFAULT_SEED};
use whl::{Error, EstimatorKind, PairScheme};

#[derive(Parser, Debug)]
#[command(
    name = "whl",
    version,
    about = "Weighted Hodges-Lehmann estimators and their studies"
)]
struct Cli {
    /// Master seed for every random stream.
    #[arg(long, global = true, env = "WHL_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Monte Carlo replications (simulate: 10000, sensitivity: 500).
    #[arg(long, global = true)]
    reps: Option<usize>,

    /// Pair scheme(s) for the pairwise estimators.
    #[arg(long, global = true, value_enum, default_value_t = SchemeArg::All3)]
    scheme: SchemeArg,

    /// Worker threads; 0 uses every core. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also write a gnuplot script next to --out as <out>.gp.
    #[arg(long, global = true)]
    gnuplot: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every estimator on a `value,weight` CSV ("-" reads stdin).
    Estimate { input: PathBuf },
    /// Dump pairwise averages and pair weights of a `value,weight` CSV.
    Pairs { input: PathBuf },
    /// Breakdown points for n = 1..=n-max.
    Breakdown {
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=200))]
        n_max: u64,
        /// equal | arith[:GRID] | csv:PATH (a `weight` column)
        #[arg(long, default_value = "equal")]
        family: String,
    },
    /// Bias and relative efficiency over replications.
    Simulate {
        /// Built-in design 1..=6.
        #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
        sample: Option<u32>,
        /// Custom design: CSV with header `mu,sigma,weight`.
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Smallest n for designs 2..=6.
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        /// Largest n for designs 2..=6.
        #[arg(long, default_value_t = 15)]
        n_max: usize,
    },
    /// Average bias under outlier contamination.
    Sensitivity {
        /// Case ids 1..=12, comma separated, or `all`.
        #[arg(long, default_value = "all")]
        case: String,
        /// Outlier proportions in [0, 0.25], comma separated.
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
        /// Outlier shift in population standard deviations.
        #[arg(long, default_value_t = whl::sim::contamination::DEFAULT_SHIFT_MULTIPLIER)]
        shift: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchemeArg {
    Strict,
    Diag,
    All,
    All3,
}

impl SchemeArg {
    fn schemes(self) -> Vec<PairScheme> {
        match self {
            SchemeArg::Strict => vec![PairScheme::Strict],
            SchemeArg::Diag => vec![PairScheme::WithDiagonal],
            SchemeArg::All => vec![PairScheme::All],
            SchemeArg::All3 => PairScheme::ALL.to_vec(),
        }
    }
}

fn open_input(path: &Path) -> Result<Box<dyn Read>, Error> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(io::stdin()));
    }
    File::open(path)
        .map(|f| Box::new(f) as Box<dyn Read>)
        .map_err(|e| Error::Input {
            line: 0,
            message: format!("{}: {e}", path.display()),
        })
}

fn parse_family(spec: &str) -> Result<WeightFamily, Error> {
    let bad = || {
        Error::BadParameters(format!(
            "unknown weight family '{spec}' (equal | arith[:GRID] | csv:PATH)"
        ))
    };
    match spec.split_once(':') {
        None if spec == "equal" => Ok(WeightFamily::Equal),
        None if spec == "arith" => Ok(WeightFamily::Arithmetic {
            grid: WeightFamily::DEFAULT_GRID,
        }),
        Some(("arith", grid)) => {
            let grid = grid.parse::<usize>().map_err(|_| bad())?;
            if grid == 0 {
                return Err(bad());
            }
            Ok(WeightFamily::Arithmetic { grid })
        }
        Some(("csv", path)) => WeightFamily::explicit(report::read_weights(open_input(Path::new(path))?)?),
        _ => Err(bad()),
    }
}

fn parse_cases(spec: &str) -> Result<Vec<u32>, Error> {
    if spec == "all" {
        return Ok((1..=12).collect());
    }
    spec.split(',')
        .map(|c| {
            let id = c
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::BadParameters(format!("bad case id '{c}'")))?;
            whl::sim::SensitivityCase::new(id).map(|case| case.id)
        })
        .collect()
}

fn run(cli: &Cli, out: &mut Vec<u8>) -> Result<Option<PlotKind>, Error> {
    let schemes = cli.scheme.schemes();
    match &cli.command {
        Command::Estimate { input } => {
            let sample = report::read_sample(open_input(input)?)?;
            report::write_estimates(out, &sample)?;
            Ok(None)
        }
        Command::Pairs { input } => {
            let sample = report::read_sample(open_input(input)?)?;
            report::write_pairs(out, &sample, &schemes)?;
            Ok(None)
        }
        Command::Breakdown { n_max, family } => {
            let family = parse_family(family)?;
            let rows = bp_table(*n_max as usize, &family)?;
            report::write_breakdown(out, &rows, &family.describe())?;
            Ok(Some(PlotKind::Breakdown))
        }
        Command::Simulate {
            sample,
            spec,
            n_min,
            n_max,
        } => {
            let reps = cli.reps.unwrap_or(10_000);
            let kinds = EstimatorKind::replication_roster(&schemes);
            let designs = match (sample, spec) {
                (Some(1), _) => vec![SampleSpec::preset(1, 4)?],
                (Some(id), _) => {
                    if n_min > n_max || *n_min < 1 {
                        return Err(Error::BadParameters(format!("bad n range {n_min}..{n_max}")));
                    }
                    (*n_min..=*n_max)
                        .map(|n| SampleSpec::preset(*id, n))
                        .collect::<Result<Vec<_>, _>>()?
                }
                (None, Some(path)) => {
                    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned());
                    vec![report::read_sample_spec(open_input(path)?, label)?]
                }
                (None, None) => unreachable!("clap requires --sample or --spec"),
            };
            let blocks = designs
                .iter()
                .map(|d| Ok((d.label().to_string(), run_replications(d, &kinds, reps, cli.seed)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            report::write_simulation(out, &blocks)?;
            Ok(Some(PlotKind::Simulation))
        }
        Command::Sensitivity { case, grid, shift } => {
            let mut config = SensitivityConfig::new(cli.reps.unwrap_or(500), cli.seed, &schemes);
            config.grid = grid.clone().unwrap_or_else(|| DEFAULT_GRID.to_vec());
            config.shift_multiplier = *shift;
            let mut rows = Vec::new();
            for id in parse_cases(case)? {
                rows.extend(sensitivity_sweep(id, &config)?);
            }
            report::write_sensitivity(out, &rows, *shift)?;
            Ok(Some(PlotKind::Sensitivity))
        }
    }
}

fn emit(cli: &Cli, body: &[u8], plot: Option<PlotKind>) -> io::Result<()> {
    match &cli.out {
        Some(path) => {
            std::fs::write(path, body)?;
            if let (true, Some(kind)) = (cli.gnuplot, plot) {
                let mut gp = path.clone().into_os_string();
                gp.push(".gp");
                std::fs::write(gp, report::gnuplot_script(kind, &path.to_string_lossy()))?;
            }
            Ok(())
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body)?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if cli.gnuplot && cli.out.is_none() {
        eprintln!("error: --gnuplot requires --out");
        return ExitCode::from(2);
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let mut body = Vec::new();
    match pool.install(|| run(&cli, &mut body)) {
        Ok(plot) => match emit(&cli, &body, plot) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(e @ Error::Io(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
