mod data;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moonshine_core::error::Error;
use moonshine_core::frobenius::recover_hauptmodul;
use moonshine_core::hyper::{gauss_q, hypergeometric_series, pochhammer, HypergeometricParams};
use moonshine_core::linalg::PivotRule;
use moonshine_core::moonshine::extend_coefficients;
use moonshine_core::qvalue::{parse_qvalue, QValue};
use moonshine_core::rational::{parse_rational, Rational};
use moonshine_core::schwarzfit::corpus::CorpusEntry;
use moonshine_core::schwarzfit::{
    fit_qvalue, shift_constant, verify_corpus, FitOptions, FitStrategy, VerifyStatus,
    DEFAULT_SERIES_ORDER,
};

use data::{Sources, DATA_DIR_VAR};
use render::Format;

/// Why a command stopped. `code` is the process exit status.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn math(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UnknownClass(_)
            | Error::Registry(_)
            | Error::InvalidParameters(_) => Failure::usage(e.to_string()),
            _ => Failure::math(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "moonshine",
    version,
    about = "Replicable-function coefficients and their Q-values"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    /// Directory holding registry.tsv and qtable.tsv.
    #[arg(long, env = DATA_DIR_VAR, global = true)]
    data_dir: Option<PathBuf>,

    #[arg(long, global = true)]
    registry: Option<PathBuf>,

    #[arg(long, global = true)]
    corpus: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a(-1) .. a(n) for a class.
    Coeffs {
        class: String,
        #[arg(short, long, value_parser = clap::value_parser!(i64).range(-1..))]
        n: i64,
    },
    /// Fit the Q-value of a class from its coefficients.
    Qfit {
        class: String,
        #[command(flatten)]
        fit: FitArgs,
    },
    /// Recover a(-1) .. a(n) from a Q-value file (`-` for stdin) or a corpus entry.
    Recover {
        #[arg(required_unless_present = "class", conflicts_with = "class")]
        file: Option<PathBuf>,
        #[arg(long)]
        class: Option<String>,
        #[arg(short, long, value_parser = clap::value_parser!(i64).range(-1..))]
        n: i64,
    },
    /// Fit the Q-value of a class shifted by a constant.
    Shift {
        class: String,
        #[arg(short, long, allow_hyphen_values = true, value_parser = rational_arg)]
        c: Rational,
        #[command(flatten)]
        fit: FitArgs,
    },
    /// Refit every corpus entry and compare with the printed value.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SERIES_ORDER, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: Option<u64>,
        /// Comma-separated labels; all entries when omitted.
        #[arg(long, value_delimiter = ',')]
        classes: Vec<String>,
    },
    /// Hypergeometric queries.
    Hyper {
        #[command(subcommand)]
        query: HyperQuery,
    },
}

#[derive(Subcommand, Debug)]
enum HyperQuery {
    /// Rising factorial (a)_n.
    Pochhammer {
        #[arg(allow_hyphen_values = true, value_parser = rational_arg)]
        a: Rational,
        #[arg(value_parser = clap::value_parser!(i64).range(0..))]
        n: i64,
    },
    /// Coefficients of a0 * 2F1(a, b; c; z) through z^(n-1).
    Series {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short, long, value_parser = clap::value_parser!(i64).range(1..))]
        n: i64,
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = rational_arg)]
        a0: Rational,
    },
    /// Q-value of the Gauss equation.
    GaussQ {
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(allow_hyphen_values = true, value_parser = rational_arg)]
    a: Rational,
    #[arg(allow_hyphen_values = true, value_parser = rational_arg)]
    b: Rational,
    #[arg(allow_hyphen_values = true, value_parser = rational_arg)]
    c: Rational,
}

impl ParamArgs {
    fn params(&self) -> Result<HypergeometricParams, Failure> {
        Ok(HypergeometricParams::new(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
        )?)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Structural,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PivotArg {
    FirstNonzero,
    SmallestMagnitude,
}

#[derive(Args, Debug)]
struct FitArgs {
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
    max_r: u64,
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
    max_s: u64,
    #[arg(long, default_value_t = DEFAULT_SERIES_ORDER, value_parser = clap::value_parser!(i64).range(1..))]
    order: i64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Structural)]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value_t = PivotArg::FirstNonzero)]
    pivot: PivotArg,
}

impl FitArgs {
    fn options(&self) -> FitOptions {
        FitOptions {
            series_order: self.order,
            strategy: match self.strategy {
                StrategyArg::Structural => FitStrategy::Structural,
                StrategyArg::Exhaustive => FitStrategy::Exhaustive,
            },
            pivot: match self.pivot {
                PivotArg::FirstNonzero => PivotRule::FirstNonzero,
                PivotArg::SmallestMagnitude => PivotRule::SmallestMagnitude,
            },
            ..FitOptions::with_bounds(self.max_r as usize, self.max_s as usize)
        }
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn select(corpus: &[CorpusEntry], labels: &[String]) -> Result<Vec<CorpusEntry>, Failure> {
    if labels.is_empty() {
        return Ok(corpus.to_vec());
    }
    labels
        .iter()
        .map(|l| {
            corpus
                .iter()
                .find(|e| &e.label == l)
                .cloned()
                .ok_or_else(|| Failure::usage(format!("unknown class {l}")))
        })
        .collect()
}

fn corpus_qvalue(corpus: &[CorpusEntry], label: &str) -> Result<QValue, Failure> {
    let entry = select(corpus, &[label.to_owned()])?.remove(0);
    entry
        .qvalue
        .ok_or_else(|| Failure::math(format!("class {label} has no legible Q-value")))
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let sources = Sources {
        registry: cli.registry.clone(),
        corpus: cli.corpus.clone(),
        data_dir: cli.data_dir.clone(),
    };
    let format = cli.format;
    let out = match &cli.command {
        Command::Coeffs { class, n } => {
            let table = extend_coefficients(&sources.registry()?, class, *n)?;
            render::coefficients(Some(class), -1, table.coeffs(), format, false)
        }
        Command::Qfit { class, fit } => {
            let rep = fit_qvalue(&sources.registry()?, class, &fit.options())?;
            render::fit_report(&rep, None, format)
        }
        Command::Shift { class, c, fit } => {
            let rep = shift_constant(&sources.registry()?, class, c, &fit.options())?;
            render::fit_report(&rep, Some(c), format)
        }
        Command::Recover { file, class, n } => {
            let q = match (file, class) {
                (Some(path), _) => parse_qvalue(&data::read(path)?)?,
                (None, Some(label)) => corpus_qvalue(&sources.corpus()?, label)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            let t = recover_hauptmodul(&q, *n)?;
            render::coefficients(class.as_deref(), -1, &t.dense_from(-1), format, true)
        }
        Command::Verify {
            order,
            jobs,
            classes,
        } => {
            let reg = sources.registry()?;
            let corpus = select(&sources.corpus()?, classes)?;
            let jobs = jobs.map_or_else(
                || std::thread::available_parallelism().map_or(1, |n| n.get()),
                |j| j as usize,
            );
            let opts = FitOptions {
                series_order: *order,
                ..FitOptions::default()
            };
            let rows = verify_corpus(&reg, &corpus, &opts, jobs);
            let failed = rows.iter().any(|r| r.status == VerifyStatus::Mismatch);
            return Ok((render::verify_rows(&rows, format), u8::from(failed)));
        }
        Command::Hyper { query } => match query {
            HyperQuery::Pochhammer { a, n } => render::scalar(&pochhammer(a, *n)?, format),
            HyperQuery::Series { params, n, a0 } => {
                let s = hypergeometric_series(&params.params()?, a0, *n)?;
                render::coefficients(None, 0, &s.dense_from(0), format, false)
            }
            HyperQuery::GaussQ { params } => {
                render::rational_function(&gauss_q(&params.params()?), format)
            }
        },
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("moonshine: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
