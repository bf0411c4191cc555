use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krfl::cache::Cache;
use krfl::demazure::DemazureSpec;
use krfl::lweight::{q_factorize, LWeight};
use krfl::module::default_points;
use krfl::typea::{char_simple, Partition, RootSystemA, Weight};
use krfl::verify::{Report, Verifier, DEFAULT_CAP, DEFAULT_SEED};
use krfl::Q;

#[derive(Parser)]
#[command(name = "krfl", version, about = "Graded characters of fusion products and Demazure modules for sl(n+1)")]
struct Cli {
    /// Keep constructed modules in memory only.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest ambient dimension to construct; bigger cases are skipped.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the fusion product with the generalized Demazure module.
    VerifyMain {
        #[command(flatten)]
        case: Case,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        points: Option<Vec<Q>>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run every check over all small cases.
    VerifySuite {
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = 4)]
        max_size: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Character of the simple module V(lambda).
    Char {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
    },
    /// Graded character of a fusion product of KR modules.
    Fusion {
        #[command(flatten)]
        case: Case,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        points: Option<Vec<Q>>,
    },
    /// Graded character of the Demazure module D(ell, lambda).
    Demazure {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        ell: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
    },
    /// Graded character of the generalized Demazure module D_i(xi).
    Gendemazure {
        #[command(flatten)]
        case: Case,
    },
    /// KR factorization of an l-weight read from a file or stdin.
    Qfactor {
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Case {
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    node: usize,
    #[arg(long, value_delimiter = ',')]
    partition: Vec<u32>,
}

impl Case {
    fn partition(&self) -> krfl::Result<Partition> {
        Partition::new(self.partition.clone())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

type Failure = Box<dyn std::error::Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("krfl: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let cache = if cli.no_cache { Cache::memory() } else { Cache::from_env() };
    let v = Verifier::new(cli.cap, cache);
    let out = &mut io::stdout().lock();
    match cli.command {
        Command::VerifyMain { case, points, format } => {
            let xi = case.partition()?;
            let r = v.verify_main(case.rank, case.node, &xi, points.as_deref());
            emit_reports(out, std::slice::from_ref(&r), format, true)?;
            Ok(r.passed())
        }
        Command::VerifySuite { max_rank, max_size, seed, format } => {
            let rs = v.verify_suite(max_rank, max_size, seed);
            emit_reports(out, &rs, format, false)?;
            Ok(rs.iter().all(Report::passed))
        }
        Command::Char { rank, lambda } => {
            let rs = RootSystemA::new(rank)?;
            let lam = weight(rank, lambda)?;
            emit_json(out, &char_simple(&rs, &lam)?.to_json(rank))?;
            Ok(true)
        }
        Command::Fusion { case, points } => {
            let xi = case.partition()?;
            let points = points.unwrap_or_else(|| default_points(xi.len()));
            let m = v.fusion(case.rank, case.node, &xi, &points)?;
            emit_json(out, &m.graded_character())?;
            Ok(true)
        }
        Command::Demazure { rank, ell, lambda } => {
            let spec = DemazureSpec { ell, lam: weight(rank, lambda)? };
            let m = v.rect_demazure(ell, &spec.base()?)?;
            emit_json(out, &m.graded_character())?;
            Ok(true)
        }
        Command::Gendemazure { case } => {
            let m = v.gen_demazure(case.rank, case.node, &case.partition()?)?;
            emit_json(out, &m.graded_character())?;
            Ok(true)
        }
        Command::Qfactor { input } => {
            let text = match input {
                Some(p) => std::fs::read_to_string(p)?,
                None => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let pi: LWeight = serde_json::from_str(&text)?;
            emit_json(out, &q_factorize(&pi))?;
            Ok(true)
        }
    }
}

fn weight(rank: usize, coords: Vec<i64>) -> krfl::Result<Weight> {
    let w = Weight::new(coords);
    w.check_rank(rank)?;
    Ok(w)
}

fn emit_json(out: &mut impl Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn emit_reports(out: &mut impl Write, reports: &[Report], format: Format, single: bool) -> Result<(), Failure> {
    match format {
        Format::Json if single => emit_json(out, &reports[0]),
        Format::Json => emit_json(out, &reports),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["name", "params", "status", "check", "expected", "got", "ok"])?;
            for r in reports {
                let params = r.params.to_string();
                let status = r.status.to_string();
                for d in &r.details {
                    let ok = d.ok.to_string();
                    w.write_record([&r.name, &params, &status, &d.check, &d.expected, &d.got, &ok])?;
                }
            }
            w.flush()?;
            Ok(())
        }
        Format::Table => {
            let rows: Vec<[String; 3]> =
                reports.iter().map(|r| [r.name.clone(), r.params.to_string(), r.status.to_string()]).collect();
            let w0 = rows.iter().map(|r| r[0].len()).max().unwrap_or(0);
            let w1 = rows.iter().map(|r| r[1].len()).max().unwrap_or(0);
            for (r, [name, params, status]) in reports.iter().zip(&rows) {
                writeln!(out, "{name:w0$}  {params:w1$}  {status}")?;
                for d in r.details.iter().filter(|d| !d.ok) {
                    writeln!(out, "    {}: expected {}, got {}", d.check, d.expected, d.got)?;
                }
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            writeln!(out, "{passed}/{} passed", reports.len())?;
            Ok(())
        }
    }
}
