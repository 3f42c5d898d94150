//! `demorgan`: analyze finite frames, verify the invariant suite, sweep
//! topology corpora and export Hasse diagrams.
//!
//! Exit codes: 0 success, 1 input error, 2 mathematical-integrity failure.

mod cache;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use demorgan_core::analysis::{check_oracles, OracleStatus};
use demorgan_core::corpus::{
    run_corpus_with, summarize, write_jsonl, CorpusConfig, CorpusError, NoStore, ReportStore,
    Selection,
};
use demorgan_core::dot::{frame_dot, sublocales_dot};
use demorgan_core::sublocale::DEFAULT_ENUMERATION_CAP;
use demorgan_core::{analyze, parse_frame_spec, verify, AnalysisError, Frame, OracleMode, Report};

use crate::cache::FileCache;

#[derive(Parser)]
#[command(
    name = "demorgan",
    version,
    about = "Booleanization and DeMorganization of finite frames"
)]
struct Cli {
    /// Directory of cached reports, keyed by spec and flags.
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute B_L, M_L and the structural flags of a frame.
    Analyze {
        /// FrameSpec JSON file, or `-` for stdin.
        file: PathBuf,
        /// Also cross-check against the enumeration oracles.
        #[arg(long)]
        oracle: bool,
    },
    /// Run the full invariant suite on a frame.
    Verify {
        file: PathBuf,
        /// Also run the three enumeration oracles.
        #[arg(long)]
        oracle: bool,
    },
    /// Verify every topology on a few points, or a random sample.
    #[command(group(ArgGroup::new("selection").required(true).args(["all", "random"])))]
    Corpus {
        #[arg(long)]
        points: usize,
        /// Every topology (points ≤ 4).
        #[arg(long)]
        all: bool,
        /// This many seeded random topologies (points ≤ 6).
        #[arg(long, value_name = "K")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        oracle: bool,
        /// JSON-lines output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        workers: Option<usize>,
        /// Keep wall-clock timings in the reports.
        #[arg(long)]
        timings: bool,
    },
    /// Print a Graphviz Hasse diagram.
    ExportDot {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = What::Frame)]
        what: What,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Frame,
    Sublocales,
}

enum Failure {
    Input(String),
    Integrity(String),
}

impl Failure {
    fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Input(_) => ExitCode::from(1),
            Failure::Integrity(_) => ExitCode::from(2),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Integrity(_) => Failure::Integrity(e.to_string()),
            AnalysisError::TooLarge { .. } => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let (Failure::Input(msg) | Failure::Integrity(msg)) = &failure;
            eprintln!("error: {msg}");
            failure.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cache = match &cli.cache {
        Some(dir) => Some(
            FileCache::open(dir.clone())
                .map_err(|e| Failure::Input(format!("cache {}: {e}", dir.display())))?,
        ),
        None => None,
    };
    let store: &dyn ReportStore = match &cache {
        Some(c) => c,
        None => &NoStore,
    };
    match cli.command {
        Command::Analyze { file, oracle } => {
            let report = cached_report(store, "analyze", oracle, &file, |name, frame| {
                let mut report = analyze(name, frame)?;
                if oracle {
                    if frame.size() > DEFAULT_ENUMERATION_CAP {
                        return Err(AnalysisError::TooLarge {
                            size: frame.size(),
                            cap: DEFAULT_ENUMERATION_CAP,
                        }
                        .into());
                    }
                    let agree = check_oracles(frame, &mut report.law_failures);
                    report.oracle = OracleStatus {
                        ran: true,
                        agree: Some(agree),
                    };
                }
                Ok(report)
            })?;
            emit_report(&report)
        }
        Command::Verify { file, oracle } => {
            let mode = if oracle {
                OracleMode::Required
            } else {
                OracleMode::Off
            };
            let report = cached_report(store, "verify", oracle, &file, |name, frame| {
                Ok(verify(name, frame, mode)?)
            })?;
            emit_report(&report)
        }
        Command::Corpus {
            points,
            all,
            random,
            seed,
            oracle,
            out,
            workers,
            timings,
        } => {
            let selection = match (all, random) {
                (true, _) => Selection::All,
                (false, Some(count)) => Selection::Random { count, seed },
                (false, None) => unreachable!("clap requires --all or --random"),
            };
            let config = CorpusConfig {
                points,
                selection,
                oracle,
                workers: workers
                    .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
                timings,
            };
            let reports = run_corpus_with(&config, store).map_err(|e| match e {
                CorpusError::Analysis(e) => Failure::from(e),
                other => Failure::Input(other.to_string()),
            })?;
            let summary = summarize(&reports);
            let summary_line = serde_json::to_string(&summary).expect("summary serializes");
            match out {
                Some(path) => {
                    let file = fs::File::create(&path)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    write_jsonl(&reports, io::BufWriter::new(file))
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    println!("{summary_line}");
                }
                None => {
                    write_jsonl(&reports, io::stdout().lock())
                        .map_err(|e| Failure::Input(e.to_string()))?;
                    eprintln!("{summary_line}");
                }
            }
            if summary.failures > 0 {
                return Err(Failure::Integrity(format!(
                    "{} of {} frames failed verification",
                    summary.failures, summary.frames
                )));
            }
            Ok(())
        }
        Command::ExportDot { file, what } => {
            let (name, frame) = load(&file)?;
            let dot = match what {
                What::Frame => frame_dot(&name, &frame),
                What::Sublocales => {
                    sublocales_dot(&name, &frame).map_err(|e| Failure::Input(e.to_string()))?
                }
            };
            print!("{dot}");
            Ok(())
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

/// Parses a FrameSpec file; the report name is the spec's `name`, else the
/// file stem.
fn load_spec(path: &Path) -> Result<(String, demorgan_core::FrameSpec), Failure> {
    let text = read_input(path)?;
    let spec =
        parse_frame_spec(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let name = spec.name.clone().unwrap_or_else(|| {
        path.file_stem()
            .filter(|_| path != Path::new("-"))
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| spec.display_name())
    });
    Ok((name, spec))
}

fn load(path: &Path) -> Result<(String, Frame), Failure> {
    let (name, spec) = load_spec(path)?;
    let frame = spec
        .build()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((name, frame))
}

fn cached_report(
    store: &dyn ReportStore,
    command: &str,
    oracle: bool,
    path: &Path,
    compute: impl FnOnce(&str, &Frame) -> Result<Report, Failure>,
) -> Result<Report, Failure> {
    let (name, spec) = load_spec(path)?;
    let key = format!("{command}|oracle={oracle}|name={name}|{}", spec.to_json());
    if let Some(report) = store.load(&key) {
        return Ok(report);
    }
    let frame = spec
        .build()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let report = compute(&name, &frame)?;
    store.store(&key, &report);
    Ok(report)
}

/// Prints the report; a report carrying failures is an integrity error.
fn emit_report(report: &Report) -> Result<(), Failure> {
    let mut stdout = io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, report).expect("report serializes");
    let _ = writeln!(stdout);
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Integrity(report.law_failures.join("; ")))
    }
}
