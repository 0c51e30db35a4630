use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dwfs::argumentation::wfds_with;
use dwfs::harness::{check_equivalence, fuzz_reports, FuzzConfig, FuzzSummary, GeneratorConfig};
use dwfs::residual::{classic_residual_with, lft_with, strong_residual_chain};
use dwfs::transforms::normalize;
use dwfs::{
    parse_program, render_program, render_state, semantics_with, DerivationEngine, Error, Limits,
    Program, Semantics, StateJson,
};

/// Well-founded semantics of propositional disjunctive logic programs.
#[derive(Parser, Debug)]
#[command(name = "dwfs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest atom set the exhaustive enumerations range over
    /// [env: DWFS_ORACLE_BOUND]
    #[arg(long, global = true)]
    oracle_bound: Option<usize>,

    /// Largest number of conditional facts the fixpoint transformation may hold
    #[arg(long, global = true)]
    lft_capacity: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a program and print it in canonical form
    Check { file: Option<PathBuf> },
    /// Compute one semantics, or all of them side by side
    Semantics {
        file: Option<PathBuf>,
        #[arg(long, default_value = "all")]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Derivation engine for `--method wfds`
        #[arg(long, value_enum, default_value_t = Engine::Canonical)]
        engine: Engine,
    },
    /// Print the strong residual program
    Residual {
        file: Option<PathBuf>,
        /// Use the plain-implication reduction instead of the strong one
        #[arg(long)]
        classic: bool,
    },
    /// Print the least fixpoint transformation (conditional facts)
    Lft { file: Option<PathBuf> },
    /// Print the reduction passes and a transformation sequence to the residual program
    Trace {
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
    /// Cross-check the semantics on random programs
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        atoms: usize,
        #[arg(long, default_value_t = 6)]
        rules: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_head: usize,
        #[arg(long, default_value_t = 3)]
        max_body: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write every report as a JSON line to this file
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    All,
    One(Semantics),
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            Ok(Method::All)
        } else {
            s.parse().map(Method::One)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Canonical,
    Raw,
}

const EXIT_USAGE: u8 = 1;
const EXIT_DIVERGENCE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

enum Failure {
    Io(io::Error),
    Library(Error),
    Divergence,
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let limits = match limits(&cli) {
        Ok(l) => l,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli.command, &limits, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_capacity() {
                EXIT_CAPACITY
            } else {
                EXIT_USAGE
            })
        }
        Err(Failure::Divergence) => ExitCode::from(EXIT_DIVERGENCE),
    }
}

fn limits(cli: &Cli) -> Result<Limits, String> {
    let env = match std::env::var("DWFS_ORACLE_BOUND") {
        Ok(v) => Some(
            v.parse::<usize>()
                .map_err(|_| format!("DWFS_ORACLE_BOUND must be a number, got `{v}`"))?,
        ),
        Err(_) => None,
    };
    let mut limits = match cli.oracle_bound.or(env) {
        Some(bound) => Limits::with_oracle_bound(bound),
        None => Limits::default(),
    };
    if let Some(capacity) = cli.lft_capacity {
        limits.lft_capacity = capacity;
    }
    Ok(limits)
}

fn read_program(file: Option<&PathBuf>) -> Result<Program, Failure> {
    let text = match file {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?,
        None => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            text
        }
    };
    parse_program(&text).map_err(|e| match (&e, file) {
        (Error::Syntax { .. }, Some(path)) => Failure::Io(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("{}:{e}", path.display()),
        )),
        _ => Failure::Library(e),
    })
}

fn run(command: Command, limits: &Limits, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Check { file } => {
            let p = read_program(file.as_ref())?;
            write!(out, "{}", render_program(&p))?;
        }
        Command::Semantics {
            file,
            method,
            format,
            engine,
        } => {
            let p = read_program(file.as_ref())?;
            semantics(&p, method, format, engine, limits, out)?;
        }
        Command::Residual { file, classic } => {
            let p = read_program(file.as_ref())?;
            let residual = if classic {
                classic_residual_with(&p, limits)?
            } else {
                strong_residual_chain(&p, limits)?
                    .pop()
                    .expect("chain is nonempty")
            };
            write!(out, "{}", render_program(&residual.to_program(&p)))?;
        }
        Command::Lft { file } => {
            let p = read_program(file.as_ref())?;
            write!(
                out,
                "{}",
                render_program(&lft_with(&p, limits)?.to_program(&p))
            )?;
        }
        Command::Trace { file, max_steps } => {
            let p = read_program(file.as_ref())?;
            trace(&p, max_steps, limits, out)?;
        }
        Command::Fuzz {
            count,
            atoms,
            rules,
            seed,
            max_head,
            max_body,
            format,
            report,
        } => {
            let cfg = FuzzConfig {
                count,
                generator: GeneratorConfig {
                    seed,
                    num_atoms: atoms,
                    num_rules: rules,
                    max_head,
                    max_pos_body: max_body,
                    max_neg_body: max_body,
                    ..GeneratorConfig::default()
                },
            };
            fuzz(&cfg, format, report.as_ref(), limits, out)?;
        }
    }
    Ok(())
}

fn semantics(
    p: &Program,
    method: Method,
    format: Format,
    engine: Engine,
    limits: &Limits,
    out: &mut impl Write,
) -> Result<(), Failure> {
    match method {
        Method::One(which) => {
            let state = match (which, engine) {
                (Semantics::Wfds, Engine::Raw) => wfds_with(p, DerivationEngine::Raw, limits)?,
                _ => semantics_with(p, which, limits)?,
            };
            match format {
                Format::Text => write!(out, "{}", render_state(p.symbols(), &state))?,
                Format::Json => {
                    let json = StateJson::new(p.symbols(), p.base(), &state);
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&json).expect("serializable")
                    )?;
                }
            }
        }
        Method::All => {
            let report = check_equivalence(p, limits);
            match format {
                Format::Text => write!(out, "{}", report.render())?,
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&report.to_json()).expect("serializable")
                )?,
            }
            if report.first_divergence.is_some() {
                return Err(Failure::Divergence);
            }
            // surface the first error, capacity errors last
            let mut errors: Vec<&Error> = report
                .states
                .values()
                .filter_map(|s| s.as_ref().err())
                .collect();
            errors.sort_by_key(|e| e.is_capacity());
            if let Some(e) = errors.first() {
                return Err(Failure::Library((*e).clone()));
            }
        }
    }
    Ok(())
}

fn trace(
    p: &Program,
    max_steps: usize,
    limits: &Limits,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let chain = strong_residual_chain(p, limits)?;
    writeln!(out, "% least fixpoint transformation")?;
    write!(out, "{}", render_program(&chain[0].to_program(p)))?;
    for (i, n) in chain.iter().enumerate().skip(1) {
        writeln!(out, "% strong reduction pass {i}")?;
        write!(out, "{}", render_program(&n.to_program(p)))?;
    }
    writeln!(out, "% transformation sequence")?;
    let (steps, result) = normalize(p, max_steps);
    for (i, step) in steps.iter().enumerate() {
        writeln!(out, "{}. {}", i + 1, step.render(p.symbols()))?;
    }
    match result {
        Some(q) => {
            writeln!(out, "% irreducible program")?;
            write!(out, "{}", render_program(&q))?;
            let residual = chain.last().expect("chain is nonempty").to_program(p);
            if q != residual {
                writeln!(out, "% differs from the strong residual program")?;
            }
        }
        None => {
            writeln!(out, "% stopped after {max_steps} steps")?;
            return Err(Failure::Library(Error::Capacity {
                what: "transformation sequence",
                limit: max_steps,
            }));
        }
    }
    Ok(())
}

fn fuzz(
    cfg: &FuzzConfig,
    format: Format,
    report: Option<&PathBuf>,
    limits: &Limits,
    out: &mut impl Write,
) -> Result<(), Failure> {
    let reports = fuzz_reports(cfg, limits);
    if let Some(path) = report {
        let mut file = io::BufWriter::new(fs::File::create(path)?);
        for r in &reports {
            writeln!(
                file,
                "{}",
                serde_json::to_string(&r.to_json()).expect("serializable")
            )?;
        }
        file.flush()?;
    }
    let summary = FuzzSummary::from_reports(reports);
    for failure in &summary.failures {
        match format {
            Format::Text => {
                writeln!(out, "% failing program")?;
                write!(out, "{}", render_program(&failure.program))?;
                write!(out, "{}", failure.render())?;
            }
            Format::Json => writeln!(
                out,
                "{}",
                serde_json::to_string(&failure.to_json()).expect("serializable")
            )?,
        }
    }
    let line = format!(
        "{} programs, {} equal, {} over capacity, {} failing",
        summary.runs,
        summary.equal,
        summary.capacity,
        summary.failures.len()
    );
    match format {
        Format::Text => writeln!(out, "{line}")?,
        Format::Json => eprintln!("{line}"),
    }
    if summary.failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Divergence)
    }
}
