//! `matchmaker` — validate service descriptors, score pairs, discover the
//! best match in a registry, and benchmark the flow strategies.
//!
//! Exit codes are a stable scripting contract: 0 success, 1 domain or
//! validation error, 2 I/O or usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::{env, fs};

use clap::{Parser, Subcommand, ValueEnum};

use matchmaker_core::descriptor::{parse_profile, validate_profile, ServiceProfile, Severity};
use matchmaker_core::flownet::SearchStrategy;
use matchmaker_core::matcher::match_services;
use matchmaker_core::registry::{DiscoveryMode, Registry, RegistryError};
use matchmaker_core::simrules::SimilarityTable;

mod bench;
mod render;

/// Environment variable naming a default rule-table path; the `--table`
/// flag wins over it.
const TABLE_ENV_VAR: &str = "MATCHMAKER_TABLE";

#[derive(Parser)]
#[command(
    name = "matchmaker",
    version,
    about = "Score and discover services by typed-parameter similarity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Dfs,
    Bfs,
}

impl From<StrategyArg> for SearchStrategy {
    fn from(arg: StrategyArg) -> SearchStrategy {
        match arg {
            StrategyArg::Dfs => SearchStrategy::DepthFirst,
            StrategyArg::Bfs => SearchStrategy::BreadthFirst,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Best,
    Ranked,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate descriptor files.
    Validate {
        /// Descriptor files to check.
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Score an advertised service against a requested one.
    Sim {
        /// Descriptor of the requested service.
        requested: PathBuf,
        /// Descriptor of the advertised service.
        advertised: PathBuf,
        /// Rule-table file overriding the built-in weights.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Augmenting-path search strategy.
        #[arg(long, value_enum, default_value_t = StrategyArg::Bfs)]
        strategy: StrategyArg,
        /// Also print every bipartite edge with its weight and flow.
        #[arg(long)]
        explain: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Find the best-matching service in a registry.
    Discover {
        /// Registry: a directory of `.svc` files or a `.svcreg` bundle.
        registry: PathBuf,
        /// Descriptor of the requested service.
        request: PathBuf,
        /// Report only the best entry, or the full ranking.
        #[arg(long, value_enum, default_value_t = ModeArg::Best)]
        mode: ModeArg,
        /// Rule-table file overriding the built-in weights.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Augmenting-path search strategy.
        #[arg(long, value_enum, default_value_t = StrategyArg::Bfs)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Benchmark both search strategies on seeded random instances.
    Bench {
        /// Parameter counts per side, e.g. `--sizes 10,50,100`.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Instances generated per size.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        /// Base seed for the instance generator.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// A command failure with its exit code: 1 for domain errors, 2 for I/O
/// and usage errors.
pub(crate) struct Failure {
    message: String,
    exit_code: u8,
}

impl Failure {
    pub(crate) fn domain(message: impl Into<String>) -> Failure {
        Failure {
            message: message.into(),
            exit_code: 1,
        }
    }

    pub(crate) fn io(message: impl Into<String>) -> Failure {
        Failure {
            message: message.into(),
            exit_code: 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("matchmaker: {}", failure.message);
            ExitCode::from(failure.exit_code)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Validate { files } => Ok(cmd_validate(&files)),
        Command::Sim {
            requested,
            advertised,
            table,
            strategy,
            explain,
            format,
        } => {
            cmd_sim(
                &requested,
                &advertised,
                table.as_deref(),
                strategy.into(),
                explain,
                format,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Discover {
            registry,
            request,
            mode,
            table,
            strategy,
            format,
        } => {
            cmd_discover(
                &registry,
                &request,
                mode,
                table.as_deref(),
                strategy.into(),
                format,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { sizes, seeds, seed } => {
            let table = resolve_table(None)?;
            bench::run(&sizes, seeds, seed, &table)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_validate(files: &[PathBuf]) -> ExitCode {
    let mut worst = 0u8;
    for path in files {
        worst = worst.max(validate_one(path));
    }
    ExitCode::from(worst)
}

fn validate_one(path: &Path) -> u8 {
    let bytes = match fs::read(path) {
        Ok(bytes) => bytes,
        Err(err) => {
            eprintln!("{}: {err}", path.display());
            return 2;
        }
    };
    let Ok(text) = String::from_utf8(bytes) else {
        eprintln!("{}: error: not valid UTF-8", path.display());
        return 1;
    };
    let profile = match parse_profile(&text) {
        Ok(profile) => profile,
        Err(err) => {
            eprintln!("{}:{}: error: {}", path.display(), err.position, err.kind);
            return 1;
        }
    };
    let mut status = 0;
    for diagnostic in validate_profile(&profile) {
        eprintln!("{}: {diagnostic}", path.display());
        if diagnostic.severity >= Severity::Error {
            status = 1;
        }
    }
    status
}

/// Read and parse a descriptor, surfacing warnings on stderr.
fn read_profile(path: &Path) -> Result<ServiceProfile, Failure> {
    let bytes = fs::read(path).map_err(|err| Failure::io(format!("{}: {err}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::domain(format!("{}: not valid UTF-8", path.display())))?;
    let profile = parse_profile(&text).map_err(|err| {
        Failure::domain(format!("{}:{}: {}", path.display(), err.position, err.kind))
    })?;
    // Parsed profiles satisfy the invariants; only warnings can remain.
    for diagnostic in validate_profile(&profile) {
        eprintln!("{}: {diagnostic}", path.display());
    }
    Ok(profile)
}

/// Rule-table resolution: `--table` flag, then the environment variable,
/// then the built-in defaults.
fn resolve_table(flag: Option<&Path>) -> Result<SimilarityTable, Failure> {
    let path = match flag {
        Some(path) => Some(path.to_path_buf()),
        None => env::var_os(TABLE_ENV_VAR)
            .filter(|value| !value.is_empty())
            .map(PathBuf::from),
    };
    let Some(path) = path else {
        return Ok(SimilarityTable::default());
    };
    let text = fs::read_to_string(&path)
        .map_err(|err| Failure::io(format!("{}: {err}", path.display())))?;
    SimilarityTable::parse(&text)
        .map_err(|err| Failure::domain(format!("{}: {err}", path.display())))
}

fn cmd_sim(
    requested_path: &Path,
    advertised_path: &Path,
    table_flag: Option<&Path>,
    strategy: SearchStrategy,
    explain: bool,
    format: FormatArg,
) -> Result<(), Failure> {
    let table = resolve_table(table_flag)?;
    let requested = read_profile(requested_path)?;
    let advertised = read_profile(advertised_path)?;
    let report = match_services(&requested, &advertised, &table, strategy);
    match format {
        FormatArg::Text => {
            print!(
                "{}",
                render::report_text(&requested, &advertised, &report, &table, explain)
            );
        }
        FormatArg::Json => {
            let json =
                serde_json::to_string_pretty(&report).expect("match reports always serialize");
            println!("{json}");
        }
    }
    Ok(())
}

fn cmd_discover(
    registry_path: &Path,
    request_path: &Path,
    mode: ModeArg,
    table_flag: Option<&Path>,
    strategy: SearchStrategy,
    format: FormatArg,
) -> Result<(), Failure> {
    let table = resolve_table(table_flag)?;
    let registry = Registry::load(registry_path).map_err(registry_failure)?;
    let request = read_profile(request_path)?;
    let mode = match mode {
        ModeArg::Best => DiscoveryMode::Best,
        ModeArg::Ranked => DiscoveryMode::Ranked,
    };
    let result = registry.discover(&request, &table, strategy, mode);
    match format {
        FormatArg::Text => print!("{}", render::discovery_text(&result, registry.len())),
        FormatArg::Json => {
            let json =
                serde_json::to_string_pretty(&result).expect("discovery results always serialize");
            println!("{json}");
        }
    }
    Ok(())
}

fn registry_failure(err: RegistryError) -> Failure {
    match err {
        RegistryError::Io { .. } => Failure::io(err.to_string()),
        other => Failure::domain(other.to_string()),
    }
}
