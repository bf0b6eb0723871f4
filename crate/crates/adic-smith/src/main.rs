use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use adic_smith::{init_threads, run, CliError, Command, Document, Engine, Options};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "adic-smith", version, about = "Truncated Smith-ideal towers and adic completeness checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// JSON input document
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Truncation bound N
    #[arg(long, global = true)]
    levels: Option<usize>,
    /// Almost depth K
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    with_certificates: bool,
    #[arg(long, global = true, value_enum, default_value_t = EngineArg::Pid)]
    engine: EngineArg,
    /// Number of variables (monomial engine)
    #[arg(long, global = true)]
    vars: Option<usize>,
    /// Ideal name in the document, or monomial generators such as "x^2, x*y"
    #[arg(long, global = true)]
    ideal: Option<String>,
    #[arg(long, global = true)]
    module: Option<String>,
    #[arg(long, global = true)]
    morphism: Option<String>,
    /// Coefficient field of the monomial engine: Q or F<p>
    #[arg(long, global = true)]
    field: Option<String>,
    /// Finite ring for verify-laws: z2, z3, z4, zN or f2x2
    #[arg(long, global = true)]
    ring: Option<String>,
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// `all` or a comma-separated list of law families
    #[arg(long, global = true)]
    laws: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Levels P^n(j) for n <= N
    Tower,
    /// Graded pieces I^n/I^{n+1} and the short exact sequences
    Graded,
    /// Completeness of an ideal, or of a given candidate completion map
    CompleteCheck,
    /// Whether a morphism of Smith ideals is an analytic equivalence
    AnalyticCheck,
    /// The adic tower of a module
    AdicModule,
    /// The Yekutieli comparison maps
    Yekutieli,
    /// Depth-by-depth almost completeness over the dyadic perfection
    Almost,
    /// Exhaustive law checks over a finite ring
    VerifyLaws,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum EngineArg {
    Pid,
    Monomial,
}

fn command(c: Cmd) -> Command {
    match c {
        Cmd::Tower => Command::Tower,
        Cmd::Graded => Command::Graded,
        Cmd::CompleteCheck => Command::CompleteCheck,
        Cmd::AnalyticCheck => Command::AnalyticCheck,
        Cmd::AdicModule => Command::AdicModule,
        Cmd::Yekutieli => Command::Yekutieli,
        Cmd::Almost => Command::Almost,
        Cmd::VerifyLaws => Command::VerifyLaws,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    init_threads();
    let cli = Cli::parse();
    let c = &cli.common;
    let cmd = command(cli.command);
    let doc = match (&c.input, cmd.needs_input()) {
        (Some(path), _) => match std::fs::read_to_string(path) {
            Ok(text) => match Document::parse(&text) {
                Ok(d) => Some(d),
                Err(e) => {
                    eprintln!("input error: {e}");
                    return ExitCode::from(2);
                }
            },
            Err(e) => {
                eprintln!("input error: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        (None, true) if c.engine == EngineArg::Pid => {
            eprintln!("usage error: {} needs --input", cmd.name());
            return ExitCode::from(2);
        }
        _ => None,
    };
    let opts = Options {
        levels: c.levels,
        depth: c.depth,
        with_certificates: c.with_certificates,
        engine: match c.engine {
            EngineArg::Pid => Engine::Pid,
            EngineArg::Monomial => Engine::Monomial,
        },
        vars: c.vars,
        ideal: c.ideal.clone(),
        module: c.module.clone(),
        morphism: c.morphism.clone(),
        field: c.field.clone(),
        ring: c.ring.clone(),
        max_order: c.max_order,
        laws: c.laws.clone(),
    };
    match run(cmd, doc.as_ref(), &opts) {
        Ok(report) => {
            let text = match c.format {
                Format::Json => report.to_json() + "\n",
                Format::Table => report.to_table(),
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e @ (CliError::Input(_) | CliError::Usage(_))) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
