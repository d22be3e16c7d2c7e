use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use globcat::Limits;
use serde::Serialize;

mod commands;

use commands::Context;

#[derive(Parser, Debug)]
#[command(name = "globcat", version, about = "Finite category theory and global homotopy checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// cap on enumerated functors (and other exhaustive searches)
    #[arg(long, global = true, default_value_t = Limits::default().max_functors)]
    max_functors: usize,
    /// top homology degree, and nerve bound minus one
    #[arg(long, global = true, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, global = true, default_value_t = Limits::default().max_group_order)]
    max_group_order: usize,
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// include wall-clock time in the report (makes it nondeterministic)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Demo {
    Fiedorowicz,
    HornCounterexample,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Plain,
    Opposite,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a category file
    Validate { category: PathBuf },
    /// Build Fun(I, C)
    Funcat { index: PathBuf, target: PathBuf },
    /// Nerve of a category, truncated at --max-degree + 1
    Nerve { category: PathBuf },
    /// Homology of a simplicial set file, or of the nerve of a category file
    Homology { input: PathBuf },
    /// Certify a functor file as a Dwyer map
    DwyerCheck { inclusion: PathBuf },
    /// Pushout along a Dwyer map, optionally checking the universal property against test categories
    DwyerPushout {
        inclusion: PathBuf,
        k: PathBuf,
        #[arg(long = "against")]
        against: Vec<PathBuf>,
    },
    /// Compare Fun(I, −) of a Dwyer pushout with the pushout of functor categories
    FunPreserve {
        index: PathBuf,
        inclusion: PathBuf,
        k: PathBuf,
        /// reject index categories that are not strongly connected
        #[arg(long)]
        strict: bool,
    },
    /// Hom groupoid of K → G with its structure report
    OrbitHom { source: PathBuf, target: PathBuf },
    /// Orbit category commands
    Orbit {
        #[command(subcommand)]
        command: OrbitCommand,
    },
    /// Value N(Fun(EG, C))^G-style global nerve at G, with restrictions along a family
    GlobalNerve {
        category: PathBuf,
        group: PathBuf,
        #[arg(long = "family")]
        family: Vec<PathBuf>,
    },
    /// Generating cell c(Sd²∂Δ[n]) × BG → c(Sd²Δ[n]) × BG
    Cell { n: usize, group: PathBuf },
    /// Γ on the cell module A × O(−, J)
    GammaCell { simplicial: PathBuf, index: PathBuf },
    /// Validate a complex of groups file
    CogValidate { complex: PathBuf },
    /// Associated category of a complex of groups
    CogAssemble { complex: PathBuf },
    /// Rebuild a complex of groups from a category
    CogReconstruct {
        category: PathBuf,
        /// default, lexicographic, or random:SEED
        #[arg(long, default_value = "default")]
        choices: String,
        #[arg(long, value_enum, default_value = "plain")]
        variant: VariantArg,
    },
    /// Grothendieck construction of the strict diagram of a simple complex
    Grothendieck {
        complex: PathBuf,
        /// also compare K∫Fun(I, F) with Fun(I, K∫F)
        #[arg(long)]
        index: Option<PathBuf>,
    },
    /// Worked examples, recomputed on every run
    Example { name: Demo },
}

#[derive(Subcommand, Debug)]
enum OrbitCommand {
    Hom { source: PathBuf, target: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Funcat { .. } => "funcat",
            Command::Nerve { .. } => "nerve",
            Command::Homology { .. } => "homology",
            Command::DwyerCheck { .. } => "dwyer-check",
            Command::DwyerPushout { .. } => "dwyer-pushout",
            Command::FunPreserve { .. } => "fun-preserve",
            Command::OrbitHom { .. } | Command::Orbit { .. } => "orbit-hom",
            Command::GlobalNerve { .. } => "global-nerve",
            Command::Cell { .. } => "cell",
            Command::GammaCell { .. } => "gamma-cell",
            Command::CogValidate { .. } => "cog-validate",
            Command::CogAssemble { .. } => "cog-assemble",
            Command::CogReconstruct { .. } => "cog-reconstruct",
            Command::Grothendieck { .. } => "grothendieck",
            Command::Example { .. } => "example",
        }
    }
}

#[derive(Serialize)]
struct LimitsReport {
    max_functors: usize,
    max_degree: usize,
    max_group_order: usize,
}

#[derive(Serialize)]
struct ErrorReport {
    kind: String,
    message: String,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Vec<commands::InputHash>,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorReport>,
    limits: LimitsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

/// The variant name of an error, e.g. "NonAssociative".
fn error_kind(e: &globcat::Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut ctx = Context::new(Limits {
        max_functors: cli.max_functors,
        max_group_order: cli.max_group_order,
        ..Limits::default()
    }, cli.max_degree);
    let outcome = commands::run(&cli.command, &mut ctx);
    let (verdict, result, error, code) = match outcome {
        Ok(o) if o.positive => ("positive", Some(o.result), None, 0),
        Ok(o) => ("negative", Some(o.result), None, 1),
        Err(e) => {
            eprintln!("error: {}: {e}", error_kind(&e));
            ("input_error", None, Some(ErrorReport { kind: error_kind(&e), message: e.to_string() }), 2)
        }
    };
    let report = RunReport {
        command: cli.command.name().to_string(),
        inputs: ctx.inputs,
        verdict,
        result,
        error,
        limits: LimitsReport {
            max_functors: cli.max_functors,
            max_degree: cli.max_degree,
            max_group_order: cli.max_group_order,
        },
        elapsed_ms: cli.timings.then(|| start.elapsed().as_millis()),
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
