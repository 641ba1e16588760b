mod commands;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "tyinv", version, about = "Tambara-Yamagami Turaev-Viro invariants of triangulated 3-manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for the per-cocycle loop.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    /// Decimal places in approximate values (at most 15).
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(0..=15))]
    pub digits: u32,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the invariant with the cocycle-partition algorithm.
    Compute(ComputeArgs),
    /// Evaluate the state sum by enumerating all colorings.
    Brute(BruteArgs),
    /// Evaluate the normalized Gauss sum of a pre-metric group read from a JSON file.
    Gauss(GaussArgs),
    /// First mod-2 Betti number and size of the cocycle space.
    Betti(BettiArgs),
    /// Check the fusion category equations for a category.
    CheckAxioms(CategoryArg),
    /// Bundled fixtures.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CorpusAction {
    List,
}

#[derive(Args, Debug)]
pub struct CategoryArg {
    /// Category JSON file, or corpus:<name>.
    #[arg(long)]
    pub category: String,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[arg(long)]
    pub category: String,
    /// Triangulation JSON file, or corpus:<name>.
    #[arg(long)]
    pub triangulation: String,
    /// Also run the brute-force oracle and compare exactly.
    #[arg(long)]
    pub verify: bool,
    /// Report every partial sum.
    #[arg(long)]
    pub per_cocycle: bool,
    #[arg(long, default_value_t = 20_000_000)]
    pub max_colorings: u64,
    #[arg(long, default_value_t = 1 << 30)]
    pub max_cocycles: u64,
    /// Use the constant prefactor exactly as first written down, for comparison.
    #[arg(long)]
    pub literal_constants: bool,
    /// Include wall-clock time in the output, which makes it nondeterministic.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct BruteArgs {
    #[arg(long)]
    pub category: String,
    #[arg(long)]
    pub triangulation: String,
    #[arg(long)]
    pub per_cocycle: bool,
    #[arg(long, default_value_t = 20_000_000)]
    pub max_colorings: u64,
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct GaussArgs {
    /// JSON file with {"orders", "q", "gram"}; "-" reads standard input.
    pub form: String,
    /// Also sum over every element and compare.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Args, Debug)]
pub struct BettiArgs {
    #[arg(long)]
    pub triangulation: String,
}

/// A failed run: exit status plus a machine-readable error object.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
    pub extra: Option<Value>,
}

impl Failure {
    pub fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Self {
        Failure { code, kind, message: message.into(), extra: None }
    }

    fn to_json(&self) -> Value {
        let mut out = json!({ "error": { "kind": self.kind, "message": self.message } });
        if let Some(Value::Object(extra)) = &self.extra {
            for (k, v) in extra {
                out[k] = v.clone();
            }
        }
        out
    }
}

fn emit(value: &Value, output: Option<&PathBuf>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::new(1, "io", format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let f = Failure::new(1, "usage", e.render().to_string().trim().to_string());
            println!("{}", serde_json::to_string_pretty(&f.to_json()).unwrap());
            return ExitCode::from(1);
        }
    };
    if let Some(n) = cli.threads {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global();
    }
    let result = commands::run(&cli).and_then(|v| emit(&v, cli.output.as_ref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = emit(&f.to_json(), cli.output.as_ref());
            ExitCode::from(f.code)
        }
    }
}
