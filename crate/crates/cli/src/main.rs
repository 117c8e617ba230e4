use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use wkar_cli::{parse_flag_json, render, run, Exit, Options, Outcome};
use wkar_core::json::{self, Node};

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "kebab-case")]
enum Command {
    Complement,
    WkarWitness,
    WicCheck,
    KarMap,
    Contractible,
    SplitContractible,
    Hom,
    WeightDecompose,
    WeightMember,
    VerifyAxioms,
    HeartRoundtrip,
    Connective,
    K0,
    K0Map,
    WkarK0Crosscheck,
    VerifyCertificate,
}

/// Exact computations with idempotent completions, complexes, weights and K0.
///
/// Reads one JSON document (from --in or stdin) and writes one JSON document.
/// Exit status: 0 success, 1 certified negative, 2 input error, 3 cross-check failure.
#[derive(Parser, Debug)]
#[command(name = "wkar", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Seed for sampled verifications.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumeration bound.
    #[arg(long)]
    bound: Option<usize>,
    /// Coefficient ring, e.g. Q, Z, Z/6, F2xF3 (bare or as JSON).
    #[arg(long)]
    ring: Option<String>,
    /// Category spec as JSON, e.g. {"ring":"Q","allowed":[2,3]}.
    #[arg(long)]
    spec: Option<String>,
    /// Input file; stdin when absent.
    #[arg(long = "in")]
    input: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<String>,
}

fn name(c: Command) -> String {
    c.to_possible_value().expect("named").get_name().to_string()
}

fn input_error(path: &str, message: impl Into<String>) -> Outcome {
    Outcome { document: json!({ "error": message.into(), "path": path }), exit: Exit::InputError }
}

fn options(cli: &Cli) -> Result<Options, Outcome> {
    let flag = |text: &Option<String>, label: &str| -> Result<Option<Value>, Outcome> {
        Ok(text.as_deref().map(parse_flag_json)).map_err(|_: ()| input_error(label, ""))
    };
    let ring = match flag(&cli.ring, "--ring")? {
        Some(v) => Some(json::ring(Node::root(&v).reader()).map_err(|e| input_error("--ring", e.to_string()))?),
        None => None,
    };
    let spec = match flag(&cli.spec, "--spec")? {
        Some(v) => Some(json::spec(Node::root(&v).reader()).map_err(|e| input_error("--spec", e.to_string()))?),
        None => None,
    };
    Ok(Options { seed: cli.seed, bound: cli.bound, ring, spec })
}

fn read_input(cli: &Cli) -> Result<Value, Outcome> {
    let text = match &cli.input {
        Some(path) => fs::read_to_string(path).map_err(|e| input_error("--in", format!("{path}: {e}")))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| input_error("$", e.to_string()))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| input_error("$", format!("invalid JSON: {e}")))
}

fn execute(cli: &Cli) -> Outcome {
    let opts = match options(cli) {
        Ok(o) => o,
        Err(e) => return e,
    };
    match read_input(cli) {
        Ok(doc) => run(&name(cli.command), &doc, &opts),
        Err(e) => e,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = execute(&cli);
    let text = render(&outcome.document);
    let written = match &cli.out {
        Some(path) => fs::write(path, &text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("wkar: cannot write output: {e}");
        return ExitCode::from(Exit::InputError as u8);
    }
    ExitCode::from(outcome.exit as u8)
}
