//! Command dispatch and certificate verification behind the `wkar` binary.
//!
//! Every command reads one JSON document and produces one JSON document
//! tagged with a `"certificate"` kind. Certificates carry their matrices, so
//! [`verify::verify_document`] can re-check them offline.

pub mod commands;
pub mod verify;

use serde_json::{json, Value};
use wkar_core::addcat::CategorySpec;
use wkar_core::exactlin::Ring;
use wkar_core::json::{self, Node, Reader};
use wkar_core::Error;

pub use commands::COMMANDS;

/// Flags shared by all subcommands.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub bound: Option<usize>,
    pub ring: Option<Ring>,
    pub spec: Option<CategorySpec>,
}

impl Options {
    /// `spec` field of the input, then `--spec`, then the full category over `--ring`.
    pub fn spec_in(&self, r: Reader) -> wkar_core::Result<CategorySpec> {
        if let Some(s) = r.opt("spec") {
            return json::spec(s.reader());
        }
        if let Some(s) = &self.spec {
            return Ok(s.clone());
        }
        if let Some(ring) = &self.ring {
            return Ok(CategorySpec::full(ring.clone()));
        }
        Err(Error::Json { path: format!("{}.spec", r.path()), message: "missing field (or pass --spec / --ring)".into() })
    }

    /// Default spec for embedded complexes that omit theirs.
    pub fn default_spec(&self) -> Option<CategorySpec> {
        self.spec.clone().or_else(|| self.ring.clone().map(CategorySpec::full))
    }

    /// `bound` field of the input, then `--bound`, then `fallback`.
    pub fn bound_in(&self, r: Reader, fallback: usize) -> wkar_core::Result<usize> {
        match r.opt("bound") {
            Some(b) => b.reader().usize(),
            None => Ok(self.bound.unwrap_or(fallback)),
        }
    }
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Negative = 1,
    InputError = 2,
    CrossCheck = 3,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub document: Value,
    pub exit: Exit,
}

impl Outcome {
    pub fn new(kind: &str, exit: Exit, mut payload: Value) -> Self {
        payload["certificate"] = json!(kind);
        Outcome { document: payload, exit }
    }
}

/// The error document and exit status for a library error.
pub fn error_outcome(e: &Error) -> Outcome {
    let (path, message) = match e {
        Error::Json { path, message } => (path.clone(), message.clone()),
        other => ("$".to_string(), other.to_string()),
    };
    let exit = match e {
        Error::CrossCheckFailure(_) | Error::CertificateInvalid(_) => Exit::CrossCheck,
        _ => Exit::InputError,
    };
    Outcome { document: json!({ "error": message, "path": path }), exit }
}

/// Runs `command` on `input`; errors become error documents.
pub fn run(command: &str, input: &Value, opts: &Options) -> Outcome {
    let root = Node::root(input);
    match commands::dispatch(command, root.reader(), opts) {
        Ok(out) => out,
        Err(e) => error_outcome(&e),
    }
}

/// Parses a `--ring` or `--spec` flag: JSON, or a bare ring name.
pub fn parse_flag_json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|_| Value::String(text.to_string()))
}

/// Deterministic rendering: keys sorted, two-space indent, trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}
