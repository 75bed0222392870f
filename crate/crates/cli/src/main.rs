//! `flatlimit`: run library operations from line-oriented job files.
//!
//! Exit codes: 0 success, 1 parse or job-file problems, 2 domain errors
//! (non-relative input, failed certificates, guard trips). Results are a
//! JSON envelope on stdout; `--format text` prints the same fields as
//! `key = value` lines.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use flatlimit::config;
use flatlimit::Error;

mod exec;
mod job;

#[derive(Parser)]
#[command(
    name = "flatlimit",
    version,
    about = "Exact ideal arithmetic for families degenerating onto a divisor"
)]
struct Cli {
    /// Output format for results and errors.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Certify every Groebner basis and run redundant cross-checks.
    #[arg(long, global = true)]
    verify: bool,
    /// Thread count for candidate scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Refuse reductions whose intermediate degrees exceed this bound.
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Groebner basis.
    Gb { job: PathBuf },
    /// Normal form of a polynomial modulo an ideal.
    Nf { job: PathBuf },
    /// Ideal membership test.
    Member { job: PathBuf },
    /// Ideal quotient (I : f).
    Quotient { job: PathBuf },
    /// Saturation (I : f^inf).
    Saturate { job: PathBuf },
    /// Eliminate variables.
    Eliminate { job: PathBuf },
    /// Intersection of two ideals.
    Intersect { job: PathBuf },
    /// Colength of a zero-dimensional ideal.
    Colength { job: PathBuf },
    /// Fiber of a family at an integer parameter value.
    Fiber { job: PathBuf },
    /// Image of a family on the divisor (y = 0).
    DivisorImage { job: PathBuf },
    /// Ideal of parameter-leading coefficients.
    Initial { job: PathBuf },
    /// Relativeness test (family or single fiber).
    RelativeCheck { job: PathBuf },
    /// Certified weighted flat limit at an exponent.
    Limit { job: PathBuf },
    /// Is the limit at an exponent the divisor pullback?
    TrivialCheck { job: PathBuf },
    /// Critical exponent a* and its limit.
    CriticalExponent { job: PathBuf },
    /// Perfectness on the node ring, with a witness on failure.
    PerfectCheck { job: PathBuf },
    /// Tor presentation against one node branch.
    Tor1 { job: PathBuf },
    /// Glue relative ideals on the two branches of a node.
    Glue { job: PathBuf },
    /// Restrict a perfect node ideal to one branch.
    Restrict { job: PathBuf },
    /// Semistable reduction of a zero-dimensional family.
    Reduce { job: PathBuf },
    /// Validate a chain of component ideals.
    ChainCheck { job: PathBuf },
    /// Stability (no trivial component) of a chain.
    StabilityCheck { job: PathBuf },
    /// Act on a chain by a dilation group element.
    GroupAct { job: PathBuf },
}

impl Cmd {
    fn parts(&self) -> (&'static str, &PathBuf) {
        match self {
            Cmd::Gb { job } => ("gb", job),
            Cmd::Nf { job } => ("nf", job),
            Cmd::Member { job } => ("member", job),
            Cmd::Quotient { job } => ("quotient", job),
            Cmd::Saturate { job } => ("saturate", job),
            Cmd::Eliminate { job } => ("eliminate", job),
            Cmd::Intersect { job } => ("intersect", job),
            Cmd::Colength { job } => ("colength", job),
            Cmd::Fiber { job } => ("fiber", job),
            Cmd::DivisorImage { job } => ("divisor-image", job),
            Cmd::Initial { job } => ("initial", job),
            Cmd::RelativeCheck { job } => ("relative-check", job),
            Cmd::Limit { job } => ("limit", job),
            Cmd::TrivialCheck { job } => ("trivial-check", job),
            Cmd::CriticalExponent { job } => ("critical-exponent", job),
            Cmd::PerfectCheck { job } => ("perfect-check", job),
            Cmd::Tor1 { job } => ("tor1", job),
            Cmd::Glue { job } => ("glue", job),
            Cmd::Restrict { job } => ("restrict", job),
            Cmd::Reduce { job } => ("reduce", job),
            Cmd::ChainCheck { job } => ("chain-check", job),
            Cmd::StabilityCheck { job } => ("stability-check", job),
            Cmd::GroupAct { job } => ("group-act", job),
        }
    }
}

fn render_text(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (key, inner) in map {
                let path = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                render_text(inner, &path, out);
            }
        }
        Value::Array(items) if items.iter().all(Value::is_string) => {
            let joined: Vec<&str> = items.iter().filter_map(Value::as_str).collect();
            out.push_str(&format!("{prefix} = {}\n", joined.join("; ")));
        }
        Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                render_text(inner, &format!("{prefix}[{i}]"), out);
            }
        }
        scalar => out.push_str(&format!("{prefix} = {scalar}\n")),
    }
}

fn print_envelope(envelope: &Value, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(envelope).expect("serializable"))
        }
        Format::Text => {
            let mut out = String::new();
            render_text(envelope, "", &mut out);
            print!("{out}");
        }
    }
}

fn fail(name: &str, digest: Option<&str>, error: &Error, format: Format) -> ExitCode {
    let mut envelope = json!({
        "command": name,
        "error": { "detail": error.to_string(), "name": error.code() },
        "schema": "flatlimit/1",
    });
    if let Some(digest) = digest {
        envelope["inputs_digest"] = Value::from(digest);
    }
    print_envelope(&envelope, format);
    if error.is_parse_error() {
        ExitCode::from(1)
    } else {
        ExitCode::from(2)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (name, path) = cli.command.parts();

    config::set_certify(cli.verify);
    config::set_degree_guard(cli.max_degree);
    if let Some(n) = cli.jobs {
        // a later init attempt of the global pool is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }

    let bytes = match std::fs::read(path) {
        Ok(bytes) => bytes,
        Err(e) => {
            let error = Error::SyntaxError {
                position: 0,
                message: format!("cannot read {}: {e}", path.display()),
            };
            return fail(name, None, &error, cli.format);
        }
    };
    let digest = format!("sha256:{:x}", Sha256::digest(&bytes));
    let text = match String::from_utf8(bytes) {
        Ok(text) => text,
        Err(_) => {
            let error = Error::SyntaxError {
                position: 0,
                message: "job file is not UTF-8".to_string(),
            };
            return fail(name, Some(&digest), &error, cli.format);
        }
    };

    let job = match job::parse_job(&text) {
        Ok(job) => job,
        Err(e) => return fail(name, Some(&digest), &e, cli.format),
    };
    if job.command != name {
        let error = Error::SyntaxError {
            position: 0,
            message: format!("job file says 'cmd {}', but '{name}' was invoked", job.command),
        };
        return fail(name, Some(&digest), &error, cli.format);
    }

    match exec::execute(&job, cli.verify) {
        Ok((result, trace)) => {
            let mut envelope = json!({
                "command": name,
                "inputs_digest": digest,
                "result": result,
                "schema": "flatlimit/1",
            });
            if let Some(trace) = trace {
                envelope["trace"] = trace;
            }
            print_envelope(&envelope, cli.format);
            ExitCode::SUCCESS
        }
        Err(e) => fail(name, Some(&digest), &e, cli.format),
    }
}
