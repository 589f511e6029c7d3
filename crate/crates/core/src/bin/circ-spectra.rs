use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use circ_spectra::characterization::verify_characterization;
use circ_spectra::construction::{full_report, ConstructionParams};
use circ_spectra::graph::{isospectral, numeric_spectrum_deviation, parse_graph, spectrum};
use circ_spectra::isomorphism::{decide_isomorphism, Status, DEFAULT_NODE_BUDGET};
use circ_spectra::{CirculantGraph, Error};

const THREADS_VAR: &str = "CIRC_SPECTRA_THREADS";

#[derive(Parser)]
#[command(name = "circ-spectra", version, about = "Exact spectra and isomorphism of circulant graphs")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact spectrum of a graph such as `12:1,5,11`.
    Spectrum { graph: String },
    /// Whether two graphs have the same eigenvalue multiset.
    Isospectral { graph1: String, graph2: String },
    /// Decide isomorphism, with a witness when isomorphic.
    Isomorphic {
        graph1: String,
        graph2: String,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Build and check the isospectral pair on n = 2^r·p.
    Construct {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_negative_numbers = true)]
        q: Option<i64>,
    },
    /// Check that isospectral graphs of order n and degree m are isomorphic.
    VerifyCharacterization {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        multisets: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// List isospectral non-isomorphic pairs of order n and degree m.
    Mine {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        multisets: bool,
    },
    /// Compare the exact spectrum with floating-point evaluation.
    Crosscheck {
        graph: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    inputs: Value,
    result: Value,
    version: &'a str,
    exact: bool,
}

enum Failure {
    Usage(String),
    Violation(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(_) => Failure::Budget(e.to_string()),
            Error::Overflow => Failure::Violation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Outcome {
    command: &'static str,
    inputs: Value,
    result: Value,
    failure: Option<Failure>,
}

fn graph(text: &str) -> Result<CirculantGraph, Failure> {
    parse_graph(text).map_err(|e| Failure::Usage(format!("malformed graph `{text}`: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn execute(command: Command) -> Result<Outcome, Failure> {
    let outcome = match command {
        Command::Spectrum { graph: text } => {
            let g = graph(&text)?;
            Outcome {
                command: "spectrum",
                inputs: json!({ "graph": g }),
                result: to_value(&spectrum(&g)?),
                failure: None,
            }
        }
        Command::Isospectral { graph1, graph2 } => {
            let (g1, g2) = (graph(&graph1)?, graph(&graph2)?);
            Outcome {
                command: "isospectral",
                inputs: json!({ "graph1": g1, "graph2": g2 }),
                result: json!(isospectral(&g1, &g2)?),
                failure: None,
            }
        }
        Command::Isomorphic { graph1, graph2, budget } => {
            let (g1, g2) = (graph(&graph1)?, graph(&graph2)?);
            let verdict = decide_isomorphism(&g1, &g2, budget)?;
            let failure = (verdict.status == Status::Unknown)
                .then(|| Failure::Budget(format!("search budget of {budget} nodes exhausted")));
            Outcome {
                command: "isomorphic",
                inputs: json!({ "graph1": g1, "graph2": g2, "budget": budget }),
                result: to_value(&verdict),
                failure,
            }
        }
        Command::Construct { r, p, q } => {
            let params = ConstructionParams::new(r, p, q)?;
            let report = full_report(&params)?;
            let failure = if report.verdict.status == Status::Unknown {
                Some(Failure::Budget("search budget exhausted before a verdict".into()))
            } else if !report.properties_hold() {
                Some(Failure::Violation("construction report has a false flag".into()))
            } else {
                None
            };
            Outcome {
                command: "construct",
                inputs: json!({ "r": r, "p": p, "q": q }),
                result: to_value(&report),
                failure,
            }
        }
        Command::VerifyCharacterization { n, m, multisets, budget } => {
            let report = verify_characterization(n, m, multisets, budget)?;
            let failure = if report.contradicts_criterion() {
                Some(Failure::Violation(format!(
                    "criterion holds at n={n}, m={m} but non-isomorphic isospectral pairs exist"
                )))
            } else if !report.unknown_pairs.is_empty() {
                Some(Failure::Budget(format!(
                    "{} pairs left undecided by the search budget",
                    report.unknown_pairs.len()
                )))
            } else {
                None
            };
            Outcome {
                command: "verify-characterization",
                inputs: json!({ "n": n, "m": m, "multisets": multisets, "budget": budget }),
                result: to_value(&report),
                failure,
            }
        }
        Command::Mine { n, m, multisets } => {
            let report = verify_characterization(n, m, multisets, DEFAULT_NODE_BUDGET)?;
            let failure = (!report.unknown_pairs.is_empty()).then(|| {
                Failure::Budget(format!("{} pairs left undecided", report.unknown_pairs.len()))
            });
            Outcome {
                command: "mine",
                inputs: json!({ "n": n, "m": m, "multisets": multisets }),
                result: to_value(&report.counterexamples),
                failure,
            }
        }
        Command::Crosscheck { graph: text, tol } => {
            if !(tol > 0.0) {
                return Err(Failure::Usage(format!("tolerance must be positive, got {tol}")));
            }
            let g = graph(&text)?;
            let deviation: f64 = numeric_spectrum_deviation(&g)?;
            let agrees = deviation < tol;
            Outcome {
                command: "crosscheck",
                inputs: json!({ "graph": g, "tol": tol }),
                result: json!({ "agrees": agrees, "max_deviation": deviation }),
                failure: (!agrees).then(|| {
                    Failure::Violation(format!("deviation {deviation:e} exceeds tolerance {tol:e}"))
                }),
            }
        }
    };
    Ok(outcome)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got `{raw}`")))?;
    // a second initialisation only happens in-process, never from main
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

fn report(failure: &Failure) -> ExitCode {
    match failure {
        Failure::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Failure::Violation(msg) => {
            eprintln!("property violation: {msg}");
            ExitCode::from(2)
        }
        Failure::Budget(msg) => {
            eprintln!("budget exhausted: {msg}");
            ExitCode::from(3)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(f) = configure_threads() {
        return report(&f);
    }
    let outcome = match execute(cli.command) {
        Ok(o) => o,
        Err(f) => return report(&f),
    };
    let envelope = Envelope {
        command: outcome.command,
        inputs: outcome.inputs,
        result: outcome.result,
        version: env!("CARGO_PKG_VERSION"),
        exact: true,
    };
    let text = if cli.pretty {
        serde_json::to_string_pretty(&envelope)
    } else {
        serde_json::to_string(&envelope)
    }
    .expect("envelope serializes");
    println!("{text}");
    match &outcome.failure {
        Some(f) => report(f),
        None => ExitCode::SUCCESS,
    }
}
