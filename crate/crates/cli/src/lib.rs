//! `qsolve`: read a SAT or TSP problem file, pick a quantum algorithm for
//! it, simulate the circuit and print the classical answer.
//!
//! Exit codes: 0 when a solution was found, 1 when the search found none,
//! 2 for usage, parse and resource errors.

pub mod problem;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use qsolve_core::sat::{self, SatError, SatProblem, SolveConfig, SolveReport};
use qsolve_core::statevector::DEFAULT_MAX_QUBITS;
use qsolve_core::tsp::{self, TspConfig, TspError, TspInstance, TspReport};
use qsolve_core::Parallelism;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use problem::{
    parse_problem, parse_str, Diagnostic, Location, ParseError, Problem, ProblemKind,
};

#[derive(Debug, Parser)]
#[command(
    name = "qsolve",
    version,
    about = "Solve SAT and TSP problems on a simulated quantum computer"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the problem described in a JSON file.
    Solve(SolveArgs),
}

#[derive(Debug, Clone, clap::Args)]
pub struct SolveArgs {
    /// Problem file (`"type": "sat"` or `"type": "tsp"`).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = AlgorithmChoice::Auto)]
    pub algorithm: AlgorithmChoice,
    /// Measurement shots per circuit run.
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Minimum relative frequency for a Grover candidate, in (0, 1).
    #[arg(long, value_parser = parse_threshold)]
    pub threshold: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputMode::Text)]
    pub output: OutputMode,
    /// Write the solving circuit in text form to this file.
    #[arg(long)]
    pub dump_circuit: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
    pub max_qubits: usize,
}

fn parse_threshold(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(format!("{x} is outside (0, 1)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmChoice {
    Grover,
    Qpe,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Grover,
    Qpe,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Grover => "grover",
            Algorithm::Qpe => "qpe",
        }
    }

    /// Algorithms able to solve `kind`, preferred first.
    pub fn compatible(kind: ProblemKind) -> &'static [Algorithm] {
        match kind {
            ProblemKind::Sat => &[Algorithm::Grover],
            ProblemKind::Tsp => &[Algorithm::Qpe],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{requested} cannot solve {kind} problems; compatible: {compatible}")]
    Incompatible {
        requested: &'static str,
        kind: ProblemKind,
        compatible: String,
    },
    #[error(transparent)]
    Sat(#[from] SatError),
    #[error(transparent)]
    Tsp(#[from] TspError),
    #[error("cannot write circuit to {path}: {source}")]
    Dump {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

/// Resolve `auto` to the preferred algorithm, or reject an explicit choice
/// that cannot handle `kind`.
pub fn select_algorithm(
    kind: ProblemKind,
    requested: AlgorithmChoice,
) -> Result<Algorithm, CliError> {
    let compatible = Algorithm::compatible(kind);
    let wanted = match requested {
        AlgorithmChoice::Auto => return Ok(compatible[0]),
        AlgorithmChoice::Grover => Algorithm::Grover,
        AlgorithmChoice::Qpe => Algorithm::Qpe,
    };
    if compatible.contains(&wanted) {
        Ok(wanted)
    } else {
        Err(CliError::Incompatible {
            requested: wanted.name(),
            kind,
            compatible: compatible
                .iter()
                .map(|a| a.name())
                .collect::<Vec<_>>()
                .join(", "),
        })
    }
}

/// The `--output json` document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum JsonReport {
    Sat {
        algorithm: Algorithm,
        report: SolveReport,
    },
    Tsp {
        algorithm: Algorithm,
        report: TspReport,
    },
}

/// Rendered result of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

pub const EXIT_SOLVED: i32 = 0;
pub const EXIT_NO_SOLUTION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

const NO_SOLUTION: &str = "no solution found";

/// Parse, solve and render; errors map to [`EXIT_ERROR`] in [`main_with_args`].
pub fn run(args: &SolveArgs) -> Result<Outcome, CliError> {
    let problem = parse_problem(&args.input)?;
    let algorithm = select_algorithm(problem.kind(), args.algorithm)?;
    match problem {
        Problem::Sat(p) => run_sat(&p, algorithm, args),
        Problem::Tsp(g) => run_tsp(&g, algorithm, args),
    }
}

fn run_sat(
    problem: &SatProblem,
    algorithm: Algorithm,
    args: &SolveArgs,
) -> Result<Outcome, CliError> {
    let config = SolveConfig {
        shots: args.shots,
        seed: args.seed,
        frequency_threshold: args.threshold,
        max_qubits: args.max_qubits,
        parallelism: Parallelism::default(),
        ..SolveConfig::default()
    };
    let report = sat::solve(problem, &config)?;
    if let Some(path) = &args.dump_circuit {
        let layout = sat::qubit_layout(problem, args.max_qubits)?;
        let circuit = sat::grover_circuit(problem, &layout, report.iterations_used)?;
        dump(path, &circuit.export_text())?;
    }
    let exit_code = if report.is_solved() {
        EXIT_SOLVED
    } else {
        EXIT_NO_SOLUTION
    };
    let stdout = match args.output {
        OutputMode::Json => json(&JsonReport::Sat { algorithm, report })?,
        OutputMode::Text => render_sat(&report),
    };
    Ok(Outcome { stdout, exit_code })
}

fn run_tsp(
    instance: &TspInstance,
    algorithm: Algorithm,
    args: &SolveArgs,
) -> Result<Outcome, CliError> {
    let config = TspConfig {
        seed: args.seed,
        shots_per_cycle: args.shots,
        max_qubits: args.max_qubits,
        parallelism: Parallelism::default(),
    };
    let report = tsp::solve(instance, &config)?;
    if let Some(path) = &args.dump_circuit {
        let scale = tsp::phase_scale(instance);
        let unitary = tsp::build_phase_unitary(instance, scale.scale);
        let circuit = tsp::qpe_circuit(
            &unitary,
            tsp::encode_eigenstate(&report.best_tour),
            scale.bits,
        )?;
        dump(path, &circuit.export_text())?;
    }
    let stdout = match args.output {
        OutputMode::Json => json(&JsonReport::Tsp { algorithm, report })?,
        OutputMode::Text => render_tsp(&report),
    };
    Ok(Outcome {
        stdout,
        exit_code: EXIT_SOLVED,
    })
}

fn dump(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Dump {
        path: path.to_path_buf(),
        source,
    })
}

fn json(report: &JsonReport) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

/// One `name = value` line per variable in declaration order, with a blank
/// line between solutions.
pub fn render_sat(report: &SolveReport) -> String {
    if !report.is_solved() {
        return format!("{NO_SOLUTION}\n");
    }
    let mut out = String::new();
    for (i, a) in report.solutions.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for v in a.iter() {
            let _ = writeln!(out, "{} = {}", v.name, v.value);
        }
    }
    out
}

/// The best tour walked from node 1 towards its larger neighbour, then its
/// length.
pub fn render_tsp(report: &TspReport) -> String {
    let nodes: Vec<String> = report
        .best_tour_reversed
        .iter()
        .map(|n| n.to_string())
        .collect();
    format!("[{}] length {}\n", nodes.join(", "), report.best_length)
}

/// Entry point shared by the binary and the tests: returns the exit code and
/// writes to the given streams.
pub fn main_with_args<I, T>(
    args: I,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_SOLVED
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let Command::Solve(args) = cli.command;
    match run(&args) {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            if outcome.exit_code == EXIT_NO_SOLUTION && args.output == OutputMode::Json {
                let _ = writeln!(stderr, "{NO_SOLUTION}");
            }
            outcome.exit_code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsolve_core::sat::{Assignment, SolveStatus};
    use qsolve_core::Histogram;

    #[test]
    fn algorithm_selection() {
        assert_eq!(
            select_algorithm(ProblemKind::Sat, AlgorithmChoice::Auto).unwrap(),
            Algorithm::Grover
        );
        assert_eq!(
            select_algorithm(ProblemKind::Tsp, AlgorithmChoice::Auto).unwrap(),
            Algorithm::Qpe
        );
        assert_eq!(
            select_algorithm(ProblemKind::Tsp, AlgorithmChoice::Qpe).unwrap(),
            Algorithm::Qpe
        );
        let e = select_algorithm(ProblemKind::Sat, AlgorithmChoice::Qpe).unwrap_err();
        assert_eq!(
            e.to_string(),
            "qpe cannot solve sat problems; compatible: grover"
        );
        let e = select_algorithm(ProblemKind::Tsp, AlgorithmChoice::Grover).unwrap_err();
        assert!(e.to_string().ends_with("compatible: qpe"));
    }

    fn report(solutions: Vec<Assignment>) -> SolveReport {
        let empty: Histogram = serde_json::from_str(r#"{"shots":0,"counts":{}}"#).unwrap();
        SolveReport {
            status: if solutions.is_empty() {
                SolveStatus::NoSolution
            } else {
                SolveStatus::Solved
            },
            solutions,
            iterations_used: 1,
            shots: 1,
            seed: 0,
            frequency_threshold: 0.1,
            num_qubits: 4,
            histogram: empty,
            schedule_trace: Vec::new(),
        }
    }

    #[test]
    fn sat_text_layout() {
        let one = Assignment::from_pairs([("a", 3), ("b", 1)]);
        let two = Assignment::from_pairs([("a", 0), ("b", 2)]);
        assert_eq!(render_sat(&report(vec![one.clone()])), "a = 3\nb = 1\n");
        assert_eq!(
            render_sat(&report(vec![one, two])),
            "a = 3\nb = 1\n\na = 0\nb = 2\n"
        );
        assert_eq!(render_sat(&report(vec![])), "no solution found\n");
    }

    #[test]
    fn threshold_bounds() {
        assert!(parse_threshold("0.5").is_ok());
        assert!(parse_threshold("0").is_err());
        assert!(parse_threshold("1").is_err());
        assert!(parse_threshold("nan").is_err());
    }
}
