//! Problem-file parsing.
//!
//! Files are JSON objects tagged by `"type"`. Syntax and shape errors carry
//! the line and column reported by `serde_json`; semantic errors carry the
//! path of the offending field, e.g. `constraints[2].args`.

use std::fmt;
use std::path::{Path, PathBuf};

use qsolve_core::sat::{validate_problem, Constraint, SatProblem, VarDecl};
use qsolve_core::tsp::{TspError, TspInstance};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Sat,
    Tsp,
}

impl ProblemKind {
    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Sat => "sat",
            ProblemKind::Tsp => "tsp",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Problem {
    Sat(SatProblem),
    Tsp(TspInstance),
}

impl Problem {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Problem::Sat(_) => ProblemKind::Sat,
            Problem::Tsp(_) => ProblemKind::Tsp,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// 1-based line and column in the file.
    Position { line: usize, column: usize },
    /// Path of a JSON field.
    Field(String),
    /// The file as a whole.
    File,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub location: Location,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Location::Position { line, column } => write!(f, "{line}:{column}: {}", self.message),
            Location::Field(path) => write!(f, "{path}: {}", self.message),
            Location::File => write!(f, " {}", self.message),
        }
    }
}

/// Every problem found in one file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub file: PathBuf,
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}:{d}", self.file.display())?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Deserialize)]
struct Header {
    #[serde(rename = "type")]
    kind: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SatFile {
    #[serde(rename = "type")]
    _kind: String,
    variables: Vec<VarEntry>,
    constraints: Vec<ConstraintEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VarEntry {
    name: String,
    bits: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintEntry {
    kind: String,
    args: Vec<String>,
    value: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TspFile {
    #[serde(rename = "type")]
    _kind: String,
    adjacency: Vec<Vec<u64>>,
}

const KINDS: &str = "not_equal, equal_const, sum_equals";

fn at_position(e: &serde_json::Error) -> Diagnostic {
    // serde_json appends " at line L column C"; the location is kept separately
    let msg = e.to_string();
    let message = match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg,
    };
    Diagnostic {
        location: Location::Position {
            line: e.line(),
            column: e.column(),
        },
        message,
    }
}

fn at_field(path: impl Into<String>, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        location: Location::Field(path.into()),
        message: message.into(),
    }
}

/// Parse problem-file text. Diagnostics are collected rather than stopping
/// at the first semantic error.
pub fn parse_str(text: &str) -> Result<Problem, Vec<Diagnostic>> {
    let header: Header = serde_json::from_str(text).map_err(|e| vec![at_position(&e)])?;
    match header.kind.as_str() {
        "sat" => {
            let file: SatFile = serde_json::from_str(text).map_err(|e| vec![at_position(&e)])?;
            sat_problem(file).map(Problem::Sat)
        }
        "tsp" => {
            let file: TspFile = serde_json::from_str(text).map_err(|e| vec![at_position(&e)])?;
            tsp_instance(file).map(Problem::Tsp)
        }
        other => Err(vec![at_field(
            "type",
            format!("unknown problem type {other:?}, expected \"sat\" or \"tsp\""),
        )]),
    }
}

pub fn parse_problem(path: &Path) -> Result<Problem, ParseError> {
    let fail = |diagnostics| ParseError {
        file: path.to_path_buf(),
        diagnostics,
    };
    let text = std::fs::read_to_string(path).map_err(|e| {
        fail(vec![Diagnostic {
            location: Location::File,
            message: format!("cannot read file: {e}"),
        }])
    })?;
    parse_str(&text).map_err(fail)
}

fn sat_problem(file: SatFile) -> Result<SatProblem, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let vars: Vec<VarDecl> = file
        .variables
        .into_iter()
        .map(|v| VarDecl::new(v.name, v.bits))
        .collect();

    let mut constraints = Vec::with_capacity(file.constraints.len());
    for (i, c) in file.constraints.into_iter().enumerate() {
        let path = format!("constraints[{i}]");
        let need_value = |diags: &mut Vec<Diagnostic>| {
            if c.value.is_none() {
                diags.push(at_field(
                    format!("{path}.value"),
                    format!("{} needs a value", c.kind),
                ));
            }
            c.value.unwrap_or(0)
        };
        let converted = match c.kind.as_str() {
            "not_equal" => {
                if c.value.is_some() {
                    diags.push(at_field(
                        format!("{path}.value"),
                        "not_equal takes no value",
                    ));
                }
                if c.args.len() != 2 {
                    diags.push(at_field(
                        format!("{path}.args"),
                        format!("not_equal takes 2 variables, got {}", c.args.len()),
                    ));
                    None
                } else {
                    Some(Constraint::NotEqual {
                        a: c.args[0].clone(),
                        b: c.args[1].clone(),
                    })
                }
            }
            "equal_const" => {
                let value = need_value(&mut diags);
                if c.args.len() != 1 {
                    diags.push(at_field(
                        format!("{path}.args"),
                        format!("equal_const takes 1 variable, got {}", c.args.len()),
                    ));
                    None
                } else {
                    Some(Constraint::EqualConst {
                        a: c.args[0].clone(),
                        value,
                    })
                }
            }
            "sum_equals" => {
                let value = need_value(&mut diags);
                Some(Constraint::SumEquals {
                    vars: c.args.clone(),
                    value,
                })
            }
            other => {
                diags.push(at_field(
                    format!("{path}.kind"),
                    format!("unknown constraint kind {other:?}, expected one of {KINDS}"),
                ));
                None
            }
        };
        constraints.extend(converted);
    }
    if !diags.is_empty() {
        return Err(diags);
    }

    let problem = SatProblem::new(vars, constraints);
    validate_problem(&problem).map_err(|found| {
        found
            .into_iter()
            .map(|d| {
                let path = match (d.constraint, &d.variable) {
                    (Some(i), _) => format!("constraints[{i}]"),
                    (None, Some(name)) => match problem.vars.iter().position(|v| &v.name == name) {
                        Some(i) => format!("variables[{i}]"),
                        None => "variables".to_string(),
                    },
                    (None, None) => "constraints".to_string(),
                };
                at_field(path, d.message)
            })
            .collect::<Vec<_>>()
    })?;
    Ok(problem)
}

fn tsp_instance(file: TspFile) -> Result<TspInstance, Vec<Diagnostic>> {
    let w = file.adjacency;
    let mut diags = Vec::new();
    for (i, row) in w.iter().enumerate() {
        if row.len() != w.len() {
            diags.push(at_field(
                format!("adjacency[{i}]"),
                format!("row has {} entries, expected {}", row.len(), w.len()),
            ));
        } else if row[i] != 0 {
            diags.push(at_field(
                format!("adjacency[{i}][{i}]"),
                format!("diagonal entry must be 0, got {}", row[i]),
            ));
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    TspInstance::new(w).map_err(|e| {
        let path = match &e {
            TspError::Asymmetric { i, j, .. } => format!("adjacency[{i}][{j}]"),
            TspError::NotSquare { row, .. } => format!("adjacency[{row}]"),
            _ => "adjacency".to_string(),
        };
        vec![at_field(path, e.to_string())]
    })
}
