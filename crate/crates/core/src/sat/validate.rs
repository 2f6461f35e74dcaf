use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Assignment, Constraint, SatProblem, MAX_VAR_BITS};

/// One problem violation. `constraint` is the zero-based position in the
/// constraint list; `variable` names the offending variable when there is
/// one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub constraint: Option<usize>,
    pub variable: Option<String>,
    pub message: String,
}

impl Diagnostic {
    fn new(constraint: Option<usize>, variable: Option<&str>, message: impl Into<String>) -> Self {
        Diagnostic {
            constraint,
            variable: variable.map(str::to_string),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.constraint, &self.variable) {
            (Some(i), Some(v)) => write!(f, "constraint {i}, variable '{v}': {}", self.message),
            (Some(i), None) => write!(f, "constraint {i}: {}", self.message),
            (None, Some(v)) => write!(f, "variable '{v}': {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Collect every structural violation in `problem`; an empty list means the
/// problem can be encoded.
pub fn validate_problem(problem: &SatProblem) -> Result<(), Vec<Diagnostic>> {
    let mut diags = Vec::new();
    if problem.vars.is_empty() {
        diags.push(Diagnostic::new(
            None,
            None,
            "at least one variable is required",
        ));
    }
    if problem.constraints.is_empty() {
        diags.push(Diagnostic::new(
            None,
            None,
            "at least one constraint is required",
        ));
    }

    let mut seen = HashSet::new();
    for v in &problem.vars {
        if !is_identifier(&v.name) {
            diags.push(Diagnostic::new(
                None,
                Some(&v.name),
                "not a valid identifier",
            ));
        }
        if !seen.insert(v.name.as_str()) {
            diags.push(Diagnostic::new(
                None,
                Some(&v.name),
                "declared more than once",
            ));
        }
        if v.bits == 0 || v.bits > MAX_VAR_BITS {
            diags.push(Diagnostic::new(
                None,
                Some(&v.name),
                format!("bit width {} outside 1..={MAX_VAR_BITS}", v.bits),
            ));
        }
    }

    for (i, c) in problem.constraints.iter().enumerate() {
        let mut undeclared = false;
        for name in c.variables() {
            if problem.var(name).is_none() {
                undeclared = true;
                diags.push(Diagnostic::new(Some(i), Some(name), "undeclared variable"));
            }
        }
        if undeclared {
            continue;
        }
        match c {
            Constraint::NotEqual { a, b } => {
                let (wa, wb) = (problem.var(a).unwrap().bits, problem.var(b).unwrap().bits);
                if wa != wb {
                    diags.push(Diagnostic::new(
                        Some(i),
                        Some(b),
                        format!("width {wb} differs from '{a}' width {wa}"),
                    ));
                }
            }
            Constraint::EqualConst { a, value } => {
                let var = problem.var(a).unwrap();
                if *value > var.max_value() {
                    diags.push(Diagnostic::new(
                        Some(i),
                        Some(a),
                        format!("value {value} does not fit in {} bits", var.bits),
                    ));
                }
            }
            Constraint::SumEquals { vars, value } => {
                if vars.is_empty() {
                    diags.push(Diagnostic::new(Some(i), None, "sum over no variables"));
                    continue;
                }
                let reach: u128 = vars
                    .iter()
                    .map(|v| u128::from(problem.var(v).unwrap().max_value()))
                    .sum();
                if u128::from(*value) > reach {
                    diags.push(Diagnostic::new(
                        Some(i),
                        None,
                        format!("sum {value} exceeds the largest reachable sum {reach}"),
                    ));
                }
            }
        }
    }

    if diags.is_empty() {
        Ok(())
    } else {
        Err(diags)
    }
}

/// Evaluate every constraint with ordinary integer arithmetic. Variables
/// missing from `assignment` make the check fail.
pub fn classical_check(assignment: &Assignment, problem: &SatProblem) -> bool {
    let value = |name: &str| assignment.get(name);
    problem.constraints.iter().all(|c| match c {
        Constraint::NotEqual { a, b } => {
            matches!((value(a), value(b)), (Some(x), Some(y)) if x != y)
        }
        Constraint::EqualConst { a, value: v } => value(a) == Some(*v),
        Constraint::SumEquals { vars, value: v } => vars
            .iter()
            .map(|n| value(n).map(u128::from))
            .sum::<Option<u128>>()
            .is_some_and(|s| s == u128::from(*v)),
    })
}
