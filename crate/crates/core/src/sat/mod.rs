//! Integer constraint problems solved with Grover search.
//!
//! The pipeline is: [`validate_problem`] → [`qubit_layout`] →
//! [`build_oracle`] / [`build_diffuser`] → [`solve`], which runs the
//! iteration schedule and decodes measured bitstrings back into verified
//! [`Assignment`]s.

mod layout;
mod solve;
mod synth;
mod validate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::CircuitError;
use crate::statevector::SimError;

pub use layout::{qubit_layout, QubitLayout, VarSlot};
pub use solve::{
    decode, default_threshold, grover_circuit, grover_iterations, grover_schedule, solve,
    Candidate, ScheduleStep, SolveConfig, SolveReport, SolveStatus,
};
pub use synth::{
    build_diffuser, build_oracle, state_preparation, synth_constraint, synth_equal_const,
    synth_not_equal, synth_sum_equals,
};
pub use validate::{classical_check, validate_problem, Diagnostic};

/// Largest supported variable width.
pub const MAX_VAR_BITS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarDecl {
    pub name: String,
    /// The variable ranges over `0 ..= 2^bits - 1`.
    pub bits: usize,
}

impl VarDecl {
    pub fn new(name: impl Into<String>, bits: usize) -> Self {
        VarDecl {
            name: name.into(),
            bits,
        }
    }

    pub fn max_value(&self) -> u64 {
        if self.bits >= 64 {
            u64::MAX
        } else {
            (1u64 << self.bits) - 1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    NotEqual { a: String, b: String },
    EqualConst { a: String, value: u64 },
    SumEquals { vars: Vec<String>, value: u64 },
}

impl Constraint {
    pub fn not_equal(a: &str, b: &str) -> Self {
        Constraint::NotEqual {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn equal_const(a: &str, value: u64) -> Self {
        Constraint::EqualConst { a: a.into(), value }
    }

    pub fn sum_equals(vars: &[&str], value: u64) -> Self {
        Constraint::SumEquals {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            value,
        }
    }

    /// Variable names in operand order.
    pub fn variables(&self) -> Vec<&str> {
        match self {
            Constraint::NotEqual { a, b } => vec![a, b],
            Constraint::EqualConst { a, .. } => vec![a],
            Constraint::SumEquals { vars, .. } => vars.iter().map(String::as_str).collect(),
        }
    }
}

/// A conjunction of constraints over declared variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatProblem {
    pub vars: Vec<VarDecl>,
    pub constraints: Vec<Constraint>,
}

impl SatProblem {
    pub fn new(vars: Vec<VarDecl>, constraints: Vec<Constraint>) -> Self {
        SatProblem { vars, constraints }
    }

    pub fn var(&self, name: &str) -> Option<&VarDecl> {
        self.vars.iter().find(|v| v.name == name)
    }

    pub fn search_width(&self) -> usize {
        self.vars.iter().map(|v| v.bits).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarValue {
    pub name: String,
    pub value: u64,
}

/// Values for every declared variable, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(pub Vec<VarValue>);

impl Assignment {
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, u64)>) -> Self {
        Assignment(
            pairs
                .into_iter()
                .map(|(name, value)| VarValue {
                    name: name.to_string(),
                    value,
                })
                .collect(),
        )
    }

    pub fn get(&self, name: &str) -> Option<u64> {
        self.0.iter().find(|v| v.name == name).map(|v| v.value)
    }

    pub fn iter(&self) -> impl Iterator<Item = &VarValue> {
        self.0.iter()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SatError {
    #[error("invalid problem: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error("the encoding needs {needed} qubits but the simulator cap is {cap}")]
    TooManyQubits { needed: usize, cap: usize },
    #[error("solution count must be at least 1")]
    ZeroSolutions,
    #[error("histogram keys have width {found}, expected {expected}")]
    KeyWidth { expected: usize, found: usize },
    #[error("frequency threshold {0} is outside (0, 1)")]
    Threshold(f64),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Sim(#[from] SimError),
}
