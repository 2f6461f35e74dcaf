//! Gate-list circuits over named qubit registers.

mod qft;
mod text;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::statevector::{self, GateKind, Histogram, SimError, StateVector};

pub use qft::build_qft;
pub use text::{parse_text, TextError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("register '{name}' ({offset}..{end}) does not fit in {num_qubits} qubits")]
    RegisterOutOfRange {
        name: String,
        offset: usize,
        end: usize,
        num_qubits: usize,
    },
    #[error("register '{name}' overlaps register '{other}'")]
    RegisterOverlap { name: String, other: String },
    #[error("register '{0}' has zero width")]
    EmptyRegister(String),
    #[error("cannot combine a {found}-qubit circuit into a {expected}-qubit circuit")]
    WidthMismatch { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitRegister {
    pub name: String,
    pub offset: usize,
    pub width: usize,
}

impl QubitRegister {
    pub fn qubits(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.width
    }

    pub fn end(&self) -> usize {
        self.offset + self.width
    }
}

/// One gate application. Controls are kept sorted and deduplicated so that
/// structurally equal operations compare equal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitOp {
    pub kind: GateKind,
    pub controls: Vec<usize>,
    pub targets: Vec<usize>,
}

impl CircuitOp {
    pub fn new(kind: GateKind, controls: &[usize], targets: &[usize]) -> Self {
        let mut controls = controls.to_vec();
        controls.sort_unstable();
        controls.dedup();
        CircuitOp {
            kind,
            controls,
            targets: targets.to_vec(),
        }
    }

    pub fn inverse(&self) -> CircuitOp {
        CircuitOp {
            kind: self.kind.inverse(),
            controls: self.controls.clone(),
            targets: self.targets.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Circuit {
    num_qubits: usize,
    registers: Vec<QubitRegister>,
    ops: Vec<CircuitOp>,
}

/// Final state of a run plus the measurement histogram, if any shots were
/// requested.
#[derive(Clone, Debug)]
pub struct Execution {
    pub state: StateVector,
    pub histogram: Option<Histogram>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            registers: Vec::new(),
            ops: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn registers(&self) -> &[QubitRegister] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&QubitRegister> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Declare a register over `offset..offset + width`.
    pub fn add_register(
        &mut self,
        name: impl Into<String>,
        offset: usize,
        width: usize,
    ) -> Result<&QubitRegister, CircuitError> {
        let reg = QubitRegister {
            name: name.into(),
            offset,
            width,
        };
        if width == 0 {
            return Err(CircuitError::EmptyRegister(reg.name));
        }
        if reg.end() > self.num_qubits {
            return Err(CircuitError::RegisterOutOfRange {
                end: reg.end(),
                name: reg.name,
                offset,
                num_qubits: self.num_qubits,
            });
        }
        if let Some(other) = self
            .registers
            .iter()
            .find(|r| r.offset < reg.end() && reg.offset < r.end())
        {
            return Err(CircuitError::RegisterOverlap {
                name: reg.name,
                other: other.name.clone(),
            });
        }
        self.registers.push(reg);
        Ok(self.registers.last().expect("just pushed"))
    }

    /// Declare a register starting right after the last declared one.
    pub fn allocate_register(
        &mut self,
        name: impl Into<String>,
        width: usize,
    ) -> Result<&QubitRegister, CircuitError> {
        let offset = self
            .registers
            .iter()
            .map(QubitRegister::end)
            .max()
            .unwrap_or(0);
        self.add_register(name, offset, width)
    }

    pub fn append(&mut self, op: CircuitOp) -> Result<&mut Self, CircuitError> {
        statevector::validate_operands(self.num_qubits, op.kind, &op.controls, &op.targets)?;
        self.ops.push(op);
        Ok(self)
    }

    pub fn gate(
        &mut self,
        kind: GateKind,
        controls: &[usize],
        targets: &[usize],
    ) -> Result<&mut Self, CircuitError> {
        self.append(CircuitOp::new(kind, controls, targets))
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self, CircuitError> {
        self.gate(GateKind::H, &[], &[q])
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self, CircuitError> {
        self.gate(GateKind::X, &[], &[q])
    }

    pub fn cx(&mut self, control: usize, target: usize) -> Result<&mut Self, CircuitError> {
        self.gate(GateKind::X, &[control], &[target])
    }

    pub fn mcx(&mut self, controls: &[usize], target: usize) -> Result<&mut Self, CircuitError> {
        self.gate(GateKind::X, controls, &[target])
    }

    pub fn mcz(&mut self, controls: &[usize], target: usize) -> Result<&mut Self, CircuitError> {
        self.gate(GateKind::Z, controls, &[target])
    }

    pub fn phase(
        &mut self,
        lambda: f64,
        controls: &[usize],
        target: usize,
    ) -> Result<&mut Self, CircuitError> {
        self.gate(GateKind::Phase(lambda), controls, &[target])
    }

    pub fn swap(&mut self, a: usize, b: usize) -> Result<&mut Self, CircuitError> {
        self.gate(GateKind::Swap, &[], &[a, b])
    }

    /// Append all ops of `other`, which must have the same width. Registers
    /// of `other` are not copied.
    pub fn extend(&mut self, other: &Circuit) -> Result<&mut Self, CircuitError> {
        if other.num_qubits != self.num_qubits {
            return Err(CircuitError::WidthMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        self.ops.extend(other.ops.iter().cloned());
        Ok(self)
    }

    /// Reversed op order with each op inverted.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            registers: self.registers.clone(),
            ops: self.ops.iter().rev().map(CircuitOp::inverse).collect(),
        }
    }

    /// Apply every op, in order, to `state`.
    pub fn apply_to(&self, state: &mut StateVector) -> Result<(), CircuitError> {
        if state.num_qubits() != self.num_qubits {
            return Err(CircuitError::WidthMismatch {
                expected: self.num_qubits,
                found: state.num_qubits(),
            });
        }
        for op in &self.ops {
            state.apply_gate(op.kind, &op.controls, &op.targets)?;
        }
        Ok(())
    }

    /// Run from `|0…0⟩` and, when `shots > 0`, sample `measured`.
    pub fn execute(
        &self,
        shots: u64,
        seed: u64,
        measured: &[usize],
    ) -> Result<Execution, CircuitError> {
        self.execute_with_cap(shots, seed, measured, statevector::DEFAULT_MAX_QUBITS)
    }

    pub fn execute_with_cap(
        &self,
        shots: u64,
        seed: u64,
        measured: &[usize],
        max_qubits: usize,
    ) -> Result<Execution, CircuitError> {
        let mut state = StateVector::zero_with_cap(self.num_qubits, max_qubits)?;
        self.apply_to(&mut state)?;
        let histogram = if shots == 0 {
            None
        } else {
            Some(state.sample(shots, seed, measured)?)
        };
        Ok(Execution { state, histogram })
    }

    pub fn export_text(&self) -> String {
        text::export_text(self)
    }
}
