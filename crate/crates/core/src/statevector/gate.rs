use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The gate alphabet understood by the simulator. Any of them may carry an
/// arbitrary set of control qubits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Z,
    /// `diag(1, e^{iλ})`, λ in radians.
    Phase(f64),
    Swap,
}

impl GateKind {
    pub fn num_targets(self) -> usize {
        match self {
            GateKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::Phase(lambda) => GateKind::Phase(-lambda),
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Z => "z",
            GateKind::Phase(_) => "phase",
            GateKind::Swap => "swap",
        }
    }

    /// Row-major unitary of the uncontrolled gate: 2×2 for single-target
    /// kinds, 4×4 for `Swap` (basis order |00⟩, |01⟩, |10⟩, |11⟩ with the
    /// first target as the high bit).
    pub fn matrix(self) -> Vec<Vec<Complex64>> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        match self {
            GateKind::H => {
                let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
                vec![vec![h, h], vec![h, -h]]
            }
            GateKind::X => vec![vec![zero, one], vec![one, zero]],
            GateKind::Z => vec![vec![one, zero], vec![zero, -one]],
            GateKind::Phase(lambda) => vec![vec![one, zero], vec![zero, Complex64::cis(lambda)]],
            GateKind::Swap => {
                let mut m = vec![vec![zero; 4]; 4];
                m[0][0] = one;
                m[1][2] = one;
                m[2][1] = one;
                m[3][3] = one;
                m
            }
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateKind::Phase(lambda) => write!(f, "phase({lambda:?})"),
            other => f.write_str(other.name()),
        }
    }
}
