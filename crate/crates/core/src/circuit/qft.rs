use std::f64::consts::PI;

use super::{Circuit, CircuitError};

/// Textbook QFT over `qubits` (first listed qubit most significant) in a
/// `num_qubits`-wide circuit, including the closing swap layer.
///
/// On `|j⟩` it produces `2^{-m/2} Σ_l e^{2πi·j·l/2^m} |l⟩`, so the inverse
/// used for phase estimation reads out in natural bit order.
pub fn build_qft(num_qubits: usize, qubits: &[usize]) -> Result<Circuit, CircuitError> {
    let mut c = Circuit::new(num_qubits);
    let m = qubits.len();
    for i in 0..m {
        c.h(qubits[i])?;
        for (k, &ctrl) in qubits.iter().enumerate().skip(i + 1) {
            c.phase(PI / f64::from(1u32 << (k - i)), &[ctrl], qubits[i])?;
        }
    }
    for i in 0..m / 2 {
        c.swap(qubits[i], qubits[m - 1 - i])?;
    }
    Ok(c)
}
