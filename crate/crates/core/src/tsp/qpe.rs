use serde::{Deserialize, Serialize};

use super::encoding::PhaseUnitary;
use super::TspError;
use crate::circuit::{build_qft, Circuit};
use crate::parallel::Parallelism;
use crate::statevector::{Histogram, StateVector};

/// Measured precision-register value `raw` and the phase `raw / 2^m`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseEstimate {
    pub raw: u64,
    pub precision_bits: usize,
    pub phase: f64,
}

impl PhaseEstimate {
    pub fn new(raw: u64, precision_bits: usize) -> Self {
        PhaseEstimate {
            raw,
            precision_bits,
            phase: raw as f64 / 2f64.powi(precision_bits as i32),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QpeOutcome {
    pub estimate: PhaseEstimate,
    /// Exact probability of the most likely precision-register outcome.
    pub support_probability: f64,
    pub histogram: Histogram,
}

/// Precision register on qubits `0..m`, the cycle register after it.
fn layout(unitary: &PhaseUnitary, precision_bits: usize) -> (Vec<usize>, usize) {
    let precision: Vec<usize> = (0..precision_bits).collect();
    (precision, precision_bits + unitary.num_qubits())
}

/// Phase estimation of `unitary` on basis eigenstate `eigen_index`.
///
/// Hadamards on the `m` precision qubits, then `U^(2^j)` controlled on the
/// precision qubit of weight `2^j` (qubit `m-1-j`, as qubit 0 is most
/// significant), then the inverse QFT. Because `U` is diagonal the
/// controlled powers are applied as a phase pass over the amplitudes with the
/// exponent scaled by `2^j`. The precision register is sampled `shots`
/// times and the most frequent value (smallest on ties) is the estimate.
pub fn qpe(
    unitary: &PhaseUnitary,
    eigen_index: usize,
    precision_bits: usize,
    shots: u64,
    seed: u64,
    max_qubits: usize,
    parallelism: Parallelism,
) -> Result<QpeOutcome, TspError> {
    if precision_bits == 0 {
        return Err(TspError::NoPrecision);
    }
    let (precision, total) = layout(unitary, precision_bits);
    let cycle_bits = unitary.num_qubits();
    let mut state =
        StateVector::basis_with_cap(total, eigen_index, max_qubits)?.with_parallelism(parallelism);
    for &q in &precision {
        state.apply_gate(crate::GateKind::H, &[], &[q])?;
    }

    let cycle_mask = (1usize << cycle_bits) - 1;
    for j in 0..precision_bits {
        let control_bit = total - 1 - (precision_bits - 1 - j);
        let power = 1u64 << j;
        state.apply_diagonal(|i| {
            ((i >> control_bit) & 1 == 1).then(|| unitary.angle(i & cycle_mask, power))
        });
    }

    build_qft(total, &precision)?
        .inverse()
        .apply_to(&mut state)?;

    let marginal = state.marginal_probabilities(&precision)?;
    let support_probability = marginal.iter().copied().fold(0.0, f64::max);
    let histogram = state.sample(shots, seed, &precision)?;
    let (bits, _) = histogram
        .by_frequency()
        .into_iter()
        .next()
        .expect("at least one shot");
    let raw = u64::from_str_radix(bits, 2).expect("histogram keys are binary");
    Ok(QpeOutcome {
        estimate: PhaseEstimate::new(raw, precision_bits),
        support_probability,
        histogram,
    })
}

/// The same phase-estimation circuit in gate form: X gates preparing
/// `eigen_index`, Hadamards, the gate-level controlled powers and the
/// inverse QFT. Registers `precision` and `tour` are declared.
pub fn qpe_circuit(
    unitary: &PhaseUnitary,
    eigen_index: usize,
    precision_bits: usize,
) -> Result<Circuit, TspError> {
    if precision_bits == 0 {
        return Err(TspError::NoPrecision);
    }
    let (precision, total) = layout(unitary, precision_bits);
    let cycle_bits = unitary.num_qubits();
    let mut c = Circuit::new(total);
    c.add_register("precision", 0, precision_bits)?;
    c.add_register("tour", precision_bits, cycle_bits)?;
    for k in 0..cycle_bits {
        if (eigen_index >> (cycle_bits - 1 - k)) & 1 == 1 {
            c.x(precision_bits + k)?;
        }
    }
    for &q in &precision {
        c.h(q)?;
    }
    for j in 0..precision_bits {
        let control = precision_bits - 1 - j;
        c.extend(&unitary.controlled_power_circuit(total, control, precision_bits, 1 << j)?)?;
    }
    c.extend(&build_qft(total, &precision)?.inverse())?;
    Ok(c)
}

/// Tour length encoded by `estimate`: `round(phase · S)`.
pub fn decode_phase(estimate: &PhaseEstimate, scale: u64) -> u64 {
    (estimate.phase * scale as f64).round() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsp::fixtures::four_node;
    use crate::tsp::{
        build_phase_unitary, encode_eigenstate, enumerate_cycles, phase_scale, tour_length, Tour,
        TspInstance,
    };

    fn run(u: &PhaseUnitary, idx: usize, m: usize) -> QpeOutcome {
        qpe(u, idx, m, 256, 1, 26, Parallelism::default()).unwrap()
    }

    #[test]
    fn zero_phase_reads_zero() {
        let g = TspInstance::new(vec![vec![0; 3]; 3]).unwrap();
        let u = build_phase_unitary(&g, 8);
        let out = run(&u, 0, 3);
        assert_eq!(out.estimate.raw, 0);
        assert!(out.support_probability > 1.0 - 1e-9);
    }

    #[test]
    fn three_eighths_is_exact() {
        // triangle where every tour has length 3; scale 8 gives phase 3/8
        let g = TspInstance::new(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        let u = build_phase_unitary(&g, 8);
        let t = Tour::canonical(&[1, 2, 3]).unwrap();
        let out = run(&u, encode_eigenstate(&t), 3);
        assert_eq!(out.estimate.raw, 3);
        assert_eq!(out.estimate.phase, 3.0 / 8.0);
        assert!(out.support_probability > 1.0 - 1e-9);
        assert_eq!(out.histogram.count("011"), 256);
    }

    #[test]
    fn case_study_best_cycle() {
        let g = four_node();
        let s = phase_scale(&g);
        let u = build_phase_unitary(&g, s.scale);
        let t = Tour::canonical(&[1, 4, 2, 3]).unwrap();
        let out = run(&u, encode_eigenstate(&t), s.bits);
        assert_eq!(out.estimate.raw, 7);
        assert_eq!(decode_phase(&out.estimate, s.scale), 7);
    }

    #[test]
    fn decode_phase_identity_under_exact_scale() {
        assert_eq!(decode_phase(&PhaseEstimate::new(7, 4), 16), 7);
        assert_eq!(decode_phase(&PhaseEstimate::new(0, 4), 16), 0);
    }

    #[test]
    fn gate_form_matches_phase_pass() {
        for g in [
            four_node(),
            TspInstance::new(vec![vec![0, 5, 2], vec![5, 0, 7], vec![2, 7, 0]]).unwrap(),
        ] {
            let s = phase_scale(&g);
            let u = build_phase_unitary(&g, s.scale);
            for t in enumerate_cycles(g.n_nodes()).unwrap() {
                let idx = encode_eigenstate(&t);
                let c = qpe_circuit(&u, idx, s.bits).unwrap();
                let gate_state = c.execute(0, 0, &[]).unwrap().state;
                let marginal = gate_state
                    .marginal_probabilities(&(0..s.bits).collect::<Vec<_>>())
                    .unwrap();
                let expected = tour_length(&g, &t) as usize;
                assert!(marginal[expected] > 1.0 - 1e-9, "{t}");
            }
        }
    }

    #[test]
    fn gate_form_equals_diagonal_on_all_basis_states() {
        // Controlled U over a 3-node register, compared entrywise with the
        // numerator table on every basis state (cycle or not).
        let g = TspInstance::new(vec![vec![0, 3, 1], vec![3, 0, 2], vec![1, 2, 0]]).unwrap();
        let u = build_phase_unitary(&g, 8);
        let width = 1 + u.num_qubits();
        let c = u.controlled_power_circuit(width, 0, 1, 1).unwrap();
        for idx in 0..1usize << u.num_qubits() {
            let mut s =
                StateVector::basis_with_cap(width, (1 << u.num_qubits()) | idx, 26).unwrap();
            c.apply_to(&mut s).unwrap();
            let a = s.amplitudes()[(1 << u.num_qubits()) | idx];
            let expected = num_complex::Complex64::cis(u.angle(idx, 1));
            assert!((a - expected).norm() < 1e-12, "index {idx:06b}");
        }
    }

    #[test]
    fn zero_precision_rejected() {
        let u = build_phase_unitary(&four_node(), 16);
        assert_eq!(
            qpe(&u, 0, 0, 1, 0, 26, Parallelism::Sequential).unwrap_err(),
            TspError::NoPrecision
        );
    }
}
