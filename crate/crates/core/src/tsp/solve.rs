use serde::{Deserialize, Serialize};

use super::encoding::{build_phase_unitary, encode_eigenstate};
use super::qpe::{decode_phase, qpe, PhaseEstimate};
use super::{enumerate_cycles, phase_scale, Tour, TspError, TspInstance};
use crate::parallel::{map_ordered, Parallelism};
use crate::statevector::{SimError, DEFAULT_MAX_QUBITS};

/// Cycles are spread over threads only while one state stays this small;
/// beyond it each run parallelizes its own gate kernels instead.
const MAX_CONCURRENT_QUBITS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct TspConfig {
    pub seed: u64,
    pub shots_per_cycle: u64,
    pub max_qubits: usize,
    pub parallelism: Parallelism,
}

impl Default for TspConfig {
    fn default() -> Self {
        TspConfig {
            seed: 0,
            shots_per_cycle: 4096,
            max_qubits: DEFAULT_MAX_QUBITS,
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleResult {
    pub tour: Tour,
    pub estimate: PhaseEstimate,
    /// Decoded length `round(phase · S)`.
    pub length: u64,
    pub support_probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TspReport {
    pub best_tour: Tour,
    /// `best_tour` walked the other way round, for display.
    pub best_tour_reversed: Vec<usize>,
    pub best_length: u64,
    /// One entry per canonical cycle, in enumeration order.
    pub per_cycle: Vec<CycleResult>,
    pub precision_bits: usize,
    pub scale: u64,
    pub num_qubits: usize,
    pub seed: u64,
    pub shots_per_cycle: u64,
}

/// Phase-estimate every canonical cycle and keep the shortest decoded one.
/// Cycle `i` samples with seed `seed + i`, so results do not depend on
/// scheduling.
pub fn solve(instance: &TspInstance, config: &TspConfig) -> Result<TspReport, TspError> {
    let n = instance.n_nodes();
    let cycles = enumerate_cycles(n)?;
    let ps = phase_scale(instance);
    let unitary = build_phase_unitary(instance, ps.scale);
    let num_qubits = ps.bits + unitary.num_qubits();
    if num_qubits > config.max_qubits {
        return Err(SimError::TooManyQubits {
            requested: num_qubits,
            cap: config.max_qubits,
        }
        .into());
    }

    let (outer, inner) = if num_qubits <= MAX_CONCURRENT_QUBITS {
        (config.parallelism, Parallelism::Sequential)
    } else {
        (Parallelism::Sequential, config.parallelism)
    };
    let indexed: Vec<(u64, &Tour)> = (0u64..).zip(&cycles).collect();
    let runs = map_ordered(&indexed, outer, |&(i, tour)| {
        qpe(
            &unitary,
            encode_eigenstate(tour),
            ps.bits,
            config.shots_per_cycle,
            config.seed.wrapping_add(i),
            config.max_qubits,
            inner,
        )
        .map(|out| CycleResult {
            tour: tour.clone(),
            length: decode_phase(&out.estimate, ps.scale),
            estimate: out.estimate,
            support_probability: out.support_probability,
        })
    });
    let per_cycle = runs.into_iter().collect::<Result<Vec<_>, _>>()?;

    // enumeration order is lexicographic, so the first minimum wins ties
    let best = per_cycle
        .iter()
        .min_by_key(|c| c.length)
        .expect("at least one cycle");
    Ok(TspReport {
        best_tour: best.tour.clone(),
        best_tour_reversed: best.tour.reversed(),
        best_length: best.length,
        precision_bits: ps.bits,
        scale: ps.scale,
        num_qubits,
        seed: config.seed,
        shots_per_cycle: config.shots_per_cycle,
        per_cycle,
    })
}
