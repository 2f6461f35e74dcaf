//! Successor encoding of cycles and the weight-phase diagonal unitary.
//!
//! Node `i` owns block `i` of `⌈log₂n⌉` qubits, which stores `σ(i) - 1` for
//! the successor `σ(i)`, most significant bit first. Node 1's block starts
//! at qubit 0 of the register.

use std::f64::consts::TAU;

use super::{Tour, TspInstance};
use crate::circuit::{Circuit, CircuitError};

/// `⌈log₂ n⌉`, the width of one successor block.
pub fn block_bits(n: usize) -> usize {
    n.next_power_of_two().trailing_zeros() as usize
}

/// Basis-state index of `tour` over the `n·⌈log₂n⌉`-qubit register, walked
/// in its canonical direction.
pub fn encode_eigenstate(tour: &Tour) -> usize {
    encode_walk(tour.nodes())
}

/// Basis-state index of the directed walk `nodes` (a permutation of
/// `1..=n`, closed back to its first node).
pub fn encode_walk(nodes: &[usize]) -> usize {
    let n = nodes.len();
    let b = block_bits(n);
    let mut succ = vec![0; n];
    for (k, &node) in nodes.iter().enumerate() {
        succ[node - 1] = nodes[(k + 1) % n];
    }
    succ.iter().fold(0usize, |acc, &s| (acc << b) | (s - 1))
}

/// Inverse of [`encode_eigenstate`]; `None` when the blocks do not describe
/// a single Hamiltonian cycle.
pub fn decode_eigenstate(index: usize, n: usize) -> Option<Tour> {
    let b = block_bits(n);
    let mask = (1usize << b) - 1;
    let succ: Vec<usize> = (0..n)
        .map(|i| ((index >> (b * (n - 1 - i))) & mask) + 1)
        .collect();
    let mut nodes = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut cur = 1;
    for _ in 0..n {
        if cur > n || seen[cur - 1] {
            return None;
        }
        seen[cur - 1] = true;
        nodes.push(cur);
        cur = succ[cur - 1];
    }
    if cur != 1 {
        return None;
    }
    Tour::canonical(&nodes).ok()
}

/// The diagonal operator `U|σ⟩ = e^{2πi·Σᵢ w(i, σ(i)) / S}|σ⟩`.
///
/// Blocks holding an out-of-range node or the node itself contribute no
/// phase. Every Hamiltonian-cycle basis state is an eigenstate with phase
/// `tour_length / S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseUnitary {
    instance: TspInstance,
    scale: u64,
    block_bits: usize,
}

pub fn build_phase_unitary(instance: &TspInstance, scale: u64) -> PhaseUnitary {
    PhaseUnitary {
        block_bits: block_bits(instance.n_nodes()),
        instance: instance.clone(),
        scale,
    }
}

impl PhaseUnitary {
    pub fn num_qubits(&self) -> usize {
        self.instance.n_nodes() * self.block_bits
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn n_nodes(&self) -> usize {
        self.instance.n_nodes()
    }

    /// Integer `k` such that the diagonal entry at `index` is `e^{2πi·k/S}`.
    pub fn phase_numerator(&self, index: usize) -> u64 {
        let n = self.instance.n_nodes();
        let b = self.block_bits;
        let mask = (1usize << b) - 1;
        (1..=n)
            .map(|i| {
                let succ = ((index >> (b * (n - i))) & mask) + 1;
                if succ <= n {
                    self.instance.weight(i, succ)
                } else {
                    0
                }
            })
            .sum()
    }

    /// Phase angle of `U^power` at `index`, reduced modulo 2π exactly.
    pub fn angle(&self, index: usize, power: u64) -> f64 {
        let k =
            (u128::from(self.phase_numerator(index)) * u128::from(power)) % u128::from(self.scale);
        TAU * k as f64 / self.scale as f64
    }

    /// Gate-level form of `U^power` controlled on `control`, acting on the
    /// register at `offset..offset + num_qubits()` of a `width`-qubit
    /// circuit. Each (node, successor) pair becomes one multi-controlled
    /// phase gate matched against the block pattern by X conjugation; pairs
    /// whose phase is a multiple of 2π are dropped.
    pub fn controlled_power_circuit(
        &self,
        width: usize,
        control: usize,
        offset: usize,
        power: u64,
    ) -> Result<Circuit, CircuitError> {
        let n = self.instance.n_nodes();
        let b = self.block_bits;
        let mut c = Circuit::new(width);
        for node in 1..=n {
            let block: Vec<usize> = (0..b).map(|k| offset + (node - 1) * b + k).collect();
            for succ in (1..=n).filter(|&s| s != node) {
                let k = (u128::from(self.instance.weight(node, succ)) * u128::from(power))
                    % u128::from(self.scale);
                if k == 0 {
                    continue;
                }
                let lambda = TAU * k as f64 / self.scale as f64;
                let pattern = succ - 1;
                let zeros: Vec<usize> = block
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| (pattern >> (b - 1 - k)) & 1 == 0)
                    .map(|(_, &q)| q)
                    .collect();
                for &q in &zeros {
                    c.x(q)?;
                }
                let (target, rest) = block.split_last().expect("block width ≥ 1");
                let mut controls = rest.to_vec();
                controls.push(control);
                c.phase(lambda, &controls, *target)?;
                for &q in &zeros {
                    c.x(q)?;
                }
            }
        }
        Ok(c)
    }
}
