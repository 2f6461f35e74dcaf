//! Travelling-salesman instances solved by phase estimation.
//!
//! Every Hamiltonian cycle is written as a basis state of `n·⌈log₂n⌉`
//! qubits (see [`encode_eigenstate`]). A diagonal unitary puts the weight of
//! each chosen edge into the phase of that basis state, so a cycle's
//! eigenphase is its length divided by the scale `S`. Phase estimation on
//! each cycle reads the length back and the shortest cycle wins.

mod encoding;
mod qpe;
mod solve;

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::CircuitError;
use crate::statevector::SimError;

pub use encoding::{
    block_bits, build_phase_unitary, decode_eigenstate, encode_eigenstate, encode_walk,
    PhaseUnitary,
};
pub use qpe::{decode_phase, qpe, qpe_circuit, PhaseEstimate, QpeOutcome};
pub use solve::{solve, CycleResult, TspConfig, TspReport};

/// Cycle enumeration is limited to `MIN_NODES..=MAX_NODES` nodes.
pub const MIN_NODES: usize = 3;
pub const MAX_NODES: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TspError {
    #[error("adjacency matrix must be square: row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("weight matrix is not symmetric: w[{i}][{j}] = {wij} but w[{j}][{i}] = {wji}")]
    Asymmetric {
        i: usize,
        j: usize,
        wij: u64,
        wji: u64,
    },
    #[error("{0} nodes is outside the supported range {MIN_NODES}..={MAX_NODES}")]
    NodeCount(usize),
    #[error("{0:?} is not a tour over nodes 1..={1}")]
    InvalidTour(Vec<usize>, usize),
    #[error("precision register needs at least one qubit")]
    NoPrecision,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// A complete, symmetric graph with non-negative integer edge weights.
/// Nodes are labelled `1..=n`; diagonal entries are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TspInstance {
    weights: Vec<Vec<u64>>,
}

impl TspInstance {
    pub fn new(weights: Vec<Vec<u64>>) -> Result<Self, TspError> {
        let n = weights.len();
        if !(MIN_NODES..=MAX_NODES).contains(&n) {
            return Err(TspError::NodeCount(n));
        }
        for (row, r) in weights.iter().enumerate() {
            if r.len() != n {
                return Err(TspError::NotSquare {
                    row,
                    expected: n,
                    found: r.len(),
                });
            }
        }
        for (i, row) in weights.iter().enumerate() {
            for (j, &wij) in row.iter().enumerate().skip(i + 1) {
                if wij != weights[j][i] {
                    return Err(TspError::Asymmetric {
                        i,
                        j,
                        wij,
                        wji: weights[j][i],
                    });
                }
            }
        }
        Ok(TspInstance { weights })
    }

    pub fn n_nodes(&self) -> usize {
        self.weights.len()
    }

    /// Weight of edge `{i, j}` for 1-based labels; 0 when `i == j`.
    pub fn weight(&self, i: usize, j: usize) -> u64 {
        if i == j {
            0
        } else {
            self.weights[i - 1][j - 1]
        }
    }

    pub fn weights(&self) -> &[Vec<u64>] {
        &self.weights
    }
}

/// A Hamiltonian cycle in canonical form: it starts at node 1 and its
/// second node is smaller than its last, which fixes rotation and direction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tour(Vec<usize>);

impl Tour {
    /// Normalize any ordering of a cycle over `1..=n` to canonical form.
    pub fn canonical(nodes: &[usize]) -> Result<Tour, TspError> {
        let n = nodes.len();
        let mut sorted = nodes.to_vec();
        sorted.sort_unstable();
        if n < MIN_NODES || sorted != (1..=n).collect::<Vec<_>>() {
            return Err(TspError::InvalidTour(nodes.to_vec(), n));
        }
        let start = nodes.iter().position(|&x| x == 1).expect("node 1 present");
        let mut rotated: Vec<usize> = nodes[start..]
            .iter()
            .chain(&nodes[..start])
            .copied()
            .collect();
        if rotated[1] > rotated[n - 1] {
            rotated[1..].reverse();
        }
        Ok(Tour(rotated))
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The same cycle walked in the other direction, still starting at 1.
    pub fn reversed(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v[1..].reverse();
        v
    }

    /// `successors()[i - 1]` is the node visited after node `i`.
    pub fn successors(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut succ = vec![0; n];
        for (k, &node) in self.0.iter().enumerate() {
            succ[node - 1] = self.0[(k + 1) % n];
        }
        succ
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(", "))
    }
}

/// All `(n-1)!/2` canonical tours over `n` nodes in lexicographic order.
pub fn enumerate_cycles(n: usize) -> Result<Vec<Tour>, TspError> {
    if !(MIN_NODES..=MAX_NODES).contains(&n) {
        return Err(TspError::NodeCount(n));
    }
    Ok((2..=n)
        .permutations(n - 1)
        .filter(|p| p[0] < p[n - 2])
        .map(|p| {
            let mut nodes = Vec::with_capacity(n);
            nodes.push(1);
            nodes.extend(p);
            Tour(nodes)
        })
        .collect())
}

/// Sum of edge weights around the closed tour.
pub fn tour_length(instance: &TspInstance, tour: &Tour) -> u64 {
    let nodes = tour.nodes();
    nodes
        .iter()
        .zip(nodes.iter().cycle().skip(1))
        .map(|(&a, &b)| instance.weight(a, b))
        .sum()
}

/// Power-of-two phase scale `S = 2^bits` that makes every tour length `L`
/// an exact `bits`-digit binary fraction `L / S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseScale {
    pub scale: u64,
    pub bits: usize,
}

/// `S` is the smallest power of two above the sum of the `n` heaviest edges
/// (an upper bound on any tour length), and at least 2 so the precision
/// register is never empty.
pub fn phase_scale(instance: &TspInstance) -> PhaseScale {
    let n = instance.n_nodes();
    let mut edges: Vec<u64> = (1..=n)
        .tuple_combinations()
        .map(|(i, j)| instance.weight(i, j))
        .collect();
    edges.sort_unstable_by(|a, b| b.cmp(a));
    let bound: u64 = edges.iter().take(n).sum();
    let scale = (bound + 1).next_power_of_two().max(2);
    PhaseScale {
        scale,
        bits: scale.trailing_zeros() as usize,
    }
}
