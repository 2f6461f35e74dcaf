//! Dense statevector simulation.
//!
//! Qubit 0 is the most significant bit of a basis-state index and the
//! leftmost character of every bitstring, so `|0110⟩` over qubits `a, b, c, d`
//! reads `a=0, b=1, c=1, d=0`. In an `n`-qubit state qubit `q` therefore
//! lives at bit position `n - 1 - q` of the index.

mod gate;
mod histogram;
pub(crate) mod kernel;

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use gate::GateKind;
pub use histogram::Histogram;

use crate::parallel::Parallelism;

/// Default limit on simulated qubits (2^26 amplitudes ≈ 1 GiB).
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Probabilities below this are treated as exactly zero when sampling.
pub const ZERO_PROBABILITY: f64 = 1e-12;

/// Tolerance on `Σ|α|² = 1`.
pub const NORM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("{requested} qubits exceed the simulator cap of {cap}")]
    TooManyQubits { requested: usize, cap: usize },
    #[error("a state needs at least one qubit")]
    NoQubits,
    #[error("qubit {qubit} is out of range for a {num_qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("qubit {qubit} appears more than once in one operation")]
    DuplicateQubit { qubit: usize },
    #[error("{kind} takes {expected} target qubit(s), got {got}")]
    TargetCount {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("phase angle {0} is not finite")]
    NonFinitePhase(f64),
    #[error("measurement needs at least one qubit")]
    EmptyMeasurement,
    #[error("sampling needs at least one shot")]
    ZeroShots,
    #[error("invalid amplitude vector: {0}")]
    InvalidAmplitudes(String),
}

#[derive(Clone, Debug)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
    parallelism: Parallelism,
}

fn check_width(num_qubits: usize, cap: usize) -> Result<(), SimError> {
    if num_qubits == 0 {
        return Err(SimError::NoQubits);
    }
    if num_qubits > cap {
        return Err(SimError::TooManyQubits {
            requested: num_qubits,
            cap,
        });
    }
    Ok(())
}

impl StateVector {
    /// `|0…0⟩` on `num_qubits` qubits, subject to [`DEFAULT_MAX_QUBITS`].
    pub fn zero(num_qubits: usize) -> Result<Self, SimError> {
        Self::zero_with_cap(num_qubits, DEFAULT_MAX_QUBITS)
    }

    pub fn zero_with_cap(num_qubits: usize, cap: usize) -> Result<Self, SimError> {
        Self::basis_with_cap(num_qubits, 0, cap)
    }

    /// The computational basis state `|index⟩`.
    pub fn basis_with_cap(num_qubits: usize, index: usize, cap: usize) -> Result<Self, SimError> {
        check_width(num_qubits, cap)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(SimError::InvalidAmplitudes(format!(
                "basis index {index} does not fit in {num_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            num_qubits,
            amps,
            parallelism: Parallelism::default(),
        })
    }

    /// Wrap an explicit amplitude vector. The length must be a power of two
    /// and the vector normalized within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, SimError> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(SimError::InvalidAmplitudes(format!(
                "length {dim} is not a power of two ≥ 2"
            )));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(SimError::InvalidAmplitudes("non-finite amplitude".into()));
        }
        let norm: f64 = amps.iter().map(Complex64::norm_sqr).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimError::InvalidAmplitudes(format!("norm² is {norm}")));
        }
        Ok(StateVector {
            num_qubits: dim.trailing_zeros() as usize,
            amps,
            parallelism: Parallelism::default(),
        })
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Self {
        self.parallelism = parallelism;
        self
    }

    pub fn set_parallelism(&mut self, parallelism: Parallelism) {
        self.parallelism = parallelism;
    }

    pub fn parallelism(&self) -> Parallelism {
        self.parallelism
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    fn bit(&self, qubit: usize) -> usize {
        self.num_qubits - 1 - qubit
    }

    /// Check an operation's qubit operands against this state's width.
    pub fn validate_operands(
        &self,
        kind: GateKind,
        controls: &[usize],
        targets: &[usize],
    ) -> Result<(), SimError> {
        validate_operands(self.num_qubits, kind, controls, targets)
    }

    /// Apply `kind` to `targets`, conditioned on every qubit in `controls`
    /// being `|1⟩`. Amplitudes whose control bits are not all set are left
    /// untouched.
    pub fn apply_gate(
        &mut self,
        kind: GateKind,
        controls: &[usize],
        targets: &[usize],
    ) -> Result<(), SimError> {
        self.validate_operands(kind, controls, targets)?;
        let mask = controls.iter().fold(0usize, |m, &q| m | 1 << self.bit(q));
        let mode = self.parallelism;
        let t = self.bit(targets[0]);
        match kind {
            GateKind::H => kernel::for_each_pair(&mut self.amps, t, mask, mode, |a0, a1| {
                let (x, y) = (*a0, *a1);
                *a0 = (x + y) * FRAC_1_SQRT_2;
                *a1 = (x - y) * FRAC_1_SQRT_2;
            }),
            GateKind::X => kernel::for_each_pair(&mut self.amps, t, mask, mode, |a0, a1| {
                std::mem::swap(a0, a1)
            }),
            GateKind::Z => kernel::for_each_pair(&mut self.amps, t, mask, mode, |_, a1| *a1 = -*a1),
            GateKind::Phase(lambda) => {
                let w = Complex64::cis(lambda);
                kernel::for_each_pair(&mut self.amps, t, mask, mode, |_, a1| *a1 *= w)
            }
            GateKind::Swap => {
                // CSWAP(a, b) = CX(b→a) · CX({controls, a}→b) · CX(b→a)
                let (a, b) = (self.bit(targets[0]), self.bit(targets[1]));
                let flip = |a0: &mut Complex64, a1: &mut Complex64| std::mem::swap(a0, a1);
                kernel::for_each_pair(&mut self.amps, a, 1 << b, mode, flip);
                kernel::for_each_pair(&mut self.amps, b, mask | 1 << a, mode, flip);
                kernel::for_each_pair(&mut self.amps, a, 1 << b, mode, flip);
            }
        }
        Ok(())
    }

    /// Multiply amplitude `i` by `e^{i·angle(i)}` for every basis index where
    /// `angle` returns a value. Used for diagonal operators that have no
    /// compact gate form.
    pub fn apply_diagonal<F>(&mut self, angle: F)
    where
        F: Fn(usize) -> Option<f64> + Sync + Send,
    {
        kernel::for_each_phase(&mut self.amps, self.parallelism, angle);
    }

    /// `|αᵢ|²` for every basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(Complex64::norm_sqr).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// Index of `qubits` read as a bitstring (first listed qubit most
    /// significant) within basis index `index`.
    pub fn project_index(&self, index: usize, qubits: &[usize]) -> usize {
        qubits
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((index >> self.bit(q)) & 1))
    }

    /// Probability of each outcome when only `qubits` are measured, indexed
    /// by the projected bitstring value.
    pub fn marginal_probabilities(&self, qubits: &[usize]) -> Result<Vec<f64>, SimError> {
        self.check_measured(qubits)?;
        let mut out = vec![0.0; 1usize << qubits.len()];
        for (i, a) in self.amps.iter().enumerate() {
            out[self.project_index(i, qubits)] += a.norm_sqr();
        }
        Ok(out)
    }

    fn check_measured(&self, qubits: &[usize]) -> Result<(), SimError> {
        if qubits.is_empty() {
            return Err(SimError::EmptyMeasurement);
        }
        check_distinct_in_range(self.num_qubits, qubits)
    }

    /// Draw `shots` full-register samples from a ChaCha8 generator seeded
    /// with `seed` and record each projected onto `qubits`.
    pub fn sample(&self, shots: u64, seed: u64, qubits: &[usize]) -> Result<Histogram, SimError> {
        if shots == 0 {
            return Err(SimError::ZeroShots);
        }
        self.check_measured(qubits)?;

        let mut cdf = Vec::with_capacity(self.amps.len());
        let mut running = 0.0;
        for a in &self.amps {
            let p = a.norm_sqr();
            if p >= ZERO_PROBABILITY {
                running += p;
            }
            cdf.push(running);
        }
        let total = running;

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tally: BTreeMap<usize, u64> = BTreeMap::new();
        for _ in 0..shots {
            let u = rng.random::<f64>() * total;
            // First index whose cumulative mass exceeds u; zero-mass states
            // share their predecessor's cumulative value and are never picked.
            let idx = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
            *tally.entry(self.project_index(idx, qubits)).or_default() += 1;
        }

        let width = qubits.len();
        let counts = tally
            .into_iter()
            .map(|(k, v)| (format!("{k:0width$b}"), v))
            .collect();
        Ok(Histogram::from_counts(shots, counts))
    }
}

fn check_distinct_in_range(num_qubits: usize, qubits: &[usize]) -> Result<(), SimError> {
    for (i, &q) in qubits.iter().enumerate() {
        if q >= num_qubits {
            return Err(SimError::QubitOutOfRange {
                qubit: q,
                num_qubits,
            });
        }
        if qubits[..i].contains(&q) {
            return Err(SimError::DuplicateQubit { qubit: q });
        }
    }
    Ok(())
}

/// Operand checks shared by the simulator and the circuit builder.
pub fn validate_operands(
    num_qubits: usize,
    kind: GateKind,
    controls: &[usize],
    targets: &[usize],
) -> Result<(), SimError> {
    if targets.len() != kind.num_targets() {
        return Err(SimError::TargetCount {
            kind: kind.name(),
            expected: kind.num_targets(),
            got: targets.len(),
        });
    }
    if let GateKind::Phase(lambda) = kind {
        if !lambda.is_finite() {
            return Err(SimError::NonFinitePhase(lambda));
        }
    }
    let all: Vec<usize> = controls.iter().chain(targets).copied().collect();
    check_distinct_in_range(num_qubits, &all)
}
