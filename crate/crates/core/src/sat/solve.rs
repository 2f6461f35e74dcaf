use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use super::layout::{qubit_layout, QubitLayout};
use super::synth::{build_diffuser, build_oracle, state_preparation};
use super::{classical_check, Assignment, SatError, SatProblem, VarValue};
use crate::circuit::Circuit;
use crate::parallel::Parallelism;
use crate::statevector::{Histogram, StateVector, DEFAULT_MAX_QUBITS};

/// `⌊(π/4)·√(2ⁿ/k)⌋`, the iteration count that maximizes the probability of
/// measuring one of `k` marked states among `2ⁿ`.
pub fn grover_iterations(n: usize, k: u64) -> Result<u64, SatError> {
    if k == 0 {
        return Err(SatError::ZeroSolutions);
    }
    let space = 2f64.powi(n as i32);
    Ok((FRAC_PI_4 * (space / k as f64).sqrt()).floor() as u64)
}

/// Smallest integer `t` with `t² ≥ 2^j`, i.e. `⌈(√2)^j⌉` without rounding
/// error.
fn ceil_sqrt_pow2(j: u32) -> u64 {
    let target = 1u128 << j;
    let mut t = (target as f64).sqrt().ceil() as u128;
    while t > 1 && (t - 1) * (t - 1) >= target {
        t -= 1;
    }
    while t * t < target {
        t += 1;
    }
    t as u64
}

/// Iteration counts tried by [`solve`]: `⌈(√2)^j⌉` for `j = 0, 1, …`,
/// deduplicated, clipped at `⌈(π/4)·√(2ⁿ)⌉` (the single-solution optimum,
/// rounded up) or at `max_iterations` if that is smaller.
pub fn grover_schedule(n: usize, max_iterations: Option<u64>) -> Vec<u64> {
    let optimum = (FRAC_PI_4 * 2f64.powi(n as i32).sqrt()).ceil() as u64;
    let cap = max_iterations.map_or(optimum, |m| m.min(optimum)).max(1);
    let mut out: Vec<u64> = Vec::new();
    for j in 0.. {
        let t = ceil_sqrt_pow2(j).min(cap);
        if out.last() != Some(&t) {
            out.push(t);
        }
        if t == cap {
            break;
        }
    }
    out
}

/// Default "definite result" threshold: twice the uniform baseline `2/2ⁿ`,
/// never above 1/4 so that one- and two-qubit searches stay reachable.
pub fn default_threshold(search_width: usize) -> f64 {
    (2.0 / 2f64.powi(search_width as i32)).min(0.25)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    pub shots: u64,
    pub seed: u64,
    /// Minimum relative frequency for a bitstring to be considered; `None`
    /// uses [`default_threshold`].
    pub frequency_threshold: Option<f64>,
    /// Upper bound on the iteration counts tried.
    pub max_schedule: Option<u64>,
    pub max_qubits: usize,
    pub parallelism: Parallelism,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            shots: 4096,
            seed: 0,
            frequency_threshold: None,
            max_schedule: None,
            max_qubits: DEFAULT_MAX_QUBITS,
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Solved,
    NoSolution,
}

/// One run of the schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleStep {
    pub iterations: u64,
    /// Bitstrings at or above the frequency threshold.
    pub candidates: usize,
    /// Candidates that passed [`classical_check`].
    pub verified: usize,
    /// True for the re-run at the optimal count for the verified solutions.
    pub confirmation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub solutions: Vec<Assignment>,
    pub iterations_used: u64,
    pub shots: u64,
    pub seed: u64,
    pub frequency_threshold: f64,
    pub num_qubits: usize,
    /// Search-register histogram of the run the solutions come from.
    pub histogram: Histogram,
    pub schedule_trace: Vec<ScheduleStep>,
}

impl SolveReport {
    pub fn is_solved(&self) -> bool {
        self.status == SolveStatus::Solved
    }
}

/// A measured search-register bitstring and its decoded assignment.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub bitstring: String,
    pub count: u64,
    pub assignment: Assignment,
}

fn decode_bits(bits: &str, layout: &QubitLayout) -> Assignment {
    Assignment(
        layout
            .vars
            .iter()
            .map(|slot| VarValue {
                name: slot.name.clone(),
                value: bits[slot.qubits()]
                    .bytes()
                    .fold(0u64, |acc, b| (acc << 1) | u64::from(b == b'1')),
            })
            .collect(),
    )
}

/// Slice every histogram key by variable register (leftmost bit most
/// significant). Candidates come back by descending count, ties broken by
/// bitstring.
pub fn decode(histogram: &Histogram, layout: &QubitLayout) -> Result<Vec<Candidate>, SatError> {
    if let Some(w) = histogram.width() {
        if w != layout.search_width {
            return Err(SatError::KeyWidth {
                expected: layout.search_width,
                found: w,
            });
        }
    }
    Ok(histogram
        .by_frequency()
        .into_iter()
        .map(|(bits, count)| Candidate {
            bitstring: bits.to_string(),
            count,
            assignment: decode_bits(bits, layout),
        })
        .collect())
}

/// State preparation followed by `iterations` Grover iterations, with the
/// layout's registers declared.
pub fn grover_circuit(
    problem: &SatProblem,
    layout: &QubitLayout,
    iterations: u64,
) -> Result<Circuit, SatError> {
    let mut c = layout.empty_circuit();
    c.extend(&state_preparation(layout.search_width, layout.num_qubits)?)?;
    let oracle = build_oracle(problem, layout)?;
    let diffuser = build_diffuser(layout.search_width, layout.num_qubits)?;
    for _ in 0..iterations {
        c.extend(&oracle)?;
        c.extend(&diffuser)?;
    }
    Ok(c)
}

/// Statevector advanced iteration by iteration; asking for fewer
/// iterations than already applied restarts from the prepared state.
struct GroverRun {
    prep: Circuit,
    oracle: Circuit,
    diffuser: Circuit,
    state: StateVector,
    done: u64,
    max_qubits: usize,
    parallelism: Parallelism,
}

impl GroverRun {
    fn new(
        problem: &SatProblem,
        layout: &QubitLayout,
        config: &SolveConfig,
    ) -> Result<Self, SatError> {
        let mut run = GroverRun {
            prep: state_preparation(layout.search_width, layout.num_qubits)?,
            oracle: build_oracle(problem, layout)?,
            diffuser: build_diffuser(layout.search_width, layout.num_qubits)?,
            state: StateVector::zero_with_cap(layout.num_qubits, config.max_qubits)?,
            done: 0,
            max_qubits: config.max_qubits,
            parallelism: config.parallelism,
        };
        run.reset()?;
        Ok(run)
    }

    fn reset(&mut self) -> Result<(), SatError> {
        self.state = StateVector::zero_with_cap(self.prep.num_qubits(), self.max_qubits)?
            .with_parallelism(self.parallelism);
        self.prep.apply_to(&mut self.state)?;
        self.done = 0;
        Ok(())
    }

    fn advance_to(&mut self, iterations: u64) -> Result<&StateVector, SatError> {
        if iterations < self.done {
            self.reset()?;
        }
        while self.done < iterations {
            self.oracle.apply_to(&mut self.state)?;
            self.diffuser.apply_to(&mut self.state)?;
            self.done += 1;
        }
        Ok(&self.state)
    }
}

struct Measured {
    histogram: Histogram,
    candidates: usize,
    verified: Vec<Assignment>,
}

fn measure(
    run: &mut GroverRun,
    problem: &SatProblem,
    layout: &QubitLayout,
    iterations: u64,
    config: &SolveConfig,
    threshold: f64,
) -> Result<Measured, SatError> {
    let state = run.advance_to(iterations)?;
    let histogram = state.sample(
        config.shots,
        config.seed.wrapping_add(iterations),
        &layout.search_qubits(),
    )?;
    let shots = histogram.shots() as f64;
    let candidates: Vec<Candidate> = decode(&histogram, layout)?
        .into_iter()
        .filter(|c| c.count as f64 / shots >= threshold)
        .collect();
    let verified = candidates
        .iter()
        .filter(|c| classical_check(&c.assignment, problem))
        .map(|c| c.assignment.clone())
        .collect();
    Ok(Measured {
        candidates: candidates.len(),
        histogram,
        verified,
    })
}

/// Grover search with an unknown number of solutions.
///
/// Iteration counts follow [`grover_schedule`]. After each run the search
/// register is sampled `shots` times (seed `config.seed + iterations`);
/// bitstrings at or above the frequency threshold are decoded and checked
/// classically. The first step with a verified assignment fixes the
/// solution count `k`, and the search is repeated once at
/// [`grover_iterations`]`(n, k)` when that differs from the step's count;
/// the verified assignments of that final run are returned (falling back to
/// the probe's if the re-run verifies none). An exhausted schedule yields
/// [`SolveStatus::NoSolution`].
pub fn solve(problem: &SatProblem, config: &SolveConfig) -> Result<SolveReport, SatError> {
    if config.shots == 0 {
        return Err(crate::statevector::SimError::ZeroShots.into());
    }
    let layout = qubit_layout(problem, config.max_qubits)?;
    let n = layout.search_width;
    let threshold = config
        .frequency_threshold
        .unwrap_or_else(|| default_threshold(n));
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(SatError::Threshold(threshold));
    }

    let mut run = GroverRun::new(problem, &layout, config)?;
    let mut trace = Vec::new();
    let mut last = None;
    for t in grover_schedule(n, config.max_schedule) {
        let probe = measure(&mut run, problem, &layout, t, config, threshold)?;
        trace.push(ScheduleStep {
            iterations: t,
            candidates: probe.candidates,
            verified: probe.verified.len(),
            confirmation: false,
        });
        if probe.verified.is_empty() {
            last = Some((t, probe.histogram));
            continue;
        }

        let optimum = grover_iterations(n, probe.verified.len() as u64)?.max(1);
        let (used, result) = if optimum == t {
            (t, probe)
        } else {
            let confirm = measure(&mut run, problem, &layout, optimum, config, threshold)?;
            trace.push(ScheduleStep {
                iterations: optimum,
                candidates: confirm.candidates,
                verified: confirm.verified.len(),
                confirmation: true,
            });
            if confirm.verified.is_empty() {
                (t, probe)
            } else {
                (optimum, confirm)
            }
        };
        return Ok(SolveReport {
            status: SolveStatus::Solved,
            solutions: result.verified,
            iterations_used: used,
            shots: config.shots,
            seed: config.seed,
            frequency_threshold: threshold,
            num_qubits: layout.num_qubits,
            histogram: result.histogram,
            schedule_trace: trace,
        });
    }

    let (used, histogram) = last.expect("schedule is never empty");
    Ok(SolveReport {
        status: SolveStatus::NoSolution,
        solutions: Vec::new(),
        iterations_used: used,
        shots: config.shots,
        seed: config.seed,
        frequency_threshold: threshold,
        num_qubits: layout.num_qubits,
        histogram,
        schedule_trace: trace,
    })
}
