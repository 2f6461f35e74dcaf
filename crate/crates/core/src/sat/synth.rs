//! Reversible synthesis of constraint checks and the Grover building blocks.
//!
//! Every constraint fragment flips its result ancilla (starting in `|0⟩`)
//! exactly on the basis states that satisfy it and returns every other qubit
//! to its input value. Fragments only use X gates with controls, so they act
//! as permutations of basis states.

use super::layout::QubitLayout;
use super::{Constraint, SatError, SatProblem};
use crate::circuit::Circuit;

fn slot_qubits(layout: &QubitLayout, name: &str) -> Vec<usize> {
    layout
        .slot(name)
        .unwrap_or_else(|| panic!("variable '{name}' missing from layout"))
        .qubits()
        .collect()
}

/// `ancilla ^= (a != b)`.
///
/// Width-1 variables use the parity trick directly: `b ^= a`, copy `b` into
/// the ancilla, undo. Wider variables compare bitwise: after `b ^= a` the
/// operands are equal iff `b` is all zero, which an X-conjugated
/// multi-controlled X detects; negating the ancilla turns that into `≠`.
/// `a != a` is constantly false and emits nothing.
pub fn synth_not_equal(
    layout: &QubitLayout,
    a: &str,
    b: &str,
    ancilla: usize,
) -> Result<Circuit, SatError> {
    let mut c = Circuit::new(layout.num_qubits);
    if a == b {
        return Ok(c);
    }
    let qa = slot_qubits(layout, a);
    let qb = slot_qubits(layout, b);
    for (&x, &y) in qa.iter().zip(&qb) {
        c.cx(x, y)?;
    }
    if qb.len() == 1 {
        c.cx(qb[0], ancilla)?;
    } else {
        for &y in &qb {
            c.x(y)?;
        }
        c.mcx(&qb, ancilla)?;
        for &y in &qb {
            c.x(y)?;
        }
        c.x(ancilla)?;
    }
    for (&x, &y) in qa.iter().zip(&qb).rev() {
        c.cx(x, y)?;
    }
    Ok(c)
}

/// Flip `target` when `qubits` (MSB first) hold exactly `value`.
fn match_constant(
    c: &mut Circuit,
    qubits: &[usize],
    value: u64,
    target: usize,
) -> Result<(), SatError> {
    let w = qubits.len();
    let zeros: Vec<usize> = qubits
        .iter()
        .enumerate()
        .filter(|(i, _)| (value >> (w - 1 - i)) & 1 == 0)
        .map(|(_, &q)| q)
        .collect();
    for &q in &zeros {
        c.x(q)?;
    }
    c.mcx(qubits, target)?;
    for &q in &zeros {
        c.x(q)?;
    }
    Ok(())
}

/// `ancilla ^= (a == value)`.
pub fn synth_equal_const(
    layout: &QubitLayout,
    a: &str,
    value: u64,
    ancilla: usize,
) -> Result<Circuit, SatError> {
    let mut c = Circuit::new(layout.num_qubits);
    match_constant(&mut c, &slot_qubits(layout, a), value, ancilla)?;
    Ok(c)
}

/// Add each variable into the sum scratch, one controlled increment per
/// variable bit. Adding `2^k` ripples from weight `k` upward: weight `j`
/// flips when the variable bit and every scratch bit of weight `k..j` are 1,
/// and higher weights are updated first so they still see the old carries.
fn accumulate(layout: &QubitLayout, vars: &[String]) -> Result<Circuit, SatError> {
    let mut c = Circuit::new(layout.num_qubits);
    let scratch = layout
        .sum_scratch
        .clone()
        .expect("layout reserves sum scratch for SumEquals");
    let w = scratch.len();
    let weight = |j: usize| scratch.end - 1 - j;
    for name in vars {
        let bits = slot_qubits(layout, name);
        let vw = bits.len();
        for (i, &vbit) in bits.iter().enumerate() {
            let k = vw - 1 - i;
            for j in (k..w).rev() {
                let mut controls = vec![vbit];
                controls.extend((k..j).map(weight));
                c.mcx(&controls, weight(j))?;
            }
        }
    }
    Ok(c)
}

/// `ancilla ^= (Σ vars == value)`: accumulate, compare against the
/// constant, then uncompute the accumulation.
pub fn synth_sum_equals(
    layout: &QubitLayout,
    vars: &[String],
    value: u64,
    ancilla: usize,
) -> Result<Circuit, SatError> {
    let scratch: Vec<usize> = layout
        .sum_scratch
        .clone()
        .expect("layout reserves sum scratch for SumEquals")
        .collect();
    let add = accumulate(layout, vars)?;
    let mut c = add.clone();
    match_constant(&mut c, &scratch, value, ancilla)?;
    c.extend(&add.inverse())?;
    Ok(c)
}

/// Compute fragment for constraint `index` of `problem`.
pub fn synth_constraint(
    problem: &SatProblem,
    layout: &QubitLayout,
    index: usize,
) -> Result<Circuit, SatError> {
    let ancilla = layout.ancillas[index];
    match &problem.constraints[index] {
        Constraint::NotEqual { a, b } => synth_not_equal(layout, a, b, ancilla),
        Constraint::EqualConst { a, value } => synth_equal_const(layout, a, *value, ancilla),
        Constraint::SumEquals { vars, value } => synth_sum_equals(layout, vars, *value, ancilla),
    }
}

/// Phase oracle: compute every constraint ancilla, negate the amplitude when
/// all of them are 1 (one multi-controlled Z across the ancillas), then
/// uncompute. Restricted to the search register it is `diag(±1)` with `-1`
/// exactly on satisfying assignments.
pub fn build_oracle(problem: &SatProblem, layout: &QubitLayout) -> Result<Circuit, SatError> {
    let mut compute = Circuit::new(layout.num_qubits);
    for i in 0..problem.constraints.len() {
        compute.extend(&synth_constraint(problem, layout, i)?)?;
    }
    let mut oracle = compute.clone();
    let (target, controls) = layout
        .ancillas
        .split_last()
        .expect("validated problems have at least one constraint");
    oracle.mcz(controls, *target)?;
    oracle.extend(&compute.inverse())?;
    Ok(oracle)
}

/// Hadamard on every search qubit.
pub fn state_preparation(search_width: usize, num_qubits: usize) -> Result<Circuit, SatError> {
    let mut c = Circuit::new(num_qubits);
    for q in 0..search_width {
        c.h(q)?;
    }
    Ok(c)
}

/// `H X MCZ X H` over the search qubits `0..search_width`: the reflection
/// about the uniform superposition, up to a global phase of -1.
pub fn build_diffuser(search_width: usize, num_qubits: usize) -> Result<Circuit, SatError> {
    let mut c = Circuit::new(num_qubits);
    let search: Vec<usize> = (0..search_width).collect();
    for &q in &search {
        c.h(q)?;
    }
    for &q in &search {
        c.x(q)?;
    }
    let (target, controls) = search.split_last().expect("search register is non-empty");
    c.mcz(controls, *target)?;
    for &q in &search {
        c.x(q)?;
    }
    for &q in &search {
        c.h(q)?;
    }
    Ok(c)
}
