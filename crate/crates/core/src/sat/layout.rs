use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{validate_problem, Constraint, SatError, SatProblem};
use crate::circuit::Circuit;

/// Qubits holding one variable, most significant bit first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarSlot {
    pub name: String,
    pub offset: usize,
    pub width: usize,
}

impl VarSlot {
    pub fn qubits(&self) -> Range<usize> {
        self.offset..self.offset + self.width
    }
}

/// Qubit allocation for a constraint problem:
/// `[ search (variables in declaration order) | one ancilla per constraint | sum scratch ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitLayout {
    pub vars: Vec<VarSlot>,
    pub search_width: usize,
    /// Result qubit of constraint `i`.
    pub ancillas: Vec<usize>,
    /// Shared accumulator for every `SumEquals`, most significant bit first.
    pub sum_scratch: Option<Range<usize>>,
    pub num_qubits: usize,
}

impl QubitLayout {
    pub fn slot(&self, name: &str) -> Option<&VarSlot> {
        self.vars.iter().find(|s| s.name == name)
    }

    pub fn search_qubits(&self) -> Vec<usize> {
        (0..self.search_width).collect()
    }

    /// An empty circuit of the layout's width with its registers declared.
    pub fn empty_circuit(&self) -> Circuit {
        let mut c = Circuit::new(self.num_qubits);
        for s in &self.vars {
            c.add_register(s.name.clone(), s.offset, s.width)
                .expect("layout slots are disjoint and in range");
        }
        if let Some(&first) = self.ancillas.first() {
            c.add_register("ancilla", first, self.ancillas.len())
                .expect("ancillas are contiguous");
        }
        if let Some(r) = &self.sum_scratch {
            c.add_register("sum", r.start, r.len())
                .expect("scratch follows the ancillas");
        }
        c
    }
}

/// Bits needed to hold every value in `0..=max`.
pub(crate) fn bits_for(max: u64) -> usize {
    (64 - max.leading_zeros() as usize).max(1)
}

/// Allocate qubits for a validated problem, failing if the total exceeds
/// `max_qubits`.
pub fn qubit_layout(problem: &SatProblem, max_qubits: usize) -> Result<QubitLayout, SatError> {
    validate_problem(problem).map_err(SatError::Invalid)?;

    let mut vars = Vec::with_capacity(problem.vars.len());
    let mut next = 0;
    for v in &problem.vars {
        vars.push(VarSlot {
            name: v.name.clone(),
            offset: next,
            width: v.bits,
        });
        next += v.bits;
    }
    let search_width = next;

    let ancillas: Vec<usize> = (next..next + problem.constraints.len()).collect();
    next += ancillas.len();

    let sum_width = problem
        .constraints
        .iter()
        .filter_map(|c| match c {
            Constraint::SumEquals { vars, .. } => {
                let reach: u64 = vars
                    .iter()
                    .map(|v| problem.var(v).unwrap().max_value())
                    .sum();
                Some(bits_for(reach))
            }
            _ => None,
        })
        .max();
    let sum_scratch = sum_width.map(|w| {
        let r = next..next + w;
        next += w;
        r
    });

    if next > max_qubits {
        return Err(SatError::TooManyQubits {
            needed: next,
            cap: max_qubits,
        });
    }
    Ok(QubitLayout {
        vars,
        search_width,
        ancillas,
        sum_scratch,
        num_qubits: next,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sat::fixtures::{kakuro_45, unit_kakuro};
    use crate::sat::VarDecl;

    #[test]
    fn unit_kakuro_layout() {
        let l = qubit_layout(&unit_kakuro(), 26).unwrap();
        assert_eq!(l.search_width, 4);
        assert_eq!(l.ancillas, vec![4, 5, 6]);
        assert_eq!(l.sum_scratch, None);
        assert_eq!(l.num_qubits, 7);
    }

    #[test]
    fn case_study_layout() {
        let l = qubit_layout(&kakuro_45(), 26).unwrap();
        assert_eq!(l.search_width, 8);
        assert_eq!(l.ancillas, (8..16).collect::<Vec<_>>());
        // largest sum of two 2-bit values is 6 → 3 bits
        assert_eq!(l.sum_scratch, Some(16..19));
        assert_eq!(l.num_qubits, 19);
        assert_eq!(l.slot("c").unwrap().qubits(), 4..6);
        let c = l.empty_circuit();
        assert_eq!(c.registers().len(), 6);
    }

    #[test]
    fn single_var_layout() {
        let p = SatProblem::new(
            vec![VarDecl::new("a", 1)],
            vec![Constraint::equal_const("a", 1)],
        );
        let l = qubit_layout(&p, 26).unwrap();
        assert_eq!((l.search_width, l.ancillas.len(), l.num_qubits), (1, 1, 2));
    }

    #[test]
    fn cap_is_reported() {
        assert_eq!(
            qubit_layout(&kakuro_45(), 18),
            Err(SatError::TooManyQubits {
                needed: 19,
                cap: 18
            })
        );
    }

    #[test]
    fn bit_counts() {
        assert_eq!(bits_for(0), 1);
        assert_eq!(bits_for(1), 1);
        assert_eq!(bits_for(2), 2);
        assert_eq!(bits_for(6), 3);
        assert_eq!(bits_for(7), 3);
        assert_eq!(bits_for(8), 4);
    }
}
