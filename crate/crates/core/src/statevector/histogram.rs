use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Measured bitstring → number of occurrences.
///
/// Keys all have the same length and use qubit order: the first character
/// is the first measured qubit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    shots: u64,
    counts: BTreeMap<String, u64>,
}

impl Histogram {
    pub(crate) fn from_counts(shots: u64, counts: BTreeMap<String, u64>) -> Self {
        debug_assert_eq!(counts.values().sum::<u64>(), shots);
        Histogram { shots, counts }
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn count(&self, bitstring: &str) -> u64 {
        self.counts.get(bitstring).copied().unwrap_or(0)
    }

    pub fn relative_frequency(&self, bitstring: &str) -> f64 {
        self.count(bitstring) as f64 / self.shots as f64
    }

    /// Width of every key, or `None` for an empty histogram.
    pub fn width(&self) -> Option<usize> {
        self.counts.keys().next().map(String::len)
    }

    /// Entries ordered by descending count, ties broken lexicographically.
    pub fn by_frequency(&self) -> Vec<(&str, u64)> {
        let mut entries: Vec<(&str, u64)> =
            self.counts.iter().map(|(k, &v)| (k.as_str(), v)).collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        entries
    }
}
