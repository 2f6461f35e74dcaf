//! Switch between the rayon-backed kernels and their sequential fallback.
//!
//! Every kernel produces bitwise identical results in both modes: work is
//! split over disjoint amplitude chunks and no reduction depends on the
//! split. Without the `parallel` feature [`Parallelism::Parallel`] runs the
//! sequential code path.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Amplitude-chunk length below which the parallel kernels stay sequential.
#[cfg(feature = "parallel")]
pub(crate) const MIN_PAR_LEN: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

impl Parallelism {
    /// True when this mode actually dispatches to rayon.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

/// Map `f` over `items`, preserving input order in the output.
pub fn map_ordered<T, R, F>(items: &[T], mode: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode.is_parallel() {
            return items.par_iter().map(f).collect();
        }
    }
    let _ = mode;
    items.iter().map(f).collect()
}
