//! Amplitude-pair kernels.
//!
//! A gate on target bit `t` couples amplitudes `i` and `i | 1 << t` for every
//! index `i` with bit `t` clear. Splitting the vector into blocks of
//! `2^(t+1)` puts each pair at the same offset of the block's lower and
//! upper half, so blocks (and, for wide blocks, the halves themselves) can be
//! processed independently.

use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::parallel::Parallelism;
#[cfg(feature = "parallel")]
use crate::parallel::MIN_PAR_LEN;

/// Apply `f(a0, a1)` to every amplitude pair differing only in `target_bit`
/// whose index has all bits of `ctrl_mask` set. `a0` is the amplitude with
/// the target bit clear.
pub(crate) fn for_each_pair<F>(
    amps: &mut [Complex64],
    target_bit: usize,
    ctrl_mask: usize,
    mode: Parallelism,
    f: F,
) where
    F: Fn(&mut Complex64, &mut Complex64) + Sync + Send,
{
    debug_assert_eq!(ctrl_mask & (1 << target_bit), 0);
    let half = 1usize << target_bit;
    let block = half << 1;
    let hi_ctrl = ctrl_mask & !(block - 1);
    let lo_ctrl = ctrl_mask & (half - 1);

    let run_block = |b: usize, chunk: &mut [Complex64], par_inner: bool| {
        if (b * block) & hi_ctrl != hi_ctrl {
            return;
        }
        let (lo, hi) = chunk.split_at_mut(half);
        pair_halves(lo, hi, lo_ctrl, par_inner, &f);
    };

    #[cfg(feature = "parallel")]
    {
        if mode.is_parallel() && amps.len() >= MIN_PAR_LEN {
            let blocks = amps.len() / block;
            if blocks >= 64 {
                amps.par_chunks_mut(block)
                    .enumerate()
                    .for_each(|(b, chunk)| run_block(b, chunk, false));
            } else {
                amps.chunks_mut(block)
                    .enumerate()
                    .for_each(|(b, chunk)| run_block(b, chunk, half >= MIN_PAR_LEN));
            }
            return;
        }
    }
    let _ = mode;
    amps.chunks_mut(block)
        .enumerate()
        .for_each(|(b, chunk)| run_block(b, chunk, false));
}

fn pair_halves<F>(lo: &mut [Complex64], hi: &mut [Complex64], lo_ctrl: usize, par: bool, f: &F)
where
    F: Fn(&mut Complex64, &mut Complex64) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if par {
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .enumerate()
                .with_min_len(MIN_PAR_LEN)
                .for_each(|(j, (a0, a1))| {
                    if j & lo_ctrl == lo_ctrl {
                        f(a0, a1)
                    }
                });
            return;
        }
    }
    let _ = par;
    if lo_ctrl == 0 {
        lo.iter_mut()
            .zip(hi.iter_mut())
            .for_each(|(a0, a1)| f(a0, a1));
    } else {
        lo.iter_mut()
            .zip(hi.iter_mut())
            .enumerate()
            .filter(|(j, _)| j & lo_ctrl == lo_ctrl)
            .for_each(|(_, (a0, a1))| f(a0, a1));
    }
}

/// Multiply every amplitude `i` by `e^{i·angle(i)}`; `None` leaves it as is.
/// Exact zeros are skipped without evaluating `angle`.
pub(crate) fn for_each_phase<F>(amps: &mut [Complex64], mode: Parallelism, angle: F)
where
    F: Fn(usize) -> Option<f64> + Sync + Send,
{
    let zero = Complex64::new(0.0, 0.0);
    let apply = |(i, a): (usize, &mut Complex64)| {
        if *a == zero {
            return;
        }
        if let Some(theta) = angle(i) {
            *a *= Complex64::cis(theta);
        }
    };
    #[cfg(feature = "parallel")]
    {
        if mode.is_parallel() && amps.len() >= MIN_PAR_LEN {
            amps.par_iter_mut()
                .enumerate()
                .with_min_len(MIN_PAR_LEN)
                .for_each(apply);
            return;
        }
    }
    let _ = mode;
    amps.iter_mut().enumerate().for_each(apply);
}
