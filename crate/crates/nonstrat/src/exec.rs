//! Trial execution: probe batches are independent given their trial index,
//! so they run data parallel under the `parallel` feature and fall back to
//! a plain loop without it. Results are selected by trial order either
//! way, keeping every report byte-deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Derive a per-trial seed from a base seed and a stream tag. SplitMix64
/// finalizer; cheap and well mixed.
pub fn derive_seed(base: u64, stream: u64, trial: u64) -> u64 {
    let mut z = base
        .wrapping_add(stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(trial.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Map a closure over trial indices, collecting all results in order.
#[cfg(feature = "parallel")]
pub fn map_trials<T: Send>(trials: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    (0..trials).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_trials<T: Send>(trials: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    (0..trials).map(f).collect()
}

/// Always-sequential twin of [`map_trials`]; the bench suite compares the
/// two on identical workloads.
pub fn map_trials_sequential<T: Send>(trials: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    (0..trials).map(f).collect()
}

/// Find the first trial (in index order) whose closure yields a value, or
/// the first error encountered. Deterministic regardless of thread count.
#[cfg(feature = "parallel")]
pub fn try_find_first_trial<T: Send, E: Send>(
    trials: u64,
    f: impl Fn(u64) -> Result<Option<T>, E> + Sync + Send,
) -> Result<Option<(u64, T)>, E> {
    (0..trials)
        .into_par_iter()
        .filter_map(|t| match f(t) {
            Ok(None) => None,
            Ok(Some(v)) => Some(Ok((t, v))),
            Err(e) => Some(Err(e)),
        })
        .find_first(|_| true)
        .transpose()
}

#[cfg(not(feature = "parallel"))]
pub fn try_find_first_trial<T: Send, E: Send>(
    trials: u64,
    f: impl Fn(u64) -> Result<Option<T>, E> + Sync + Send,
) -> Result<Option<(u64, T)>, E> {
    for t in 0..trials {
        if let Some(v) = f(t)? {
            return Ok(Some((t, v)));
        }
    }
    Ok(None)
}
