//! Deterministic fan-out over index ranges.

use rayon::prelude::*;

/// Splits `0..total` into contiguous chunks, maps each on a pool of `jobs`
/// threads and returns the results in chunk order, so any fold over the
/// output is independent of scheduling.
pub fn map_chunks<R, F>(jobs: usize, total: usize, chunk: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(std::ops::Range<usize>) -> R + Sync + Send,
{
    let chunk = chunk.max(1);
    let ranges: Vec<std::ops::Range<usize>> =
        (0..total).step_by(chunk).map(|s| s..(s + chunk).min(total)).collect();
    if jobs <= 1 {
        return ranges.into_iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| ranges.into_par_iter().map(f).collect())
}
