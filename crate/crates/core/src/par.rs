//! Chunked loops with a fixed reduction order, so results do not depend on
//! the number of worker threads.

use std::ops::Range;

pub(crate) const CHUNK: usize = 1 << 14;

fn chunks(len: usize, chunk: usize) -> Vec<Range<usize>> {
    (0..len.div_ceil(chunk))
        .map(|c| c * chunk..((c + 1) * chunk).min(len))
        .collect()
}

/// Evaluates `f` on consecutive chunks of `0..len` and returns the per-chunk
/// results in chunk order.
pub(crate) fn map_chunks<T, F>(len: usize, chunk: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync + Send,
{
    let ranges = chunks(len, chunk);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        ranges.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ranges.into_iter().map(f).collect()
    }
}

/// Sum of per-chunk partial sums, reduced left to right.
pub(crate) fn chunked_sum<F>(len: usize, f: F) -> f64
where
    F: Fn(Range<usize>) -> f64 + Sync + Send,
{
    map_chunks(len, CHUNK, f).into_iter().sum()
}
