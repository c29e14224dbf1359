use std::ops::Range;

use cliffsphere_core::epr::ChunkExecutor;
use rayon::prelude::*;

/// Runs trial chunks on the rayon pool. Results come back in chunk order, so
/// the reduction and every digest match [`cliffsphere_core::epr::Sequential`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Parallel;

impl ChunkExecutor for Parallel {
    fn map_chunks<T, F>(&self, ranges: &[Range<u64>], f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(Range<u64>) -> T + Sync + Send,
    {
        ranges.par_iter().cloned().map(f).collect()
    }
}
