//! Prefix sharding of the code space `0..2^len`.
//!
//! A shard is the set of codes sharing a fixed-length prefix, so shards are contiguous,
//! lexicographically ordered ranges. Results are always collected in shard order, which
//! makes every merged report independent of the shard count and of scheduling.

use std::ops::Range;

use rayon::prelude::*;
use rayon::ThreadPool;

use super::AnalysisError;

/// Tuning shared by every sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    /// Number of prefix shards (and worker threads).
    pub shards: usize,
    /// Maximum number of witnesses retained in a report.
    pub violation_cap: usize,
}

pub const DEFAULT_VIOLATION_CAP: usize = 100;

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            shards: std::thread::available_parallelism().map_or(1, usize::from),
            violation_cap: DEFAULT_VIOLATION_CAP,
        }
    }
}

impl SweepOptions {
    pub fn sequential() -> Self {
        SweepOptions {
            shards: 1,
            ..SweepOptions::default()
        }
    }

    pub fn with_shards(shards: usize) -> Self {
        SweepOptions {
            shards,
            ..SweepOptions::default()
        }
    }

    pub(crate) fn validate(&self) -> Result<(), AnalysisError> {
        if self.shards == 0 {
            return Err(AnalysisError::ZeroShards);
        }
        if self.violation_cap == 0 {
            return Err(AnalysisError::ZeroViolationCap);
        }
        Ok(())
    }

    pub(crate) fn pool(&self) -> Result<ThreadPool, AnalysisError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.shards)
            .build()
            .map_err(|e| AnalysisError::ThreadPool(e.to_string()))
    }
}

/// Splits `0..2^len` into `2^k` prefix ranges with `2^k >= shards` (or `k = len`).
pub(crate) fn prefix_ranges(len: u32, shards: usize) -> Vec<Range<u64>> {
    let want = shards.max(1).next_power_of_two().trailing_zeros();
    let prefix_bits = want.min(len);
    let width = 1u64 << (len - prefix_bits);
    (0..(1u64 << prefix_bits))
        .map(|prefix| prefix * width..(prefix + 1) * width)
        .collect()
}

/// Runs `work` on every prefix range of `0..2^len` and returns the results in shard order.
pub(crate) fn map_shards<T, F>(pool: &ThreadPool, len: u32, shards: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let ranges = prefix_ranges(len, shards);
    pool.install(|| ranges.into_par_iter().map(&work).collect())
}
