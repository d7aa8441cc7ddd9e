//! Exhaustive sweeps over the tree and its codes.

mod blocks;
mod completeness;
mod conjecture;
mod homomorphism;
mod packed;
mod reflection;
mod report;
mod shard;

use thiserror::Error;

use crate::code::Code;
use crate::tree::{apply_code, Pair};

pub use blocks::{block_closed_form, block_codes, fibonacci, verify_block_proposition};
pub use completeness::completeness_check;
pub use conjecture::scan_conjecture;
pub use homomorphism::{reduction_counterexample, sample_homomorphism};
pub use packed::MAX_SWEEP_LEN;
pub use reflection::{verify_converse_failure, verify_reflection};
pub use report::{ClassExtremes, Extremal, SweepKind, SweepRange, SweepReport, Value, Witness};
pub use shard::{SweepOptions, DEFAULT_VIOLATION_CAP};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("{0}")]
    EmptyRange(&'static str),
    #[error("length {len} exceeds the sweep limit of {max}")]
    LengthTooLarge { len: u32, max: u32 },
    #[error("weight {weight} is out of range for length {len}")]
    WeightOutOfRange { weight: u32, len: u32 },
    #[error("shard count must be at least 1")]
    ZeroShards,
    #[error("violation cap must be at least 1")]
    ZeroViolationCap,
    #[error("could not start worker threads: {0}")]
    ThreadPool(String),
}

/// All vertices of the tree up to `depth` (the root has depth 0), shortest codes first and
/// lexicographically within a depth. Yields `2^(depth+1) - 1` items lazily.
pub fn enumerate_tree(depth: u32) -> Result<impl Iterator<Item = (Code, Pair)>, AnalysisError> {
    if depth > MAX_SWEEP_LEN {
        return Err(AnalysisError::LengthTooLarge {
            len: depth,
            max: MAX_SWEEP_LEN,
        });
    }
    Ok((0..=depth).flat_map(|len| {
        (0..(1u64 << len)).map(move |bits| {
            let code = Code::from_packed(bits, len);
            let pair = apply_code(&code);
            (code, pair)
        })
    }))
}
