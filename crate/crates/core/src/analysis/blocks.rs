use num_bigint::BigUint;
use num_traits::One;

use super::report::{SweepKind, SweepRange, SweepReport, Witness};
use super::shard::SweepOptions;
use super::AnalysisError;
use crate::code::Code;
use crate::tree::{apply_code, norm1, Pair};

/// Fibonacci numbers with `F(1) = F(2) = 1`, so that `T[1] = [2,3] = [F(3), F(4)]`.
pub fn fibonacci(i: u32) -> Result<BigUint, AnalysisError> {
    if i == 0 {
        return Err(AnalysisError::EmptyRange("Fibonacci indices start at 1"));
    }
    let (mut prev, mut cur) = (BigUint::ZERO, BigUint::one());
    for _ in 1..i {
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `[F(j+2), F(j+4) + (j-1) F(j+2)]`, the closed form of `T[1^j 0^j]`.
pub fn block_closed_form(j: u32) -> Result<Pair, AnalysisError> {
    let small = fibonacci(j + 2)?;
    let large = fibonacci(j + 4)? + BigUint::from(j.saturating_sub(1)) * &small;
    Ok(Pair { a: small, b: large })
}

/// The codes `1^j 0^j`, `0^j 1^j`, `(01)^j`, `(10)^j`.
pub fn block_codes(j: u32) -> [Code; 4] {
    let j = j as usize;
    [
        Code::repeat("1", j).concat(&Code::repeat("0", j)),
        Code::repeat("0", j).concat(&Code::repeat("1", j)),
        Code::repeat("01", j),
        Code::repeat("10", j),
    ]
}

/// For each `j` in `2..=max_j` checks:
/// 1. `T[1^j 0^j] = [F(j+2), F(j+4) + (j-1) F(j+2)]`;
/// 2. `||T[1^j 0^j]|| = ||T[0^j 1^j]||`;
/// 3. `||T[(01)^j]|| = ||T[(10)^j]||`;
/// 4. `||T[1^j 0^j]|| < ||T[(01)^j]||`.
///
/// A failing `j` yields one witness holding the four codes, their pairs followed by the
/// closed-form pair, and the four norms.
pub fn verify_block_proposition(
    max_j: u32,
    opts: &SweepOptions,
) -> Result<SweepReport, AnalysisError> {
    opts.validate()?;
    if max_j < 2 {
        return Err(AnalysisError::EmptyRange("max_j must be at least 2"));
    }
    let mut violations = Vec::new();
    let mut violation_count = 0u64;
    for j in 2..=max_j {
        let codes = block_codes(j);
        let pairs: Vec<Pair> = codes.iter().map(apply_code).collect();
        let norms: Vec<BigUint> = pairs.iter().map(norm1).collect();
        let closed = block_closed_form(j)?;
        let holds = pairs[0] == closed
            && norms[0] == norms[1]
            && norms[2] == norms[3]
            && norms[0] < norms[2];
        if !holds {
            violation_count += 1;
            if violations.len() < opts.violation_cap {
                let mut w = Witness::norms_of(codes.to_vec());
                w.pairs.push(closed);
                violations.push(w);
            }
        }
    }
    Ok(SweepReport {
        kind: SweepKind::BlockProposition,
        range: SweepRange::BlockSizes { min_j: 2, max_j },
        checked_count: u64::from(max_j - 1),
        violations,
        violation_count,
        truncated: violation_count > opts.violation_cap as u64,
        extremal: None,
    })
}
