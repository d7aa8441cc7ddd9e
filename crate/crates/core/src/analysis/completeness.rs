use std::collections::HashSet;

use rayon::prelude::*;

use super::report::{SweepKind, SweepRange, SweepReport, Witness};
use super::shard::SweepOptions;
use super::AnalysisError;
use crate::code::Code;
use crate::tree::{apply_code, decode, Pair};

fn euclid(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Checks that every coprime pair `1 <= a < b <= max_b` decodes, that the code maps back
/// to the pair, and that no two pairs share a code.
pub fn completeness_check(max_b: u64, opts: &SweepOptions) -> Result<SweepReport, AnalysisError> {
    opts.validate()?;
    if max_b < 2 {
        return Err(AnalysisError::EmptyRange("max_b must be at least 2"));
    }
    let pool = opts.pool()?;

    // Per denominator: (pair, decoded code or None on failure), in order of a.
    let columns: Vec<Vec<(Pair, Option<Code>)>> = pool.install(|| {
        (2..=max_b)
            .into_par_iter()
            .map(|b| {
                (1..b)
                    .filter(|&a| euclid(a, b) == 1)
                    .map(|a| {
                        let pair = Pair::from((a, b));
                        let code = decode(&pair).ok().filter(|c| apply_code(c) == pair);
                        (pair, code)
                    })
                    .collect()
            })
            .collect()
    });

    let cap = opts.violation_cap;
    let mut seen: HashSet<Code> = HashSet::new();
    let mut checked = 0u64;
    let mut violation_count = 0u64;
    let mut violations = Vec::new();
    for (pair, code) in columns.into_iter().flatten() {
        checked += 1;
        let ok = match &code {
            Some(c) => seen.insert(c.clone()),
            None => false,
        };
        if !ok {
            violation_count += 1;
            if violations.len() < cap {
                violations.push(Witness {
                    codes: code.into_iter().collect(),
                    pairs: vec![pair],
                    values: Vec::new(),
                });
            }
        }
    }

    Ok(SweepReport {
        kind: SweepKind::Completeness,
        range: SweepRange::MaxValue { max_b },
        checked_count: checked,
        violations,
        violation_count,
        truncated: violation_count > cap as u64,
        extremal: None,
    })
}
