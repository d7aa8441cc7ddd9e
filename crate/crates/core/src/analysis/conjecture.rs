//! Scanner for the cluster-variance conjecture: among codes of one length and weight,
//! `var(c1) < var(c2)` should force `||T[c1]|| > ||T[c2]||`.
//!
//! A violation is an ordered pair `(c1, c2)` of equal weight with `var(c1) < var(c2)`
//! and `||T[c1]|| <= ||T[c2]||`. Equal-variance pairs impose nothing.
//!
//! The scan streams twice over prefix shards and keeps no per-code table:
//!
//! 1. Per `(weight, variance)` class it accumulates the count and extremal norms. From
//!    these, `c1` has a violating partner iff some class of its weight with larger
//!    variance has a maximum norm `>= ||T[c1]||`.
//! 2. It streams again to count such `c1` and to collect, in lexicographic order, the
//!    first codes needing expansion. Each is expanded into its partners `c2`
//!    (lexicographic) until the witness cap is reached.
//!
//! Witnesses are therefore the lexicographically first `(c1, c2)` violations, independent
//! of the shard count.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};

use super::packed::{Packed, MAX_SWEEP_LEN};
use super::report::{ClassExtremes, Extremal, SweepKind, SweepRange, SweepReport, Witness};
use super::shard::{map_shards, SweepOptions};
use super::AnalysisError;
use crate::code::Rational;

/// Class key: weight and `n * var` (the run cube sum), which orders like `var` at fixed `n`.
type ClassKey = (u32, u64);

#[derive(Clone, Copy, Debug)]
struct ClassAcc {
    count: u64,
    min: (u64, u64),
    max: (u64, u64),
}

impl ClassAcc {
    fn new(norm: u64, bits: u64) -> Self {
        ClassAcc {
            count: 1,
            min: (norm, bits),
            max: (norm, bits),
        }
    }

    fn absorb(&mut self, other: &ClassAcc) {
        self.count += other.count;
        if other.min.0 < self.min.0 || (other.min.0 == self.min.0 && other.min.1 < self.min.1) {
            self.min = other.min;
        }
        if other.max.0 > self.max.0 || (other.max.0 == self.max.0 && other.max.1 < self.max.1) {
            self.max = other.max;
        }
    }
}

type Classes = BTreeMap<ClassKey, ClassAcc>;

fn merge_classes(mut into: Classes, from: Classes) -> Classes {
    for (key, acc) in from {
        into.entry(key)
            .and_modify(|e| e.absorb(&acc))
            .or_insert(acc);
    }
    into
}

/// For each weight, the class variances in increasing order together with the largest
/// norm among strictly higher-variance classes of that weight.
struct Dominance {
    by_weight: BTreeMap<u32, Vec<(u64, Option<u64>)>>,
}

impl Dominance {
    fn new(classes: &Classes) -> Self {
        let mut by_weight: BTreeMap<u32, Vec<(u64, Option<u64>)>> = BTreeMap::new();
        for (&(weight, cubes), acc) in classes {
            by_weight
                .entry(weight)
                .or_default()
                .push((cubes, Some(acc.max.0)));
        }
        for levels in by_weight.values_mut() {
            let mut above: Option<u64> = None;
            for level in levels.iter_mut().rev() {
                let own = level.1;
                level.1 = above;
                above = above.max(own);
            }
        }
        Dominance { by_weight }
    }

    fn max_norm_above(&self, weight: u32, cubes: u64) -> Option<u64> {
        let levels = self.by_weight.get(&weight)?;
        let idx = levels.binary_search_by_key(&cubes, |l| l.0).ok()?;
        levels[idx].1
    }

    fn has_partner(&self, weight: u32, cubes: u64, norm: u64) -> bool {
        self.max_norm_above(weight, cubes)
            .is_some_and(|max| max >= norm)
    }
}

struct Candidates {
    count: u64,
    first: Vec<Packed>,
}

/// Scans every code of length `len` (of one weight, if `weight_filter` is given).
pub fn scan_conjecture(
    len: u32,
    weight_filter: Option<u32>,
    opts: &SweepOptions,
) -> Result<SweepReport, AnalysisError> {
    opts.validate()?;
    if len == 0 {
        return Err(AnalysisError::EmptyRange("len must be at least 1"));
    }
    if len > MAX_SWEEP_LEN {
        return Err(AnalysisError::LengthTooLarge {
            len,
            max: MAX_SWEEP_LEN,
        });
    }
    if let Some(w) = weight_filter {
        if w > len {
            return Err(AnalysisError::WeightOutOfRange { weight: w, len });
        }
    }
    let pool = opts.pool()?;
    let cap = opts.violation_cap;
    let selected = |code: &Packed| weight_filter.is_none_or(|w| code.weight() == w);

    // Pass 1: class extremes.
    let classes = map_shards(&pool, len, opts.shards, |range| {
        let mut classes = Classes::new();
        for bits in range {
            let code = Packed::new(bits, len);
            if !selected(&code) {
                continue;
            }
            let acc = ClassAcc::new(code.norm(), bits);
            classes
                .entry((code.weight(), code.cube_run_sum()))
                .and_modify(|e| e.absorb(&acc))
                .or_insert(acc);
        }
        classes
    })
    .into_iter()
    .fold(Classes::new(), merge_classes);
    let checked_count = classes.values().map(|c| c.count).sum();
    let dominance = Dominance::new(&classes);

    // Pass 2: codes c1 with at least one violating partner.
    let candidates = map_shards(&pool, len, opts.shards, |range| {
        let mut found = Candidates {
            count: 0,
            first: Vec::new(),
        };
        for bits in range {
            let code = Packed::new(bits, len);
            if selected(&code)
                && dominance.has_partner(code.weight(), code.cube_run_sum(), code.norm())
            {
                found.count += 1;
                if found.first.len() < cap {
                    found.first.push(code);
                }
            }
        }
        found
    });
    let violation_count: u64 = candidates.iter().map(|c| c.count).sum();
    let first: Vec<Packed> = candidates
        .into_iter()
        .flat_map(|c| c.first)
        .take(cap)
        .collect();

    // Expansion into lexicographically ordered (c1, c2) witnesses.
    let mut witnesses: Vec<(Packed, Packed)> = Vec::new();
    let mut truncated = false;
    for (expanded, c1) in first.iter().enumerate() {
        let remaining = cap - witnesses.len();
        if remaining == 0 {
            // Every candidate left has at least one partner.
            truncated |= violation_count > expanded as u64;
            break;
        }
        let (weight, cubes, norm) = (c1.weight(), c1.cube_run_sum(), c1.norm());
        let partners: Vec<Packed> = map_shards(&pool, len, opts.shards, |range| {
            range
                .map(|bits| Packed::new(bits, len))
                .filter(|c2| {
                    c2.weight() == weight && c2.cube_run_sum() > cubes && c2.norm() >= norm
                })
                .take(remaining + 1)
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .take(remaining + 1)
        .collect();
        if partners.len() > remaining {
            truncated = true;
        }
        witnesses.extend(partners.into_iter().take(remaining).map(|c2| (*c1, c2)));
    }
    if witnesses.len() == cap && violation_count > first.len() as u64 {
        truncated = true;
    }

    let violations = witnesses
        .into_iter()
        .map(|(c1, c2)| Witness::conjecture(c1.to_code(), c2.to_code()))
        .collect();
    let extremal = Extremal::Classes(
        classes
            .iter()
            .map(|(&(weight, cubes), acc)| ClassExtremes {
                weight,
                variance: Rational::new(BigInt::from(cubes), BigInt::from(len)),
                count: acc.count,
                min_norm: BigUint::from(acc.min.0),
                min_code: Packed::new(acc.min.1, len).to_code(),
                max_norm: BigUint::from(acc.max.0),
                max_code: Packed::new(acc.max.1, len).to_code(),
            })
            .collect(),
    );
    Ok(SweepReport {
        kind: SweepKind::Conjecture,
        range: SweepRange::Length {
            len,
            weight: weight_filter,
        },
        checked_count,
        violations,
        violation_count,
        truncated,
        extremal: Some(extremal),
    })
}
