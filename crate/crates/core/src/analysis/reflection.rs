use std::cmp::Ordering;

use num_bigint::BigUint;

use super::packed::{to_pair, Packed, MAX_SWEEP_LEN};
use super::report::{Extremal, SweepKind, SweepRange, SweepReport, Witness};
use super::shard::{map_shards, SweepOptions};
use super::AnalysisError;

#[derive(Default)]
struct ShardTally {
    checked: u64,
    violation_count: u64,
    violations: Vec<Packed>,
    // (norm, code) of the largest norm, first in shortlex order
    max: Option<(u64, Packed)>,
}

fn better_max(current: Option<(u64, Packed)>, candidate: (u64, Packed)) -> Option<(u64, Packed)> {
    match current {
        None => Some(candidate),
        Some(cur) => match candidate.0.cmp(&cur.0) {
            Ordering::Greater => Some(candidate),
            Ordering::Equal if (candidate.1.len, candidate.1.bits) < (cur.1.len, cur.1.bits) => {
                Some(candidate)
            }
            _ => Some(cur),
        },
    }
}

/// Checks `||T[c]|| = ||T[refl(c)]||` for every code `1 <= |c| <= max_len`.
///
/// Each reflection class `{c, refl(c)}` is evaluated once, from its lexicographically
/// smaller member; `checked_count` counts codes, so it equals `2^(max_len+1) - 2`.
pub fn verify_reflection(max_len: u32, opts: &SweepOptions) -> Result<SweepReport, AnalysisError> {
    opts.validate()?;
    if max_len == 0 {
        return Err(AnalysisError::EmptyRange("max_len must be at least 1"));
    }
    if max_len > MAX_SWEEP_LEN {
        return Err(AnalysisError::LengthTooLarge {
            len: max_len,
            max: MAX_SWEEP_LEN,
        });
    }
    let pool = opts.pool()?;
    let cap = opts.violation_cap;

    let mut total = ShardTally::default();
    for len in 1..=max_len {
        let tallies = map_shards(&pool, len, opts.shards, |range| {
            let mut tally = ShardTally::default();
            for bits in range {
                let code = Packed::new(bits, len);
                let mirror = code.reversed();
                if mirror.bits < code.bits {
                    continue;
                }
                let norm = code.norm();
                tally.checked += if mirror == code { 1 } else { 2 };
                tally.max = better_max(tally.max, (norm, code));
                if mirror != code {
                    let mirror_norm = mirror.norm();
                    tally.max = better_max(tally.max, (mirror_norm, mirror));
                    if mirror_norm != norm {
                        tally.violation_count += 1;
                        if tally.violations.len() < cap {
                            tally.violations.push(code);
                        }
                    }
                }
            }
            tally
        });
        for t in tallies {
            total.checked += t.checked;
            total.violation_count += t.violation_count;
            let room = cap - total.violations.len().min(cap);
            total.violations.extend(t.violations.into_iter().take(room));
            if let Some(m) = t.max {
                total.max = better_max(total.max, m);
            }
        }
    }

    let violations = total
        .violations
        .iter()
        .map(|c| Witness::norms_of(vec![c.to_code(), c.reversed().to_code()]))
        .collect();
    let extremal = total.max.map(|(norm, code)| Extremal::MaxNorm {
        code: code.to_code(),
        pair: to_pair(code.fold()),
        norm: BigUint::from(norm),
    });
    Ok(SweepReport {
        kind: SweepKind::Reflection,
        range: SweepRange::MaxLength { max_len },
        checked_count: total.checked,
        violations,
        violation_count: total.violation_count,
        truncated: total.violation_count > cap as u64,
        extremal,
    })
}

/// Equal-length, equal-norm codes that are not reflections of each other:
/// `||T[10011]|| = ||T[01110]|| = 25`.
pub fn verify_converse_failure() -> Witness {
    Witness::norms_of(vec![
        "10011".parse().expect("literal code"),
        "01110".parse().expect("literal code"),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{refl, Code};
    use crate::tree::Pair;

    #[test]
    fn small_sweeps() {
        let r = verify_reflection(1, &SweepOptions::sequential()).unwrap();
        assert_eq!(r.checked_count, 2);
        assert!(r.holds());
        let r = verify_reflection(4, &SweepOptions::sequential()).unwrap();
        assert_eq!(r.checked_count, 30);
        assert!(r.holds());
        assert_eq!(r.violation_count, 0);
    }

    #[test]
    fn max_norm_is_all_ones() {
        let r = verify_reflection(7, &SweepOptions::with_shards(3)).unwrap();
        assert_eq!(r.checked_count, 254);
        match r.extremal {
            Some(Extremal::MaxNorm { code, norm, .. }) => {
                assert_eq!(code.to_string(), "1111111");
                // F(11) = 89
                assert_eq!(norm, BigUint::from(89u32));
            }
            other => panic!("unexpected extremal {other:?}"),
        }
    }

    #[test]
    fn converse_witness() {
        let w = verify_converse_failure();
        assert_eq!(w.pairs, vec![Pair::from((9, 16)), Pair::from((7, 18))]);
        assert_eq!(w.values[0], w.values[1]);
        assert_eq!(w.values[0].to_string(), "25");
        assert_ne!(refl(&w.codes[0]), w.codes[1]);
        assert_eq!(refl(&w.codes[0]), "11001".parse::<Code>().unwrap());
        assert!(w.reproduces(SweepKind::Reflection));
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(verify_reflection(0, &SweepOptions::sequential()).is_err());
        assert!(verify_reflection(64, &SweepOptions::sequential()).is_err());
    }
}
