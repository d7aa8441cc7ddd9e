use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{SweepKind, SweepRange, SweepReport, Value, Witness};
use super::shard::SweepOptions;
use super::AnalysisError;
use crate::tree::{add, reduce, scale, tau, Pair};

/// `r[1,4] + r[2,3]` and `r[3,7]`, which differ: `[2,5] != [3,4]`.
pub fn reduction_counterexample() -> (Pair, Pair) {
    let lhs = add(
        &reduce(&Pair::from((1, 4))).expect("[1,4] is a tree pair"),
        &reduce(&Pair::from((2, 3))).expect("[2,3] is a tree pair"),
    );
    let rhs = reduce(&Pair::from((3, 7))).expect("[3,7] is a tree pair");
    (lhs, rhs)
}

fn identities_hold(u: &Pair, v: &Pair, k: &BigUint) -> bool {
    [false, true].into_iter().all(|bit| {
        tau(bit, &add(u, v)) == add(&tau(bit, u), &tau(bit, v))
            && tau(bit, &scale(k, u)) == scale(k, &tau(bit, u))
    })
}

/// Seeded random check of `tau_i(u + v) = tau_i(u) + tau_i(v)` and
/// `tau_i(k u) = k tau_i(u)` with entries below `2^64`, plus the fixed witness that the
/// reduction is not additive.
///
/// A failed trial is recorded as a witness with `pairs = [u, v]` and `values = [k]`;
/// if the reduction counterexample unexpectedly coincides, its two sides are recorded.
pub fn sample_homomorphism(
    trials: u64,
    seed: u64,
    opts: &SweepOptions,
) -> Result<SweepReport, AnalysisError> {
    opts.validate()?;
    if trials == 0 {
        return Err(AnalysisError::EmptyRange("trials must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut violation_count = 0u64;
    for _ in 0..trials {
        let u = Pair::new(rng.gen::<u64>(), rng.gen::<u64>());
        let v = Pair::new(rng.gen::<u64>(), rng.gen::<u64>());
        let k = BigUint::from(rng.gen::<u64>());
        if !identities_hold(&u, &v, &k) {
            violation_count += 1;
            if violations.len() < opts.violation_cap {
                violations.push(Witness {
                    codes: Vec::new(),
                    pairs: vec![u, v],
                    values: vec![Value::Integer(k)],
                });
            }
        }
    }
    let (lhs, rhs) = reduction_counterexample();
    if lhs == rhs {
        violation_count += 1;
        violations.push(Witness {
            codes: Vec::new(),
            pairs: vec![lhs, rhs],
            values: Vec::new(),
        });
    }
    Ok(SweepReport {
        kind: SweepKind::Homomorphism,
        range: SweepRange::Trials { trials, seed },
        checked_count: trials,
        violations,
        violation_count,
        truncated: violation_count > opts.violation_cap as u64,
        extremal: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample() {
        let (lhs, rhs) = reduction_counterexample();
        assert_eq!(lhs, Pair::from((2, 5)));
        assert_eq!(rhs, Pair::from((3, 4)));
    }

    #[test]
    fn seeded_runs() {
        let opts = SweepOptions::sequential();
        let r = sample_homomorphism(1000, 42, &opts).unwrap();
        assert_eq!(r.checked_count, 1000);
        assert!(r.holds());
        assert!(sample_homomorphism(1, 0, &opts).unwrap().holds());
        assert_eq!(r, sample_homomorphism(1000, 42, &opts).unwrap());
        assert!(sample_homomorphism(0, 0, &opts).is_err());
    }
}
