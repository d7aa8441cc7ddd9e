//! Reference implementations used only by the integration tests. None of them call the
//! library's fast paths: codes are built as strings, folded with a local loop, and
//! cluster statistics come from the positionwise definition.

#![allow(dead_code)]

use std::collections::BTreeMap;

use coprime_tree::analysis::{
    ClassExtremes, Extremal, SweepKind, SweepRange, SweepReport, Value, Witness,
};
use coprime_tree::{Code, Pair, Rational};
use num_bigint::{BigInt, BigUint};

/// All bit strings of length `n` in lexicographic order.
pub fn codes_of_length(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| [format!("{s}0"), format!("{s}1")])
            .collect();
    }
    out
}

/// `[1,2]` folded through the code: '0' maps `[a,b]` to `[a,a+b]`, '1' to `[b,a+b]`.
pub fn fold(code: &str) -> (BigUint, BigUint) {
    let (mut a, mut b) = (BigUint::from(1u32), BigUint::from(2u32));
    for ch in code.chars() {
        let s = &a + &b;
        if ch == '1' {
            a = b;
        }
        b = s;
    }
    (a, b)
}

pub fn fold_sum(code: &str) -> BigUint {
    let (a, b) = fold(code);
    a + b
}

/// `clus(x_i, c) = |{k : x_j = x_i for all j between i and k}|`, 1-based `i`.
pub fn clus_positionwise(code: &str, i: usize) -> usize {
    let bits: Vec<char> = code.chars().collect();
    let xi = bits[i - 1];
    (1..=bits.len())
        .filter(|&k| {
            let (lo, hi) = (i.min(k), i.max(k));
            (lo..=hi).all(|j| bits[j - 1] == xi)
        })
        .count()
}

/// `(sum clus, sum clus^2)` by direct positionwise evaluation.
pub fn clus_sums(code: &str) -> (u64, u64) {
    (1..=code.len())
        .map(|i| clus_positionwise(code, i) as u64)
        .fold((0, 0), |(s1, s2), c| (s1 + c, s2 + c * c))
}

pub fn var_positionwise(code: &str) -> Rational {
    let (_, s2) = clus_sums(code);
    Rational::new(BigInt::from(s2), BigInt::from(code.len()))
}

pub fn weight_of(code: &str) -> u32 {
    code.chars().filter(|&c| c == '1').count() as u32
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `sum_{b=2..=max_b} phi(b)` with a totient sieve.
pub fn totient_sum(max_b: u64) -> u64 {
    let n = max_b as usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi[2..].iter().sum()
}

fn pair(a: BigUint, b: BigUint) -> Pair {
    Pair { a, b }
}

fn code(s: &str) -> Code {
    s.parse().unwrap()
}

/// The conjecture report produced by testing every ordered pair of equal-weight codes.
pub fn naive_conjecture_report(len: u32, weight_filter: Option<u32>, cap: usize) -> SweepReport {
    struct Row {
        code: String,
        weight: u32,
        var: Rational,
        sum: BigUint,
        pair: (BigUint, BigUint),
    }
    let rows: Vec<Row> = codes_of_length(len as usize)
        .into_iter()
        .filter(|c| weight_filter.is_none_or(|w| weight_of(c) == w))
        .map(|c| {
            let pair = fold(&c);
            Row {
                weight: weight_of(&c),
                var: var_positionwise(&c),
                sum: &pair.0 + &pair.1,
                pair,
                code: c,
            }
        })
        .collect();

    let mut violating_pairs: Vec<(usize, usize)> = Vec::new();
    for (i, r1) in rows.iter().enumerate() {
        for (j, r2) in rows.iter().enumerate() {
            if r1.weight == r2.weight && r1.var < r2.var && r1.sum <= r2.sum {
                violating_pairs.push((i, j));
            }
        }
    }
    // rows are in lexicographic order, so index order is code order
    violating_pairs.sort();
    let mut c1s: Vec<usize> = violating_pairs.iter().map(|p| p.0).collect();
    c1s.dedup();

    let violations = violating_pairs
        .iter()
        .take(cap)
        .map(|&(i, j)| {
            let (r1, r2) = (&rows[i], &rows[j]);
            Witness {
                codes: vec![code(&r1.code), code(&r2.code)],
                pairs: vec![
                    pair(r1.pair.0.clone(), r1.pair.1.clone()),
                    pair(r2.pair.0.clone(), r2.pair.1.clone()),
                ],
                values: vec![
                    Value::Ratio(r1.var.clone()),
                    Value::Ratio(r2.var.clone()),
                    Value::Integer(r1.sum.clone()),
                    Value::Integer(r2.sum.clone()),
                ],
            }
        })
        .collect();

    let mut classes: BTreeMap<(u32, Rational), Vec<&Row>> = BTreeMap::new();
    for r in &rows {
        classes
            .entry((r.weight, r.var.clone()))
            .or_default()
            .push(r);
    }
    let extremal = classes
        .into_iter()
        .map(|((weight, variance), members)| {
            // first in lexicographic order among ties
            let min = members.iter().min_by(|x, y| x.sum.cmp(&y.sum)).unwrap();
            let max = members
                .iter()
                .max_by(|x, y| x.sum.cmp(&y.sum).then(y.code.cmp(&x.code)))
                .unwrap();
            ClassExtremes {
                weight,
                variance,
                count: members.len() as u64,
                min_norm: min.sum.clone(),
                min_code: code(&min.code),
                max_norm: max.sum.clone(),
                max_code: code(&max.code),
            }
        })
        .collect();

    SweepReport {
        kind: SweepKind::Conjecture,
        range: SweepRange::Length {
            len,
            weight: weight_filter,
        },
        checked_count: rows.len() as u64,
        violations,
        violation_count: c1s.len() as u64,
        truncated: violating_pairs.len() > cap,
        extremal: Some(Extremal::Classes(extremal)),
    }
}
