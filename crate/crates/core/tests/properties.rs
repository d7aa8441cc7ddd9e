mod common;

use std::collections::HashSet;

use coprime_tree::analysis::enumerate_tree;
use coprime_tree::{
    add, apply_code, apply_code_from, cluster_average, cluster_number, cluster_variance,
    complement, decode, is_palindrome, is_tree_pair, norm1, parent, reduce, refl, scale, tau, tau0,
    tau1, weight, Code, Pair, Rational,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use proptest::prelude::*;

fn big_pair() -> impl Strategy<Value = Pair> {
    (any::<u64>(), any::<u64>()).prop_map(|(a, b)| Pair::new(a, b))
}

fn code_strategy(max_len: usize) -> impl Strategy<Value = Code> {
    prop::collection::vec(any::<bool>(), 0..=max_len).prop_map(Code::from_bits)
}

fn tree_pair_strategy() -> impl Strategy<Value = Pair> {
    code_strategy(40).prop_map(|c| apply_code(&c))
}

fn all_codes(max_len: u32) -> impl Iterator<Item = Code> {
    (0..=max_len).flat_map(|len| (0..(1u64 << len)).map(move |bits| Code::from_packed(bits, len)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn generators_are_additive(u in big_pair(), v in big_pair()) {
        prop_assert_eq!(tau0(&add(&u, &v)), add(&tau0(&u), &tau0(&v)));
        prop_assert_eq!(tau1(&add(&u, &v)), add(&tau1(&u), &tau1(&v)));
    }

    #[test]
    fn generators_commute_with_scaling(k in any::<u64>(), u in big_pair()) {
        let k = BigUint::from(k);
        for bit in [false, true] {
            prop_assert_eq!(tau(bit, &scale(&k, &u)), scale(&k, &tau(bit, &u)));
        }
    }
}

proptest! {
    #[test]
    fn generators_preserve_order_gcd_and_grow(p in tree_pair_strategy()) {
        for bit in [false, true] {
            let child = tau(bit, &p);
            prop_assert!(child.a > BigUint::ZERO && child.a < child.b);
            prop_assert_eq!(child.a.gcd(&child.b), p.a.gcd(&p.b));
            prop_assert!(norm1(&child) > norm1(&p));
            prop_assert_eq!(reduce(&child).unwrap(), p.clone());
        }
    }

    #[test]
    fn reduce_preserves_gcd(a in 1u64..1_000_000, b in 1u64..1_000_000) {
        let p = Pair::new(a.min(b), a.max(b));
        prop_assume!(is_tree_pair(&p) && !p.is_root());
        let q = reduce(&p).unwrap();
        prop_assert!(is_tree_pair(&q));
        prop_assert!(q.b < p.b);
    }

    #[test]
    fn decode_inverts_apply(c in code_strategy(200)) {
        prop_assert_eq!(decode(&apply_code(&c)).unwrap(), c);
    }

    #[test]
    fn reflection_preserves_statistics(c in code_strategy(64)) {
        prop_assert_eq!(refl(&refl(&c)), c.clone());
        prop_assert_eq!(weight(&refl(&c)), weight(&c));
        prop_assert_eq!(is_palindrome(&c), refl(&c) == c);
        if !c.is_empty() {
            prop_assert_eq!(cluster_variance(&refl(&c)), cluster_variance(&c));
            prop_assert_eq!(cluster_average(&refl(&c)), cluster_average(&c));
            prop_assert_eq!(cluster_variance(&complement(&c)), cluster_variance(&c));
            prop_assert_eq!(cluster_average(&complement(&c)), cluster_average(&c));
        }
    }

    #[test]
    fn parse_format_round_trip(c in code_strategy(64)) {
        prop_assert_eq!(c.to_string().parse::<Code>().unwrap(), c);
    }
}

#[test]
fn round_trip_and_parent_for_all_codes_up_to_16() {
    for c in all_codes(16) {
        let p = apply_code(&c);
        assert_eq!(decode(&p).unwrap(), c);
        if let Some(last) = c.bits().last() {
            let (up, bit) = parent(&p).unwrap();
            assert_eq!(bit, *last);
            assert_eq!(up, reduce(&p).unwrap());
            let last_code = Code::from_bits(vec![*last]);
            assert_eq!(apply_code_from(&reduce(&p).unwrap(), &last_code), p);
        }
    }
}

#[test]
fn injective_at_each_length_and_generator_images_disjoint() {
    for len in 0..=16u32 {
        let pairs: Vec<Pair> = (0..(1u64 << len))
            .map(|bits| apply_code(&Code::from_packed(bits, len)))
            .collect();
        let distinct: HashSet<&Pair> = pairs.iter().collect();
        assert_eq!(distinct.len(), pairs.len(), "length {len}");
    }
    let vertices: Vec<Pair> = enumerate_tree(12).unwrap().map(|(_, p)| p).collect();
    let zeros: HashSet<Pair> = vertices.iter().map(tau0).collect();
    let ones: HashSet<Pair> = vertices.iter().map(tau1).collect();
    assert!(zeros.is_disjoint(&ones));
}

#[test]
fn run_decomposition_matches_positionwise_definition() {
    for c in all_codes(12).filter(|c| !c.is_empty()) {
        let s = c.to_string();
        let runs = c.runs();
        let (sum1, sum2) = common::clus_sums(&s);
        assert_eq!(
            sum1,
            runs.iter().map(|&r| (r * r) as u64).sum::<u64>(),
            "{s}"
        );
        assert_eq!(
            sum2,
            runs.iter().map(|&r| (r * r * r) as u64).sum::<u64>(),
            "{s}"
        );
        for i in 1..=c.len() {
            assert_eq!(
                cluster_number(&c, i).unwrap(),
                common::clus_positionwise(&s, i)
            );
        }
        assert_eq!(cluster_variance(&c).unwrap(), common::var_positionwise(&s));
    }
}

#[test]
fn variance_bounds_and_equality_cases() {
    for c in all_codes(12).filter(|c| !c.is_empty()) {
        let n = c.len() as i64;
        let var = cluster_variance(&c).unwrap();
        let one = Rational::from_integer(BigInt::from(1));
        let top = Rational::from_integer(BigInt::from(n * n));
        assert!(one <= var && var <= top, "{c}");
        let alternating = c.bits().windows(2).all(|w| w[0] != w[1]);
        let constant = c.bits().windows(2).all(|w| w[0] == w[1]);
        assert_eq!(var == one, alternating, "{c}");
        assert_eq!(var == top, constant, "{c}");
    }
}

#[test]
fn block_and_alternating_cluster_sums() {
    for j in 1..=10u64 {
        let alternating = Code::repeat("01", j as usize).to_string();
        let blocks = format!("{}{}", "1".repeat(j as usize), "0".repeat(j as usize));
        assert_eq!(common::clus_sums(&alternating).1, 2 * j);
        assert_eq!(common::clus_sums(&blocks).1, 2 * j * j * j);
    }
}

#[test]
fn reduce_is_not_a_homomorphism() {
    let r = |a, b| reduce(&Pair::from((a, b))).unwrap();
    assert_eq!(add(&r(1, 4), &r(2, 3)), Pair::from((2, 5)));
    assert_eq!(r(3, 7), Pair::from((3, 4)));
    assert_ne!(add(&r(1, 4), &r(2, 3)), r(3, 7));
}
