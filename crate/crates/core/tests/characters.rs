use deuring_core::arith::{euler_phi, gcd, pow_mod, Factorization};
use deuring_core::{enumerate_characters, kronecker, real_quadratic_characters, CharValue, DirichletCharacter};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use common::vanishes_in_cyclotomic_ring;

/// Exact test that a sum of roots of unity vanishes: reduce the exponent
/// histogram modulo `Phi_n`.
fn roots_sum_is_zero(values: &[CharValue], n: u64) -> bool {
    let mut hist = vec![0i64; n as usize];
    for v in values {
        if let CharValue::Root { num, den } = *v {
            hist[(num * (n / den)) as usize % n as usize] += 1;
        }
    }
    vanishes_in_cyclotomic_ring(hist, n)
}

#[test]
fn counts_match_phi() {
    assert_eq!(enumerate_characters(1).unwrap().len(), 1);
    assert_eq!(enumerate_characters(5).unwrap().len(), 4);
    let c12 = enumerate_characters(12).unwrap();
    assert_eq!(c12.len(), 4);
    assert_eq!(c12.iter().filter(|c| c.is_real()).count(), 4);
    for q in 1..=200u64 {
        let chars = enumerate_characters(q).unwrap();
        assert_eq!(chars.len() as u64, euler_phi(q));
        assert!(chars[0].is_principal());
        let mut tables: Vec<_> = chars.iter().map(|c| format!("{:?}", c.value_table())).collect();
        tables.sort();
        tables.dedup();
        assert_eq!(tables.len() as u64, euler_phi(q), "distinct characters mod {q}");
    }
}

#[test]
fn real_quadratic_counts() {
    assert_eq!(real_quadratic_characters(4).unwrap().len(), 1);
    assert_eq!(real_quadratic_characters(8).unwrap().len(), 3);
    assert_eq!(real_quadratic_characters(9).unwrap().len(), 1);
}

#[test]
fn factorization_examples() {
    assert!(Factorization::of(1).factors().is_empty());
    assert_eq!(Factorization::of(12).factors(), &[(2, 2), (3, 1)]);
    assert_eq!(Factorization::of(400_000).factors(), &[(2, 7), (5, 5)]);
    // Trial-division oracle.
    for n in 1..3000u64 {
        let mut m = n;
        let mut expect = Vec::new();
        let mut p = 2;
        while m > 1 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                expect.push((p, e));
            }
            p += 1;
        }
        assert_eq!(Factorization::of(n).factors(), expect.as_slice());
    }
}

#[test]
fn small_values() {
    let chars = enumerate_characters(4).unwrap();
    let chi = &chars[1];
    assert_eq!(chi.real_value(3), Some(-1));
    assert_eq!(chi.conductor(), 4);
    for q in 1..=30u64 {
        let chi0 = DirichletCharacter::principal(q);
        assert_eq!(chi0.conductor(), 1);
        for n in 1..=q {
            let expect = if gcd(n, q) == 1 { CharValue::ONE } else { CharValue::Zero };
            assert_eq!(chi0.eval_u64(n), expect);
        }
    }
}

#[test]
fn orthogonality_up_to_60() {
    for q in 1..=60u64 {
        let chars = enumerate_characters(q).unwrap();
        for chi in chars.iter().skip(1) {
            assert!(roots_sum_is_zero(&chi.value_table(), chi.group().order()), "sum over n, q = {q}");
        }
        let exponent = chars.iter().map(|c| c.order()).fold(1, num_integer::lcm);
        for n in 1..=q {
            let col: Vec<CharValue> = chars.iter().map(|c| c.eval_u64(n)).collect();
            if n % q == 1 % q {
                assert!(col.iter().all(|v| *v == CharValue::ONE));
            } else {
                assert!(roots_sum_is_zero(&col, exponent), "sum over chi, q = {q}, n = {n}");
            }
        }
    }
}

#[test]
fn multiplicativity_ten_thousand_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cache = std::collections::HashMap::new();
    for _ in 0..10_000 {
        let q = rng.gen_range(1..=300u64);
        let chars = cache.entry(q).or_insert_with(|| enumerate_characters(q).unwrap());
        let chi = &chars[rng.gen_range(0..chars.len())];
        let m = rng.gen_range(-10_000i64..10_000);
        let n = rng.gen_range(-10_000i64..10_000);
        assert_eq!(chi.eval(m * n), chi.eval(m).mul(chi.eval(n)), "q = {q}, m = {m}, n = {n}");
    }
}

#[test]
fn reality_brute_force() {
    for q in 3..=200u64 {
        let real: Vec<String> = real_quadratic_characters(q)
            .unwrap()
            .iter()
            .map(|c| format!("{:?}", c.exponents()))
            .collect();
        for chi in enumerate_characters(q).unwrap() {
            let vals: Vec<Option<i8>> = (1..=q as i64).map(|n| chi.eval(n).as_real()).collect();
            let brute = vals.iter().all(|v| v.is_some()) && vals.contains(&Some(-1));
            assert_eq!(brute, real.contains(&format!("{:?}", chi.exponents())), "q = {q}");
        }
    }
}

#[test]
fn conductor_brute_force() {
    for q in 1..=120u64 {
        for chi in enumerate_characters(q).unwrap() {
            // Smallest d | q with chi(n) = 1 whenever n = 1 mod d and gcd(n, q) = 1.
            let brute = (1..=q)
                .filter(|d| q % d == 0)
                .find(|&d| {
                    (1..=q).filter(|&n| gcd(n, q) == 1 && n % d == 1 % d).all(|n| chi.eval_u64(n) == CharValue::ONE)
                })
                .unwrap();
            assert_eq!(chi.conductor(), brute, "q = {q}, exps = {:?}", chi.exponents());
            assert_eq!(chi.is_primitive(), brute == q);
        }
    }
    // A character mod 12 induced from mod 4.
    let chi4 = &enumerate_characters(4).unwrap()[1];
    assert_eq!(chi4.lift_to(12).unwrap().conductor(), 4);
}

#[test]
fn kronecker_matches_euler_criterion() {
    assert_eq!(kronecker(2, 5), -1);
    for n in 1..200 {
        assert_eq!(kronecker(1, n), 1);
    }
    for p in (3..500u64).filter(|&p| deuring_core::arith::is_prime(p)) {
        for a in 0..p {
            let e = pow_mod(a, (p - 1) / 2, p);
            let expect = if e == 0 { 0 } else if e == 1 { 1 } else { -1 };
            assert_eq!(kronecker(a as i64, p as i64), expect, "({a}/{p})");
        }
    }
}

proptest! {
    #[test]
    fn values_are_periodic_and_unimodular(q in 1u64..400, k in 0usize..64, n in -5000i64..5000) {
        let chars = enumerate_characters(q).unwrap();
        let chi = &chars[k % chars.len()];
        prop_assert_eq!(chi.eval(n), chi.eval(n + q as i64));
        let coprime = gcd(n.unsigned_abs(), q) == 1;
        prop_assert_eq!(chi.eval(n).is_zero(), !coprime);
        if let CharValue::Root { num, den } = chi.eval(n) {
            prop_assert!(num < den);
            prop_assert_eq!(chi.eval(n).pow(chi.order()), CharValue::ONE);
        }
    }

    #[test]
    fn product_and_conjugate(q in 2u64..200, i in 0usize..64, j in 0usize..64, n in 1u64..2000) {
        let chars = enumerate_characters(q).unwrap();
        let (a, b) = (&chars[i % chars.len()], &chars[j % chars.len()]);
        let ab = a.product(b).unwrap();
        prop_assert_eq!(ab.eval_u64(n), a.eval_u64(n).mul(b.eval_u64(n)));
        prop_assert!(a.product(&a.conj()).unwrap().is_principal());
    }
}
