use avgorder_core::arith::{gcd_u64, Rational};
use avgorder_core::bounds::{
    admissible_order, admissible_order_for, lemma22_verify, solve_threshold, sylow_factor_check,
    sylow_factor_lower_bound, LinearForm,
};
use avgorder_core::constructors::{
    abelian, alternating, cyclic, dicyclic, dihedral, direct_product, semidirect_cyclic, symmetric,
};
use avgorder_core::proof::replay_proof;
use avgorder_core::spectrum::{avg_order, lemma21_check, order_spectrum};
use avgorder_core::{Error, PermutationGroup, Verdict};
use proptest::prelude::*;

fn small_groups() -> Vec<(String, PermutationGroup)> {
    let mut out = Vec::new();
    for n in 1..=16 {
        out.push((format!("C{n}"), cyclic(n).unwrap()));
    }
    for n in 3..=8 {
        out.push((format!("D{n}"), dihedral(n).unwrap()));
    }
    for n in 2..=4 {
        out.push((format!("Dic{n}"), dicyclic(n).unwrap()));
    }
    out.push(("C2xC2".into(), abelian(&[2, 2]).unwrap()));
    out.push(("C3xC3".into(), abelian(&[3, 3]).unwrap()));
    out.push(("C2xC2xC2".into(), abelian(&[2, 2, 2]).unwrap()));
    out.push(("S3".into(), symmetric(3).unwrap()));
    out.push(("S4".into(), symmetric(4).unwrap()));
    out.push(("A4".into(), alternating(4).unwrap()));
    out.push(("F20".into(), semidirect_cyclic(5, 4, 2).unwrap()));
    out.push(("C7:C3".into(), semidirect_cyclic(7, 3, 2).unwrap()));
    out
}

#[test]
fn average_order_is_multiplicative_on_coprime_pairs() {
    let groups = small_groups();
    let mut pairs = 0;
    for (i, (gn, g)) in groups.iter().enumerate() {
        for (hn, h) in &groups[i + 1..] {
            let (a, b) = (g.order().unwrap(), h.order().unwrap());
            if gcd_u64(a, b) != 1 || a * b > 400 {
                continue;
            }
            let product = direct_product(g, h).unwrap();
            assert_eq!(
                avg_order(&product).unwrap(),
                avg_order(g).unwrap() * avg_order(h).unwrap(),
                "{gn} x {hn}"
            );
            pairs += 1;
        }
    }
    assert!(pairs >= 100, "only {pairs} coprime pairs");
}

#[test]
fn multiplicativity_fails_for_c2_c2() {
    let c2 = cyclic(2).unwrap();
    let product = avg_order(&direct_product(&c2, &c2).unwrap()).unwrap();
    let naive = avg_order(&c2).unwrap() * avg_order(&c2).unwrap();
    assert_eq!(product, Rational::frac(7, 4));
    assert_eq!(naive, Rational::frac(9, 4));
    assert_ne!(product, naive);
}

fn partitions(k: u32, max: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=k.min(max)).rev() {
        for mut rest in partitions(k - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn prime_power_floor_holds_for_abelian_p_groups() {
    let mut checked = 0;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19] {
        let mut k = 1;
        while p.pow(k) <= 512 {
            for parts in partitions(k, k) {
                let invariants: Vec<u64> = parts.iter().map(|&e| p.pow(e)).collect();
                let g = abelian(&invariants).unwrap();
                let floor = sylow_factor_lower_bound(p, k).unwrap();
                let avg = avg_order(&g).unwrap();
                assert!(avg >= floor, "{invariants:?}: {avg} < {floor}");
                // Equality exactly for elementary abelian groups.
                assert_eq!(avg == floor, parts.iter().all(|&e| e == 1), "{invariants:?}");
                let report = sylow_factor_check("g", &g).unwrap();
                assert!(!report.verdict.is_violation());
                checked += 1;
            }
            k += 1;
        }
    }
    assert!(checked > 50);
    for g in [dihedral(4).unwrap(), dicyclic(2).unwrap()] {
        assert!(avg_order(&g).unwrap() >= sylow_factor_lower_bound(2, 3).unwrap());
    }
    assert_eq!(avg_order(&dihedral(4).unwrap()).unwrap(), Rational::frac(19, 8));
    assert_eq!(avg_order(&dicyclic(2).unwrap()).unwrap(), Rational::frac(27, 8));
}

#[test]
fn prime_power_floor_rejects_bad_input() {
    assert!(matches!(sylow_factor_lower_bound(4, 2), Err(Error::InvalidInput(_))));
    assert!(matches!(sylow_factor_lower_bound(3, 0), Err(Error::InvalidInput(_))));
    assert_eq!(sylow_factor_lower_bound(2, 2).unwrap(), Rational::frac(7, 4));
}

#[test]
fn nilpotent_exclusion_on_examples() {
    let c6 = lemma22_verify("C6", &cyclic(6).unwrap()).unwrap();
    assert_eq!(c6.lhs, Rational::frac(7, 2));
    assert_eq!(c6.rhs, Rational::frac(7, 2));
    assert!(!c6.verdict.is_violation());
    let d4 = lemma22_verify("D4", &dihedral(4).unwrap()).unwrap();
    assert_eq!(d4.verdict, Verdict::HypothesisNotMet);
    let s3 = lemma22_verify("S3", &symmetric(3).unwrap()).unwrap();
    assert_eq!(s3.verdict, Verdict::HypothesisNotMet);
    for (name, g) in small_groups() {
        let report = lemma22_verify(&name, &g).unwrap();
        assert!(!report.verdict.is_violation(), "{report}");
    }
}

#[test]
fn small_order_weight_check_on_a5() {
    let s = order_spectrum(&alternating(5).unwrap()).unwrap();
    let report = lemma21_check("A5", &s);
    assert_eq!(report.verdict, Verdict::Equality);
    assert_eq!(report.lhs, Rational::integer(144));
    let s6 = order_spectrum(&cyclic(6).unwrap()).unwrap();
    assert_eq!(lemma21_check("C6", &s6).verdict, Verdict::HypothesisNotMet);
}

#[test]
fn admissible_orders_match_parity_argument() {
    let target = Rational::frac(211, 60);
    let mut found = Vec::new();
    for n in 1..1000u64 {
        // 60 psi = 211 n with psi an odd integer.
        let brute = (211 * n) % 60 == 0 && ((211 * n) / 60) % 2 == 1;
        assert_eq!(admissible_order(n), brute, "n = {n}");
        assert_eq!(admissible_order_for(&target, n), brute, "n = {n}");
        if brute {
            found.push(n);
        }
    }
    assert_eq!(found, [60, 180, 300, 420, 540, 660, 780, 900]);
}

#[test]
fn proof_replay_is_consistent() {
    let report = replay_proof();
    assert!(report.is_consistent(), "{:?}", report.mismatches());
    assert_eq!(report.thresholds(), [6, 33, 4, 960]);
    for (id, value) in [
        ("nilpotent.three-primes", "147/10"),
        ("nilpotent.two-primes", "63/10"),
        ("nilpotent.primes-2-3", "49/12"),
        ("case2.1.n2-slope", "223/480"),
        ("case2.2.n3-upper-slope", "11/16"),
        ("case2.2.n3-lower-slope", "31/45"),
        ("case1.kernel.average", "61/15"),
    ] {
        assert_eq!(report.value(id), Some(value), "{id}");
    }
    // The nilpotent constants are products of p - (p - 1)/p^k.
    let f = Rational::frac;
    assert_eq!(f(3, 2) * f(7, 3) * f(21, 5), f(147, 10));
    assert_eq!(f(3, 2) * f(21, 5), f(63, 10));
    assert!(f(7, 3) * f(21, 5) > f(63, 10));
    assert_eq!(f(7, 4) * f(7, 3), f(49, 12));
    assert!(f(3, 2) * f(25, 9) > f(49, 12));
    assert_eq!(Rational::frac(49, 12) - Rational::frac(61, 15), Rational::frac(1, 60));
    assert!(Rational::frac(11, 16) < Rational::frac(31, 45));
}

fn form() -> impl Strategy<Value = LinearForm> {
    (-50i64..50, 1i64..12, -500i64..500, 1i64..12)
        .prop_map(|(a, b, c, d)| LinearForm::new(Rational::frac(a, b), Rational::frac(c, d)))
}

proptest! {
    #[test]
    fn threshold_is_the_last_solution(lhs in form(), rhs in form(), strict in any::<bool>()) {
        let holds = |n: u64| {
            let n = Rational::from(n);
            let (l, r) = (lhs.eval(&n), rhs.eval(&n));
            if strict { l < r } else { l <= r }
        };
        match solve_threshold(&lhs, &rhs, strict) {
            Ok(t) => {
                let t = t.to_u64().unwrap();
                if t > 0 {
                    prop_assert!(holds(t));
                }
                prop_assert!(!holds(t + 1));
                prop_assert!(!holds(t + 1000));
            }
            Err(Error::Unbounded(_)) => prop_assert!(lhs.slope <= rhs.slope),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn prefilter_matches_parity_argument(p in 1i64..400, q in 1i64..400, n in 1u64..5000) {
        let target = Rational::frac(p, q);
        let p: u64 = target.numer().to_string().parse().unwrap();
        let q: u64 = target.denom().to_string().parse().unwrap();
        let brute = (p * n) % q == 0 && ((p * n) / q) % 2 == 1;
        prop_assert_eq!(admissible_order_for(&target, n), brute);
    }
}
