mod support {
    pub mod mutations;
}

use num_bigint::BigInt;
use proptest::prelude::*;

use ringlock::arith::xgcd;
use ringlock::fppoly::{poly_xgcd_multi, FpPoly};
use ringlock::freering::{bracket, FreePoly};
use ringlock::wedderlab::{group_algebra, saturate_universal_quotient, verify_trace, Budget, SaturationOutcome, Strategy as Draw};

const PRIMES: [u64; 5] = [2, 3, 5, 7, 13];

fn fp_poly() -> impl Strategy<Value = FpPoly> {
    (0..PRIMES.len(), prop::collection::vec(0u64..13, 0..8)).prop_map(|(i, c)| {
        let p = PRIMES[i];
        FpPoly::new(p, c.into_iter().map(|x| x % p).collect())
    })
}

fn poly_pair() -> impl Strategy<Value = (FpPoly, FpPoly)> {
    (0..PRIMES.len(), prop::collection::vec(0u64..13, 0..8), prop::collection::vec(0u64..13, 0..8)).prop_map(
        |(i, a, b)| {
            let p = PRIMES[i];
            (FpPoly::new(p, a.into_iter().map(|x| x % p).collect()), FpPoly::new(p, b.into_iter().map(|x| x % p).collect()))
        },
    )
}

fn free_poly(modulus: u64) -> impl Strategy<Value = FreePoly> {
    let term = (-3i64..4, prop::collection::vec(prop::sample::select(vec!["x", "y"]), 0..4));
    prop::collection::vec(term, 0..4).prop_map(move |ts| {
        ts.into_iter().fold(FreePoly::zero(modulus), |acc, (c, w)| &acc + &FreePoly::word(modulus, &w, c))
    })
}

proptest! {
    #[test]
    fn integer_bezout(a in -10_000i64..10_000, b in -10_000i64..10_000) {
        let (g, s, t) = xgcd(&BigInt::from(a), &BigInt::from(b));
        prop_assert_eq!(&s * a + &t * b, g.clone());
        prop_assert!(g >= BigInt::from(0));
        if a != 0 || b != 0 {
            prop_assert_eq!(BigInt::from(a) % &g, BigInt::from(0));
            prop_assert_eq!(BigInt::from(b) % &g, BigInt::from(0));
        }
    }

    #[test]
    fn polynomial_bezout((a, b) in poly_pair()) {
        let (g, s, t) = a.xgcd(&b);
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
        if !g.is_zero() {
            prop_assert!(g.is_monic());
            prop_assert!(g.divides(&a) && g.divides(&b));
        }
    }

    #[test]
    fn multi_bezout(fs in prop::collection::vec(prop::collection::vec(0u64..3, 1..6), 1..5)) {
        let fs: Vec<FpPoly> = fs.into_iter().map(|c| FpPoly::new(3, c)).collect();
        prop_assume!(fs.iter().any(|f| !f.is_zero()));
        let (g, cs) = poly_xgcd_multi(&fs).unwrap();
        let sum = fs.iter().zip(&cs).fold(FpPoly::zero(3), |acc, (f, c)| &acc + &(c * f));
        prop_assert_eq!(sum, g);
    }

    #[test]
    fn divrem_reconstructs((a, b) in poly_pair()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree() < b.degree() || r.is_zero());
    }

    #[test]
    fn frobenius_reduction_is_idempotent(f in fp_poly(), e in 1u32..3) {
        let q = f.p().pow(e) as usize;
        let once = f.reduce_frobenius(q);
        prop_assert_eq!(once.reduce_frobenius(q), once.clone());
        // same residue mod T^q - T
        let target = FpPoly::frobenius_target(f.p(), q);
        prop_assert!(target.divides(&(&f - &once)));
    }

    #[test]
    fn poly_display_parse_round_trip(f in fp_poly()) {
        prop_assert_eq!(FpPoly::parse(f.p(), &f.to_string()).unwrap(), f);
    }

    #[test]
    fn free_ring_axioms(a in free_poly(0), b in free_poly(0), c in free_poly(0)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &FreePoly::one(0), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn free_ring_normalization_is_idempotent(a in free_poly(6)) {
        let again = FreePoly::parse(6, &a.to_string()).unwrap();
        prop_assert_eq!(again.clone(), a.clone());
        prop_assert_eq!(again.with_modulus(6).unwrap(), a);
    }

    #[test]
    fn saturation_traces_reverify(i in 0usize..6, seed in any::<u64>()) {
        let (p, k, m) = [(2, 2, 2), (2, 3, 2), (3, 1, 2), (7, 1, 2), (7, 1, 4), (13, 1, 3)][i];
        let b = Budget { max_dim: Some(48), seed, ..Budget::default() };
        let a = group_algebra(p, k, m, &b).unwrap();
        if let SaturationOutcome::CommutativeQuotient(t) = saturate_universal_quotient(&a, p.pow(k), Draw::RandomOnly, &b) {
            prop_assert!(verify_trace(&t).is_ok(), "{:?}", verify_trace(&t));
            if a.is_commutative() {
                prop_assert!(t.relations.is_empty());
            }
        }
    }
}

#[test]
fn binomial_brackets_up_to_eight() {
    let x = FreePoly::var(0, "x");
    let y = FreePoly::var(0, "y");
    for n in 0..=8usize {
        let lhs = (&x + &y).pow(n as u32);
        let rhs = (0..=n).fold(FreePoly::zero(0), |acc, i| &acc + &bracket(i, n - i, ("x", "y")));
        assert_eq!(lhs, rhs, "n = {n}");
    }
}

#[test]
fn mutation_corpus_is_fully_killed() {
    let corpus = support::mutations::corpus();
    assert_eq!(corpus.len(), support::mutations::CORPUS_SIZE);
    let survivors = support::mutations::survivors();
    assert!(survivors.is_empty(), "surviving mutations: {survivors:?}");
}
