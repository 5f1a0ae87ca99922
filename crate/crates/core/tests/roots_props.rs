mod common;

use std::collections::BTreeSet;

use common::{poly_xy, small_rat, upoly};
use cyclecert::algebra::{int, rat, Rational, UPoly};
use cyclecert::roots::{
    certify_sign, discriminant_y_poly, isolate_roots, sturm_count, univariate, Bound, IntervalQ, SignMode, Verdict,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn interval() -> impl Strategy<Value = IntervalQ> {
    (small_rat(), small_rat(), 0u8..6).prop_map(|(a, b, kind)| {
        let (lo, hi) = if a <= b { (a, b + rat(1, 3)) } else { (b, a) };
        match kind {
            0 => IntervalQ::open(lo, hi),
            1 => IntervalQ::closed(lo, hi),
            2 => IntervalQ::new(Bound::Closed(lo), Bound::Open(hi)),
            3 => IntervalQ::new(Bound::Open(lo), Bound::Unbounded),
            4 => IntervalQ::new(Bound::Unbounded, Bound::Closed(hi)),
            _ => IntervalQ::real_line(),
        }
    })
}

fn sample_points(iv: &IntervalQ, rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let (a, b) = match (iv.lo.value(), iv.hi.value()) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        (Some(a), None) => (a.clone(), a + int(50)),
        (None, Some(b)) => (b - int(50), b.clone()),
        (None, None) => (int(-50), int(50)),
    };
    let mut out: Vec<Rational> = (0..n)
        .map(|_| &a + (&b - &a) * rat(rng.gen_range(1..10_000), 10_000))
        .collect();
    for end in [&iv.lo, &iv.hi] {
        if let Bound::Closed(e) = end {
            out.push(e.clone());
        }
    }
    out
}

/// `lc * prod (x - r)^m * (x^2 + c)^k` with distinct rational roots `r`.
fn known_roots() -> impl Strategy<Value = (UPoly, Vec<(Rational, u32)>)> {
    (
        prop::collection::btree_set((-12i64..=12, 1i64..=3), 0..5),
        prop::collection::vec(1u32..=3, 5),
        0u32..=2,
        1i64..=5,
        prop_oneof![Just(-2i64), Just(1), Just(3)],
    )
        .prop_map(|(raw, mults, k, c, lc)| {
            let roots: BTreeSet<Rational> = raw.into_iter().map(|(n, d)| rat(n, d)).collect();
            let roots: Vec<(Rational, u32)> = roots.into_iter().zip(mults).collect();
            let mut p = UPoly::constant(int(lc));
            for (r, m) in &roots {
                p = &p * &(&UPoly::x() - &UPoly::constant(r.clone())).pow(*m);
            }
            p = &p * &UPoly::from_i64(&[c, 0, 1]).pow(k);
            (p, roots)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sturm_matches_constructed_roots((p, roots) in known_roots(), iv in interval()) {
        let expected = roots.iter().filter(|(r, _)| iv.contains(r)).count();
        prop_assert_eq!(sturm_count(&p, &iv), expected);
    }

    #[test]
    fn isolation_keeps_multiplicities((p, roots) in known_roots()) {
        let rep = isolate_roots(&p);
        prop_assert_eq!(rep.total_distinct(), roots.len());
        let total: u32 = rep.roots.iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(total, roots.iter().map(|(_, m)| m).sum::<u32>());
        for iso in &rep.roots {
            let inside: Vec<_> = roots.iter().filter(|(r, _)| iso.interval().contains(r)).collect();
            prop_assert_eq!(inside.len(), 1);
            prop_assert_eq!(inside[0].1, iso.multiplicity);
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sign_certificates_hold_at_samples(p in upoly(6, 6), iv in interval(), strict in any::<bool>(), seed in any::<u64>()) {
        prop_assume!(!p.is_zero());
        let mode = if strict { SignMode::Strict } else { SignMode::ZeroMeasure };
        let cert = certify_sign(&p, &iv, mode);
        if cert.verdict == Verdict::Indeterminate {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in sample_points(&iv, &mut rng, 1000) {
            let s = p.sign_at(&t);
            match cert.verdict {
                Verdict::StrictlyPositive => prop_assert_eq!(s, 1),
                Verdict::StrictlyNegative => prop_assert_eq!(s, -1),
                Verdict::NonNegativeZeroMeasure => prop_assert!(s >= 0),
                Verdict::NonPositiveZeroMeasure => prop_assert!(s <= 0),
                Verdict::Indeterminate => unreachable!(),
            }
        }
    }
}

proptest! {
    #[test]
    fn discriminant_commutes_with_evaluation(a in poly_xy(2, 3), b in poly_xy(2, 3), c in poly_xy(2, 3), x0 in small_rat()) {
        let y = cyclecert::algebra::Polynomial::var("y");
        let a = &a.coeff_in("y", 0) + &cyclecert::algebra::Polynomial::one();
        prop_assume!(!a.is_zero());
        let v = &(&(&a * &y.pow(2)) + &(&b.coeff_in("y", 0) * &y)) + &c.coeff_in("y", 0);
        let disc = discriminant_y_poly(&v).unwrap();
        let bind: std::collections::BTreeMap<String, Rational> = [("x".to_string(), x0.clone())].into();
        let slice = univariate(&v.bind(&bind), "y").unwrap();
        let (a0, b0, c0) = (slice.coeff(2), slice.coeff(1), slice.coeff(0));
        prop_assume!(a0 != int(0));
        prop_assert_eq!(disc.eval(&bind).unwrap(), &b0 * &b0 - int(4) * a0 * c0);
    }
}
