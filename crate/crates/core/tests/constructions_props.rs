mod common;

use common::kolmogorov::{divergence, instance, z, Recipe};
use common::{nonzero_rat, small_rat, upoly};
use cyclecert::algebra::rational::to_f64;
use cyclecert::algebra::{int, rat, Polynomial, Rational, RationalFunction, UPoly};
use cyclecert::constructions::{
    kolmogorov_check, lienard_v2, massera_check, mt_recurrence, s_lambda, t_lambda, CascadeOutcome, LienardSpec,
};
use cyclecert::dulac::{compute_ms, DulacCandidate, Status};
use cyclecert::roots::{certify_sign, IntervalQ, SignMode, Verdict};
use proptest::prelude::*;

fn lift(p: &UPoly) -> RationalFunction {
    RationalFunction::from(p.to_polynomial("x"))
}

fn c(q: &Rational) -> RationalFunction {
    RationalFunction::constant(q.clone())
}

/// `M` of the quadratic Lienard candidate, written out term by term.
fn lienard_m(f: &UPoly, g: &UPoly, s: &Rational, c0: &Rational, c1: &Rational) -> RationalFunction {
    let (ff, fp, gg) = (lift(f), lift(&f.derivative()), lift(g));
    let big_g = lift(&g.integral());
    let one = int(1);
    let t1 = &(&(&ff * &ff) * &fp) * &c(&(-(s * (s + &one) * (s + int(2))) / int(2)));
    let t2 = &(&ff * &fp) * &c(&(-(s * (s + &one)) * c1));
    let t3 = &(&gg * &ff) * &c(&(-(s + int(2))));
    let t4 = &(&fp * &big_g) * &c(&(-(s * int(2))));
    let t5 = &fp * &c(&(-(s * c0)));
    let t6 = &gg * &c(&(-c1.clone()));
    &(&(&(&(&t1 + &t2) + &t3) + &t4) + &t5) + &t6
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lienard_candidate_is_consistent(
        f in upoly(3, 3), g in upoly(3, 3), s in small_rat(), c0 in small_rat(), c1 in small_rat(),
    ) {
        let spec = LienardSpec { f: lift(&f), g: g.to_polynomial("x"), s: s.clone(), c0: c0.clone(), c1: c1.clone() };
        let res = lienard_v2(&spec).unwrap();
        let direct = compute_ms(&spec.system(), &DulacCandidate { v: res.v.clone(), s: s.clone() });
        prop_assert_eq!(&res.m, &direct);
        prop_assert_eq!(res.cofactor, RationalFunction::one());
        prop_assert!(!res.m.vars().contains("y"));
        prop_assert_eq!(res.m, lienard_m(&f, &g, &s, &c0, &c1));
    }

    #[test]
    fn cascade_agrees_with_lienard(f in upoly(2, 3), g in upoly(2, 3), s in small_rat()) {
        let spec = LienardSpec::new(lift(&f), g.to_polynomial("x"), s.clone());
        let cap = (2 * f.degree()).max(g.degree() + 1) as u32 + 1;
        let out = mt_recurrence(&spec.system(), &s, 2, cap).unwrap();
        let CascadeOutcome::Found(found) = out else {
            return Err(TestCaseError::fail("a quadratic candidate always exists"));
        };
        // the cascade zeroes the free constants; read c1 and c0 back off
        let v = found.v.as_polynomial().unwrap();
        let f0 = f.coeff(0);
        let c1 = v.coeff_in("y", 1).constant_term() - &s * &f0;
        let shift = &(&s * (&s + int(1))) / int(2) * &f0 * &f0 + &c1 * &s * &f0;
        let c0 = v.coeff_in("y", 0).constant_term() - shift;
        let expected = lienard_v2(&LienardSpec { c0, c1, ..spec }).unwrap();
        prop_assert_eq!(found.v, expected.v);
        prop_assert_eq!(found.m, expected.m);
    }

    #[test]
    fn massera_hypotheses_imply_a_bound(a in 1i64..=6, b1 in 0i64..=4, b2 in 0i64..=4, b3 in 0i64..=2) {
        prop_assume!(b1 + b2 + b3 > 0);
        // f(0) < 0 and x f' > 0 away from 0
        let f = UPoly::from_i64(&[-a, 0, b1, 0, b2, 0, b3]);
        let xfp = &UPoly::x() * &f.derivative();
        let pos = certify_sign(&xfp, &IntervalQ::real_line(), SignMode::ZeroMeasure);
        prop_assert_eq!(pos.verdict, Verdict::NonNegativeZeroMeasure);
        let r = massera_check(&f.to_polynomial("x"), &Polynomial::var("x"), &IntervalQ::real_line()).unwrap();
        prop_assert_eq!(r.status, Status::Certified);
        prop_assert_eq!(r.bound, Some(1));
    }

    #[test]
    fn kolmogorov_alternate_form(
        g0 in upoly(3, 4), g1 in upoly(2, 4), h0 in upoly(3, 4), h1 in upoly(2, 4), h2 in upoly(2, 4),
        lambda in small_rat(),
    ) {
        prop_assume!(!g1.is_zero());
        let spec = cyclecert::constructions::KolmogorovSpec {
            g0: g0.clone(), g1: g1.clone(), h0: h0.clone(), h1: h1.clone(), h2: h2.clone(),
            lambda: lambda.clone(), interval: IntervalQ::positive(),
        };
        let (rg0, rg1, rh0, rh1) = (lift(&g0), lift(&g1), lift(&h0), lift(&h1));
        let x = RationalFunction::var("x");
        let ratio = rg0.checked_div(&rg1).unwrap().differentiate("x");
        let inner = &(&(&x * &ratio) + &(&rh0.checked_div(&rg1).unwrap() * &c(&lambda)))
            - &(&(&rg0 * &rh1).checked_div(&(&rg1 * &rg1)).unwrap() * &c(&(&lambda + int(1))));
        prop_assert_eq!(lift(&s_lambda(&spec)), &(&rg1 * &rg1) * &inner);
        prop_assert_eq!(t_lambda(&spec), (&h2 * &g1).scale(&(&lambda + int(2))));
    }
}

fn recipe() -> impl Strategy<Value = Recipe> {
    (
        nonzero_rat().prop_filter("lambda away from -2", |l| *l != int(-2)),
        nonzero_rat(),
        prop::collection::vec(-3i64..=3, 1..=3),
        prop::collection::vec(-3i64..=3, 1..=2),
        (1i64..=4, 0i64..=3, prop::bool::ANY),
    )
        .prop_map(|(lambda, g1, g0, h1, (k0, k2, neg))| Recipe {
            lambda,
            g1,
            g0,
            h1,
            k0: rat(k0, 2),
            k2: int(k2),
            sigma: if neg { -1 } else { 1 },
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn kolmogorov_divergence_matches_certificate(r in recipe(), pts in prop::collection::vec((0.0f64..1.0, 0.05f64..4.0), 20)) {
        let spec = instance(&r);
        let res = kolmogorov_check(&spec).unwrap();
        prop_assert_eq!(res.status, Status::Certified);
        let sign = res.s_certificate.verdict.sign() as f64;
        prop_assert_eq!(sign, r.sigma as f64);
        let lambda = to_f64(&spec.lambda);
        for (u, y) in pts {
            let x = 0.5 + 2.5 * (0.02 + 0.96 * u);
            let div = divergence(&spec, x, y);
            prop_assert!(sign * div > -1e-6, "div = {div} at ({x}, {y})");
            // the closed form (Z / g1) (S + T y^2) y^(lambda - 1)
            let closed = z(&spec, x) / spec.g1.eval_f64(x)
                * (res.s_poly.eval_f64(x) + res.t_poly.eval_f64(x) * y * y)
                * y.powf(lambda - 1.0);
            prop_assert!((div - closed).abs() <= 1e-5 * (1.0 + closed.abs()), "{div} vs {closed}");
        }
    }
}
