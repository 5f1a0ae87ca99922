mod common;

use common::{at, poly_xy, rf, small_rat};
use cyclecert::algebra::{Polynomial, RationalFunction};
use cyclecert::io::parse_expression;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_xy(3, 4), b in poly_xy(3, 4), c in poly_xy(3, 4)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn leibniz(a in poly_xy(3, 4), b in poly_xy(3, 4)) {
        for v in ["x", "y"] {
            let lhs = (&a * &b).differentiate(v);
            let rhs = &(&a * &b.differentiate(v)) + &(&b * &a.differentiate(v));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn quotient_rule(a in poly_xy(2, 3), b in poly_xy(2, 3)) {
        let (fa, fb) = (rf(&a), rf(&b));
        if let Ok(q) = fa.checked_div(&fb) {
            // (a/b)' b^2 = a' b - a b'
            let lhs = &q.differentiate("x") * &(&fb * &fb);
            let rhs = &(&fa.differentiate("x") * &fb) - &(&fa * &fb.differentiate("x"));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_xy(3, 4), s in poly_xy(2, 3), x0 in small_rat(), y0 in small_rat()) {
        // substitute x := s(x, y), then evaluate, against evaluating s first
        let subbed = a.compose(&[("x".to_string(), s.clone())].into());
        let s_val = s.eval(&at(&x0, &y0)).unwrap();
        prop_assert_eq!(subbed.eval(&at(&x0, &y0)).unwrap(), a.eval(&at(&s_val, &y0)).unwrap());
        prop_assert_eq!(
            (&a * &s).eval(&at(&x0, &y0)).unwrap(),
            a.eval(&at(&x0, &y0)).unwrap() * s_val
        );
    }

    #[test]
    fn normalization_is_idempotent(a in poly_xy(3, 4), b in poly_xy(2, 3)) {
        if let Ok(f) = RationalFunction::new(a, b) {
            let again = RationalFunction::new(f.num().clone(), f.den().clone()).unwrap();
            prop_assert_eq!(&again, &f);
            prop_assert_eq!(f.den().leading_coefficient(), cyclecert::algebra::rat(1, 1));
        }
    }

    #[test]
    fn render_then_parse(a in poly_xy(4, 5), b in poly_xy(2, 3)) {
        let p = parse_expression(&a.to_string(), &["x", "y"], &[]).unwrap();
        prop_assert_eq!(p, rf(&a));
        if !b.is_zero() {
            let f = RationalFunction::new(a, b).unwrap();
            prop_assert_eq!(parse_expression(&f.to_string(), &["x", "y"], &[]).unwrap(), f);
        }
    }
}

#[test]
fn zero_denominator_is_rejected() {
    assert!(RationalFunction::new(Polynomial::var("x"), Polynomial::zero()).is_err());
}
