mod common;

use common::{at, field_at_origin, half_angle, rf, small_rat};
use cyclecert::algebra::{int, rat, Rational, UPoly};
use cyclecert::dulac::{compute_ms, DulacCandidate, SystemDef};
use cyclecert::polar::{mu_bounds, polar_ms, radial_average, radial_to_xy, to_polar, w_from_p};
use proptest::prelude::*;

fn system() -> impl Strategy<Value = SystemDef> {
    (field_at_origin(3, 5), field_at_origin(3, 5)).prop_map(|(p, q)| SystemDef::new(rf(&p), rf(&q)))
}

fn positive_rat() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polar_and_cartesian_agree(
        sys in system(),
        s in small_rat(),
        pts in prop::collection::vec((positive_rat(), small_rat()), 10),
    ) {
        let Ok((w, m)) = polar_ms(&sys, &s) else { return Ok(()); };
        let v = rf(&radial_to_xy(&w).expect("w is even"));
        let cart = compute_ms(&sys, &DulacCandidate { v, s: s.clone() });
        let (_, phi) = mu_bounds(&m);
        for (r, t) in pts {
            let (c, sn) = half_angle(&t);
            let polar = m.eval(&r, &c, &sn);
            prop_assert_eq!(&polar, &cart.eval(&at(&(&r * &c), &(&r * &sn))).unwrap());
            prop_assert!(phi.eval(&r) >= polar);
        }
    }

    #[test]
    fn w_and_degree_accounting(sys in system(), s in small_rat()) {
        let Ok((w, m)) = polar_ms(&sys, &s) else { return Ok(()); };
        let (r, _) = to_polar(&sys).unwrap();
        let p = radial_average(&r).unwrap();
        prop_assert_eq!(&w, &w_from_p(&p));
        // w(r) - r^2 p'(r^2) vanishes
        let r2p = &UPoly::from_i64(&[0, 0, 1]) * &p.derivative().compose_square();
        prop_assert!((&w - &r2p).is_zero());
        if let (Some(top), false) = (m.max_power(), w.is_zero()) {
            let n = sys.degree_n().unwrap() as usize;
            prop_assert!(top as usize <= n + w.degree() - 1);
        }
    }
}

#[test]
fn radial_average_of_linear_focus() {
    // x' = a x - y, y' = x + a y: R = a r
    let parse = |t: &str| cyclecert::io::parse_expression(t, &["x", "y"], &[]).unwrap();
    let sys = SystemDef::new(parse("2*x - y"), parse("x + 2*y"));
    let (r, _) = to_polar(&sys).unwrap();
    assert_eq!(radial_average(&r).unwrap(), UPoly::constant(int(2)));
}
