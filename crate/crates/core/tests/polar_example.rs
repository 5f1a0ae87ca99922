//! The three-parameter polar family with two rings.

use cyclecert::algebra::{int, rat, Rational, UPoly};
use cyclecert::dulac::SystemDef;
use cyclecert::io::parse_expression;
use cyclecert::polar::{mu_bounds, polar_ms, PolarPoly, TrigPoly};

fn family(a: &Rational, b: &Rational, c: &Rational) -> SystemDef {
    let parse = |t: &str| parse_expression(t, &["x", "y"], &["a", "b", "c"]).unwrap();
    SystemDef::new(
        parse("x*(1 - (x^2 + y^2))*(2 - (x^2 + y^2)) - y + a*x^2*y + b*x^2*y^2"),
        parse("x + y*(1 - (x^2 + y^2))*(2 - (x^2 + y^2)) + c*x*y^2"),
    )
    .with_param("a", a.clone())
    .with_param("b", b.clone())
    .with_param("c", c.clone())
}

/// The expansion of `M` for `s = -1` written out by hand.
fn expected_m(a: &Rational, b: &Rational, c: &Rational) -> PolarPoly {
    let k = |q: Rational| TrigPoly::constant(q);
    let (sin2, sin4) = (TrigPoly::sin(2), TrigPoly::sin(4));
    let (cos1, cos3, cos5) = (TrigPoly::cos(1), TrigPoly::cos(3), TrigPoly::cos(5));
    let r4 = &(&k(int(-40)) + &(&sin2.scale(&int(6)) - &sin4.scale(&int(3))).scale(a))
        + &(&sin2.scale(&int(6)) + &sin4.scale(&int(3))).scale(c);
    let r5 = &(&cos1.scale(&int(2)) - &cos3.scale(&int(3))) + &cos5;
    let r6 = &(&k(int(12)) + &sin4.scale(a)) - &sin4.scale(c);
    let r7 = &cos5 - &cos3;
    PolarPoly::from_coeffs([
        (4, r4.scale(&rat(1, 4))),
        (5, r5.scale(&(rat(3, 8) * b))),
        (6, r6),
        (7, r7.scale(&-(b / int(2)))),
        (8, k(int(-4))),
    ])
}

#[test]
fn printed_expansion() {
    for (a, b, c) in [(rat(1, 8), rat(1, 15), rat(1, 20)), (int(0), int(0), int(0)), (int(-3), rat(7, 2), int(5))] {
        let (w, m) = polar_ms(&family(&a, &b, &c), &int(-1)).unwrap();
        assert_eq!(w, UPoly::from_i64(&[0, 0, -3, 0, 2]));
        assert_eq!(m, expected_m(&a, &b, &c), "a = {a}, b = {b}, c = {c}");
    }
}

#[test]
fn phi_without_parameters() {
    let (_, m) = polar_ms(&family(&int(0), &int(0), &int(0)), &int(-1)).unwrap();
    assert_eq!(m.coeff(4).const_term(), &int(-10));
    let (_, phi) = mu_bounds(&m);
    assert_eq!(phi, UPoly::from_i64(&[0, 0, 0, 0, -10, 0, 12, 0, -4]));
}

#[test]
fn mu_dominates_sampled_angles() {
    let (_, m) = polar_ms(&family(&rat(1, 8), &rat(1, 15), &rat(1, 20)), &int(-1)).unwrap();
    let (mu, _) = mu_bounds(&m);
    for (i, t) in m.coeffs() {
        let bound = cyclecert::algebra::rational::to_f64(&mu[i]);
        let peak = (0..360)
            .map(|k| t.eval_f64(k as f64 * std::f64::consts::TAU / 360.0))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(peak <= bound + 1e-12, "r^{i}: sampled {peak} above {bound}");
    }
}
