use cyclecert::algebra::rational::to_f64;
use cyclecert::algebra::{int, rat, Rational, UPoly};
use cyclecert::constructions::KolmogorovSpec;
use cyclecert::roots::IntervalQ;

/// Base point of the quadrature and the strip it lives in.
pub const X0: f64 = 1.0;

pub fn strip() -> IntervalQ {
    IntervalQ::open(rat(1, 2), int(3))
}

/// Instance whose `S` is `sigma (k0 + k2 x^2)` and whose `T` is the constant
/// `sigma`, built by solving for `h0` with constant `g1`.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub lambda: Rational,
    pub g1: Rational,
    pub g0: Vec<i64>,
    pub h1: Vec<i64>,
    pub k0: Rational,
    pub k2: Rational,
    pub sigma: i64,
}

pub fn instance(r: &Recipe) -> KolmogorovSpec {
    let g0 = UPoly::from_i64(&r.g0);
    let g1 = UPoly::constant(r.g1.clone());
    let h1 = UPoly::from_i64(&r.h1);
    let target = UPoly::new(vec![r.k0.clone(), int(0), r.k2.clone()]).scale(&int(r.sigma));
    let x_w = &UPoly::x() * &g0.derivative().scale(&r.g1);
    let rest = (&g0 * &h1).scale(&(&r.lambda + int(1)));
    let h0 = (&(&target - &x_w) + &rest).scale(&(int(1) / (&r.lambda * &r.g1)));
    // (2 + lambda) h2 g1 = sigma
    let h2 = UPoly::constant(int(r.sigma) / ((&r.lambda + int(2)) * &r.g1));
    KolmogorovSpec { g0, g1, h0, h1, h2, lambda: r.lambda.clone(), interval: strip() }
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for k in 1..panels {
        acc += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// `Z(x) = exp(-(lambda + 1) int_X0^x h1 / (s g1) ds) / (x g1)`.
pub fn z(spec: &KolmogorovSpec, x: f64) -> f64 {
    let lambda = to_f64(&spec.lambda);
    let integrand = |s: f64| spec.h1.eval_f64(s) / (s * spec.g1.eval_f64(s));
    let integral = simpson(integrand, X0, x, 400);
    (-(lambda + 1.0) * integral).exp() / (x * spec.g1.eval_f64(x))
}

/// `div(D X)` for `D = y^(lambda - 1) Z(x)`, from the product rule with a
/// central difference for `Z'`.
pub fn divergence(spec: &KolmogorovSpec, x: f64, y: f64) -> f64 {
    let lambda = to_f64(&spec.lambda);
    let e = |p: &UPoly| p.eval_f64(x);
    let d = |p: &UPoly| p.derivative().eval_f64(x);
    let p = x * (e(&spec.g0) + e(&spec.g1) * y);
    let q = y * (e(&spec.h0) + e(&spec.h1) * y + e(&spec.h2) * y * y);
    let px = e(&spec.g0) + e(&spec.g1) * y + x * (d(&spec.g0) + d(&spec.g1) * y);
    let qy = e(&spec.h0) + 2.0 * e(&spec.h1) * y + 3.0 * e(&spec.h2) * y * y;
    let h = 1e-5;
    let zx = z(spec, x);
    let dz = (z(spec, x + h) - z(spec, x - h)) / (2.0 * h);
    let ypow = y.powf(lambda - 1.0);
    let dy = (lambda - 1.0) * y.powf(lambda - 2.0) * zx;
    ypow * dz * p + dy * q + ypow * zx * (px + qy)
}
