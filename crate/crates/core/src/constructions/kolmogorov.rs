use serde::Serialize;

use crate::algebra::rational::ser_rational;
use crate::algebra::{int, Rational, UPoly};
use crate::dulac::{BoundKind, Status};
use crate::error::{Error, Result};
use crate::roots::{certify_sign, IntervalQ, SignCertificate, SignMode, Verdict};

/// `x' = x (g0 + g1 y)`, `y' = y (h0 + h1 y + h2 y^2)` on `I x (0, inf)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KolmogorovSpec {
    pub g0: UPoly,
    pub g1: UPoly,
    pub h0: UPoly,
    pub h1: UPoly,
    pub h2: UPoly,
    pub lambda: Rational,
    pub interval: IntervalQ,
}

fn ser_upoly_x<S: serde::Serializer>(p: &UPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.render("x"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KolmogorovResult {
    #[serde(serialize_with = "ser_rational")]
    pub lambda: Rational,
    #[serde(serialize_with = "ser_upoly_x")]
    pub s_poly: UPoly,
    #[serde(serialize_with = "ser_upoly_x")]
    pub t_poly: UPoly,
    /// Sign of `S T` on the interval.
    pub certificate: SignCertificate,
    /// Signs of `S` and `T` on their own.
    pub s_certificate: SignCertificate,
    pub t_certificate: SignCertificate,
    pub bound: Option<usize>,
    pub bound_kind: Option<BoundKind>,
    pub status: Status,
    pub summary: String,
}

/// `S = x (g0' g1 - g0 g1') + lambda h0 g1 - (1 + lambda) g0 h1`.
pub fn s_lambda(spec: &KolmogorovSpec) -> UPoly {
    let KolmogorovSpec { g0, g1, h0, h1, lambda, .. } = spec;
    let wronskian = &(&g0.derivative() * g1) - &(g0 * &g1.derivative());
    let first = &UPoly::x() * &wronskian;
    let second = (h0 * g1).scale(lambda);
    let third = (g0 * h1).scale(&(lambda + int(1)));
    &(&first + &second) - &third
}

/// `T = (2 + lambda) h2 g1`.
pub fn t_lambda(spec: &KolmogorovSpec) -> UPoly {
    (&spec.h2 * &spec.g1).scale(&(&spec.lambda + int(2)))
}

/// With `D = y^(lambda - 1) Z(x)` the divergence of `D X` is a positive
/// multiple of `S + T y^2` on the strip. Certifies `S T >= 0` with isolated
/// zeros and, because `S` and `T` could change sign together, also that
/// each of them keeps its sign.
pub fn kolmogorov_check(spec: &KolmogorovSpec) -> Result<KolmogorovResult> {
    if spec.g1.is_zero() {
        return Err(Error::ZeroG1);
    }
    let s = s_lambda(spec);
    let t = t_lambda(spec);
    let iv = &spec.interval;
    let certificate = certify_sign(&(&s * &t), iv, SignMode::ZeroMeasure);
    let s_certificate = certify_sign(&s, iv, SignMode::ZeroMeasure);
    let t_certificate = certify_sign(&t, iv, SignMode::ZeroMeasure);
    let product_ok = matches!(
        certificate.verdict,
        Verdict::StrictlyPositive | Verdict::NonNegativeZeroMeasure
    );
    let each_ok = s_certificate.verdict.is_determinate() && t_certificate.verdict.is_determinate();
    let certified = product_ok && each_ok;
    let summary = if certified {
        format!("S*T >= 0 on {iv} with isolated zeros: no periodic orbits in {iv} x (0, +inf)")
    } else if !product_ok {
        format!("S*T is not certified nonnegative with isolated zeros on {iv}; no conclusion")
    } else {
        format!("S*T >= 0 on {iv} but S and T change sign together; no conclusion")
    };
    Ok(KolmogorovResult {
        lambda: spec.lambda.clone(),
        s_poly: s,
        t_poly: t,
        certificate,
        s_certificate,
        t_certificate,
        bound: certified.then_some(0),
        bound_kind: certified.then_some(BoundKind::NoCycles),
        status: if certified { Status::Certified } else { Status::Inconclusive },
        summary,
    })
}
