//! Polar form of a polynomial field, its radial average, and the
//! bounding-polynomial test for `V = w(r)`.

mod trig;

pub use trig::TrigPoly;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::rational::{render, ser_rational, sign};
use crate::algebra::{int, Polynomial, Rational, UPoly};
use crate::dulac::{BoundKind, Status, SystemDef};
use crate::error::{Error, Result};
use crate::roots::{certify_sign, IntervalQ, SignCertificate, SignMode, Verdict};
use crate::topology::{analyze_radial, CurveTopologyReport};

/// `sum_i c_i(t) r^i` with trigonometric coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolarPoly {
    coeffs: BTreeMap<u32, TrigPoly>,
}

impl PolarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, TrigPoly)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (i, t) in iter {
            out.add_at(i, &t);
        }
        out
    }

    fn add_at(&mut self, i: u32, t: &TrigPoly) {
        let e = self.coeffs.entry(i).or_default();
        *e = &*e + t;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, TrigPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32) -> TrigPoly {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_power(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &PolarPoly) -> PolarPoly {
        let mut out = self.clone();
        for (&i, t) in &other.coeffs {
            out.add_at(i, t);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> PolarPoly {
        PolarPoly::from_coeffs(self.coeffs.iter().map(|(&i, t)| (i, t.scale(c))))
    }

    pub fn mul(&self, other: &PolarPoly) -> PolarPoly {
        let mut out = PolarPoly::zero();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                out.add_at(i + j, &(a * b));
            }
        }
        out
    }

    /// Product with a polynomial in `r` alone.
    pub fn mul_radial(&self, f: &UPoly) -> PolarPoly {
        let f = PolarPoly::from_coeffs(
            f.coeffs().iter().enumerate().map(|(k, c)| (k as u32, TrigPoly::constant(c.clone()))),
        );
        self.mul(&f)
    }

    pub fn d_dr(&self) -> PolarPoly {
        PolarPoly::from_coeffs(
            self.coeffs
                .iter()
                .filter(|(&i, _)| i > 0)
                .map(|(&i, t)| (i - 1, t.scale(&int(i as i64)))),
        )
    }

    pub fn d_dtheta(&self) -> PolarPoly {
        PolarPoly::from_coeffs(self.coeffs.iter().map(|(&i, t)| (i, t.derivative())))
    }

    /// Exact division by `r`; `None` if an `r^0` coefficient is present.
    pub fn div_r(&self) -> Option<PolarPoly> {
        if self.coeffs.contains_key(&0) {
            return None;
        }
        Some(PolarPoly::from_coeffs(self.coeffs.iter().map(|(&i, t)| (i - 1, t.clone()))))
    }

    /// Value at radius `r` and the angle with cosine `c`, sine `s`.
    pub fn eval(&self, r: &Rational, c: &Rational, s: &Rational) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, (&i, t)| {
            acc + t.eval(c, s) * num_traits::pow(r.clone(), i as usize)
        })
    }

    pub fn eval_f64(&self, r: f64, theta: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&i, t)| t.eval_f64(theta) * r.powi(i as i32))
            .sum()
    }
}

impl fmt::Display for PolarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&i, t)| match i {
                0 => format!("({t})"),
                1 => format!("({t})*r"),
                _ => format!("({t})*r^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for PolarPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `cos(t)^i sin(t)^j` as a Fourier series.
fn cos_sin_power(i: u32, j: u32) -> TrigPoly {
    let (c, s) = (TrigPoly::cos(1), TrigPoly::sin(1));
    let mut out = TrigPoly::constant(int(1));
    for _ in 0..i {
        out = &out * &c;
    }
    for _ in 0..j {
        out = &out * &s;
    }
    out
}

fn polar_of(p: &Polynomial) -> PolarPoly {
    PolarPoly::from_coeffs(p.terms().map(|(m, c)| {
        let (i, j) = (m.exponent("x"), m.exponent("y"));
        (i + j, cos_sin_power(i, j).scale(c))
    }))
}

fn bound_polynomials(sys: &SystemDef) -> Result<(Polynomial, Polynomial)> {
    let (p, q) = sys.bound()?;
    let as_poly = |f: &crate::algebra::RationalFunction, name: &str| {
        f.as_polynomial()
            .cloned()
            .ok_or_else(|| Error::NotPolynomial(format!("{name} = {f}")))
    };
    let (p, q) = (as_poly(&p, "P")?, as_poly(&q, "Q")?);
    if !p.constant_term().is_zero() || !q.constant_term().is_zero() {
        return Err(Error::NonzeroAtOrigin);
    }
    Ok((p, q))
}

/// `R = P cos + Q sin` and `Theta = (Q cos - P sin) / r` in polar
/// coordinates.
pub fn to_polar(sys: &SystemDef) -> Result<(PolarPoly, PolarPoly)> {
    let (p, q) = bound_polynomials(sys)?;
    let (pp, qp) = (polar_of(&p), polar_of(&q));
    let cos = PolarPoly::from_coeffs([(0, TrigPoly::cos(1))]);
    let sin = PolarPoly::from_coeffs([(0, TrigPoly::sin(1))]);
    let r = pp.mul(&cos).add(&qp.mul(&sin));
    let theta_r = qp.mul(&cos).add(&pp.mul(&sin).scale(&int(-1)));
    let theta = theta_r.div_r().ok_or(Error::NonzeroAtOrigin)?;
    Ok((r, theta))
}

/// `p(u)` with `p(r^2) = (1 / 2 pi r) * integral of R over a turn`.
pub fn radial_average(r: &PolarPoly) -> Result<UPoly> {
    let mut coeffs = Vec::new();
    for (&i, t) in r.coeffs() {
        let c = t.const_term();
        if c.is_zero() {
            continue;
        }
        if i % 2 == 0 {
            return Err(Error::ParityViolation(i));
        }
        let k = ((i - 1) / 2) as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] = c.clone();
    }
    Ok(UPoly::new(coeffs))
}

/// `w(r) = r^2 p'(r^2)`.
pub fn w_from_p(p: &UPoly) -> UPoly {
    let dp = p.derivative();
    let mut coeffs = vec![Rational::zero(); 2 * dp.coeffs().len() + 1];
    for (k, c) in dp.coeffs().iter().enumerate() {
        coeffs[2 * k + 2] = c.clone();
    }
    UPoly::new(coeffs)
}

/// An even `w(r)` as a polynomial in `x^2 + y^2`; `None` if `w` has an odd
/// power.
pub fn radial_to_xy(w: &UPoly) -> Option<Polynomial> {
    if w.coeffs().iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return None;
    }
    let rho = &(&Polynomial::var("x") * &Polynomial::var("x")) + &(&Polynomial::var("y") * &Polynomial::var("y"));
    let mut out = Polynomial::zero();
    let mut power = Polynomial::one();
    for c in w.coeffs().iter().step_by(2) {
        out = &out + &power.scale(c);
        power = &power * &rho;
    }
    Some(out)
}

/// `w` and `M_s = R w'(r) + s (dR/dr + dTheta/dt + R/r) w(r)`.
pub fn polar_ms(sys: &SystemDef, s: &Rational) -> Result<(UPoly, PolarPoly)> {
    let (r, theta) = to_polar(sys)?;
    let p = radial_average(&r)?;
    let w = w_from_p(&p);
    let r_over_r = r.div_r().ok_or(Error::NonzeroAtOrigin)?;
    let div = r.d_dr().add(&theta.d_dtheta()).add(&r_over_r);
    let m = r.mul_radial(&w.derivative()).add(&div.mul_radial(&w).scale(s));
    Ok((w, m))
}

/// `mu_i` bounding each coefficient of `M` over all angles, and
/// `Phi(r) = sum_i mu_i r^i`.
pub fn mu_bounds(m: &PolarPoly) -> (BTreeMap<u32, Rational>, UPoly) {
    let mu: BTreeMap<u32, Rational> = m.coeffs().iter().map(|(&i, t)| (i, t.amplitude_bound())).collect();
    let deg = mu.keys().next_back().copied().unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (&i, c) in &mu {
        coeffs[i as usize] = c.clone();
    }
    (mu, UPoly::new(coeffs))
}

fn ser_upoly_u<S: serde::Serializer>(p: &UPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.render("u"))
}

fn ser_upoly_r<S: serde::Serializer>(p: &UPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.render("r"))
}

fn ser_mu<S: serde::Serializer>(m: &BTreeMap<u32, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&format!("r^{k}"), &render(v))?;
    }
    map.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarCertificate {
    #[serde(serialize_with = "ser_rational")]
    pub s: Rational,
    #[serde(serialize_with = "ser_upoly_u")]
    pub p: UPoly,
    #[serde(serialize_with = "ser_upoly_r")]
    pub w: UPoly,
    /// Degree of `w`.
    pub d: usize,
    /// Distinct nonnegative roots of `w`.
    pub n_plus: usize,
    pub m_s: PolarPoly,
    #[serde(serialize_with = "ser_mu")]
    pub mu: BTreeMap<u32, Rational>,
    #[serde(serialize_with = "ser_upoly_r")]
    pub phi: UPoly,
    pub phi_sign: SignCertificate,
    pub topology: CurveTopologyReport,
    pub bound: Option<usize>,
    pub bound_kind: Option<BoundKind>,
    pub status: Status,
    pub stability_note: String,
    /// Lower bound hint, only when the caller asserts the origin is the only
    /// critical point. Never checked.
    pub remark: Option<String>,
    pub summary: String,
}

/// Certificate with `V = w(r)`: if `Phi_s < 0` on `r > 0` then there are at
/// most `N+` limit cycles for `s < 0` and none for `s >= 0`, all hyperbolic.
pub fn certify_polar(sys: &SystemDef, s: &Rational, origin_only_critical_point: bool) -> Result<PolarCertificate> {
    let (w, m) = polar_ms(sys, s)?;
    if w.is_zero() {
        return Err(Error::ZeroW);
    }
    let (r, _) = to_polar(sys)?;
    let p = radial_average(&r)?;
    let topology = analyze_radial(&w)?;
    let n_plus = topology.ell_curve;
    let (mu, phi) = mu_bounds(&m);
    let phi_sign = certify_sign(&phi, &IntervalQ::positive(), SignMode::Strict);
    let mut cert = PolarCertificate {
        s: s.clone(),
        p,
        d: w.degree(),
        w: w.clone(),
        n_plus,
        m_s: m,
        mu,
        phi: phi.clone(),
        phi_sign,
        topology,
        bound: None,
        bound_kind: None,
        status: Status::Inconclusive,
        stability_note: "no bound issued; nothing to annotate".into(),
        remark: None,
        summary: String::new(),
    };
    if cert.phi_sign.verdict != Verdict::StrictlyNegative {
        cert.summary = format!(
            "Phi = {} is not certified negative on (0, +inf); no bound",
            phi.render("r")
        );
        return Ok(cert);
    }
    let bound = if sign(s) < 0 { n_plus } else { 0 };
    cert.bound = Some(bound);
    cert.bound_kind = Some(BoundKind::from_count(bound));
    cert.status = Status::Certified;
    cert.stability_note = ring_note(&w, sign(s), bound);
    if origin_only_critical_point && sign(s) < 0 {
        cert.remark = Some(format!(
            "if the origin is the only critical point there are at least {} limit cycles, \
             with alternating stability (informational, not verified)",
            n_plus.saturating_sub(2)
        ));
    }
    cert.summary = format!(
        "Phi = {} < 0 on (0, +inf), N+ = {n_plus}: {}",
        phi.render("r"),
        match bound {
            0 => "no limit cycles".to_string(),
            1 => "at most 1 limit cycle, hyperbolic".to_string(),
            k => format!("at most {k} limit cycles, all hyperbolic"),
        }
    );
    Ok(cert)
}

/// Stability in each ring between consecutive circles of `{w = 0}`: the
/// sign of `D M` is `sign(w) sign(s) sign(M)` with `M < 0`.
fn ring_note(w: &UPoly, s_sign: i8, bound: usize) -> String {
    if bound == 0 {
        return "no periodic orbit; nothing to annotate".into();
    }
    let mut rep = crate::roots::isolate_roots(w);
    let idx = rep.indices_in(&IntervalQ::nonnegative());
    let mut sgn = w.sign_at_pos_inf();
    let mut rings = Vec::new();
    for (pos, &i) in idx.iter().enumerate().rev() {
        let inner = format!("{:.6}", rep.approx(i));
        let outer = match idx.get(pos + 1) {
            Some(&j) => format!("{:.6}", rep.approx(j)),
            None => "inf".into(),
        };
        let d_times_m = -(sgn * s_sign);
        let word = if d_times_m < 0 { "stable" } else { "unstable" };
        rings.push(format!("r in ({inner}, {outer}): {word}"));
        if rep.roots[i].multiplicity % 2 == 1 {
            sgn = -sgn;
        }
    }
    rings.reverse();
    format!(
        "at most one limit cycle per ring, each hyperbolic; stability (sign of D*M): {}",
        rings.join("; ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, RationalFunction};

    fn var(n: &str) -> RationalFunction {
        RationalFunction::var(n)
    }

    #[test]
    fn rotation_and_radial_fields() {
        let (x, y) = (var("x"), var("y"));
        let (r, t) = to_polar(&SystemDef::new(-&y, x.clone())).unwrap();
        assert!(r.is_zero());
        assert_eq!(t, PolarPoly::from_coeffs([(0, TrigPoly::constant(int(1)))]));
        let (r, t) = to_polar(&SystemDef::new(x, y)).unwrap();
        assert_eq!(r, PolarPoly::from_coeffs([(1, TrigPoly::constant(int(1)))]));
        assert!(t.is_zero());
    }

    #[test]
    fn average_of_cos_squared() {
        let c = TrigPoly::cos(1);
        let r = PolarPoly::from_coeffs([(3, &c * &c)]);
        assert_eq!(radial_average(&r).unwrap(), UPoly::new(vec![int(0), rat(1, 2)]));
        assert_eq!(radial_average(&PolarPoly::zero()).unwrap(), UPoly::zero());
        let bad = PolarPoly::from_coeffs([(2, TrigPoly::constant(int(1)))]);
        assert_eq!(radial_average(&bad), Err(Error::ParityViolation(2)));
    }

    #[test]
    fn circular_limit_cycle() {
        // x' = x(1 - x^2 - y^2) - y, y' = y(1 - x^2 - y^2) + x
        let (x, y) = (var("x"), var("y"));
        let g = &RationalFunction::one() - &(&(&x * &x) + &(&y * &y));
        let sys = SystemDef::new(&(&x * &g) - &y, &(&y * &g) + &x);
        let (r, _) = to_polar(&sys).unwrap();
        assert_eq!(radial_average(&r).unwrap(), UPoly::from_i64(&[1, -1]));
        let cert = certify_polar(&sys, &int(-1), false).unwrap();
        assert_eq!(cert.w, UPoly::from_i64(&[0, 0, -1]));
        assert_eq!(cert.n_plus, 1);
        assert_eq!(cert.phi, UPoly::from_i64(&[0, 0, 0, 0, -2]));
        assert_eq!(cert.bound_kind, Some(BoundKind::AtMost(1)));
    }

    #[test]
    fn errors() {
        let (x, y) = (var("x"), var("y"));
        let shifted = SystemDef::new(&x + &RationalFunction::one(), y.clone());
        assert_eq!(to_polar(&shifted).unwrap_err(), Error::NonzeroAtOrigin);
        let rational = SystemDef::new(x.checked_div(&(&y + &RationalFunction::one())).unwrap(), y.clone());
        assert!(matches!(to_polar(&rational), Err(Error::NotPolynomial(_))));
        let rotation = SystemDef::new(-&y, x);
        assert_eq!(certify_polar(&rotation, &int(-1), false).unwrap_err(), Error::ZeroW);
    }

    #[test]
    fn mu_of_single_coefficient() {
        let m = PolarPoly::from_coeffs([(4, &TrigPoly::constant(int(-10)) + &TrigPoly::sin(2).scale(&rat(3, 4)))]);
        let (mu, phi) = mu_bounds(&m);
        assert_eq!(mu[&4], rat(-37, 4));
        assert_eq!(phi.degree(), 4);
    }

    #[test]
    fn even_w_lifts_to_the_plane() {
        let w = UPoly::from_i64(&[0, 0, -3, 0, 2]);
        assert_eq!(radial_to_xy(&w).unwrap().to_string(), "2*x^4 + 4*x^2*y^2 + 2*y^4 - 3*x^2 - 3*y^2");
        assert!(radial_to_xy(&UPoly::x()).is_none());
    }
}
