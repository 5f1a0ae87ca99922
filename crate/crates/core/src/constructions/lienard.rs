use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::linalg::nullspace;
use super::ConstructionResult;
use crate::algebra::rational::ser_rational;
use crate::algebra::{int, rat, Monomial, Polynomial, Rational, RationalFunction, UPoly};
use crate::dulac::{compute_ms, DulacCandidate, SystemDef};
use crate::error::{Error, Result};

/// `x' = y - F(x)`, `y' = -g(x)` with the free constants of the quadratic
/// candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LienardSpec {
    pub f: RationalFunction,
    pub g: Polynomial,
    pub s: Rational,
    pub c0: Rational,
    pub c1: Rational,
}

impl LienardSpec {
    pub fn new(f: RationalFunction, g: Polynomial, s: Rational) -> Self {
        LienardSpec { f, g, s, c0: Rational::zero(), c1: Rational::zero() }
    }

    /// `G(x)`, the antiderivative of `g` vanishing at 0.
    pub fn big_g(&self) -> Result<Polynomial> {
        Ok(crate::roots::univariate(&self.g, "x")?.integral().to_polynomial("x"))
    }

    pub fn system(&self) -> SystemDef {
        let y = RationalFunction::var("y");
        SystemDef::new(&y - &self.f, -&RationalFunction::from(self.g.clone()))
    }
}

/// Quadratic candidate in `y` for a Lienard system:
///
/// `V = s(s+1)/2 F^2 + c1 s F + 2G + c0 + (s F + c1) y + y^2`, with
/// `M = -s(s+1)(s+2)/2 F^2 F' - s(s+1) c1 F F' - (s+2) g F - 2s F' G
///      - s c0 F' - c1 g`, a function of `x` only.
pub fn lienard_v2(spec: &LienardSpec) -> Result<ConstructionResult> {
    for name in spec.f.vars().into_iter().chain(spec.g.vars()) {
        if name != "x" {
            return Err(Error::UnboundParameter(name));
        }
    }
    let (s, c0, c1) = (&spec.s, &spec.c0, &spec.c1);
    let f = &spec.f;
    let fp = f.differentiate("x");
    let g = RationalFunction::from(spec.g.clone());
    let big_g = RationalFunction::from(spec.big_g()?);
    let y = RationalFunction::var("y");
    let k = |q: Rational| RationalFunction::constant(q);

    let s1 = s + int(1);
    let s2 = s + int(2);
    let v0 = &(&(&(f * f).scale(&(s * &s1 / int(2))) + &f.scale(&(c1 * s))) + &big_g.scale(&int(2))) + &k(c0.clone());
    let v1 = &f.scale(s) + &k(c1.clone());
    let v = &(&v0 + &(&v1 * &y)) + &(&y * &y);

    let m = [
        (&(f * f) * &fp).scale(&-(s * &s1 * &s2 / int(2))),
        (f * &fp).scale(&-(s * &s1 * c1)),
        (&g * f).scale(&-s2.clone()),
        (&fp * &big_g).scale(&(int(-2) * s)),
        fp.scale(&-(s * c0)),
        g.scale(&-c1.clone()),
    ]
    .iter()
    .fold(RationalFunction::zero(), |acc, t| &acc + t);

    Ok(ConstructionResult {
        v,
        s: s.clone(),
        m,
        cofactor: RationalFunction::one(),
        notes: format!(
            "quadratic Lienard candidate with c0 = {}, c1 = {}",
            crate::algebra::rational::render(c0),
            crate::algebra::rational::render(c1)
        ),
    })
}

/// Outcome of the cascade for `V = v_0 + v_1 y + ... + v_n y^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CascadeOutcome {
    Found(ConstructionResult),
    NotFound(String),
}

/// Coefficients `(p0, p1, q0, q1, q2)` of `x' = p0 + p1 y`,
/// `y' = q0 + q1 y + q2 y^2`.
fn split_shape(sys: &SystemDef) -> Result<[Polynomial; 5]> {
    let (p, q) = sys.bound()?;
    let (Some(p), Some(q)) = (p.as_polynomial(), q.as_polynomial()) else {
        return Err(Error::WrongShape("P and Q must be polynomials".into()));
    };
    if p.degree_in("y") > 1 || q.degree_in("y") > 2 {
        return Err(Error::WrongShape(
            "need x' = p0(x) + p1(x) y and y' = q0(x) + q1(x) y + q2(x) y^2".into(),
        ));
    }
    let p1 = p.coeff_in("y", 1);
    if p1.is_zero() {
        return Err(Error::WrongShape("coefficient of y in x' vanishes".into()));
    }
    Ok([p.coeff_in("y", 0), p1, q.coeff_in("y", 0), q.coeff_in("y", 1), q.coeff_in("y", 2)])
}

/// Searches polynomial `v_j` of degree at most `degree_cap` making `M_s`
/// independent of `y`.
///
/// `M_s` is linear in `V`, so the requirement that every coefficient of
/// `x^i y^m` with `m >= 1` vanishes is a homogeneous linear system in the
/// unknown coefficients. Unknowns are ordered with the non-constant
/// coefficients of `v_n` first (highest degree first), then those of
/// `v_(n-1)`, down to `v_0`, and the constant terms of `v_n, ..., v_0` last,
/// so constant terms become the free parameters wherever possible. The
/// basis vector for the free parameter of `v_n` is returned, which sets
/// the remaining free constants to zero.
pub fn mt_recurrence(sys: &SystemDef, s: &Rational, n: u32, degree_cap: u32) -> Result<CascadeOutcome> {
    split_shape(sys)?;
    let (p, q) = sys.bound()?;
    let bound = SystemDef::new(p, q);

    let mut columns: Vec<(u32, u32)> = Vec::new();
    for j in (0..=n).rev() {
        for k in (1..=degree_cap).rev() {
            columns.push((j, k));
        }
    }
    for j in (0..=n).rev() {
        columns.push((j, 0));
    }

    let images: Vec<Polynomial> = columns
        .iter()
        .map(|&(j, k)| {
            let basis = Polynomial::term(int(1), Monomial::from_pairs([("x", k), ("y", j)]));
            let cand = DulacCandidate { v: RationalFunction::from(basis), s: s.clone() };
            compute_ms(&bound, &cand)
                .as_polynomial()
                .cloned()
                .expect("polynomial field gives polynomial M")
        })
        .collect();

    let mut equations: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
    for (c, img) in images.iter().enumerate() {
        for (m, coeff) in img.terms() {
            if m.exponent("y") == 0 {
                continue;
            }
            equations
                .entry(m.clone())
                .or_insert_with(|| vec![Rational::zero(); columns.len()])[c] = coeff.clone();
        }
    }
    let basis = nullspace(equations.into_values().collect(), columns.len());
    let in_top = |v: &Vec<Rational>| columns.iter().zip(v).any(|(&(j, _), c)| j == n && !c.is_zero());
    let pick = basis
        .iter()
        .find(|(free, _)| columns[*free].0 == n)
        .or_else(|| basis.iter().find(|(_, v)| in_top(v)));
    let Some((_, vector)) = pick else {
        return Ok(CascadeOutcome::NotFound(format!(
            "no polynomial v_{n} of degree <= {degree_cap} makes M independent of y"
        )));
    };

    let v = columns.iter().zip(vector).fold(Polynomial::zero(), |acc, (&(j, k), c)| {
        &acc + &Polynomial::term(c.clone(), Monomial::from_pairs([("x", k), ("y", j)]))
    });
    let v = RationalFunction::from(v);
    let cand = DulacCandidate { v: v.clone(), s: s.clone() };
    let m = compute_ms(&bound, &cand);
    let free = basis.len();
    Ok(CascadeOutcome::Found(ConstructionResult {
        v,
        s: s.clone(),
        m,
        cofactor: RationalFunction::one(),
        notes: format!("{free}-parameter family of solutions up to degree {degree_cap}; free constants set to 0"),
    }))
}

/// Candidate built from `v2` for `x' = y`, `y' = h0 + h1 y + h2 y^2 + y^3`
/// with `s = -2/3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondMethodResult {
    #[serde(serialize_with = "ser_upoly_x")]
    pub v0: UPoly,
    #[serde(serialize_with = "ser_upoly_x")]
    pub v1: UPoly,
    #[serde(serialize_with = "ser_upoly_x")]
    pub v2: UPoly,
    pub v: Polynomial,
    #[serde(serialize_with = "ser_rational")]
    pub s: Rational,
    /// `M` once the `y` coefficient vanishes.
    #[serde(serialize_with = "ser_upoly_x")]
    pub m2: UPoly,
    /// Coefficient of `y` in `M`; zero exactly when `v2` solves the
    /// third-order linear equation.
    #[serde(serialize_with = "ser_upoly_x")]
    pub residual: UPoly,
}

fn ser_upoly_x<S: serde::Serializer>(p: &UPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.render("x"))
}

/// `v1 = v2' + (2/3) v2 h2`, `v0 = (v1' + (4/3) v2 h1 - (1/3) v1 h2) / 2`
/// kill the `y^3` and `y^2` coefficients of `M`; what is left is
/// `residual * y + v1 h0 - (2/3) h1 v0`.
pub fn second_method_derive(h0: &UPoly, h1: &UPoly, h2: &UPoly, v2: &UPoly) -> SecondMethodResult {
    let c = |n, d| UPoly::constant(rat(n, d));
    let v1 = &v2.derivative() + &(&(&c(2, 3) * v2) * h2);
    let v0 = &(&(&v1.derivative() + &(&(&c(4, 3) * v2) * h1)) - &(&(&c(1, 3) * &v1) * h2)) * &c(1, 2);
    let residual = &(&(&v0.derivative() + &(&(&c(1, 3) * &v1) * h1)) - &(&(&c(4, 3) * h2) * &v0))
        + &(&(&c(2, 1) * v2) * h0);
    let m2 = &(&v1 * h0) - &(&(&c(2, 3) * h1) * &v0);
    let y = Polynomial::var("y");
    let v = &(&v0.to_polynomial("x") + &(&v1.to_polynomial("x") * &y)) + &(&v2.to_polynomial("x") * &(&y * &y));
    SecondMethodResult { v0, v1, v2: v2.clone(), v, s: rat(-2, 3), m2, residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::univariate;

    fn x() -> RationalFunction {
        RationalFunction::var("x")
    }

    fn up(c: &[i64]) -> UPoly {
        UPoly::from_i64(c)
    }

    #[test]
    fn rational_lienard() {
        let one = RationalFunction::one();
        let x2 = &x() * &x();
        let f = (&x() * &(&one - &x2)).checked_div(&(&one + &x2)).unwrap();
        let spec = LienardSpec::new(f, Polynomial::var("x"), int(-1));
        let res = lienard_v2(&spec).unwrap();
        assert_eq!(res.m.to_string(), "(-4*x^4)/(x^4 + 2*x^2 + 1)");
        let direct = compute_ms(&spec.system(), &DulacCandidate { v: res.v.clone(), s: int(-1) });
        assert_eq!(direct, res.m);
    }

    #[test]
    fn linear_center() {
        let spec = LienardSpec::new(RationalFunction::zero(), Polynomial::var("x"), rat(3, 7));
        let res = lienard_v2(&spec).unwrap();
        assert!(res.m.is_zero());
        assert_eq!(res.v.to_string(), "x^2 + y^2");
    }

    #[test]
    fn cubic_friction() {
        let f = &(&(&x() * &x()) * &x()) - &x();
        let spec = LienardSpec::new(f, Polynomial::var("x"), int(-1));
        assert_eq!(lienard_v2(&spec).unwrap().m.to_string(), "2*x^4");
    }

    #[test]
    fn cascade_matches_closed_form() {
        let f = &(&(&x() * &x()) * &x()) - &x();
        let spec = LienardSpec::new(f, Polynomial::var("x"), int(-1));
        let CascadeOutcome::Found(res) = mt_recurrence(&spec.system(), &int(-1), 2, 6).unwrap() else {
            panic!("expected a polynomial solution");
        };
        assert_eq!(res.v, lienard_v2(&spec).unwrap().v);
        assert_eq!(res.m.num().degree_in("y"), 0);
    }

    #[test]
    fn cascade_linear_center() {
        let sys = SystemDef::new(RationalFunction::var("y"), -&x());
        let CascadeOutcome::Found(res) = mt_recurrence(&sys, &rat(5, 2), 2, 4).unwrap() else {
            panic!("expected a solution");
        };
        assert!(res.m.is_zero());
        assert_eq!(res.v.to_string(), "x^2 + y^2");
    }

    #[test]
    fn cascade_without_polynomial_solution() {
        // x' = (1 + x^2) y, y' = -x + y
        let y = RationalFunction::var("y");
        let sys = SystemDef::new(&(&RationalFunction::one() + &(&x() * &x())) * &y, &y - &x());
        let out = mt_recurrence(&sys, &int(-1), 2, 8).unwrap();
        assert!(matches!(out, CascadeOutcome::NotFound(_)));
    }

    #[test]
    fn cascade_rejects_wrong_shape() {
        let y = RationalFunction::var("y");
        let sys = SystemDef::new(&y * &y, -&x());
        assert!(matches!(mt_recurrence(&sys, &int(-1), 2, 4), Err(Error::WrongShape(_))));
    }

    #[test]
    fn second_method_examples() {
        let z = UPoly::zero();
        let r = second_method_derive(&z, &z, &z, &up(&[1]));
        assert!(r.v1.is_zero() && r.v0.is_zero() && r.m2.is_zero() && r.residual.is_zero());
        let r = second_method_derive(&z, &z, &z, &UPoly::x());
        assert_eq!(r.v1, up(&[1]));
        assert!(r.v0.is_zero() && r.residual.is_zero());

        let r = second_method_derive(&up(&[1]), &z, &UPoly::x(), &up(&[1]));
        assert_eq!(r.v1, UPoly::new(vec![int(0), rat(2, 3)]));
        assert_eq!(r.v0, UPoly::new(vec![rat(1, 3), int(0), rat(-1, 9)]));
        assert_eq!(r.m2, UPoly::new(vec![int(0), rat(2, 3)]));
        assert_eq!(r.residual, UPoly::new(vec![int(2), rat(-2, 3), int(0), rat(4, 27)]));
    }

    #[test]
    fn second_method_against_direct_expansion() {
        // M from the candidate equals residual * y + m2
        let (h0, h1, h2, v2) = (up(&[0, -1]), up(&[1, 0, 2]), UPoly::x(), up(&[2, 1]));
        let r = second_method_derive(&h0, &h1, &h2, &v2);
        let y = Polynomial::var("y");
        let q = [&h0, &h1, &h2]
            .iter()
            .enumerate()
            .fold(y.pow(3), |acc, (k, h)| &acc + &(&h.to_polynomial("x") * &y.pow(k as u32)));
        let sys = SystemDef::new(RationalFunction::var("y"), RationalFunction::from(q));
        let m = compute_ms(&sys, &DulacCandidate { v: RationalFunction::from(r.v.clone()), s: r.s.clone() });
        let m = m.as_polynomial().unwrap().clone();
        assert_eq!(univariate(&m.coeff_in("y", 1), "x").unwrap(), r.residual);
        assert_eq!(univariate(&m.coeff_in("y", 0), "x").unwrap(), r.m2);
        assert!(m.coeff_in("y", 2).is_zero() && m.coeff_in("y", 3).is_zero());
    }
}
