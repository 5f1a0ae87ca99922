use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::rational::ser_rational;
use crate::algebra::{Rational, RationalFunction};
use crate::error::{Error, Result};

/// Planar field `x' = P, y' = Q` with parameter bindings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemDef {
    pub p: RationalFunction,
    pub q: RationalFunction,
    #[serde(serialize_with = "ser_params")]
    pub params: BTreeMap<String, Rational>,
}

fn ser_params<S: serde::Serializer>(m: &BTreeMap<String, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &crate::algebra::rational::render(v))?;
    }
    map.end()
}

impl SystemDef {
    pub fn new(p: RationalFunction, q: RationalFunction) -> Self {
        SystemDef { p, q, params: BTreeMap::new() }
    }

    pub fn with_params(mut self, params: BTreeMap<String, Rational>) -> Self {
        self.params = params;
        self
    }

    pub fn with_param(mut self, name: &str, value: Rational) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    /// Binds `f`'s parameters with this system's values.
    pub fn bind_expr(&self, f: &RationalFunction) -> Result<RationalFunction> {
        if self.params.is_empty() {
            return Ok(f.clone());
        }
        f.bind(&self.params)
    }

    /// `(P, Q)` with every parameter substituted; fails if a name other
    /// than `x`, `y` survives.
    pub fn bound(&self) -> Result<(RationalFunction, RationalFunction)> {
        let p = self.bind_expr(&self.p)?;
        let q = self.bind_expr(&self.q)?;
        for f in [&p, &q] {
            check_xy(f)?;
        }
        Ok((p, q))
    }

    /// Largest total degree of the bound numerators.
    pub fn degree_n(&self) -> Result<u32> {
        let (p, q) = self.bound()?;
        Ok(p.num().total_degree().max(q.num().total_degree()))
    }

    /// Divergence `P_x + Q_y`, unbound.
    pub fn divergence(&self) -> RationalFunction {
        &self.p.differentiate("x") + &self.q.differentiate("y")
    }
}

pub(crate) fn check_xy(f: &RationalFunction) -> Result<()> {
    match f.vars().into_iter().find(|v| v != "x" && v != "y") {
        Some(name) => Err(Error::UnboundParameter(name)),
        None => Ok(()),
    }
}

/// Candidate `(V, s)`; `D = |V|^(1/s)` when `s != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DulacCandidate {
    pub v: RationalFunction,
    #[serde(serialize_with = "ser_rational")]
    pub s: Rational,
}

impl DulacCandidate {
    pub fn new(v: RationalFunction, s: Rational) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(DulacCandidate { v, s })
    }
}

/// `V_x P + V_y Q + s (P_x + Q_y) V`, computed symbolically and then bound
/// with the system's parameters.
pub fn compute_ms(sys: &SystemDef, cand: &DulacCandidate) -> RationalFunction {
    let v = &cand.v;
    let flow = &(&v.differentiate("x") * &sys.p) + &(&v.differentiate("y") * &sys.q);
    let m = &flow + &(&sys.divergence() * v).scale(&cand.s);
    bind_or_keep(sys, m)
}

/// `<grad D, X> + D div X`.
pub fn compute_div_dx(sys: &SystemDef, d: &RationalFunction) -> RationalFunction {
    let flow = &(&d.differentiate("x") * &sys.p) + &(&d.differentiate("y") * &sys.q);
    bind_or_keep(sys, &flow + &(&sys.divergence() * d))
}

// Binding only fails on a vanishing denominator; the unbound expression is
// still exact, so keep it and let the sign layer reject it.
fn bind_or_keep(sys: &SystemDef, f: RationalFunction) -> RationalFunction {
    sys.bind_expr(&f).unwrap_or(f)
}
