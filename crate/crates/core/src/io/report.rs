use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::rational::render;
use crate::algebra::{rat, Polynomial, Rational, RationalFunction, UPoly};
use crate::constructions::{
    kolmogorov_check, lienard_v2, lotka_volterra_dulac, massera_check, mt_recurrence, second_method_derive,
    CascadeOutcome, KolmogorovSpec, LienardSpec,
};
use crate::dulac::{certify_direct, DulacCandidate, Status, SystemDef};
use crate::error::{Error, Result};
use crate::io::parse::parse_constant;
use crate::polar::{certify_polar, radial_to_xy};
use crate::roots::univariate;

use super::problem::{MethodArgs, ProblemSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportStatus {
    Certified,
    Inconclusive,
    Error,
}

impl ReportStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            ReportStatus::Certified => 0,
            ReportStatus::Inconclusive => 2,
            ReportStatus::Error => 1,
        }
    }
}

/// Machine-readable outcome of one problem. `bound` is present exactly
/// when `status` is certified.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub method: String,
    pub params: BTreeMap<String, String>,
    pub status: ReportStatus,
    pub bound: Option<usize>,
    pub payload: Value,
    pub summary: String,
    pub exit_code_hint: i32,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Outcome {
    status: Status,
    bound: Option<usize>,
    payload: Value,
    summary: String,
    curve: Option<RationalFunction>,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("certificate serializes")
}

fn bind(f: &RationalFunction, params: &BTreeMap<String, Rational>) -> Result<RationalFunction> {
    if params.is_empty() {
        Ok(f.clone())
    } else {
        f.bind(params)
    }
}

fn scalar(f: &RationalFunction, params: &BTreeMap<String, Rational>) -> Result<Rational> {
    let b = bind(f, params)?;
    b.constant_value()
        .ok_or_else(|| Error::UnboundParameter(b.vars().into_iter().next().unwrap_or_default()))
}

fn in_x(f: &RationalFunction, params: &BTreeMap<String, Rational>) -> Result<RationalFunction> {
    let b = bind(f, params)?;
    if let Some(name) = b.vars().into_iter().find(|v| v != "x") {
        return Err(Error::UnboundParameter(name));
    }
    Ok(b)
}

fn poly_x(f: &RationalFunction, params: &BTreeMap<String, Rational>) -> Result<Polynomial> {
    let b = in_x(f, params)?;
    b.as_polynomial()
        .cloned()
        .ok_or_else(|| Error::NotPolynomial(b.to_string()))
}

fn upoly_x(f: &RationalFunction, params: &BTreeMap<String, Rational>) -> Result<UPoly> {
    univariate(&poly_x(f, params)?, "x")
}

fn system_of(spec: &ProblemSpec) -> Result<&SystemDef> {
    spec.system
        .as_ref()
        .ok_or_else(|| Error::Schema(format!("method {} needs a system", spec.method)))
}

fn evaluate(spec: &ProblemSpec) -> Result<Outcome> {
    let params = &spec.params;
    match &spec.args {
        MethodArgs::Direct { v, s, region } => {
            let sys = system_of(spec)?;
            let v = sys.bind_expr(v)?;
            let cand = DulacCandidate::new(v.clone(), scalar(s, params)?)?;
            let cert = certify_direct(sys, &cand, region)?;
            Ok(Outcome {
                status: cert.status,
                bound: cert.bound,
                payload: to_value(&cert),
                summary: cert.summary.clone(),
                curve: Some(v),
            })
        }
        MethodArgs::Polar { s, origin_only } => {
            let cert = certify_polar(system_of(spec)?, &scalar(s, params)?, *origin_only)?;
            Ok(Outcome {
                status: cert.status,
                bound: cert.bound,
                payload: to_value(&cert),
                summary: cert.summary.clone(),
                curve: radial_to_xy(&cert.w).map(RationalFunction::from),
            })
        }
        MethodArgs::Lienard { f, g, s, c0, c1, region } => {
            let lspec = LienardSpec {
                f: in_x(f, params)?,
                g: poly_x(g, params)?,
                s: scalar(s, params)?,
                c0: scalar(c0, params)?,
                c1: scalar(c1, params)?,
            };
            let res = lienard_v2(&lspec)?;
            let cand = DulacCandidate::new(res.v.clone(), lspec.s.clone())?;
            let cert = certify_direct(&lspec.system(), &cand, region)?;
            Ok(Outcome {
                status: cert.status,
                bound: cert.bound,
                payload: json!({ "system": lspec.system(), "construction": res, "certificate": cert }),
                summary: cert.summary.clone(),
                curve: Some(res.v),
            })
        }
        MethodArgs::Kolmogorov { g, h, lambda, interval } => {
            let kspec = KolmogorovSpec {
                g0: upoly_x(&g[0], params)?,
                g1: upoly_x(&g[1], params)?,
                h0: upoly_x(&h[0], params)?,
                h1: upoly_x(&h[1], params)?,
                h2: upoly_x(&h[2], params)?,
                lambda: scalar(lambda, params)?,
                interval: interval.clone(),
            };
            let res = kolmogorov_check(&kspec)?;
            Ok(Outcome {
                status: res.status,
                bound: res.bound,
                payload: to_value(&res),
                summary: res.summary.clone(),
                curve: None,
            })
        }
        MethodArgs::Massera { f, g, interval } => {
            let res = massera_check(&poly_x(f, params)?, &poly_x(g, params)?, interval)?;
            Ok(Outcome {
                status: res.status,
                bound: res.bound,
                payload: to_value(&res),
                summary: res.summary.clone(),
                curve: Some(res.construction.v.clone()),
            })
        }
        MethodArgs::LotkaVolterra { coeffs } => {
            let c: Vec<Rational> = coeffs.iter().map(|e| scalar(e, params)).collect::<Result<_>>()?;
            let out = lotka_volterra_dulac(&c[0], &c[1], &c[2], &c[3], &c[4], &c[5]);
            let summary = match &out {
                crate::constructions::LotkaVolterraOutcome::Solved { note, .. }
                | crate::constructions::LotkaVolterraOutcome::Degenerate { note } => note.clone(),
            };
            Ok(Outcome {
                status: Status::Certified,
                bound: Some(out.bound()),
                payload: to_value(&out),
                summary,
                curve: None,
            })
        }
        MethodArgs::MtRecurrence { s, n, degree_cap, region } => {
            let sys = system_of(spec)?;
            let s = scalar(s, params)?;
            match mt_recurrence(sys, &s, *n, *degree_cap)? {
                CascadeOutcome::Found(res) => {
                    let cert = certify_direct(sys, &DulacCandidate::new(res.v.clone(), s)?, region)?;
                    Ok(Outcome {
                        status: cert.status,
                        bound: cert.bound,
                        payload: json!({ "construction": res, "certificate": cert }),
                        summary: cert.summary.clone(),
                        curve: Some(res.v),
                    })
                }
                CascadeOutcome::NotFound(why) => Ok(Outcome {
                    status: Status::Inconclusive,
                    bound: None,
                    payload: json!({ "not_found": why }),
                    summary: format!("{why}; no bound"),
                    curve: None,
                }),
            }
        }
        MethodArgs::SecondMethod { h, v2, region } => {
            let hs: Vec<UPoly> = h.iter().map(|e| upoly_x(e, params)).collect::<Result<_>>()?;
            let res = second_method_derive(&hs[0], &hs[1], &hs[2], &upoly_x(v2, params)?);
            let v = RationalFunction::from(res.v.clone());
            if !res.residual.is_zero() {
                return Ok(Outcome {
                    status: Status::Inconclusive,
                    bound: None,
                    payload: json!({ "construction": res }),
                    summary: format!(
                        "v2 does not solve the linear equation (residual {}); M depends on y; no bound",
                        res.residual.render("x")
                    ),
                    curve: Some(v),
                });
            }
            let y = Polynomial::var("y");
            let q = [&hs[0], &hs[1], &hs[2], &UPoly::constant(rat(1, 1))]
                .iter()
                .enumerate()
                .fold(Polynomial::zero(), |acc, (k, c)| &acc + &(&c.to_polynomial("x") * &y.pow(k as u32)));
            let sys = SystemDef::new(RationalFunction::var("y"), RationalFunction::from(q));
            let cert = certify_direct(&sys, &DulacCandidate::new(v.clone(), res.s.clone())?, region)?;
            Ok(Outcome {
                status: cert.status,
                bound: cert.bound,
                payload: json!({ "system": sys, "construction": res, "certificate": cert }),
                summary: cert.summary.clone(),
                curve: Some(v),
            })
        }
    }
}

/// Runs the method of `spec` and wraps the result. Module errors become a
/// report with status `error`.
pub fn run_certificate(spec: &ProblemSpec) -> Report {
    let (status, bound, payload, summary) = match evaluate(spec) {
        Ok(o) => match (o.status, o.bound) {
            (Status::Certified, Some(b)) => (ReportStatus::Certified, Some(b), o.payload, o.summary),
            _ => (ReportStatus::Inconclusive, None, o.payload, o.summary),
        },
        Err(e) => (ReportStatus::Error, None, json!({ "error": e.to_string() }), format!("error: {e}")),
    };
    Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        method: spec.method.to_string(),
        params: spec.params.iter().map(|(k, v)| (k.clone(), render(v))).collect(),
        status,
        bound,
        payload,
        summary,
        exit_code_hint: status.exit_code(),
    }
}

/// The curve `{V = 0}` of the candidate the method uses, parameters bound.
pub fn candidate_curve(spec: &ProblemSpec) -> Result<RationalFunction> {
    evaluate(spec)?
        .curve
        .ok_or_else(|| Error::Schema(format!("method {} has no curve to sample", spec.method)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub param: String,
    pub value: String,
    pub report: Report,
}

/// `name=lo:hi:step` into the values `lo, lo + step, ...` not above `hi`.
pub fn parse_sweep(text: &str) -> Result<(String, Vec<Rational>)> {
    let bad = || Error::Schema(format!("sweep `{text}` is not of the form name=lo:hi:step"));
    let (name, range) = text.split_once('=').ok_or_else(bad)?;
    let parts: Vec<&str> = range.split(':').collect();
    let [lo, hi, step] = parts.as_slice() else {
        return Err(bad());
    };
    let (lo, hi, step) = (parse_constant(lo)?, parse_constant(hi)?, parse_constant(step)?);
    if step <= Rational::from_integer(0.into()) || hi < lo {
        return Err(Error::Schema(format!("sweep `{text}` needs step > 0 and lo <= hi")));
    }
    let count = ((&hi - &lo) / &step).floor().to_integer();
    if count > 100_000.into() {
        return Err(Error::Schema(format!("sweep `{text}` has more than 100000 points")));
    }
    let mut values = Vec::new();
    let mut t = lo;
    while t <= hi {
        values.push(t.clone());
        t += &step;
    }
    Ok((name.trim().to_string(), values))
}

/// One report per value of `param`; instances run independently.
pub fn run_sweep(spec: &ProblemSpec, param: &str, values: &[Rational]) -> Result<Vec<SweepPoint>> {
    if !spec.params.contains_key(param) {
        return Err(Error::UnknownIdentifier(param.to_string()));
    }
    Ok(crate::par::map(values, |v| SweepPoint {
        param: param.to_string(),
        value: render(v),
        report: run_certificate(&spec.with_param(param, v.clone())),
    }))
}

/// Exit code of a sweep: error if any instance failed, else inconclusive if
/// any was, else certified.
pub fn sweep_exit_code(points: &[SweepPoint]) -> i32 {
    let has = |s| points.iter().any(|p| p.report.status == s);
    if has(ReportStatus::Error) {
        1
    } else if has(ReportStatus::Inconclusive) {
        2
    } else {
        0
    }
}
