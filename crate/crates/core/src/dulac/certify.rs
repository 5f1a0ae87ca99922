use serde::Serialize;

use super::shape::{certify_sign_2d, TwoVariableSignEvidence};
use super::system::{check_xy, compute_ms, DulacCandidate, SystemDef};
use crate::algebra::rational::sign;
use crate::algebra::{RationalFunction, UPoly};
use crate::error::Result;
use crate::roots::{isolate_roots, univariate, IntervalQ, Verdict};
use crate::topology::{analyze_curve, radial_profile, region_ell, CurveClass, CurveTopologyReport, Region};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    NoCycles,
    AtMost(usize),
}

impl BoundKind {
    pub fn from_count(n: usize) -> Self {
        if n == 0 {
            BoundKind::NoCycles
        } else {
            BoundKind::AtMost(n)
        }
    }
}

/// Periodic orbits contained in `{V = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OnCurveBound {
    /// Closed smooth ovals of `{V = 0}` in the region, when the curve
    /// analysis applies. This is the bound read off the ovals alone.
    pub ovals: Option<usize>,
    /// Bound after noting that such an orbit also lies in `{M = 0}`.
    pub refined: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DulacCertificate {
    pub candidate: DulacCandidate,
    pub region: Region,
    pub m_s: RationalFunction,
    pub sign: TwoVariableSignEvidence,
    pub topology: Option<CurveTopologyReport>,
    pub topology_note: Option<String>,
    /// Limit cycles that do not meet `{V = 0}`.
    pub off_curve_bound: Option<usize>,
    pub on_curve: Option<OnCurveBound>,
    pub bound: Option<usize>,
    pub bound_kind: Option<BoundKind>,
    pub status: Status,
    pub stability_note: String,
    pub summary: String,
}

/// Assembles a certificate for the candidate on `region`.
///
/// With `M_s` one-signed and its zero set too thin to hold a closed curve:
/// no limit cycles when `s >= 0`, and at most `l(W, V)` avoiding `{V = 0}`
/// when `s < 0`. An orbit inside `{V = 0}` has `dV/dt = 0` there, so it
/// lies in `{M_s = 0}` as well and cannot exist. Any failure of these
/// checks yields an inconclusive certificate without a bound.
pub fn certify_direct(sys: &SystemDef, cand: &DulacCandidate, region: &Region) -> Result<DulacCertificate> {
    let (p, q) = sys.bound()?;
    let v = sys.bind_expr(&cand.v)?;
    check_xy(&v)?;
    let cand = DulacCandidate::new(v.clone(), cand.s.clone())?;
    let bound_sys = SystemDef::new(p, q);
    let m = compute_ms(&bound_sys, &cand);
    let sign_ev = certify_sign_2d(&m, region)?;
    let s_sign = sign(&cand.s);

    let topo = analyze_curve(&v, region);
    let mut cert = DulacCertificate {
        candidate: cand.clone(),
        region: region.clone(),
        m_s: m.clone(),
        sign: sign_ev.clone(),
        topology: topo.as_ref().ok().cloned(),
        topology_note: topo.as_ref().err().map(|e| e.to_string()),
        off_curve_bound: None,
        on_curve: None,
        bound: None,
        bound_kind: None,
        status: Status::Inconclusive,
        stability_note: String::new(),
        summary: String::new(),
    };

    if sign_ev.verdict == Verdict::Indeterminate {
        cert.stability_note = "no sign certificate; nothing to annotate".into();
        cert.summary = format!("M = {m} has no certified sign on the {region}; no bound");
        return Ok(cert);
    }
    if !sign_ev.zero_set.excludes_closed_curves() {
        cert.stability_note = "no bound issued; nothing to annotate".into();
        cert.summary = format!(
            "M = {m} keeps its sign but vanishes on circles, which could be periodic orbits; no bound"
        );
        return Ok(cert);
    }

    let off = if s_sign < 0 {
        // topology is mandatory here
        let t = topo?;
        t.ell_curve
    } else {
        region_ell(region)
    };
    let on = OnCurveBound {
        ovals: cert.topology.as_ref().map(|t| t.smooth_ovals),
        refined: 0,
        reason: "an orbit inside {V = 0} lies in {M = 0}, a union of points and lines".into(),
    };
    let total = off + on.refined;
    cert.off_curve_bound = Some(off);
    cert.on_curve = Some(on);
    cert.bound = Some(total);
    cert.bound_kind = Some(BoundKind::from_count(total));
    cert.status = Status::Certified;
    cert.stability_note = stability_note(&v, &cand, sign_ev.verdict.sign(), cert.topology.as_ref(), region, total);
    cert.summary = summary(&m, region, &cand, sign_ev.verdict, off);
    Ok(cert)
}

fn summary(m: &RationalFunction, region: &Region, cand: &DulacCandidate, verdict: Verdict, off: usize) -> String {
    let sign_word = match verdict {
        Verdict::StrictlyPositive => "positive",
        Verdict::StrictlyNegative => "negative",
        Verdict::NonNegativeZeroMeasure => "nonnegative, vanishing only on points and lines,",
        Verdict::NonPositiveZeroMeasure => "nonpositive, vanishing only on points and lines,",
        Verdict::Indeterminate => "indeterminate",
    };
    let s = crate::algebra::rational::render(&cand.s);
    let cycles = match off {
        0 => "no limit cycles".to_string(),
        1 => "at most 1 limit cycle".to_string(),
        k => format!("at most {k} limit cycles"),
    };
    format!("M_s = {m} (s = {s}) is {sign_word} on the {region}: {cycles}")
}

/// Sign of `V` in each complementary component that has a hole, in order
/// from the innermost. Empty when the curve class is unknown.
fn holed_component_signs(v: &RationalFunction, topo: &CurveTopologyReport, region: &Region) -> Vec<i8> {
    match topo.curve_class {
        CurveClass::QuadraticInY => {
            // all holes sit in the unbounded component, where V has the sign
            // of its y^2 coefficient
            let lead = v.num().coeff_in("y", 2);
            let sample = region.x_extent().sample_point();
            let (Ok(l), Ok(d)) = (univariate(&lead, "x"), univariate(v.den(), "x")) else {
                return Vec::new();
            };
            vec![l.sign_at(&sample) * d.sign_at(&sample); topo.ell_curve]
        }
        CurveClass::Radial => {
            let Some(w) = radial_profile(v) else { return Vec::new() };
            radial_annulus_signs(&w)
        }
        CurveClass::Unsupported => Vec::new(),
    }
}

/// Sign of `w` just outside each nonnegative root, innermost first.
fn radial_annulus_signs(w: &UPoly) -> Vec<i8> {
    let mut rep = isolate_roots(w);
    let idx = rep.indices_in(&IntervalQ::nonnegative());
    let mut s = w.sign_at_pos_inf();
    let mut out = Vec::with_capacity(idx.len());
    for &i in idx.iter().rev() {
        out.push(s);
        if rep.roots[i].multiplicity % 2 == 1 {
            s = -s;
        }
    }
    out.reverse();
    out
}

fn stability_note(
    v: &RationalFunction,
    cand: &DulacCandidate,
    m_sign: i8,
    topo: Option<&CurveTopologyReport>,
    region: &Region,
    total: usize,
) -> String {
    if total == 0 {
        return "no periodic orbit in the region; nothing to annotate".into();
    }
    let Some(topo) = topo else {
        return "any limit cycle is hyperbolic".into();
    };
    let s_sign = sign(&cand.s);
    let word = |v_sign: i8| {
        // the integral of div X over the cycle has the sign of div(D X)
        if v_sign * s_sign * m_sign < 0 {
            "stable"
        } else {
            "unstable"
        }
    };
    let signs = holed_component_signs(v, topo, region);
    match topo.curve_class {
        CurveClass::QuadraticInY if !signs.is_empty() => format!(
            "a limit cycle avoiding {{V = 0}} lies outside the curve {} = 0, in the unbounded \
             component of its complement; it is hyperbolic and {} (sign of D*M)",
            v.num(),
            word(signs[0])
        ),
        CurveClass::Radial if !signs.is_empty() => {
            let parts: Vec<String> = signs
                .iter()
                .enumerate()
                .map(|(i, &sv)| format!("ring {}: {}", i + 1, word(sv)))
                .collect();
            format!(
                "at most one limit cycle in each ring outside consecutive circles of {{V = 0}}, \
                 each hyperbolic; stability by ring (innermost first, sign of D*M): {}",
                parts.join(", ")
            )
        }
        _ => "any limit cycle avoiding {V = 0} is hyperbolic".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn var(n: &str) -> RationalFunction {
        RationalFunction::var(n)
    }

    fn circle() -> RationalFunction {
        let (x, y) = (var("x"), var("y"));
        &(&(&x * &x) + &(&y * &y)) - &RationalFunction::one()
    }

    fn van_der_pol() -> SystemDef {
        let (x, y) = (var("x"), var("y"));
        let q = &(&-&(&(&x * &x) - &RationalFunction::one()) * &y) - &x;
        SystemDef::new(y, q)
    }

    #[test]
    fn van_der_pol_single_cycle() {
        let cand = DulacCandidate::new(circle(), int(-2)).unwrap();
        let c = certify_direct(&van_der_pol(), &cand, &Region::Plane).unwrap();
        assert_eq!(c.status, Status::Certified);
        assert_eq!(c.bound_kind, Some(BoundKind::AtMost(1)));
        assert_eq!(c.on_curve.as_ref().unwrap().ovals, Some(1));
        assert!(c.stability_note.contains("outside") && c.stability_note.contains("hyperbolic"));
        assert!(c.stability_note.contains(" stable"));
    }

    #[test]
    fn rotation_with_zero_s_is_inconclusive() {
        let sys = SystemDef::new(-&var("y"), var("x"));
        let cand = DulacCandidate::new(circle(), int(0)).unwrap();
        let c = certify_direct(&sys, &cand, &Region::Plane).unwrap();
        assert_eq!(c.status, Status::Inconclusive);
        assert!(c.bound.is_none() && c.bound_kind.is_none());
    }

    #[test]
    fn positive_divergence_rules_out_cycles() {
        // x' = x + y^3, y' = y: divergence 2 with D = 1
        let (x, y) = (var("x"), var("y"));
        let sys = SystemDef::new(&x + &(&(&y * &y) * &y), y.clone());
        let cand = DulacCandidate::new(RationalFunction::one(), int(1)).unwrap();
        let c = certify_direct(&sys, &cand, &Region::Plane).unwrap();
        assert_eq!(c.bound_kind, Some(BoundKind::NoCycles));
    }

    #[test]
    fn circles_in_zero_set_block_the_bound() {
        // x' = -y + x (x^2 + y^2 - 1)^2, y' = x + y (x^2 + y^2 - 1)^2 with
        // V = 1, s = 1: M = div X vanishes on the unit circle, a cycle
        let (x, y) = (var("x"), var("y"));
        let c2 = circle();
        let g = &c2 * &c2;
        let sys = SystemDef::new(&-&y + &(&x * &g), &x + &(&y * &g));
        let cand = DulacCandidate::new(RationalFunction::one(), int(1)).unwrap();
        let c = certify_direct(&sys, &cand, &Region::Plane).unwrap();
        assert_eq!(c.status, Status::Inconclusive);
    }

    #[test]
    fn radial_rings() {
        // w = r^2 (2 r^2 - 3): positive outside sqrt(3/2), negative inside
        let w = UPoly::from_i64(&[0, 0, -3, 0, 2]);
        assert_eq!(radial_annulus_signs(&w), vec![-1, 1]);
        let w = UPoly::from_i64(&[1, 0, 1]);
        assert!(radial_annulus_signs(&w).is_empty());
    }
}
