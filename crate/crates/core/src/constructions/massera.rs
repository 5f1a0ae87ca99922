use num_traits::Zero;
use serde::Serialize;

use super::ConstructionResult;
use crate::algebra::{int, Polynomial, RationalFunction};
use crate::dulac::{compute_ms, BoundKind, DulacCandidate, Status, SystemDef};
use crate::error::{Error, Result};
use crate::roots::{certify_sign_rational, isolate_roots, univariate, IntervalQ, SignCertificate, SignMode};
use crate::topology::{analyze_quadratic_curve, CurveTopologyReport, Region};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MasseraResult {
    pub construction: ConstructionResult,
    /// Sign of `f + 2 G (f/g)'` on the interval.
    pub certificate: SignCertificate,
    pub region: Region,
    /// Shape of `{V = 0}` in the strip, for information.
    pub topology: Option<CurveTopologyReport>,
    pub bound: Option<usize>,
    pub bound_kind: Option<BoundKind>,
    pub status: Status,
    pub stability_note: String,
    pub summary: String,
}

fn well_defined_at_zero(f: &RationalFunction, what: &str) -> Result<()> {
    let den = univariate(f.den(), "x")?;
    if den.eval(&int(0)).is_zero() {
        return Err(Error::NotWellDefined(format!("{what} = {f} has a pole at x = 0")));
    }
    Ok(())
}

/// `x' = y`, `y' = -f(x) y - g(x)` on the strip `I x R` with `0` in `I`.
///
/// With `V = y^2 + (2 G f / g) y + 2 G` and `s = -1`,
/// `M = (f + 2 G (f/g)') y^2`. When the factor keeps its sign on `I` and
/// vanishes at most at `x = 0`, at most one periodic orbit lies in the
/// strip, and it is a hyperbolic limit cycle.
pub fn massera_check(f: &Polynomial, g: &Polynomial, interval: &IntervalQ) -> Result<MasseraResult> {
    let gu = univariate(g, "x")?;
    univariate(f, "x")?;
    if gu.is_zero() {
        return Err(Error::GOriginViolation("g vanishes identically".into()));
    }
    if !interval.contains(&int(0)) {
        return Err(Error::GOriginViolation("the interval must contain 0".into()));
    }
    if !gu.eval(&int(0)).is_zero() {
        return Err(Error::GOriginViolation(format!("g(0) = {} is not zero", gu.eval(&int(0)))));
    }
    let mut rep = isolate_roots(&gu);
    if rep.indices_in(interval).len() != 1 {
        return Err(Error::GOriginViolation(format!("g = {g} vanishes away from 0 in {interval}")));
    }

    let big_g = RationalFunction::from(gu.integral().to_polynomial("x"));
    let (fr, gr) = (RationalFunction::from(f.clone()), RationalFunction::from(g.clone()));
    let f_over_g = fr.checked_div(&gr)?;
    let linear = (&(&big_g * &fr).scale(&int(2))).checked_div(&gr)?;
    well_defined_at_zero(&linear, "2 G f / g")?;
    let correction = &f_over_g.differentiate("x") * &big_g;
    well_defined_at_zero(&correction, "(f/g)' G")?;
    let factor = &fr + &correction.scale(&int(2));

    let y = RationalFunction::var("y");
    let v = &(&(&y * &y) + &(&linear * &y)) + &big_g.scale(&int(2));
    let sys = SystemDef::new(y.clone(), &-&(&fr * &y) - &gr);
    let m = compute_ms(&sys, &DulacCandidate { v: v.clone(), s: int(-1) });
    debug_assert_eq!(m, &factor * &(&y * &y));

    let num = univariate(factor.num(), "x")?;
    let den = univariate(factor.den(), "x")?;
    let certificate = certify_sign_rational(&num, &den, interval, SignMode::ZeroMeasure);
    let only_origin = if num.is_zero() {
        false
    } else {
        let mut zr = isolate_roots(&num);
        zr.indices_in(interval).iter().all(|&i| zr.compare(i, &int(0)).is_eq())
    };
    let region = if interval == &IntervalQ::real_line() {
        Region::Plane
    } else {
        Region::Strip(interval.clone())
    };
    let topology = analyze_quadratic_curve(&v, &region).ok();
    let certified = certificate.verdict.is_determinate() && only_origin;

    let construction = ConstructionResult {
        v,
        s: int(-1),
        m,
        cofactor: &y * &y,
        notes: format!("M = ({factor}) * y^2"),
    };
    let (bound, bound_kind, status, stability_note, summary) = if certified {
        // V > 0 for large |y|, s < 0: the sign of D M is minus that of M
        let word = if certificate.verdict.sign() > 0 { "stable" } else { "unstable" };
        (
            Some(1),
            Some(BoundKind::AtMost(1)),
            Status::Certified,
            format!("a periodic orbit lying in the strip is a hyperbolic limit cycle, {word} (sign of D*M)"),
            format!("f + 2G(f/g)' = {factor} keeps its sign on {interval}, vanishing only at 0: at most one periodic orbit in the strip"),
        )
    } else {
        (
            None,
            None,
            Status::Inconclusive,
            "no bound issued; nothing to annotate".to_string(),
            format!("f + 2G(f/g)' = {factor} is not certified one-signed on {interval} with its only zero at 0; no bound"),
        )
    };
    Ok(MasseraResult {
        construction,
        certificate,
        region,
        topology,
        bound,
        bound_kind,
        status,
        stability_note,
        summary,
    })
}
