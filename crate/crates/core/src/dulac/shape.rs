//! Sign certification for functions of two variables that reduce to
//! univariate questions.

use serde::Serialize;

use super::system::check_xy;
use crate::algebra::{Polynomial, RationalFunction, UPoly};
use crate::error::{Error, Result};
use crate::roots::{certify_sign_rational, sturm_count, univariate, IntervalQ, SignCertificate, SignMode, Verdict};
use crate::topology::{radial_profile, Region};

/// Most terms accepted in a power-sum decomposition.
pub const MAX_TERMS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKind {
    /// `M` vanishes identically.
    Zero,
    /// A function of `x` alone.
    UnivariateX,
    UnivariateY,
    /// A function of `x^2 + y^2`, certified as `w(r)` on `r >= 0`.
    Radial,
    /// `sum_j c_j(x) y^j`, each term one-signed on the region.
    PowerSumInY,
    PowerSumInX,
}

/// What `{M = 0}` can look like inside the region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroSet {
    Empty,
    /// Finitely many points and axis-parallel lines; never contains a
    /// closed orbit.
    LinesAndPoints,
    /// Contains circles centred at the origin.
    ContainsCircles,
    Everything,
}

impl ZeroSet {
    /// No closed curve fits inside the zero set.
    pub fn excludes_closed_curves(self) -> bool {
        matches!(self, ZeroSet::Empty | ZeroSet::LinesAndPoints)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignTerm {
    /// The even or sign-fixed monomial multiplying the certified factor.
    pub monomial: String,
    pub certificate: SignCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoVariableSignEvidence {
    pub shape: ShapeKind,
    pub terms: Vec<SignTerm>,
    pub verdict: Verdict,
    pub zero_set: ZeroSet,
}

impl TwoVariableSignEvidence {
    fn zero() -> Self {
        TwoVariableSignEvidence {
            shape: ShapeKind::Zero,
            terms: Vec::new(),
            verdict: Verdict::Indeterminate,
            zero_set: ZeroSet::Everything,
        }
    }
}

/// Certifies the sign of `m` (in `x`, `y` only) on `region`.
///
/// Tries, in order: a function of one coordinate, a radial function, and a
/// sum of at most [`MAX_TERMS`] terms `c_j(x) y^j` (or the mirror image) in
/// which every term has the same certified sign. Returns the first
/// decisive attempt, otherwise the first shape that matched with an
/// `Indeterminate` verdict, otherwise `UnsupportedShape`.
pub fn certify_sign_2d(m: &RationalFunction, region: &Region) -> Result<TwoVariableSignEvidence> {
    check_xy(m)?;
    if m.is_zero() {
        return Ok(TwoVariableSignEvidence::zero());
    }
    let attempts: [fn(&RationalFunction, &Region) -> Result<Option<TwoVariableSignEvidence>>; 5] =
        [one_variable_x, one_variable_y, radial, power_sum_y, power_sum_x];
    let mut fallback = None;
    for attempt in attempts {
        if let Some(ev) = attempt(m, region)? {
            if ev.verdict.is_determinate() {
                return Ok(ev);
            }
            fallback.get_or_insert(ev);
        }
    }
    fallback.ok_or_else(|| {
        Error::UnsupportedShape(format!(
            "M = {m} is not a one-variable, radial, or power-sum shape with at most {MAX_TERMS} terms"
        ))
    })
}

fn one_variable_x(m: &RationalFunction, region: &Region) -> Result<Option<TwoVariableSignEvidence>> {
    one_variable(m, "x", "y", &region.x_extent(), ShapeKind::UnivariateX)
}

fn one_variable_y(m: &RationalFunction, region: &Region) -> Result<Option<TwoVariableSignEvidence>> {
    one_variable(m, "y", "x", &region.y_extent(), ShapeKind::UnivariateY)
}

fn one_variable(
    m: &RationalFunction,
    var: &str,
    other: &str,
    extent: &IntervalQ,
    shape: ShapeKind,
) -> Result<Option<TwoVariableSignEvidence>> {
    if m.num().degree_in(other) > 0 || m.den().degree_in(other) > 0 {
        return Ok(None);
    }
    let num = univariate(m.num(), var)?;
    let den = univariate(m.den(), var)?;
    let cert = certify_sign_rational(&num, &den, extent, SignMode::ZeroMeasure);
    let verdict = cert.verdict;
    let zero_set = if cert.evidence.zeros == 0 { ZeroSet::Empty } else { ZeroSet::LinesAndPoints };
    Ok(Some(TwoVariableSignEvidence {
        shape,
        terms: vec![SignTerm { monomial: "1".into(), certificate: cert }],
        verdict,
        zero_set,
    }))
}

fn radial(m: &RationalFunction, _region: &Region) -> Result<Option<TwoVariableSignEvidence>> {
    let as_rf = |p: &Polynomial| RationalFunction::from(p.clone());
    let (Some(wn), Some(wd)) = (radial_profile(&as_rf(m.num())), radial_profile(&as_rf(m.den()))) else {
        return Ok(None);
    };
    // a sign on all of r >= 0 holds on every region
    let cert = certify_sign_rational(&wn, &wd, &IntervalQ::nonnegative(), SignMode::ZeroMeasure);
    let verdict = cert.verdict;
    let circles = sturm_count(&wn, &IntervalQ::positive());
    let zero_set = if circles > 0 {
        ZeroSet::ContainsCircles
    } else if cert.evidence.zeros > 0 {
        ZeroSet::LinesAndPoints
    } else {
        ZeroSet::Empty
    };
    Ok(Some(TwoVariableSignEvidence {
        shape: ShapeKind::Radial,
        terms: vec![SignTerm { monomial: "1".into(), certificate: cert }],
        verdict,
        zero_set,
    }))
}

fn power_sum_y(m: &RationalFunction, region: &Region) -> Result<Option<TwoVariableSignEvidence>> {
    power_sum(m, "x", "y", &region.x_extent(), &region.y_extent(), ShapeKind::PowerSumInY)
}

fn power_sum_x(m: &RationalFunction, region: &Region) -> Result<Option<TwoVariableSignEvidence>> {
    power_sum(m, "y", "x", &region.y_extent(), &region.x_extent(), ShapeKind::PowerSumInX)
}

/// Sign of `t` on `iv` when `iv` lies on one side of zero.
fn fixed_sign(iv: &IntervalQ) -> Option<i8> {
    if iv == &IntervalQ::positive() {
        Some(1)
    } else if iv == &IntervalQ::negative() {
        Some(-1)
    } else {
        None
    }
}

fn power_sum(
    m: &RationalFunction,
    base: &str,
    power: &str,
    base_extent: &IntervalQ,
    power_extent: &IntervalQ,
    shape: ShapeKind,
) -> Result<Option<TwoVariableSignEvidence>> {
    if m.den().degree_in(power) > 0 {
        return Ok(None);
    }
    let coeffs = m.num().coeffs_in(power);
    if coeffs.len() > MAX_TERMS {
        return Ok(None);
    }
    let power_sign = fixed_sign(power_extent);
    if power_sign.is_none() && coeffs.keys().any(|j| j % 2 == 1) {
        return Ok(None);
    }
    let den = univariate(m.den(), base)?;
    let mut terms = Vec::with_capacity(coeffs.len());
    let mut signs = Vec::with_capacity(coeffs.len());
    let mut strict = false;
    for (&j, c) in &coeffs {
        let cu: UPoly = univariate(c, base)?;
        let cert = certify_sign_rational(&cu, &den, base_extent, SignMode::ZeroMeasure);
        let monomial_sign = if j % 2 == 0 { 1 } else { power_sign.unwrap_or(0) };
        signs.push(cert.verdict.sign() * monomial_sign);
        // the monomial vanishes on the axis unless the region avoids it
        if cert.verdict.is_strict() && (j == 0 || power_sign.is_some()) {
            strict = true;
        }
        let monomial = match j {
            0 => "1".to_string(),
            1 => power.to_string(),
            _ => format!("{power}^{j}"),
        };
        terms.push(SignTerm { monomial, certificate: cert });
    }
    let s = signs[0];
    let verdict = if s == 0 || signs.iter().any(|&t| t != s) {
        Verdict::Indeterminate
    } else {
        match (s > 0, strict) {
            (true, true) => Verdict::StrictlyPositive,
            (true, false) => Verdict::NonNegativeZeroMeasure,
            (false, true) => Verdict::StrictlyNegative,
            (false, false) => Verdict::NonPositiveZeroMeasure,
        }
    };
    // common zeros of same-signed terms: lines base = root, or the axis
    let zero_set = match verdict {
        Verdict::Indeterminate => ZeroSet::Everything,
        v if v.is_strict() => ZeroSet::Empty,
        _ => ZeroSet::LinesAndPoints,
    };
    Ok(Some(TwoVariableSignEvidence { shape, terms, verdict, zero_set }))
}
