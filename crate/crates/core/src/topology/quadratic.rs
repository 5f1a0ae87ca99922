use std::cmp::Ordering;

use num_traits::Zero;

use super::{CurveClass, CurveTopologyReport, Region};
use crate::algebra::{int, Polynomial, Rational, RationalFunction, UPoly};
use crate::error::{Error, Result};
use crate::roots::{
    certify_sign, discriminant_y_poly, isolate_roots, univariate, Bound, IntervalQ, RootReport,
    SignMode, Verdict,
};

/// How the discriminant behaves at one of its real roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RootKind {
    /// Negative on both sides: an isolated point of the curve.
    Isolated,
    /// Band of nonnegative discriminant begins here.
    BandStart,
    /// Band ends here.
    BandEnd,
    /// Positive on both sides: the two branches touch (a node).
    Touch,
}

struct Band {
    start: Option<usize>,
    end: Option<usize>,
    touches: Vec<usize>,
}

/// Strict sign of the gap between root `i` and root `i + 1`.
fn gap_sign(delta: &UPoly, rep: &mut RootReport, i: usize) -> i8 {
    loop {
        let (a, b) = (&rep.roots[i], &rep.roots[i + 1]);
        if a.hi < b.lo {
            let t = (&a.hi + &b.lo) / int(2);
            return delta.sign_at(&t);
        }
        if a.lo != a.hi {
            rep.bisect(i);
        } else {
            rep.bisect(i + 1);
        }
    }
}

/// Whether root `i` lies strictly inside the open interior of `iv`.
fn strictly_inside(rep: &mut RootReport, i: usize, iv: &IntervalQ) -> bool {
    let lo_ok = match iv.lo.value() {
        None => true,
        Some(a) => rep.compare(i, a) == Ordering::Greater,
    };
    let hi_ok = match iv.hi.value() {
        None => true,
        Some(b) => rep.compare(i, b) == Ordering::Less,
    };
    lo_ok && hi_ok
}

/// Whether root `i` lies in the closure of `iv`.
fn in_closure(rep: &mut RootReport, i: usize, iv: &IntervalQ) -> bool {
    let closed = IntervalQ::new(
        iv.lo.value().map_or(Bound::Unbounded, |a| Bound::Closed(a.clone())),
        iv.hi.value().map_or(Bound::Unbounded, |b| Bound::Closed(b.clone())),
    );
    let lo_ok = match closed.lo.value() {
        None => true,
        Some(a) => rep.compare(i, a) != Ordering::Less,
    };
    let hi_ok = match closed.hi.value() {
        None => true,
        Some(b) => rep.compare(i, b) != Ordering::Greater,
    };
    lo_ok && hi_ok
}

/// Topology of `{V = 0}` for `V = a(x) y^2 + b(x) y + c(x)` with `a` of
/// constant sign on the region's x-extent.
///
/// Every vertical line meets the curve in at most two points, at
/// `y = (-b +- sqrt(D)) / 2a` with `D = b^2 - 4ac`. Maximal x-intervals where
/// `D >= 0` are bands. A bounded band whose ends are simple roots of `D` and
/// that has no interior zero of `D` is a smooth oval; interior double zeros
/// pinch it into a chain of loops (one component, not smooth); a double zero
/// with `D < 0` on both sides is an isolated point. No bounded component can
/// enclose another, so each one adds exactly one hole to the complement.
pub fn analyze_quadratic_curve(v: &RationalFunction, region: &Region) -> Result<CurveTopologyReport> {
    if let Some(other) = v.vars().into_iter().find(|s| s != "x" && s != "y") {
        return Err(Error::UnboundParameter(other));
    }
    if matches!(region, Region::OpenQuadrant { .. }) {
        return Err(Error::TopologyUnsupported(
            "quadratic curve analysis supports the plane and vertical strips".into(),
        ));
    }
    if v.den().degree_in("y") > 0 {
        return Err(Error::TopologyUnsupported("denominator depends on y".into()));
    }
    let extent = region.x_extent();
    if !v.is_polynomial() {
        let den = univariate(v.den(), "x")?;
        if !certify_sign(&den, &extent, SignMode::Strict).verdict.is_strict() {
            return Err(Error::TopologyUnsupported(
                "denominator vanishes on the region".into(),
            ));
        }
    }
    let mut num = v.num().clone();
    let deg = num.degree_in("y");
    if deg != 2 {
        return Err(Error::WrongDegree { var: "y".into(), expected: 2, found: deg });
    }
    let lead = univariate(&num.coeff_in("y", 2), "x")?;
    match certify_sign(&lead, &extent, SignMode::Strict).verdict {
        Verdict::StrictlyPositive => {}
        Verdict::StrictlyNegative => num = -&num,
        _ => return Err(Error::NotMonic),
    }
    let delta = univariate(&discriminant_y_poly(&num)?, "x")?;
    if delta.is_zero() {
        return Ok(CurveTopologyReport {
            curve_class: CurveClass::QuadraticInY,
            bounded_components: 0,
            smooth_ovals: 0,
            isolated_points: 0,
            unbounded_branches: 1,
            singular_points: Vec::new(),
            ell_region: 0,
            ell_curve: 0,
            boundary_contact: !extent.is_bounded(),
            narrative: "the curve is a doubled graph y = -b/(2a); no bounded components".into(),
        });
    }
    classify(&delta, &extent, region)
}

fn classify(delta: &UPoly, extent: &IntervalQ, region: &Region) -> Result<CurveTopologyReport> {
    let mut rep = isolate_roots(delta);
    let k = rep.total_distinct();
    // gaps[i] is the sign left of root i; gaps[k] the sign right of the last
    let mut gaps = Vec::with_capacity(k + 1);
    gaps.push(delta.sign_at_neg_inf());
    for i in 0..k.saturating_sub(1) {
        gaps.push(gap_sign(delta, &mut rep, i));
    }
    if k > 0 {
        gaps.push(delta.sign_at_pos_inf());
    }

    let mut kinds = Vec::with_capacity(k);
    for i in 0..k {
        let kind = match (gaps[i] > 0, gaps[i + 1] > 0) {
            (false, false) => RootKind::Isolated,
            (false, true) => RootKind::BandStart,
            (true, false) => RootKind::BandEnd,
            (true, true) => RootKind::Touch,
        };
        let mult = rep.roots[i].multiplicity;
        let expected_even = matches!(kind, RootKind::Isolated | RootKind::Touch);
        if mult > 2 && in_closure(&mut rep, i, extent) {
            return Err(Error::TopologyUnsupported(format!(
                "discriminant root of multiplicity {mult} (higher-order tangency)"
            )));
        }
        debug_assert_eq!(expected_even, mult % 2 == 0);
        kinds.push(kind);
    }

    // sweep left to right collecting bands
    let mut bands = Vec::new();
    let mut isolated = Vec::new();
    let mut open_band: Option<Band> = (gaps[0] > 0).then(|| Band { start: None, end: None, touches: vec![] });
    for (i, kind) in kinds.iter().enumerate() {
        match kind {
            RootKind::Isolated => isolated.push(i),
            RootKind::BandStart => open_band = Some(Band { start: Some(i), end: None, touches: vec![] }),
            RootKind::Touch => {
                if let Some(b) = open_band.as_mut() {
                    b.touches.push(i);
                }
            }
            RootKind::BandEnd => {
                if let Some(mut b) = open_band.take() {
                    b.end = Some(i);
                    bands.push(b);
                }
            }
        }
    }
    if let Some(b) = open_band.take() {
        bands.push(b);
    }

    let mut report = CurveTopologyReport {
        curve_class: CurveClass::QuadraticInY,
        bounded_components: 0,
        smooth_ovals: 0,
        isolated_points: 0,
        unbounded_branches: 0,
        singular_points: Vec::new(),
        ell_region: super::region_ell(region),
        ell_curve: 0,
        boundary_contact: false,
        narrative: String::new(),
    };
    let mut lines = Vec::new();

    for &i in &isolated {
        if !in_closure(&mut rep, i, extent) {
            continue;
        }
        let x = rep.approx(i);
        if strictly_inside(&mut rep, i, extent) {
            report.bounded_components += 1;
            report.isolated_points += 1;
            report.singular_points.push(rep.roots[i].interval());
            lines.push(format!("isolated point at x = {x:.6}"));
        } else {
            report.boundary_contact = true;
            lines.push(format!("isolated point on the region boundary at x = {x:.6}"));
        }
    }

    for band in &bands {
        let (Some(s), Some(e)) = (band.start, band.end) else {
            let side = match (band.start, band.end) {
                (None, None) => "for all x".to_string(),
                (Some(s), None) => format!("for x >= {:.6}", rep.approx(s)),
                (None, Some(e)) => format!("for x <= {:.6}", rep.approx(e)),
                _ => unreachable!(),
            };
            // visible only if it reaches into the region
            let reaches = match (band.start, band.end) {
                (Some(s), None) => extent.hi.value().is_none() || rep.compare(s, extent.hi.value().unwrap()) == Ordering::Less,
                (None, Some(e)) => extent.lo.value().is_none() || rep.compare(e, extent.lo.value().unwrap()) == Ordering::Greater,
                _ => true,
            };
            if reaches {
                report.unbounded_branches += 1;
                if extent.is_bounded() || !matches!(region, Region::Plane) {
                    report.boundary_contact = true;
                }
                for &t in &band.touches {
                    if strictly_inside(&mut rep, t, extent) {
                        report.singular_points.push(rep.roots[t].interval());
                    }
                }
                lines.push(format!("unbounded pair of branches {side}"));
            }
            continue;
        };
        let (xs, xe) = (rep.approx(s), rep.approx(e));
        let inside = strictly_inside(&mut rep, s, extent) && strictly_inside(&mut rep, e, extent);
        if !inside {
            let lo_in = in_closure(&mut rep, s, extent) || in_closure(&mut rep, e, extent);
            let straddles = match (extent.lo.value(), extent.hi.value()) {
                (Some(a), _) if rep.compare(s, a) != Ordering::Greater && rep.compare(e, a) == Ordering::Greater => true,
                (_, Some(b)) if rep.compare(s, b) == Ordering::Less && rep.compare(e, b) != Ordering::Less => true,
                _ => false,
            };
            if lo_in || straddles {
                report.boundary_contact = true;
                lines.push(format!(
                    "bounded component over [{xs:.6}, {xe:.6}] meets the region boundary (not counted)"
                ));
            }
            continue;
        }
        report.bounded_components += 1;
        if band.touches.is_empty() {
            report.smooth_ovals += 1;
            lines.push(format!("smooth oval over x in [{xs:.6}, {xe:.6}]"));
        } else {
            let at: Vec<String> = band
                .touches
                .iter()
                .map(|&t| {
                    report.singular_points.push(rep.roots[t].interval());
                    format!("{:.6}", rep.approx(t))
                })
                .collect();
            lines.push(format!(
                "chain of {} loops over x in [{xs:.6}, {xe:.6}] joined at singular points x = {}",
                band.touches.len() + 1,
                at.join(", ")
            ));
        }
    }

    report.ell_curve = report.bounded_components;
    if lines.is_empty() {
        lines.push("empty zero set in the region".into());
    }
    report.narrative = lines.join("; ");
    Ok(report)
}

/// Samples `y` values on the curve over a given x (both roots of the
/// quadratic), for checks and plots. Empty when the fibre misses the curve.
pub fn fibre(v: &Polynomial, x: &Rational) -> Vec<f64> {
    let at = |k| {
        let c = v.coeff_in("y", k);
        crate::algebra::rational::to_f64(&c.bind(&[("x".to_string(), x.clone())].into()).constant_value().unwrap_or_else(Rational::zero))
    };
    let (a, b, c) = (at(2), at(1), at(0));
    let d = b * b - 4.0 * a * c;
    if d < 0.0 {
        return Vec::new();
    }
    let s = d.sqrt();
    vec![(-b - s) / (2.0 * a), (-b + s) / (2.0 * a)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn x() -> RationalFunction {
        RationalFunction::var("x")
    }
    fn y() -> RationalFunction {
        RationalFunction::var("y")
    }
    fn c(n: i64) -> RationalFunction {
        RationalFunction::constant(int(n))
    }

    #[test]
    fn unit_circle_is_one_oval() {
        let v = y() * y() + x() * x() - c(1);
        let r = analyze_quadratic_curve(&v, &Region::Plane).unwrap();
        assert_eq!((r.bounded_components, r.smooth_ovals, r.ell_curve), (1, 1, 1));
        assert_eq!(r.unbounded_branches, 0);
    }

    #[test]
    fn rational_curve_reduces_to_origin() {
        let s = c(1) + x() * x();
        let f = (x() * (c(1) - x() * x())).checked_div(&s).unwrap();
        let v = y() * y() - &f * &y() + x() * x();
        let r = analyze_quadratic_curve(&v, &Region::Plane).unwrap();
        assert_eq!(r.isolated_points, 1);
        assert_eq!(r.smooth_ovals, 0);
        assert_eq!(r.ell_curve, 1);
    }

    #[test]
    fn figure_eight_with_branches() {
        let f = c(-4) + x() * x() + x().pow(4);
        let v = y() * y() + &f * &x() * y() + x() * x();
        let r = analyze_quadratic_curve(&v, &Region::Plane).unwrap();
        assert_eq!(r.bounded_components, 1);
        assert_eq!(r.smooth_ovals, 0);
        assert_eq!(r.ell_curve, 1);
        assert_eq!(r.unbounded_branches, 2);
        assert_eq!(r.singular_points.len(), 1);
        assert!(r.singular_points[0].contains(&int(0)));
    }

    #[test]
    fn strip_clipping() {
        let v = y() * y() + x() * x() - c(1);
        let narrow = Region::Strip(IntervalQ::open(rat(-1, 2), rat(1, 2)));
        let r = analyze_quadratic_curve(&v, &narrow).unwrap();
        assert_eq!(r.ell_curve, 0);
        assert!(r.boundary_contact);
        let wide = Region::Strip(IntervalQ::open(int(-2), int(2)));
        let r = analyze_quadratic_curve(&v, &wide).unwrap();
        assert_eq!(r.ell_curve, 1);
    }

    #[test]
    fn errors() {
        let cubic = y() * y() * y() + x();
        assert!(matches!(
            analyze_quadratic_curve(&cubic, &Region::Plane),
            Err(Error::WrongDegree { .. })
        ));
        let sign_changing = x() * y() * y() + c(1);
        assert_eq!(analyze_quadratic_curve(&sign_changing, &Region::Plane), Err(Error::NotMonic));
        // x^2 - y^2 + ... with quadruple root: y^2 = x^4 -> D = 4 x^4
        let quartic_touch = y() * y() - x().pow(4);
        assert!(matches!(
            analyze_quadratic_curve(&quartic_touch, &Region::Plane),
            Err(Error::TopologyUnsupported(_))
        ));
    }

    #[test]
    fn fibres_have_at_most_two_points() {
        let v = (y() * y() + x() * x() - c(1)).num().clone();
        assert_eq!(fibre(&v, &int(0)).len(), 2);
        assert!(fibre(&v, &int(2)).is_empty());
    }
}
