use std::fmt::Write;

use num_traits::Zero;

use super::{CurveClass, CurveTopologyReport};
use crate::algebra::{Polynomial, RationalFunction, UPoly};
use crate::error::{Error, Result};
use crate::roots::{isolate_roots, IntervalQ};

/// If `v(x, y) = g(x^2 + y^2)` for a polynomial `g`, returns `w(r) = g(r^2)`.
pub fn radial_profile(v: &RationalFunction) -> Option<UPoly> {
    let p = v.as_polynomial()?;
    if p.vars().iter().any(|s| s != "x" && s != "y") {
        return None;
    }
    let on_axis = p.coeff_in("y", 0).to_univariate("x").ok()?;
    if on_axis.coeffs().iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
        return None;
    }
    let g: Vec<_> = on_axis.coeffs().iter().step_by(2).cloned().collect();
    let g = UPoly::new(g);
    let rho = &(&Polynomial::var("x") * &Polynomial::var("x"))
        + &(&Polynomial::var("y") * &Polynomial::var("y"));
    let rebuilt = g
        .coeffs()
        .iter()
        .enumerate()
        .fold(Polynomial::zero(), |acc, (k, c)| {
            &acc + &rho.pow(k as u32).scale(c)
        });
    (&rebuilt == p).then(|| g.compose_square())
}

/// `{w(r) = 0}` is the origin (when `w(0) = 0`) plus one circle per
/// positive root, so its complement has as many holes as `w` has distinct
/// nonnegative roots.
pub fn analyze_radial(w: &UPoly) -> Result<CurveTopologyReport> {
    if w.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rep = isolate_roots(w);
    let idx = rep.indices_in(&IntervalQ::nonnegative());
    let origin = w.eval(&crate::algebra::int(0)).is_zero();
    let n = idx.len();
    let circles = n - usize::from(origin);
    let mut narrative = String::new();
    if origin {
        narrative.push_str("origin is a point of the curve");
    }
    let positive: Vec<usize> = idx
        .into_iter()
        .filter(|&i| !(rep.roots[i].is_exact() && rep.roots[i].lo.is_zero()))
        .collect();
    let radii: Vec<String> = positive
        .into_iter()
        .map(|i| format!("{:.6}", rep.approx(i)))
        .collect();
    if !radii.is_empty() {
        if !narrative.is_empty() {
            narrative.push_str("; ");
        }
        let _ = write!(narrative, "concentric circles of radius {}", radii.join(", "));
    }
    if narrative.is_empty() {
        narrative.push_str("empty zero set");
    }
    Ok(CurveTopologyReport {
        curve_class: CurveClass::Radial,
        bounded_components: n,
        smooth_ovals: circles,
        isolated_points: usize::from(origin),
        unbounded_branches: 0,
        singular_points: Vec::new(),
        ell_region: 0,
        ell_curve: n,
        boundary_contact: false,
        narrative,
    })
}
