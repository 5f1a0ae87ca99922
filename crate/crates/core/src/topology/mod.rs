//! Hole and oval counts of `{V = 0}` for curves quadratic in `y` and for
//! radial curves `{w(r) = 0}`.

mod quadratic;
mod radial;
mod region;

pub use quadratic::{analyze_quadratic_curve, fibre};
pub use radial::{analyze_radial, radial_profile};
pub use region::{region_ell, Region};

use serde::Serialize;

use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use crate::roots::IntervalQ;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CurveClass {
    QuadraticInY,
    Radial,
    Unsupported,
}

/// Topological counts of a real algebraic curve inside a region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveTopologyReport {
    pub curve_class: CurveClass,
    /// Bounded connected components lying strictly inside the region.
    pub bounded_components: usize,
    /// Bounded components that are smooth closed ovals, i.e. `c(W, V)`.
    pub smooth_ovals: usize,
    pub isolated_points: usize,
    pub unbounded_branches: usize,
    /// x-locations (or radii, for radial curves) of singular points.
    pub singular_points: Vec<IntervalQ>,
    /// Holes of the region itself, `l(W)`.
    pub ell_region: usize,
    /// Total holes of the complement of the curve in the region, `l(W, V)`.
    pub ell_curve: usize,
    /// Some component meets the region boundary and was not counted.
    pub boundary_contact: bool,
    pub narrative: String,
}

/// Picks the analyzer matching the shape of `v`: quadratic in `y` first,
/// then radial. Anything else is unsupported.
pub fn analyze_curve(v: &RationalFunction, region: &Region) -> Result<CurveTopologyReport> {
    if v.num().degree_in("y") == 2 && v.den().degree_in("y") == 0 {
        return analyze_quadratic_curve(v, region);
    }
    if let (Some(w), Region::Plane) = (radial_profile(v), region) {
        return analyze_radial(&w);
    }
    Err(Error::TopologyUnsupported(format!(
        "curve of degree {} in y is neither quadratic in y nor radial",
        v.num().degree_in("y")
    )))
}
