use std::fmt;

use serde::Serialize;

use crate::roots::IntervalQ;

/// Open, simply connected regions of the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Plane,
    /// Vertical strip `I x R`.
    Strip(IntervalQ),
    /// Open quadrant with the given signs of x and y.
    OpenQuadrant { x_positive: bool, y_positive: bool },
}

impl Region {
    pub fn x_extent(&self) -> IntervalQ {
        match self {
            Region::Plane => IntervalQ::real_line(),
            Region::Strip(iv) => iv.clone(),
            Region::OpenQuadrant { x_positive: true, .. } => IntervalQ::positive(),
            Region::OpenQuadrant { x_positive: false, .. } => IntervalQ::negative(),
        }
    }

    pub fn y_extent(&self) -> IntervalQ {
        match self {
            Region::Plane | Region::Strip(_) => IntervalQ::real_line(),
            Region::OpenQuadrant { y_positive: true, .. } => IntervalQ::positive(),
            Region::OpenQuadrant { y_positive: false, .. } => IntervalQ::negative(),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Plane => write!(f, "plane"),
            Region::Strip(iv) => write!(f, "strip{iv}"),
            Region::OpenQuadrant { x_positive, y_positive } => {
                let s = |b: &bool| if *b { '+' } else { '-' };
                write!(f, "quadrant({},{})", s(x_positive), s(y_positive))
            }
        }
    }
}

impl Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Number of holes of the region. Every supported kind is simply connected.
pub fn region_ell(region: &Region) -> usize {
    match region {
        Region::Plane | Region::Strip(_) | Region::OpenQuadrant { .. } => 0,
    }
}
