//! Exact real-root counting and isolation, sign certificates, and the
//! discriminant in `y` used by the curve analysis.

mod discriminant;
mod interval;
mod isolate;
mod sign;
mod sturm;

pub use discriminant::{discriminant_y, discriminant_y_poly};
pub use interval::{Bound, IntervalQ};
pub use isolate::{isolate_roots, IsolatedRoot, RootReport};
pub use sign::{certify_sign, certify_sign_rational, SignCertificate, SignEvidence, SignMode, Verdict};
pub use sturm::{sturm_count, SturmChain};

use crate::algebra::{Polynomial, UPoly};
use crate::error::{Error, Result};

/// Converts a polynomial in the single variable `var` (constants allowed).
/// Any other remaining variable is an unbound parameter.
pub fn univariate(p: &Polynomial, var: &str) -> Result<UPoly> {
    if let Some(other) = p.vars().into_iter().find(|v| v != var) {
        return Err(Error::UnboundParameter(other));
    }
    p.to_univariate(var)
}
