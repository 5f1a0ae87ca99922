//! The auxiliary function `M_s = <grad V, X> + s div(X) V`, the divergence
//! of `D X`, and certificates bounding limit cycles from their signs.

mod certify;
mod shape;
mod system;

pub use certify::{certify_direct, BoundKind, DulacCertificate, OnCurveBound, Status};
pub use shape::{certify_sign_2d, ShapeKind, SignTerm, TwoVariableSignEvidence, ZeroSet, MAX_TERMS};
pub use system::{compute_div_dx, compute_ms, DulacCandidate, SystemDef};
