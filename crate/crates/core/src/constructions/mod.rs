//! Dulac candidates for structured families: Liénard, Kolmogorov,
//! Massera-type and Lotka–Volterra systems.

mod kolmogorov;
mod lienard;
mod linalg;
mod lotka;
mod massera;

use serde::Serialize;

use crate::algebra::rational::ser_rational;
use crate::algebra::{Rational, RationalFunction};

pub use kolmogorov::{kolmogorov_check, s_lambda, t_lambda, KolmogorovResult, KolmogorovSpec};
pub use lienard::{
    lienard_v2, mt_recurrence, second_method_derive, CascadeOutcome, LienardSpec, SecondMethodResult,
};
pub use linalg::nullspace;
pub use lotka::{lotka_volterra_dulac, LotkaVerdict, LotkaVolterraOutcome};
pub use massera::{massera_check, MasseraResult};

/// A candidate `(V, s)` with its auxiliary function. `m` equals the reduced
/// function `notes` describes times `cofactor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionResult {
    pub v: RationalFunction,
    #[serde(serialize_with = "ser_rational")]
    pub s: Rational,
    pub m: RationalFunction,
    pub cofactor: RationalFunction,
    pub notes: String,
}
