use num_traits::Zero;
use serde::Serialize;

use crate::algebra::rational::ser_rational;
use crate::algebra::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LotkaVerdict {
    /// `R != 0`: `div(D X)` has the sign of `R` on the whole open quadrant.
    NoLimitCycles,
    /// `R = 0`: `x^A y^B` is an integrating factor.
    Integrable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum LotkaVolterraOutcome {
    Solved {
        #[serde(serialize_with = "ser_rational")]
        a_exp: Rational,
        #[serde(serialize_with = "ser_rational")]
        b_exp: Rational,
        #[serde(serialize_with = "ser_rational")]
        r: Rational,
        verdict: LotkaVerdict,
        note: String,
    },
    Degenerate {
        note: String,
    },
}

impl LotkaVolterraOutcome {
    /// Periodic orbits are excluded in every branch; limit cycles in particular.
    pub fn bound(&self) -> usize {
        0
    }
}

/// `x' = x (a x + b y + c)`, `y' = y (d x + e y + f)` with `D = x^A y^B` on
/// the open first quadrant.
pub fn lotka_volterra_dulac(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    e: &Rational,
    f: &Rational,
) -> LotkaVolterraOutcome {
    let det = a * e - b * d;
    if det.is_zero() {
        return LotkaVolterraOutcome::Degenerate { note: degenerate_note(a, b, c, d, e, f) };
    }
    let two = int(2);
    // a A + d B = -2a - d, b A + e B = -2e - b
    let r1 = -(&two * a) - d;
    let r2 = -(&two * e) - b;
    let a_exp = (&r1 * e - d * &r2) / &det;
    let b_exp = (a * &r2 - b * &r1) / &det;
    let r = (a * b * f + c * e * d - a * e * f - a * c * e) / &det;
    debug_assert_eq!(r, c * &a_exp + f * &b_exp + c + f);
    let (verdict, note) = if r.is_zero() {
        (
            LotkaVerdict::Integrable,
            format!(
                "R = 0: x^({a_exp}) y^({b_exp}) is an integrating factor; the first integral is smooth in the open quadrant, so there are no limit cycles"
            ),
        )
    } else {
        (
            LotkaVerdict::NoLimitCycles,
            format!("div(x^({a_exp}) y^({b_exp}) X) = {r} x^({a_exp}) y^({b_exp}) keeps its sign: no limit cycles in the open quadrant"),
        )
    };
    LotkaVolterraOutcome::Solved { a_exp, b_exp, r, verdict, note }
}

fn degenerate_note(a: &Rational, b: &Rational, c: &Rational, d: &Rational, e: &Rational, f: &Rational) -> String {
    // a x + b y + c = 0, d x + e y + f = 0 with singular coefficient matrix
    let coeff_rank = usize::from(!(a.is_zero() && b.is_zero() && d.is_zero() && e.is_zero()));
    let minors = [a * f - c * d, b * f - c * e];
    let augmented_rank = if coeff_rank == 0 {
        usize::from(!(c.is_zero() && f.is_zero()))
    } else if minors.iter().any(|m| !m.is_zero()) {
        2
    } else {
        1
    };
    if augmented_rank > coeff_rank {
        "ae - bd = 0 and the lines a x + b y + c = 0, d x + e y + f = 0 do not meet: every critical point lies on an axis, so there are no periodic orbits in the open quadrant".into()
    } else if coeff_rank == 0 {
        "all coefficients vanish: the trivial system x' = 0, y' = 0 has no periodic orbits".into()
    } else {
        "ae - bd = 0 and the two lines coincide: the field is a reparameterization of x' = g x, y' = h y, which has no periodic orbits".into()
    }
}
