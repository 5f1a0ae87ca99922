use num_traits::{One, Zero};
use serde::Serialize;

use super::interval::{Bound, IntervalQ};
use super::sturm::SturmChain;
use crate::algebra::rational::{pow2, render, sign};
use crate::algebra::{Rational, UPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignMode {
    /// No zeros allowed on the interval.
    Strict,
    /// Finitely many zeros allowed, the sign may not change.
    ZeroMeasure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    StrictlyNegative,
    StrictlyPositive,
    NonPositiveZeroMeasure,
    NonNegativeZeroMeasure,
    Indeterminate,
}

impl Verdict {
    /// -1, 1, or 0 when indeterminate.
    pub fn sign(self) -> i8 {
        match self {
            Verdict::StrictlyNegative | Verdict::NonPositiveZeroMeasure => -1,
            Verdict::StrictlyPositive | Verdict::NonNegativeZeroMeasure => 1,
            Verdict::Indeterminate => 0,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Verdict::StrictlyNegative | Verdict::StrictlyPositive)
    }

    pub fn is_determinate(self) -> bool {
        self != Verdict::Indeterminate
    }

    fn from_sign(s: i8, strict: bool) -> Verdict {
        match (s, strict) {
            (1, true) => Verdict::StrictlyPositive,
            (-1, true) => Verdict::StrictlyNegative,
            (1, false) => Verdict::NonNegativeZeroMeasure,
            (-1, false) => Verdict::NonPositiveZeroMeasure,
            _ => Verdict::Indeterminate,
        }
    }
}

/// Data a reader can re-check: Sturm chain of the polynomial whose roots
/// would signal a sign change, its variation counts at both ends, and one
/// exact sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignEvidence {
    pub sturm_chain_len: usize,
    pub variations_lo: usize,
    pub variations_hi: usize,
    /// Distinct roots in the interval of the factor carrying sign changes
    /// (the square-free part in strict mode, the odd-multiplicity part in
    /// zero-measure mode).
    pub sign_change_roots: usize,
    /// Distinct zeros of the polynomial in the interval.
    pub zeros: usize,
    #[serde(serialize_with = "ser_rational")]
    pub sample_point: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub sample_value: Rational,
    /// Zeros of a denominator in the interval (excluded from the domain).
    pub excluded_points: usize,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&render(q))
}

fn ser_upoly<S: serde::Serializer>(p: &UPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Verdict that a univariate polynomial keeps a fixed sign on an interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignCertificate {
    #[serde(serialize_with = "ser_upoly")]
    pub poly: UPoly,
    pub interval: IntervalQ,
    pub mode: SignMode,
    pub verdict: Verdict,
    pub evidence: SignEvidence,
}

fn indeterminate(p: &UPoly, iv: &IntervalQ, mode: SignMode, evidence: SignEvidence) -> SignCertificate {
    SignCertificate {
        poly: p.clone(),
        interval: iv.clone(),
        mode,
        verdict: Verdict::Indeterminate,
        evidence,
    }
}

/// A point of `iv` where `p` does not vanish. `p` has finitely many zeros,
/// so stepping towards the sample point's neighbours terminates.
fn nonzero_sample(p: &UPoly, iv: &IntervalQ) -> Option<Rational> {
    let base = iv.sample_point();
    if !iv.contains(&base) {
        return None;
    }
    if !p.eval(&base).is_zero() {
        return Some(base);
    }
    let span = match (iv.lo.value(), iv.hi.value()) {
        (Some(a), Some(b)) => b - a,
        _ => Rational::one(),
    };
    (1..=(p.degree() as i64 + 64)).find_map(|k| {
        let step = &span * pow2(-k - 1);
        [&base + &step, &base - &step]
            .into_iter()
            .find(|t| iv.contains(t) && !p.eval(t).is_zero())
    })
}

fn sign_at_infinity_agrees(p: &UPoly, iv: &IntervalQ, s: i8) -> bool {
    let hi_ok = !matches!(iv.hi, Bound::Unbounded) || p.sign_at_pos_inf() == s;
    let lo_ok = !matches!(iv.lo, Bound::Unbounded) || p.sign_at_neg_inf() == s;
    hi_ok && lo_ok
}

/// Certifies the sign of `p` on `iv`.
///
/// Strict mode requires no root at all; zero-measure mode only requires that
/// the odd-multiplicity part of `p` has no root, so `p` can touch zero at
/// finitely many points without changing sign. The result is `Indeterminate`
/// whenever either test fails; it is never wrong.
pub fn certify_sign(p: &UPoly, iv: &IntervalQ, mode: SignMode) -> SignCertificate {
    let empty = SignEvidence {
        sturm_chain_len: 0,
        variations_lo: 0,
        variations_hi: 0,
        sign_change_roots: 0,
        zeros: 0,
        sample_point: Rational::zero(),
        sample_value: Rational::zero(),
        excluded_points: 0,
    };
    if p.is_zero() || iv.is_empty() {
        return indeterminate(p, iv, mode, empty);
    }
    let all_zeros = SturmChain::new(p);
    let zeros = all_zeros.count(iv);

    let carrier = match mode {
        SignMode::Strict => all_zeros,
        SignMode::ZeroMeasure => {
            let (_, parts) = p.square_free_decomposition();
            let odd = parts
                .iter()
                .filter(|(_, m)| m % 2 == 1)
                .fold(UPoly::constant(Rational::one()), |acc, (f, _)| &acc * f);
            SturmChain::new(&odd)
        }
    };
    let (vlo, vhi) = carrier.variations(iv);
    let changes = carrier.count(iv);
    let mut evidence = SignEvidence {
        sturm_chain_len: carrier.len(),
        variations_lo: vlo,
        variations_hi: vhi,
        sign_change_roots: changes,
        zeros,
        ..empty
    };
    if changes > 0 {
        return indeterminate(p, iv, mode, evidence);
    }
    let Some(t) = nonzero_sample(p, iv) else {
        return indeterminate(p, iv, mode, evidence);
    };
    let value = p.eval(&t);
    let s = sign(&value);
    evidence.sample_point = t;
    evidence.sample_value = value;
    if !sign_at_infinity_agrees(p, iv, s) {
        return indeterminate(p, iv, mode, evidence);
    }
    SignCertificate {
        poly: p.clone(),
        interval: iv.clone(),
        mode,
        verdict: Verdict::from_sign(s, zeros == 0),
        evidence,
    }
}

/// Sign of `num/den` on `iv` away from the zeros of `den`.
///
/// The sign of a quotient equals the sign of `num * den` wherever `den`
/// does not vanish; zeros of `den` are excluded points, so they do not
/// spoil a strict verdict when `num` itself has no zero on the interval.
pub fn certify_sign_rational(num: &UPoly, den: &UPoly, iv: &IntervalQ, mode: SignMode) -> SignCertificate {
    if den.degree() == 0 {
        let c = den.coeff(0);
        let mut cert = certify_sign(&num.scale(&(Rational::one() / &c)), iv, mode);
        cert.poly = num.clone();
        return cert;
    }
    let product = num * den;
    let mut cert = certify_sign(&product, iv, SignMode::ZeroMeasure);
    let num_zeros = if num.is_zero() { 0 } else { SturmChain::new(num).count(iv) };
    let den_zeros = SturmChain::new(den).count(iv);
    cert.evidence.excluded_points = den_zeros;
    cert.evidence.zeros = num_zeros;
    cert.mode = mode;
    if cert.verdict.is_determinate() {
        let s = cert.verdict.sign();
        cert.verdict = if num_zeros == 0 {
            Verdict::from_sign(s, true)
        } else if mode == SignMode::Strict {
            Verdict::Indeterminate
        } else {
            Verdict::from_sign(s, false)
        };
    }
    cert
}
