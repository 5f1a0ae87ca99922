use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::algebra::rational::render;
use crate::algebra::{int, Rational};

/// Finite Fourier series `c0 + sum_k (a_k cos(k t) + b_k sin(k t))` with
/// exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TrigPoly {
    const_term: Rational,
    /// `k -> (a_k, b_k)`, never both zero.
    harmonics: BTreeMap<u32, (Rational, Rational)>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        TrigPoly { const_term: c, harmonics: BTreeMap::new() }
    }

    pub fn cos(k: u32) -> Self {
        let mut t = Self::zero();
        t.add_cos(k as i64, &Rational::one());
        t
    }

    pub fn sin(k: u32) -> Self {
        let mut t = Self::zero();
        t.add_sin(k as i64, &Rational::one());
        t
    }

    pub fn const_term(&self) -> &Rational {
        &self.const_term
    }

    pub fn harmonics(&self) -> &BTreeMap<u32, (Rational, Rational)> {
        &self.harmonics
    }

    pub fn is_zero(&self) -> bool {
        self.const_term.is_zero() && self.harmonics.is_empty()
    }

    pub fn max_harmonic(&self) -> u32 {
        self.harmonics.keys().next_back().copied().unwrap_or(0)
    }

    /// Adds `c cos(k t)` for any integer `k`.
    fn add_cos(&mut self, k: i64, c: &Rational) {
        if k == 0 {
            self.const_term += c;
            return;
        }
        let k = k.unsigned_abs() as u32;
        self.bump(k, c, &Rational::zero());
    }

    /// Adds `c sin(k t)` for any integer `k`.
    fn add_sin(&mut self, k: i64, c: &Rational) {
        match k.signum() {
            0 => {}
            1 => self.bump(k as u32, &Rational::zero(), c),
            _ => self.bump(k.unsigned_abs() as u32, &Rational::zero(), &-c),
        }
    }

    fn bump(&mut self, k: u32, a: &Rational, b: &Rational) {
        let entry = self.harmonics.entry(k).or_insert_with(|| (Rational::zero(), Rational::zero()));
        entry.0 += a;
        entry.1 += b;
        if entry.0.is_zero() && entry.1.is_zero() {
            self.harmonics.remove(&k);
        }
    }

    pub fn scale(&self, c: &Rational) -> TrigPoly {
        if c.is_zero() {
            return Self::zero();
        }
        TrigPoly {
            const_term: &self.const_term * c,
            harmonics: self.harmonics.iter().map(|(&k, (a, b))| (k, (a * c, b * c))).collect(),
        }
    }

    /// `d/dt`.
    pub fn derivative(&self) -> TrigPoly {
        let mut out = Self::zero();
        for (&k, (a, b)) in &self.harmonics {
            let kq = int(k as i64);
            out.bump(k, &(b * &kq), &-(a * &kq));
        }
        out
    }

    /// Value at the angle with the given cosine and sine (`c^2 + s^2 = 1`),
    /// using `cos(kt) + i sin(kt) = (c + i s)^k`.
    pub fn eval(&self, c: &Rational, s: &Rational) -> Rational {
        let mut total = self.const_term.clone();
        let (mut ck, mut sk) = (Rational::one(), Rational::zero());
        let mut k = 0;
        for (&target, (a, b)) in &self.harmonics {
            while k < target {
                let next_c = &ck * c - &sk * s;
                sk = &sk * c + &ck * s;
                ck = next_c;
                k += 1;
            }
            total += a * &ck + b * &sk;
        }
        total
    }

    pub fn eval_f64(&self, theta: f64) -> f64 {
        let to = crate::algebra::rational::to_f64;
        self.harmonics.iter().fold(to(&self.const_term), |acc, (&k, (a, b))| {
            let kt = k as f64 * theta;
            acc + to(a) * kt.cos() + to(b) * kt.sin()
        })
    }

    /// `c0 + sum_k (|a_k| + |b_k|)`, an upper bound of the maximum over `t`.
    pub fn amplitude_bound(&self) -> Rational {
        self.harmonics
            .values()
            .fold(self.const_term.clone(), |acc, (a, b)| acc + a.abs() + b.abs())
    }
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(Rational, String)> = Vec::new();
        if !self.const_term.is_zero() {
            parts.push((self.const_term.clone(), String::new()));
        }
        for (&k, (a, b)) in &self.harmonics {
            let arg = if k == 1 { "t".to_string() } else { format!("{k}*t") };
            for (c, name) in [(a, "cos"), (b, "sin")] {
                if !c.is_zero() {
                    parts.push((c.clone(), format!("{name}({arg})")));
                }
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, basis)) in parts.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (basis.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", render(&mag))?,
                (false, true) => write!(f, "{basis}")?,
                (false, false) => write!(f, "{}*{basis}", render(&mag))?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let mut out = self.clone();
        out.const_term += &rhs.const_term;
        for (&k, (a, b)) in &rhs.harmonics {
            out.bump(k, a, b);
        }
        out
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        self.scale(&-Rational::one())
    }
}

impl<'a> Sub<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a TrigPoly> for &'a TrigPoly {
    type Output = TrigPoly;
    /// Product-to-sum:
    /// `cos p cos q = (cos(p-q) + cos(p+q))/2`,
    /// `sin p sin q = (cos(p-q) - cos(p+q))/2`,
    /// `sin p cos q = (sin(p+q) + sin(p-q))/2`.
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        let half = crate::algebra::rat(1, 2);
        let terms = |t: &TrigPoly| {
            let mut v = vec![(0i64, t.const_term.clone(), Rational::zero())];
            v.extend(t.harmonics.iter().map(|(&k, (a, b))| (k as i64, a.clone(), b.clone())));
            v
        };
        let mut out = TrigPoly::zero();
        for (p, a1, b1) in terms(self) {
            for (q, a2, b2) in terms(rhs) {
                let cc = &a1 * &a2 * &half;
                if !cc.is_zero() {
                    out.add_cos(p - q, &cc);
                    out.add_cos(p + q, &cc);
                }
                let ss = &b1 * &b2 * &half;
                if !ss.is_zero() {
                    out.add_cos(p - q, &ss);
                    out.add_cos(p + q, &-&ss);
                }
                let sc = &b1 * &a2 * &half;
                if !sc.is_zero() {
                    out.add_sin(p + q, &sc);
                    out.add_sin(p - q, &sc);
                }
                let cs = &a1 * &b2 * &half;
                if !cs.is_zero() {
                    out.add_sin(q + p, &cs);
                    out.add_sin(q - p, &cs);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn pythagoras() {
        let c = TrigPoly::cos(1);
        let s = TrigPoly::sin(1);
        let one = &(&c * &c) + &(&s * &s);
        assert_eq!(one, TrigPoly::constant(int(1)));
    }

    #[test]
    fn double_angle() {
        let c = TrigPoly::cos(1);
        let s = TrigPoly::sin(1);
        assert_eq!((&s * &c).scale(&int(2)), TrigPoly::sin(2));
        assert_eq!(&(&c * &c) - &(&s * &s), TrigPoly::cos(2));
    }

    #[test]
    fn derivative_and_eval() {
        let t = &TrigPoly::cos(2) + &TrigPoly::sin(3).scale(&int(5));
        let d = t.derivative();
        assert_eq!(d, &TrigPoly::sin(2).scale(&int(-2)) + &TrigPoly::cos(3).scale(&int(15)));
        // angle with cos 3/5, sin 4/5: cos 2t = -7/25
        assert_eq!(TrigPoly::cos(2).eval(&rat(3, 5), &rat(4, 5)), rat(-7, 25));
        let theta = (0.8f64).atan2(0.6);
        assert!((t.eval_f64(theta) - crate::algebra::rational::to_f64(&t.eval(&rat(3, 5), &rat(4, 5)))).abs() < 1e-12);
    }

    #[test]
    fn display_and_amplitude() {
        let t = &TrigPoly::constant(int(-10)) + &TrigPoly::sin(2).scale(&rat(3, 4));
        assert_eq!(t.to_string(), "-10 + 3/4*sin(2*t)");
        assert_eq!(t.amplitude_bound(), rat(-37, 4));
        let u = &TrigPoly::cos(1) - &TrigPoly::cos(3).scale(&rat(1, 2));
        assert_eq!(u.to_string(), "cos(t) - 1/2*cos(3*t)");
        assert_eq!(TrigPoly::zero().to_string(), "0");
    }

    #[test]
    fn average_is_constant_term() {
        let c = TrigPoly::cos(1);
        let c2 = &c * &c;
        assert_eq!(c2.const_term(), &rat(1, 2));
        let c4 = &c2 * &c2;
        assert_eq!(c4.const_term(), &rat(3, 8));
    }
}
