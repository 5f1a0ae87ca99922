use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::polynomial::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Quotient of polynomials in lowest terms with a monic denominator.
///
/// Reduction happens at construction, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(c) = den.constant_value() {
            return RationalFunction {
                num: num.scale(&(Rational::one() / c)),
                den: Polynomial::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = Rational::one() / den.leading_coefficient();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::constant(c).into()
    }

    pub fn var(name: &str) -> Self {
        Polynomial::var(name).into()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.as_polynomial().and_then(Polynomial::constant_value)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<String> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroDenominator);
        }
        Ok(Self::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        RationalFunction {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn differentiate(&self, var: &str) -> Self {
        if self.den.is_one() {
            return self.num.differentiate(var).into();
        }
        let n = &(&self.num.differentiate(var) * &self.den)
            - &(&self.num * &self.den.differentiate(var));
        Self::reduce(n, self.den.pow(2))
    }

    /// Substitutes rational values; fails if the denominator collapses to 0.
    pub fn bind(&self, values: &BTreeMap<String, Rational>) -> Result<Self> {
        RationalFunction::new(self.num.bind(values), self.den.bind(values))
    }

    pub fn eval(&self, values: &BTreeMap<String, Rational>) -> Result<Rational> {
        let d = self.den.eval(values)?;
        if d.is_zero() {
            return Err(Error::DivisionByZeroDenominator);
        }
        Ok(self.num.eval(values)? / d)
    }

    /// Homomorphic substitution of rational functions for variables.
    pub fn substitute(&self, bindings: &BTreeMap<String, RationalFunction>) -> Result<Self> {
        let n = substitute_poly(&self.num, bindings);
        let d = substitute_poly(&self.den, bindings);
        if d.is_zero() {
            return Err(Error::DivisionByZeroDenominator);
        }
        n.checked_div(&d)
    }

    pub fn eval_f64(&self, values: &dyn Fn(&str) -> f64) -> f64 {
        self.num.eval_f64(values) / self.den.eval_f64(values)
    }
}

fn substitute_poly(p: &Polynomial, bindings: &BTreeMap<String, RationalFunction>) -> RationalFunction {
    let mut out = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut t = RationalFunction::constant(c.clone());
        for (v, e) in m.factors() {
            let base = bindings
                .get(v)
                .cloned()
                .unwrap_or_else(|| RationalFunction::var(v));
            t = &t * &base.pow(e);
        }
        out = &out + &t;
    }
    out
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        RationalFunction::constant(c)
    }
}

impl serde::Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den.is_one() && rhs.den.is_one() {
            return (&self.num * &rhs.num).into();
        }
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}
