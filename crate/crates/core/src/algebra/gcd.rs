//! Multivariate gcd over Q by recursive primitive remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::rational::Rational;

/// Monic (under graded-lex) gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a.exact_div(b).is_some() {
        return b.monic();
    }
    if b.exact_div(a).is_some() {
        return a.monic();
    }
    let mut vars = a.vars();
    vars.extend(b.vars());
    let v = vars.into_iter().next().expect("non-constant operands");

    let (ca, pa) = content_split(a, &v);
    let (cb, pb) = content_split(b, &v);
    let g_content = gcd(&ca, &cb);

    let g_prim = if pa.degree_in(&v) == 0 || pb.degree_in(&v) == 0 {
        Polynomial::one()
    } else {
        let (mut hi, mut lo) = if pa.degree_in(&v) >= pb.degree_in(&v) {
            (pa, pb)
        } else {
            (pb, pa)
        };
        loop {
            let r = pseudo_rem(&hi, &lo, &v);
            if r.is_zero() {
                break lo;
            }
            if r.degree_in(&v) == 0 {
                break Polynomial::one();
            }
            hi = lo;
            lo = integer_primitive(&content_split(&r, &v).1);
        }
    };
    (&g_content * &g_prim).monic()
}

/// Content with respect to `var` and the primitive part.
fn content_split(p: &Polynomial, var: &str) -> (Polynomial, Polynomial) {
    let mut content = Polynomial::zero();
    for c in p.coeffs_in(var).values() {
        content = gcd(&content, c);
        if content.is_one() {
            break;
        }
    }
    let prim = p
        .exact_div(&content)
        .expect("content divides its polynomial");
    (content, prim)
}

/// `p` scaled to integer coefficients with no common factor; keeps
/// pseudo-remainder coefficients from growing.
fn integer_primitive(p: &Polynomial) -> Polynomial {
    let (mut den, mut num) = (BigInt::one(), BigInt::zero());
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
        num = num.gcd(c.numer());
    }
    if num.is_zero() {
        return p.clone();
    }
    p.scale(&Rational::new(den, num))
}

/// A pseudo-remainder of `a` by `b` in `var` (multiplies by powers of the
/// leading coefficient of `b` so no division is needed).
fn pseudo_rem(a: &Polynomial, b: &Polynomial, var: &str) -> Polynomial {
    let db = b.degree_in(var);
    let lb = b.coeff_in(var, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.coeff_in(var, dr);
        let shifted = b.mul_monomial(&Monomial::var(var, dr - db));
        r = &(&lb * &r) - &(&lr * &shifted);
    }
    r
}
