#![allow(dead_code)]

use cyclecert::algebra::{rat, Monomial, Polynomial, Rational, RationalFunction, UPoly};
use proptest::prelude::*;

pub fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rational> {
    small_rat().prop_filter("nonzero", |q| *q != rat(0, 1))
}

pub fn poly_xy(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, small_rat()), 0..=max_terms).prop_map(|ts| {
        Polynomial::from_terms(
            ts.into_iter()
                .map(|(i, j, c)| (Monomial::from_pairs([("x", i), ("y", j)]), c)),
        )
    })
}

/// Polynomial field vanishing at the origin.
pub fn field_at_origin(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly_xy(max_deg, max_terms).prop_map(|p| &p - &Polynomial::constant(p.constant_term()))
}

pub fn upoly(max_deg: usize, range: i64) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-range..=range, 1..=max_deg + 1).prop_map(|c| UPoly::from_i64(&c))
}

pub fn rf(p: &Polynomial) -> RationalFunction {
    RationalFunction::from(p.clone())
}

pub fn at(x: &Rational, y: &Rational) -> std::collections::BTreeMap<String, Rational> {
    [("x".to_string(), x.clone()), ("y".to_string(), y.clone())].into()
}

/// `(cos, sin)` of the tangent half angle `t`.
pub fn half_angle(t: &Rational) -> (Rational, Rational) {
    let one = rat(1, 1);
    let d = &one + t * t;
    ((&one - t * t) / &d, (t + t) / &d)
}

pub mod kolmogorov;
