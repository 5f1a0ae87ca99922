use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::interval::IntervalQ;
use super::sturm::SturmChain;
use crate::algebra::rational::{pow2, render};
use crate::algebra::{int, Rational, UPoly};

/// A real root known up to an isolating interval.
///
/// `lo == hi` means the root is exactly that rational. Otherwise the root is
/// the only root of its square-free factor in the open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: u32,
    factor: usize,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn interval(&self) -> IntervalQ {
        if self.is_exact() {
            IntervalQ::closed(self.lo.clone(), self.hi.clone())
        } else {
            IntervalQ::open(self.lo.clone(), self.hi.clone())
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    fn disjoint(&self, other: &IsolatedRoot) -> bool {
        match (self.is_exact(), other.is_exact()) {
            (true, true) => self.lo != other.lo,
            (true, false) => self.lo <= other.lo || self.lo >= other.hi,
            (false, true) => other.lo <= self.lo || other.lo >= self.hi,
            (false, false) => self.hi <= other.lo || other.hi <= self.lo,
        }
    }
}

#[derive(Serialize)]
struct RootJson {
    lo: String,
    hi: String,
    multiplicity: u32,
}

impl Serialize for IsolatedRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RootJson {
            lo: render(&self.lo),
            hi: render(&self.hi),
            multiplicity: self.multiplicity,
        }
        .serialize(s)
    }
}

/// Real roots of a univariate polynomial with multiplicities, sorted in
/// increasing order, isolating intervals pairwise disjoint.
#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub roots: Vec<IsolatedRoot>,
    #[serde(skip)]
    factors: Vec<UPoly>,
}

impl RootReport {
    pub fn total_distinct(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Square-free factor whose root is `roots[i]`.
    pub fn factor_of(&self, i: usize) -> &UPoly {
        &self.factors[self.roots[i].factor]
    }

    /// Halves the isolating interval of root `i` (no-op for exact roots).
    pub fn bisect(&mut self, i: usize) {
        let f = self.factors[self.roots[i].factor].clone();
        bisect_root(&mut self.roots[i], &f);
    }

    pub fn refine_to_width(&mut self, i: usize, width: &Rational) {
        while !self.roots[i].is_exact() && &self.roots[i].width() > width {
            self.bisect(i);
        }
    }

    /// Position of root `i` relative to the rational `t`, refining as needed.
    pub fn compare(&mut self, i: usize, t: &Rational) -> Ordering {
        loop {
            let r = &self.roots[i];
            if r.is_exact() {
                return r.lo.cmp(t);
            }
            if t <= &r.lo {
                return Ordering::Greater;
            }
            if t >= &r.hi {
                return Ordering::Less;
            }
            if self.factors[r.factor].eval(t).is_zero() {
                let r = &mut self.roots[i];
                r.lo = t.clone();
                r.hi = t.clone();
                return Ordering::Equal;
            }
            self.bisect(i);
        }
    }

    /// Indices of roots lying in `iv`, deciding boundary cases exactly.
    pub fn indices_in(&mut self, iv: &IntervalQ) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&i| {
                let lo_ok = match &iv.lo {
                    super::Bound::Unbounded => true,
                    super::Bound::Open(a) => self.compare(i, a) == Ordering::Greater,
                    super::Bound::Closed(a) => self.compare(i, a) != Ordering::Less,
                };
                let hi_ok = match &iv.hi {
                    super::Bound::Unbounded => true,
                    super::Bound::Open(b) => self.compare(i, b) == Ordering::Less,
                    super::Bound::Closed(b) => self.compare(i, b) != Ordering::Greater,
                };
                lo_ok && hi_ok
            })
            .collect()
    }

    /// Floating-point approximation of root `i` (midpoint after refinement
    /// to width 2^-40), for narratives and plots only.
    pub fn approx(&mut self, i: usize) -> f64 {
        self.refine_to_width(i, &pow2(-40));
        crate::algebra::rational::to_f64(&self.roots[i].midpoint())
    }
}

fn bisect_root(r: &mut IsolatedRoot, f: &UPoly) {
    if r.is_exact() {
        return;
    }
    let mid = r.midpoint();
    let sm = f.sign_at(&mid);
    if sm == 0 {
        r.lo = mid.clone();
        r.hi = mid;
        return;
    }
    // an endpoint may itself be a neighbouring root of the same factor
    let left = match (f.sign_at(&r.lo), f.sign_at(&r.hi)) {
        (0, 0) => SturmChain::new(f).count(&IntervalQ::open(r.lo.clone(), mid.clone())) == 1,
        (0, sh) => sh == sm,
        (sl, _) => sl != sm,
    };
    if left {
        r.hi = mid;
    } else {
        r.lo = mid;
    }
}

/// Power of two strictly above the Cauchy bound of `f`.
fn root_bound(f: &UPoly) -> Rational {
    let lc = f.leading_coefficient().abs();
    let m = f.coeffs()[..f.degree()]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    let b = m + int(1);
    let mut k = 0i64;
    while pow2(k) <= b {
        k += 1;
    }
    pow2(k)
}

fn isolate_square_free(f: &UPoly, factor: usize, multiplicity: u32, out: &mut Vec<IsolatedRoot>) {
    if f.degree() == 0 {
        return;
    }
    let chain = SturmChain::new(f);
    let b = root_bound(f);
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count(&IntervalQ::open(lo.clone(), hi.clone()));
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(IsolatedRoot { lo, hi, multiplicity, factor });
            continue;
        }
        let mid = (&lo + &hi) / int(2);
        if f.eval(&mid).is_zero() {
            out.push(IsolatedRoot {
                lo: mid.clone(),
                hi: mid.clone(),
                multiplicity,
                factor,
            });
        }
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
}

/// Isolates every real root of `p` (which must be nonzero) and attaches
/// multiplicities from the square-free decomposition. Bisection points are
/// dyadic rationals.
pub fn isolate_roots(p: &UPoly) -> RootReport {
    debug_assert!(!p.is_zero());
    let (_, parts) = p.square_free_decomposition();
    let mut roots = Vec::new();
    let mut factors = Vec::new();
    for (k, (f, mult)) in parts.into_iter().enumerate() {
        isolate_square_free(&f, k, mult, &mut roots);
        factors.push(f);
    }
    // roots of distinct factors are distinct; shrink until the intervals
    // separate
    loop {
        let mut clash = None;
        'outer: for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                if !roots[i].disjoint(&roots[j]) {
                    clash = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = clash else { break };
        for k in [i, j] {
            let f = factors[roots[k].factor].clone();
            bisect_root(&mut roots[k], &f);
        }
    }
    roots.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
    RootReport { roots, factors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn visible_factorisation() {
        // x^2 (x - 1)
        let p = UPoly::from_i64(&[0, 0, -1, 1]);
        let rep = isolate_roots(&p);
        assert_eq!(rep.total_distinct(), 2);
        let mults: Vec<_> = rep.roots.iter().map(|r| r.multiplicity).collect();
        assert_eq!(mults, vec![2, 1]);
        assert!(rep.roots[0].interval().contains(&int(0)));
        assert!(rep.roots[1].interval().contains(&int(1)));
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(isolate_roots(&UPoly::from_i64(&[5])).is_empty());
    }

    #[test]
    fn refinement_and_comparison() {
        // x^2 - 2
        let mut rep = isolate_roots(&UPoly::from_i64(&[-2, 0, 1]));
        assert_eq!(rep.total_distinct(), 2);
        rep.refine_to_width(1, &rat(1, 1000));
        let r = &rep.roots[1];
        assert!(&r.lo * &r.lo < int(2) && &r.hi * &r.hi > int(2));
        assert_eq!(rep.compare(1, &rat(141, 100)), Ordering::Greater);
        assert_eq!(rep.compare(1, &rat(142, 100)), Ordering::Less);
        assert_eq!(rep.indices_in(&IntervalQ::positive()), vec![1]);
    }

    #[test]
    fn endpoint_shared_with_neighbouring_root() {
        // (x^2 - 1)(x^2 - 2): the isolating interval of sqrt 2 may start at 1
        let mut rep = isolate_roots(&UPoly::from_i64(&[2, 0, -3, 0, 1]));
        assert_eq!(rep.total_distinct(), 4);
        let x = rep.approx(3);
        assert!((x - 2f64.sqrt()).abs() < 1e-9);
        let x = rep.approx(0);
        assert!((x + 2f64.sqrt()).abs() < 1e-9);
    }
}
