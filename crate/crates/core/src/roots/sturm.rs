use num_traits::Zero;

use super::interval::{Bound, IntervalQ};
use crate::algebra::{Rational, UPoly};

/// Sturm sequence of a polynomial's square-free part.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<UPoly>,
}

impl SturmChain {
    pub fn new(p: &UPoly) -> Self {
        let q = p.square_free_part();
        let mut seq = vec![q.clone()];
        if q.degree() == 0 {
            return SturmChain { seq };
        }
        seq.push(q.derivative());
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        SturmChain { seq }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn base(&self) -> &UPoly {
        &self.seq[0]
    }

    fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut prev = 0i8;
        let mut changes = 0;
        for s in signs.filter(|s| *s != 0) {
            if prev != 0 && s != prev {
                changes += 1;
            }
            prev = s;
        }
        changes
    }

    pub fn variations_at(&self, t: &Rational) -> usize {
        Self::count_changes(self.seq.iter().map(|p| p.sign_at(t)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::count_changes(self.seq.iter().map(UPoly::sign_at_pos_inf))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::count_changes(self.seq.iter().map(UPoly::sign_at_neg_inf))
    }

    /// Variation count at the lower and upper ends of an interval.
    pub fn variations(&self, iv: &IntervalQ) -> (usize, usize) {
        let lo = match iv.lo.value() {
            None => self.variations_at_neg_inf(),
            Some(a) => self.variations_at(a),
        };
        let hi = match iv.hi.value() {
            None => self.variations_at_pos_inf(),
            Some(b) => self.variations_at(b),
        };
        (lo, hi)
    }

    /// Number of distinct real roots in the interval.
    ///
    /// `V(a) - V(b)` counts the roots in `(a, b]` for a square-free base
    /// polynomial; closed/open ends are then corrected by exact evaluation.
    pub fn count(&self, iv: &IntervalQ) -> usize {
        if iv.is_empty() {
            return 0;
        }
        let base = self.base();
        if base.degree() == 0 {
            return 0;
        }
        if let (Bound::Closed(a), Bound::Closed(b)) = (&iv.lo, &iv.hi) {
            if a == b {
                return usize::from(base.eval(a).is_zero());
            }
        }
        let (vlo, vhi) = self.variations(iv);
        let mut n = vlo as i64 - vhi as i64;
        if let Bound::Closed(a) = &iv.lo {
            if base.eval(a).is_zero() {
                n += 1;
            }
        }
        if let Bound::Open(b) = &iv.hi {
            if base.eval(b).is_zero() {
                n -= 1;
            }
        }
        debug_assert!(n >= 0);
        n.max(0) as usize
    }
}

/// Distinct real roots of `p` in `iv`. `p` must not be the zero polynomial.
pub fn sturm_count(p: &UPoly, iv: &IntervalQ) -> usize {
    debug_assert!(!p.is_zero());
    SturmChain::new(p).count(iv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn single_positive_root() {
        let p = UPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(sturm_count(&p, &IntervalQ::positive()), 1);
        assert_eq!(sturm_count(&p, &IntervalQ::real_line()), 2);
    }

    #[test]
    fn double_root_at_zero_counted_once() {
        // r^2 (2 r^2 - 3)
        let w = UPoly::from_i64(&[0, 0, -3, 0, 2]);
        assert_eq!(sturm_count(&w, &IntervalQ::nonnegative()), 2);
        assert_eq!(sturm_count(&w, &IntervalQ::positive()), 1);
    }

    #[test]
    fn no_real_roots() {
        let p = UPoly::from_i64(&[1, 0, 1]);
        assert_eq!(sturm_count(&p, &IntervalQ::real_line()), 0);
    }

    #[test]
    fn endpoint_handling() {
        // roots at -1 and 1
        let p = UPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(sturm_count(&p, &IntervalQ::closed(int(-1), int(1))), 2);
        assert_eq!(sturm_count(&p, &IntervalQ::open(int(-1), int(1))), 0);
        assert_eq!(
            sturm_count(&p, &IntervalQ::new(Bound::Open(int(-1)), Bound::Closed(int(1)))),
            1
        );
        assert_eq!(sturm_count(&p, &IntervalQ::closed(int(1), int(1))), 1);
    }
}
