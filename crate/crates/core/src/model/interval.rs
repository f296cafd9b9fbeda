use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// A sub-interval of `[0, 1]` with independently open or closed endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
    lo_open: bool,
    hi_open: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_open: bool, hi_open: bool) -> Result<Self> {
        let bad = |why: &str| {
            Err(Error::InvalidDistribution {
                context: format!(
                    "interval {}{}, {}{}",
                    if lo_open { '(' } else { '[' },
                    format_rational(&lo),
                    format_rational(&hi),
                    if hi_open { ')' } else { ']' }
                ),
                reason: why.to_owned(),
            })
        };
        if lo < Rational::zero() || hi > Rational::one() {
            return bad("bounds must lie in [0, 1]");
        }
        if lo > hi {
            return bad("lower bound exceeds upper bound");
        }
        if lo == hi && (lo_open || hi_open) {
            return bad("a point interval must be closed");
        }
        Ok(Interval {
            lo,
            hi,
            lo_open,
            hi_open,
        })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn point(p: Rational) -> Result<Self> {
        Self::new(p.clone(), p, false, false)
    }

    pub fn zero() -> Self {
        Interval {
            lo: Rational::zero(),
            hi: Rational::zero(),
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_closed(&self) -> bool {
        !self.lo_open && !self.hi_open
    }

    pub fn contains(&self, p: &Rational) -> bool {
        let above = if self.lo_open {
            p > &self.lo
        } else {
            p >= &self.lo
        };
        let below = if self.hi_open {
            p < &self.hi
        } else {
            p <= &self.hi
        };
        above && below
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    pub fn closure(&self) -> Interval {
        Interval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            lo_open: false,
            hi_open: false,
        }
    }

    /// Whether some value strictly above zero lies in the interval, i.e. the
    /// edge can carry probability.
    pub fn allows_positive(&self) -> bool {
        self.hi > Rational::zero()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            format_rational(&self.lo),
            format_rational(&self.hi),
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// Decides whether values `x_i ∈ intervals[i]` exist with `Σ x_i = target`.
///
/// The achievable sums form an interval from `Σ lo` to `Σ hi`, closed at an end
/// exactly when every contributing bound is closed.
pub fn sum_attainable<'a, I>(intervals: I, target: &Rational) -> bool
where
    I: IntoIterator<Item = &'a Interval>,
{
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    let mut lo_open = false;
    let mut hi_open = false;
    for iv in intervals {
        lo += &iv.lo;
        hi += &iv.hi;
        lo_open |= iv.lo_open;
        hi_open |= iv.hi_open;
    }
    let above = if lo_open { target > &lo } else { target >= &lo };
    let below = if hi_open { target < &hi } else { target <= &hi };
    above && below
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn membership_respects_flags() {
        let iv = Interval::new(ratio(0, 1), ratio(1, 1), true, false).unwrap();
        assert!(!iv.contains(&ratio(0, 1)));
        assert!(iv.contains(&ratio(1, 1)));
        assert!(iv.contains(&ratio(1, 2)));
        assert!(!iv.contains_zero());
        assert!(iv.closure().contains_zero());
        assert_eq!(iv.to_string(), "(0/1, 1/1]");
    }

    #[test]
    fn rejects_malformed() {
        assert!(Interval::new(ratio(2, 3), ratio(1, 3), false, false).is_err());
        assert!(Interval::new(ratio(1, 3), ratio(1, 3), true, false).is_err());
        assert!(Interval::new(ratio(0, 1), ratio(3, 2), false, false).is_err());
    }

    #[test]
    fn sums() {
        let a = Interval::closed(ratio(3, 5), ratio(7, 10)).unwrap();
        assert!(!sum_attainable([&a, &a], &ratio(1, 1)));
        let h = Interval::new(ratio(0, 1), ratio(1, 2), false, true).unwrap();
        assert!(!sum_attainable([&h, &h], &ratio(1, 1)));
        assert!(!sum_attainable([&h, &h.closure()], &ratio(1, 1)));
        let g = Interval::closed(ratio(1, 2), ratio(1, 1)).unwrap();
        assert!(sum_attainable([&h, &g], &ratio(1, 1)));
    }
}
