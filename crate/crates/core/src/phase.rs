use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::rational::Rational64;
use num::{ToPrimitive, Zero};

use crate::error::Error;

/// An element of `Q/Z`, stored as a reduced fraction in `[0, 1)`.
///
/// Phases are the additive logarithms of roots of unity: a phase `a/b` stands
/// for the scalar `exp(2 pi i a/b)`.  All arithmetic is exact; the reduction
/// into `[0, 1)` happens on every operation so equality is structural.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Phase(Rational64);

impl Phase {
    pub const ZERO: Phase = Phase(Rational64::new_raw(0, 1));

    /// `numer/denom` reduced into `[0, 1)`.  Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Phase {
        assert!(denom != 0, "phase denominator must be nonzero");
        Phase::from_rational(Rational64::new(numer, denom))
    }

    pub fn from_rational(r: Rational64) -> Phase {
        Phase(r - r.floor())
    }

    pub fn zero() -> Phase {
        Phase::ZERO
    }

    pub fn half() -> Phase {
        Phase::new(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Numerator of the reduced representative in `[0, 1)`.
    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    /// Denominator of the reduced representative (always >= 1).
    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// Integer scalar multiple `k * self` in `Q/Z`.
    pub fn times(&self, k: i64) -> Phase {
        Phase::from_rational(self.0 * Rational64::from_integer(k))
    }

    /// The representative in `[0, 1)` as a float.
    pub fn as_f64(&self) -> f64 {
        self.0.to_f64().expect("phase fits in f64")
    }

    /// If `self == k/denom` for an integer `k`, returns `k` (reduced mod `denom`).
    pub fn numerator_in_lattice(&self, denom: u64) -> Option<u64> {
        let scaled = self.0 * Rational64::from_integer(denom as i64);
        if scaled.is_integer() {
            Some(scaled.to_integer().rem_euclid(denom as i64) as u64)
        } else {
            None
        }
    }

    /// True if `self` lies in the lattice `(1/denom) Z / Z`.
    pub fn in_lattice(&self, denom: u64) -> bool {
        self.numerator_in_lattice(denom).is_some()
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::from_rational(self.0 + rhs.0)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase::from_rational(self.0 - rhs.0)
    }
}

impl SubAssign for Phase {
    fn sub_assign(&mut self, rhs: Phase) {
        *self = *self - rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_rational(-self.0)
    }
}

impl Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |acc, p| acc + p)
    }
}

impl Hash for Phase {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.numer().hash(state);
        self.denom().hash(state);
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({})", self)
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// Accepts `"0"`, integers (which reduce to `0`), and `"a/b"`.
    fn from_str(s: &str) -> Result<Phase, Error> {
        let s = s.trim();
        let bad = || Error::Validation(format!("cannot parse phase from {s:?}"));
        match s.split_once('/') {
            None => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                Ok(Phase::new(n, 1))
            }
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Phase::new(n, d))
            }
        }
    }
}
