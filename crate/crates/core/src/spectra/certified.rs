use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A real number known to lie in the closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CertifiedReal {
    lo: BigRational,
    hi: BigRational,
}

impl CertifiedReal {
    /// # Panics
    /// If `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty enclosure");
        Self { lo, hi }
    }

    pub fn exact(value: BigRational) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
        }
    }

    /// Smallest interval with `f64` endpoints that contains `[lo, hi]` after
    /// widening each side by one ulp.
    pub fn from_f64_bounds(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::Certification {
                value: lo,
                tolerance: hi - lo,
            });
        }
        let lo = BigRational::from_float(lo.next_down()).expect("finite");
        let hi = BigRational::from_float(hi.next_up()).expect("finite");
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64().unwrap_or(f64::INFINITY)
    }

    /// A float no larger than `lo`.
    pub fn lower_f64(&self) -> f64 {
        round_down(&self.lo)
    }

    /// A float no smaller than `hi`.
    pub fn upper_f64(&self) -> f64 {
        round_up(&self.hi)
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigInt::from(2)).to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        BigRational::from_float(x).is_some_and(|q| self.contains(&q))
    }

    /// Distance from `x` to the interval, zero when `x` lies inside.
    pub fn distance_to(&self, x: f64) -> f64 {
        match BigRational::from_float(x) {
            None => f64::INFINITY,
            Some(q) if q < self.lo => (&self.lo - q).to_f64().unwrap_or(f64::INFINITY),
            Some(q) if q > self.hi => (q - &self.hi).to_f64().unwrap_or(f64::INFINITY),
            Some(_) => 0.0,
        }
    }

    /// Gap between the two intervals, zero when they overlap.
    pub fn separation(&self, other: &Self) -> BigRational {
        if self.hi < other.lo {
            &other.lo - &self.hi
        } else if other.hi < self.lo {
            &self.lo - &other.hi
        } else {
            BigRational::zero()
        }
    }

    /// Interval natural logarithm. Each endpoint is pushed outward by a few
    /// ulps so the result encloses the true image despite libm rounding.
    pub fn ln(&self) -> Result<Self> {
        if !self.lo.is_positive() {
            return Err(Error::InvalidData(format!(
                "logarithm of an interval reaching {}",
                self.lo
            )));
        }
        if self.lo.is_one() && self.hi.is_one() {
            return Ok(Self::exact(BigRational::zero()));
        }
        let lo = outward(round_down(&self.lo).ln(), -1);
        let hi = outward(round_up(&self.hi).ln(), 1);
        Self::from_f64_bounds(lo, hi)
    }
}

/// Moves `x` by two ulps in the direction of `sign`.
fn outward(x: f64, sign: i32) -> f64 {
    if sign < 0 {
        x.next_down().next_down()
    } else {
        x.next_up().next_up()
    }
}

fn round_down(q: &BigRational) -> f64 {
    let x = q.to_f64().unwrap_or(f64::NEG_INFINITY);
    match BigRational::from_float(x) {
        Some(exact) if &exact > q => x.next_down(),
        _ => x,
    }
}

fn round_up(q: &BigRational) -> f64 {
    let x = q.to_f64().unwrap_or(f64::INFINITY);
    match BigRational::from_float(x) {
        Some(exact) if &exact < q => x.next_up(),
        _ => x,
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
fn decimal(x: f64) -> String {
    format!("{x:.16e}")
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", decimal(self.lower_f64()), decimal(self.upper_f64()))
    }
}

impl Serialize for CertifiedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            lo: String,
            hi: String,
            decimal: [String; 2],
        }
        Repr {
            lo: self.lo.to_string(),
            hi: self.hi.to_string(),
            decimal: [decimal(self.lower_f64()), decimal(self.upper_f64())],
        }
        .serialize(serializer)
    }
}
