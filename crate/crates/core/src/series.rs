//! Truncated formal power series with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::census::{MultiplierClass, PeriodicCensus};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 16;

/// `c_0 + c_1 z + … + c_T z^T + O(z^{T+1})`.
///
/// Binary operations truncate to the smaller order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Pads with zeros or truncates so that the order is `order`.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn from_integers<I, T>(values: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            values
                .into_iter()
                .take(order + 1)
                .map(|v| BigRational::from_integer(v.into()))
                .collect(),
            order,
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c z^k`, which is zero when `k > order`.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The truncation order `T`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coefficients as integers, if all of them are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// First index `<= min(T, T')` where the series differ.
    pub fn first_mismatch(&self, other: &PowerSeries) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `z^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let t = self.order();
        let mut coeffs = vec![BigRational::zero(); k.min(t + 1)];
        coeffs.extend(self.coeffs.iter().take((t + 1).saturating_sub(k)).cloned());
        Self { coeffs }
    }

    /// Division by `z^k`; the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::InvalidData(format!(
                "cannot divide a series of order {} by z^{k}",
                self.order()
            )));
        }
        if let Some(c) = self.coeffs[..k].iter().find(|c| !c.is_zero()) {
            return Err(Error::ConstantTerm {
                expected: "0".into(),
                found: c.to_string(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ConstantTerm {
                expected: "nonzero".into(),
                found: "0".into(),
            });
        }
        let inv0 = c0.recip();
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let acc: BigRational = (1..=n).map(|k| &self.coeffs[k] * &out[n - k]).sum();
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// `self / other`, cancelling a common power of `z` first. The order drops
    /// by the valuation of `other`.
    pub fn divide(&self, other: &PowerSeries) -> Result<Self> {
        let order = self.order().min(other.order());
        let v = other.truncate(order).valuation().ok_or_else(|| Error::ConstantTerm {
            expected: "nonzero".into(),
            found: "0".into(),
        })?;
        let num = self.truncate(order).shift_down(v)?;
        let den = other.truncate(order).shift_down(v)?;
        Ok(&num * &den.inverse()?)
    }

    /// Square root with constant term 1, by Newton iteration
    /// `s ← (s + a/s)/2` doubling the number of correct coefficients.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm {
                expected: "1".into(),
                found: self.coeffs[0].to_string(),
            });
        }
        let order = self.order();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut s = Self::one(0);
        let mut precision = 0;
        while precision < order {
            precision = (2 * precision + 1).min(order);
            let s_ext = Self::new(s.coeffs.clone(), precision);
            let quotient = &self.truncate(precision) * &s_ext.inverse()?;
            s = (&s_ext + &quotient).scale(&half);
        }
        Ok(Self::new(s.coeffs, order))
    }

    /// `exp` of a series with zero constant term, from `n e_n = Σ k a_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                expected: "0".into(),
                found: self.coeffs[0].to_string(),
            });
        }
        let mut out = vec![BigRational::one()];
        for n in 1..self.coeffs.len() {
            let acc: BigRational = (1..=n)
                .map(|k| &self.coeffs[k] * &out[n - k] * BigInt::from(k))
                .sum();
            out.push(acc / BigInt::from(n));
        }
        Ok(Self { coeffs: out })
    }

    /// `log` of a series with constant term 1, as the integral of `a'/a`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm {
                expected: "1".into(),
                found: self.coeffs[0].to_string(),
            });
        }
        let quotient = &self.derivative() * &self.inverse()?;
        Ok(quotient.integral())
    }

    /// Formal derivative; the order drops by one (kept at least zero).
    pub fn derivative(&self) -> Self {
        let order = self.order().saturating_sub(1);
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
            order,
        )
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / BigInt::from(k + 1)),
        );
        Self { coeffs }
    }

    /// Integer power; negative exponents go through [`PowerSeries::inverse`].
    pub fn powi(&self, exponent: i64) -> Result<Self> {
        let base = if exponent < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = exponent.unsigned_abs();
        let mut result = Self::one(self.order());
        let mut square = base;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &square;
            }
            e >>= 1;
            if e > 0 {
                square = &square * &square;
            }
        }
        Ok(result)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{magnitude} ")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// JSON array of `"p/q"` strings, denominators of one omitted.
impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs[..len].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..len - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for PowerSeries {
            type Output = PowerSeries;
            fn $method(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        -&self
    }
}

/// `exp(Σ_{n<=T} p_n zⁿ/n)` from a count sequence `p_1, p_2, …`.
pub fn zeta_from_counts(counts: &[BigUint], order: usize) -> Result<PowerSeries> {
    if counts.len() < order {
        return Err(Error::CensusTooShort {
            requested: order,
            available: counts.len(),
        });
    }
    let mut coeffs = vec![BigRational::zero()];
    coeffs.extend(
        counts[..order]
            .iter()
            .enumerate()
            .map(|(i, p)| BigRational::new(BigInt::from(p.clone()), BigInt::from(i + 1))),
    );
    PowerSeries::new(coeffs, order).exp()
}

/// Zeta function of the census, truncated at `order`.
pub fn zeta_from_census(census: &PeriodicCensus, order: usize) -> Result<PowerSeries> {
    zeta_from_counts(&census.totals(), order)
}

/// Zeta function of one multiplier class of the census.
pub fn class_zeta_from_census(
    census: &PeriodicCensus,
    class: MultiplierClass,
    order: usize,
) -> Result<PowerSeries> {
    zeta_from_counts(&census.class_counts(class), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const T: usize = 12;

    fn ints(values: &[i64]) -> PowerSeries {
        PowerSeries::from_integers(values.iter().copied(), T)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&ints(&[1, 1]) * &ints(&[1, -1]), ints(&[1, 0, -1]));
        assert_eq!(&ints(&[0, 1]) + &ints(&[0, 1]), ints(&[0, 2]));
        assert_eq!(&ints(&[0, 0, 2]) * &ints(&[0, 0, 0, 3]), ints(&[0, 0, 0, 0, 0, 6]));
        let short = PowerSeries::from_integers([1, 1], 3);
        assert_eq!((&short * &ints(&[1, 1])).order(), 3);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(ints(&[1, -1]).inverse().unwrap(), ints(&[1; 13]));
        assert_eq!(
            ints(&[2]).inverse().unwrap(),
            PowerSeries::constant(rat(1, 2), T)
        );
        let geometric: Vec<i64> = (0..=T).map(|k| if k % 2 == 0 { 1 << k } else { 0 }).collect();
        assert_eq!(ints(&[1, 0, -4]).inverse().unwrap(), ints(&geometric));
        assert!(ints(&[0, 1]).inverse().is_err());
    }

    #[test]
    fn sqrt_examples() {
        let s = ints(&[1, 0, -8]).sqrt().unwrap();
        assert_eq!(&s.coeffs()[..5], &ints(&[1, 0, -4, 0, -8]).coeffs()[..5]);
        assert_eq!(&s * &s, ints(&[1, 0, -8]));
        assert_eq!(ints(&[1]).sqrt().unwrap(), ints(&[1]));
        assert_eq!(ints(&[1, -2, 1]).sqrt().unwrap(), ints(&[1, -1]));
        assert!(ints(&[4]).sqrt().is_err());
    }

    #[test]
    fn exp_log_examples() {
        assert_eq!(PowerSeries::zero(T).exp().unwrap(), PowerSeries::one(T));
        let mercator = PowerSeries::new(
            std::iter::once(BigRational::zero())
                .chain((1..=T as i64).map(|k| rat(1, k)))
                .collect(),
            T,
        );
        assert_eq!(ints(&[1, -1]).inverse().unwrap().log().unwrap(), mercator);
        let arg = PowerSeries::new(vec![rat(0, 1), rat(4, 1), rat(6, 1)], 2);
        assert_eq!(arg.exp().unwrap(), PowerSeries::from_integers([1, 4, 14], 2));
        assert!(ints(&[1]).exp().is_err());
        assert!(ints(&[2]).log().is_err());
    }

    #[test]
    fn zeta_of_counts() {
        let none = vec![BigUint::ZERO; 6];
        assert_eq!(zeta_from_counts(&none, 6).unwrap(), PowerSeries::one(6));
        let dyck = [4u32, 12].map(BigUint::from);
        assert_eq!(
            zeta_from_counts(&dyck, 2).unwrap(),
            PowerSeries::from_integers([1, 4, 14], 2)
        );
        let neutral = [0u32, 4].map(BigUint::from);
        assert_eq!(
            zeta_from_counts(&neutral, 2).unwrap(),
            PowerSeries::from_integers([1, 0, 2], 2)
        );
        assert!(matches!(
            zeta_from_counts(&dyck, 3),
            Err(Error::CensusTooShort { requested: 3, available: 2 })
        ));
    }

    #[test]
    fn shifts_and_division() {
        let s = ints(&[0, 0, 3, 1]);
        assert_eq!(s.shift_down(2).unwrap(), PowerSeries::from_integers([3, 1], T - 2));
        assert!(s.shift_down(3).is_err());
        assert_eq!(ints(&[1, 2]).shift_up(3), ints(&[0, 0, 0, 1, 2]));
        let q = ints(&[0, 2, 2]).divide(&ints(&[0, 1])).unwrap();
        assert_eq!(q, PowerSeries::from_integers([2, 2], T - 1));
        assert_eq!(ints(&[1, 1]).powi(-2).unwrap(), ints(&[1, 1]).inverse().unwrap().powi(2).unwrap());
    }

    #[test]
    fn display_and_json() {
        let s = PowerSeries::new(vec![rat(1, 1), rat(-1, 2), rat(0, 1), rat(3, 1)], 3);
        assert_eq!(s.to_string(), "1 - 1/2 z + 3 z^3 + O(z^4)");
        let json = serde_json::to_string(&PowerSeries::new(vec![rat(1, 2)], 1)).unwrap();
        assert_eq!(json, r#"["1/2","0"]"#);
        assert_eq!(PowerSeries::zero(2).to_string(), "0 + O(z^3)");
    }

    fn arb_series() -> impl Strategy<Value = PowerSeries> {
        prop::collection::vec((-20i64..20, 1i64..6), T + 1).prop_map(|v| {
            PowerSeries::new(v.into_iter().map(|(n, d)| rat(n, d)).collect(), T)
        })
    }

    fn unit_series() -> impl Strategy<Value = PowerSeries> {
        arb_series().prop_map(|s| {
            let mut c = s.coeffs().to_vec();
            c[0] = BigRational::one();
            PowerSeries::new(c, T)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn round_trips(u in unit_series()) {
            prop_assert_eq!(&u * &u.inverse().unwrap(), PowerSeries::one(T));
            let r = u.sqrt().unwrap();
            prop_assert_eq!(&r * &r, u.clone());
            prop_assert_eq!(u.log().unwrap().truncate(T).exp().unwrap(), u);
        }
    }
}
