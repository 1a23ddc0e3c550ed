//! Cardano, trigonometric and Descartes-resolvent solvers for monic cubics
//! and quartics. Every root they produce is matched against an exact
//! bisection enclosure of the same polynomial.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::certified::CertifiedReal;
use super::poly::{require_monic, IntegerPolynomial};
use crate::error::{Error, Result};

/// Largest admissible gap between a radical value and its enclosure.
pub const CERTIFY_TOLERANCE: f64 = 1e-9;

/// Width of the exact bisection enclosures.
pub fn isolation_width() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10u64).pow(12))
}

/// A real root computed in floating point from a radical expression,
/// together with the exact enclosure it was certified against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadicalRoot {
    pub value: f64,
    pub enclosure: CertifiedReal,
}

pub(crate) fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn rat(c: &BigInt) -> BigRational {
    BigRational::from_integer(c.clone())
}

/// Real roots of `t³ + p t + q`. The branch is chosen on the exact sign of
/// the discriminant `q²/4 + p³/27`.
pub(crate) fn depressed_cubic_roots(p: &BigRational, q: &BigRational) -> Vec<f64> {
    let disc = q * q / BigInt::from(4) + p * p * p / BigInt::from(27);
    let (pf, qf) = (to_f64(p), to_f64(q));
    if p.is_zero() {
        return vec![(-qf).cbrt()];
    }
    if disc.is_positive() {
        let root = to_f64(&disc).sqrt();
        return vec![(-qf / 2.0 + root).cbrt() + (-qf / 2.0 - root).cbrt()];
    }
    if disc.is_zero() {
        return vec![3.0 * qf / pf, -1.5 * qf / pf];
    }
    let amplitude = 2.0 * (-pf / 3.0).sqrt();
    let angle = ((3.0 * qf / (2.0 * pf)) * (-3.0 / pf).sqrt()).clamp(-1.0, 1.0).acos() / 3.0;
    (0..3)
        .map(|k| amplitude * (angle - 2.0 * PI * f64::from(k) / 3.0).cos())
        .collect()
}

/// Real roots of `u³ + b2 u² + b1 u + b0`.
pub(crate) fn monic_cubic_roots(b2: &BigRational, b1: &BigRational, b0: &BigRational) -> Vec<f64> {
    let three = BigInt::from(3);
    let p = b1 - b2 * b2 / &three;
    let q = b2 * b2 * b2 * BigInt::from(2) / BigInt::from(27) - b2 * b1 / &three + b0;
    let shift = to_f64(b2) / 3.0;
    depressed_cubic_roots(&p, &q)
        .into_iter()
        .map(|t| t - shift)
        .collect()
}

/// `sqrt` that treats round-off sized negatives as zero and rejects the rest.
fn sqrt_nonnegative(x: f64, scale: f64) -> Option<f64> {
    if x >= 0.0 {
        Some(x.sqrt())
    } else if x > -1e-12 * scale.max(1.0) {
        Some(0.0)
    } else {
        None
    }
}

/// Real roots of `x⁴ + p x² + q x + r`.
pub(crate) fn depressed_quartic_roots(p: &BigRational, q: &BigRational, r: &BigRational) -> Vec<f64> {
    let (pf, qf) = (to_f64(p), to_f64(q));
    let mut out = Vec::new();
    if q.is_zero() {
        let disc = p * p - r * BigInt::from(4);
        if disc.is_negative() {
            return out;
        }
        let root = to_f64(&disc).sqrt();
        for w in [(-pf + root) / 2.0, (-pf - root) / 2.0] {
            if let Some(s) = sqrt_nonnegative(w, pf.abs()) {
                out.push(s);
                out.push(-s);
            }
        }
        return out;
    }
    let u = descartes_resolvent_root(p, q, r);
    let s = u.sqrt();
    let scale = u + pf.abs();
    if let Some(d) = sqrt_nonnegative(-u - 2.0 * pf + 2.0 * qf / s, scale) {
        out.push((-s + d) / 2.0);
        out.push((-s - d) / 2.0);
    }
    if let Some(d) = sqrt_nonnegative(-u - 2.0 * pf - 2.0 * qf / s, scale) {
        out.push((s + d) / 2.0);
        out.push((s - d) / 2.0);
    }
    out
}

/// Largest root of `u³ + 2p u² + (p² − 4r) u − q²`; positive when `q ≠ 0`.
pub(crate) fn descartes_resolvent_root(p: &BigRational, q: &BigRational, r: &BigRational) -> f64 {
    let (b2, b1, b0) = descartes_resolvent(p, q, r);
    monic_cubic_roots(&b2, &b1, &b0)
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Coefficients `(A2, A1, A0)` of the Descartes resolvent.
pub(crate) fn descartes_resolvent(
    p: &BigRational,
    q: &BigRational,
    r: &BigRational,
) -> (BigRational, BigRational, BigRational) {
    (p * BigInt::from(2), p * p - r * BigInt::from(4), -(q * q))
}

/// Depressed form `(p, q, r)` of the monic quartic with coefficients
/// `a3, a2, a1, a0`, under `y = x − a3/4`.
pub(crate) fn depress_quartic(
    a3: &BigRational,
    a2: &BigRational,
    a1: &BigRational,
    a0: &BigRational,
) -> (BigRational, BigRational, BigRational) {
    let i = |n: i64| BigInt::from(n);
    let a3sq = a3 * a3;
    let p = (a2 * i(8) - &a3sq * i(3)) / i(8);
    let q = (&a3sq * a3 - a3 * a2 * i(4) + a1 * i(8)) / i(8);
    let r = (-(&a3sq * &a3sq) * i(3) + a0 * i(256) - a3 * a1 * i(64) + &a3sq * a2 * i(16)) / i(256);
    (p, q, r)
}

/// Pairs each exact root of `poly` with the nearest radical value.
///
/// Fails when some exact root has no value within [`CERTIFY_TOLERANCE`], or
/// some value lies farther than that from every exact root.
pub fn certify(poly: &IntegerPolynomial, values: &[f64]) -> Result<Vec<RadicalRoot>> {
    let exact = poly.real_roots(&isolation_width());
    for &v in values {
        let gap = exact
            .iter()
            .map(|e| e.distance_to(v))
            .fold(f64::INFINITY, f64::min);
        if gap.is_nan() || gap > CERTIFY_TOLERANCE {
            return Err(Error::Certification {
                value: v,
                tolerance: CERTIFY_TOLERANCE,
            });
        }
    }
    exact
        .into_iter()
        .map(|enclosure| {
            let best = values
                .iter()
                .copied()
                .min_by(|a, b| enclosure.distance_to(*a).total_cmp(&enclosure.distance_to(*b)));
            match best {
                Some(value) if enclosure.distance_to(value) <= CERTIFY_TOLERANCE => {
                    Ok(RadicalRoot { value, enclosure })
                }
                _ => Err(Error::Certification {
                    value: enclosure.midpoint_f64(),
                    tolerance: CERTIFY_TOLERANCE,
                }),
            }
        })
        .collect()
}

/// All real roots of a monic cubic, in ascending order.
pub fn solve_cubic(poly: &IntegerPolynomial) -> Result<Vec<RadicalRoot>> {
    require_monic(poly, 3)?;
    let c = poly.coeffs();
    certify(poly, &monic_cubic_roots(&rat(&c[2]), &rat(&c[1]), &rat(&c[0])))
}

/// All real roots of a monic quartic, in ascending order.
pub fn solve_quartic(poly: &IntegerPolynomial) -> Result<Vec<RadicalRoot>> {
    require_monic(poly, 4)?;
    let c = poly.coeffs();
    let a3 = rat(&c[3]);
    let (p, q, r) = depress_quartic(&a3, &rat(&c[2]), &rat(&c[1]), &rat(&c[0]));
    let shift = to_f64(&a3) / 4.0;
    let values: Vec<f64> = depressed_quartic_roots(&p, &q, &r)
        .into_iter()
        .map(|x| x - shift)
        .collect();
    certify(poly, &values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    fn values(roots: &[RadicalRoot]) -> Vec<f64> {
        roots.iter().map(|r| r.value).collect()
    }

    fn assert_close(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-9, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn cubic_examples() {
        let s13 = 13f64.sqrt();
        assert_close(
            &values(&solve_cubic(&poly(&[-3, -4, 0, 1])).unwrap()),
            &[(1.0 - s13) / 2.0, -1.0, (1.0 + s13) / 2.0],
        );
        assert_close(&values(&solve_cubic(&poly(&[-1, 0, 0, 1])).unwrap()), &[1.0]);
        assert_close(&values(&solve_cubic(&poly(&[0, 0, 0, 1])).unwrap()), &[0.0]);
        // (z − 1)²(z + 2): zero discriminant
        assert_close(&values(&solve_cubic(&poly(&[2, -3, 0, 1])).unwrap()), &[-2.0, 1.0]);
        // non-depressed input
        assert_close(&values(&solve_cubic(&poly(&[-6, 11, -6, 1])).unwrap()), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn quartic_examples() {
        let s5 = 5f64.sqrt();
        assert_close(&values(&solve_quartic(&poly(&[0, 0, -5, 0, 1])).unwrap()), &[-s5, 0.0, s5]);
        assert_close(&values(&solve_quartic(&poly(&[-1, 0, 0, 0, 1])).unwrap()), &[-1.0, 1.0]);
        let (s2, s3) = (2f64.sqrt(), 3f64.sqrt());
        assert_close(
            &values(&solve_quartic(&poly(&[6, 0, -5, 0, 1])).unwrap()),
            &[-s3, -s2, s2, s3],
        );
        // (z − 1)(z − 2)(z − 3)(z − 4)
        assert_close(
            &values(&solve_quartic(&poly(&[24, -50, 35, -10, 1])).unwrap()),
            &[1.0, 2.0, 3.0, 4.0],
        );
        // (z + 1)(z − 2)(z² + 1): two real roots, nonzero q
        assert_close(&values(&solve_quartic(&poly(&[-2, -1, -1, -1, 1])).unwrap()), &[-1.0, 2.0]);
        assert!(solve_quartic(&poly(&[1, 0, 0, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_monic() {
        assert_eq!(solve_cubic(&poly(&[1, 0, 0, 2])), Err(Error::NotMonic(3)));
        assert_eq!(solve_quartic(&poly(&[1, 0, 1])), Err(Error::NotMonic(4)));
    }

    #[test]
    fn certify_rejects_wrong_values() {
        assert!(matches!(
            certify(&poly(&[-2, 0, 1]), &[1.5, -1.5]),
            Err(Error::Certification { .. })
        ));
        assert!(matches!(
            certify(&poly(&[-2, 0, 1]), &[2f64.sqrt()]),
            Err(Error::Certification { .. })
        ));
    }
}
