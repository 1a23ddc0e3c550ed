//! Integer polynomials, exact characteristic polynomials and Sturm-sequence
//! real-root isolation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::certified::CertifiedReal;
use crate::error::{Error, Result};
use crate::graphs::AdjacencyMatrix;

/// Polynomial with arbitrary-precision integer coefficients, lowest degree
/// first. Trailing zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `q` with `self(z) = q(z²)`, when every odd coefficient vanishes.
    pub fn even_part(&self) -> Option<Self> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Sign of the value at `x`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// `self / gcd(self, self')`, made primitive with a positive leading
    /// coefficient. Its real roots are those of `self`, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = rational_gcd(self.to_rational(), self.derivative().to_rational());
        let (quotient, _) = rational_divmod(&self.to_rational(), &g);
        let mut out = primitive_positive(&quotient);
        if out.coeffs.last().is_some_and(Signed::is_negative) {
            out = out.neg();
        }
        out
    }

    /// Upper bound on the absolute value of every root (Cauchy).
    pub fn root_bound(&self) -> BigRational {
        let lead = BigRational::from_integer(
            self.coeffs.last().cloned().unwrap_or_else(BigInt::one).abs(),
        );
        let max = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| BigRational::from_integer(c.abs()) / &lead)
            .max()
            .unwrap_or_default();
        BigRational::one() + max
    }

    /// Isolates every distinct real root in ascending order, each to an
    /// enclosure of width at most `width`. Exact rational roots come back as
    /// degenerate intervals.
    pub fn real_roots(&self, width: &BigRational) -> Vec<CertifiedReal> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sqf = self.squarefree_part();
        let chain = SturmChain::new(&sqf);
        let bound = sqf.root_bound();
        let mut pending = vec![(-bound.clone(), bound)];
        let mut isolated = Vec::new();
        while let Some((lo, hi)) = pending.pop() {
            match chain.count(&lo, &hi) {
                0 => {}
                1 => isolated.push(refine(&sqf, lo, hi, width)),
                _ => {
                    let mid = (&lo + &hi) / BigInt::from(2);
                    pending.push((lo, mid.clone()));
                    pending.push((mid, hi));
                }
            }
        }
        isolated.sort_by(|a, b| a.lo().cmp(b.lo()));
        isolated
    }
}

/// Bisects `(lo, hi]`, which holds exactly one root of the squarefree `p`.
fn refine(p: &IntegerPolynomial, mut lo: BigRational, mut hi: BigRational, width: &BigRational) -> CertifiedReal {
    let hi_sign = p.sign_at(&hi);
    if hi_sign == Ordering::Equal {
        return CertifiedReal::exact(hi);
    }
    let two = BigInt::from(2);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        match p.sign_at(&mid) {
            Ordering::Equal => return CertifiedReal::exact(mid),
            s if s == hi_sign => hi = mid,
            _ => lo = mid,
        }
    }
    CertifiedReal::new(lo, hi)
}

struct SturmChain {
    polys: Vec<IntegerPolynomial>,
}

impl SturmChain {
    fn new(p: &IntegerPolynomial) -> Self {
        let mut polys = vec![p.clone(), primitive_positive(&p.derivative().to_rational())];
        loop {
            let n = polys.len();
            let (_, rem) = rational_divmod(&polys[n - 2].to_rational(), &polys[n - 1].to_rational());
            if rem.is_empty() {
                break;
            }
            let next = primitive_positive(&rem).neg();
            polys.push(next);
        }
        Self { polys }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let signs: Vec<Ordering> = self
            .polys
            .iter()
            .map(|p| p.sign_at(x))
            .filter(|s| *s != Ordering::Equal)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct roots in `(lo, hi]`.
    fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn rational_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let lead = b.last().expect("division by the zero polynomial").clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quotient = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let factor = rem.last().expect("nonempty") / &lead;
        for (i, c) in b.iter().enumerate() {
            rem[i + shift] -= &factor * c;
        }
        quotient[shift] = factor;
        rem.pop();
        trim(&mut rem);
    }
    (quotient, rem)
}

fn rational_gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = rational_divmod(&a, &b);
        a = b;
        b = primitive_positive(&r).to_rational();
    }
    a
}

/// Scales by a positive rational so the coefficients are coprime integers.
fn primitive_positive(v: &[BigRational]) -> IntegerPolynomial {
    let denominators = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|c| (c * BigRational::from_integer(denominators.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return IntegerPolynomial::new(Vec::new());
    }
    IntegerPolynomial::new(ints.into_iter().map(|c| c / &content).collect())
}

/// Characteristic polynomial `det(zI − A)` by the Faddeev–LeVerrier
/// recursion; every division is exact over the integers.
pub fn char_poly(matrix: &AdjacencyMatrix) -> IntegerPolynomial {
    let n = matrix.dim();
    let a: Vec<Vec<BigInt>> = matrix.rows().to_vec();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc: BigInt = (0..n).map(|l| &a[i][l] * &m[l][j]).sum();
                if i == j {
                    acc += &coeffs[n - k + 1];
                }
                next[i][j] = acc;
            }
        }
        m = next;
        let trace: BigInt = (0..n)
            .map(|i| (0..n).map(|l| &a[i][l] * &m[l][i]).sum::<BigInt>())
            .sum();
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    IntegerPolynomial::new(coeffs)
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if k == 0 || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let text: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        text.serialize(serializer)
    }
}

/// Checks that `p` is monic of the given degree.
pub(crate) fn require_monic(p: &IntegerPolynomial, degree: usize) -> Result<()> {
    if p.degree() == Some(degree) && p.is_monic() {
        Ok(())
    } else {
        Err(Error::NotMonic(degree))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_companion, HeightData};

    fn poly(c: &[i64]) -> IntegerPolynomial {
        IntegerPolynomial::from_i64(c)
    }

    fn companion(counts: &[u32]) -> AdjacencyMatrix {
        build_companion(&HeightData::new(counts.to_vec()).unwrap()).1
    }

    /// Cofactor expansion along the first row, over `z`-polynomials.
    fn det_oracle(a: &AdjacencyMatrix) -> IntegerPolynomial {
        type P = Vec<BigInt>;
        fn mul(x: &P, y: &P) -> P {
            let mut out = vec![BigInt::zero(); x.len() + y.len() - 1];
            for (i, a) in x.iter().enumerate() {
                for (j, b) in y.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            out
        }
        fn add(x: &P, y: &P, sign: i32) -> P {
            let mut out = vec![BigInt::zero(); x.len().max(y.len())];
            for (i, a) in x.iter().enumerate() {
                out[i] += a;
            }
            for (i, b) in y.iter().enumerate() {
                out[i] += if sign > 0 { b.clone() } else { -b };
            }
            out
        }
        fn det(m: &[Vec<P>]) -> P {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            let mut acc: P = vec![BigInt::zero()];
            for col in 0..m.len() {
                let minor: Vec<Vec<P>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = mul(&m[0][col], &det(&minor));
                acc = add(&acc, &term, if col % 2 == 0 { 1 } else { -1 });
            }
            acc
        }
        let n = a.dim();
        let m: Vec<Vec<P>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut entry = vec![-a.get(i, j).clone()];
                        if i == j {
                            entry.push(BigInt::one());
                        }
                        entry
                    })
                    .collect()
            })
            .collect();
        IntegerPolynomial::new(det(&m))
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&companion(&[1, 1, 2])), poly(&[-3, -4, 0, 1]));
        assert_eq!(char_poly(&companion(&[1, 1, 1, 2])), poly(&[0, 0, -5, 0, 1]));
        assert_eq!(
            char_poly(&AdjacencyMatrix::from_u64(&[&[0, 3], &[2, 0]]).unwrap()),
            poly(&[-6, 0, 1])
        );
        assert_eq!(char_poly(&companion(&[2])), poly(&[-3, 1]));
    }

    #[test]
    fn char_poly_matches_cofactor_expansion() {
        for counts in [&[2][..], &[3, 2], &[1, 1, 2], &[2, 3, 1, 2], &[1, 2, 1, 3, 2], &[1, 1, 1, 1, 1, 2]] {
            let a = companion(counts);
            assert_eq!(char_poly(&a), det_oracle(&a), "{counts:?}");
        }
        let a = AdjacencyMatrix::from_u64(&[&[1, 2, 0], &[0, 1, 1], &[3, 0, 2]]).unwrap();
        assert_eq!(char_poly(&a), det_oracle(&a));
    }

    #[test]
    fn display_format() {
        assert_eq!(poly(&[-3, -4, 0, 1]).to_string(), "z^3 - 4z - 3");
        assert_eq!(poly(&[0, 0, -5, 0, 1]).to_string(), "z^4 - 5z^2");
        assert_eq!(poly(&[1]).to_string(), "1");
        assert_eq!(poly(&[]).to_string(), "0");
        assert_eq!(poly(&[0, -1]).to_string(), "-z");
    }

    #[test]
    fn squarefree_and_even_part() {
        let p = poly(&[0, 0, -5, 0, 1]);
        assert_eq!(p.squarefree_part(), poly(&[0, -5, 0, 1]));
        assert_eq!(p.even_part(), Some(poly(&[0, -5, 1])));
        assert_eq!(poly(&[-3, -4, 0, 1]).even_part(), None);
    }

    #[test]
    fn isolates_roots() {
        let w = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12));
        let roots = poly(&[-3, -4, 0, 1]).real_roots(&w);
        assert_eq!(roots.len(), 3);
        let expected = [(1.0 - 13f64.sqrt()) / 2.0, -1.0, (1.0 + 13f64.sqrt()) / 2.0];
        let mut sorted = expected;
        sorted.sort_by(f64::total_cmp);
        for (r, e) in roots.iter().zip(sorted) {
            assert!((r.midpoint_f64() - e).abs() < 1e-11);
            assert!(r.width() <= w);
        }
        let roots = poly(&[0, 0, -5, 0, 1]).real_roots(&w);
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[1], CertifiedReal::exact(BigRational::zero()));
        assert!(poly(&[1, 0, 1]).real_roots(&w).is_empty());
    }
}
