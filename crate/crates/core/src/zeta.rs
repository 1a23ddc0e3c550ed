//! Zeta functions of Markov-Dyck shifts of rotationally homogeneous graphs,
//! assembled from excursion generating functions and checked against the
//! periodic-point census.
//!
//! For data `N = (N_1, …, N_{H+1})` the excursion series satisfy the cyclic
//! system `g_h = N_{h+1} z² / (1 − g_{h+1})`, indices taken mod `H + 1`. With
//! `v_h = N_1 ⋯ N_h` the zeta function factors as
//!
//! ```text
//! ζ = ∏ (1 − g_h)^{−v_h} · (1 − g_C)^{−2},   g_C = Π z^{H+1} ∏ (1 − g_h)^{−1}
//! ```
//!
//! where the first factor counts neutral periodic points and each copy of
//! `(1 − g_C)^{−1}` counts one of the two signed classes.
//!
//! Several published closed forms for these series contain misprints. Each
//! such display is evaluated both as printed ([`Reading::AsWritten`]) and
//! repaired ([`Reading::Corrected`]), and [`ZetaReport`] records which agree
//! with the census.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::census::{MultiplierClass, PeriodicCensus};
use crate::error::{Error, Result};
use crate::graphs::HeightData;
use crate::series::{class_zeta_from_census, zeta_from_census, PowerSeries};

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn exponent(v: &BigUint) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::InvalidData(format!("exponent {v} is too large")))
}

/// The excursion series `g_0, …, g_H` of a data tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcursionFamily {
    pub data: HeightData,
    pub order: usize,
    pub g: Vec<PowerSeries>,
}

impl ExcursionFamily {
    /// `∏_h (1 − g_h)`.
    pub fn product_one_minus(&self) -> PowerSeries {
        let one = PowerSeries::one(self.order);
        self.g
            .iter()
            .fold(one.clone(), |acc, g| &acc * &(&one - g))
    }
}

/// Solves the cyclic excursion system by fixed-point iteration from zero.
///
/// Each round fixes at least two more coefficients, so the iteration settles
/// within `order + 2` rounds.
pub fn excursion_series(data: &HeightData, order: usize) -> Result<ExcursionFamily> {
    let levels = data.levels();
    let one = PowerSeries::one(order);
    let steps: Vec<PowerSeries> = (0..levels)
        .map(|h| PowerSeries::monomial(int(data.counts()[h]), 2, order))
        .collect();
    let mut g = vec![PowerSeries::zero(order); levels];
    let limit = order + 2;
    for _ in 0..limit {
        let next: Vec<PowerSeries> = (0..levels)
            .map(|h| {
                let denom = (&one - &g[(h + 1) % levels])
                    .inverse()
                    .expect("excursion series have zero constant term");
                &steps[h] * &denom
            })
            .collect();
        if next == g {
            return Ok(ExcursionFamily {
                data: data.clone(),
                order,
                g,
            });
        }
        g = next;
    }
    Err(Error::NonStabilization(limit))
}

/// Zeta function of the neutral periodic points: `∏ (1 − g_h)^{−v_h}`.
pub fn zeta_neutral(data: &HeightData, order: usize) -> Result<PowerSeries> {
    neutral_from_family(&excursion_series(data, order)?)
}

fn neutral_from_family(family: &ExcursionFamily) -> Result<PowerSeries> {
    let one = PowerSeries::one(family.order);
    let mut acc = one.clone();
    for (h, g) in family.g.iter().enumerate() {
        let v = exponent(&family.data.vertices_at_height(h))?;
        acc = &acc * &(&one - g).powi(-v)?;
    }
    Ok(acc)
}

/// Generating function of the code counting signed cycles through the root:
/// `Π z^{H+1} ∏ (1 − g_h)^{−1}`.
pub fn code_gf(data: &HeightData, order: usize) -> Result<PowerSeries> {
    code_from_family(&excursion_series(data, order)?, Reading::Corrected)
}

fn code_from_family(family: &ExcursionFamily, reading: Reading) -> Result<PowerSeries> {
    let data = &family.data;
    let levels = data.levels();
    let inverse = family.product_one_minus().inverse()?;
    let (coefficient, shift) = match reading {
        Reading::Corrected => (data.pi(), levels),
        Reading::AsWritten => (BigInt::from(data.count(levels)).pow(levels as u32), 2 * levels),
    };
    Ok(inverse.scale(&int(coefficient)).shift_up(shift))
}

/// The zeta function `ζ = ∏ (1 − g_h)^{−v_h} · (1 − g_C)^{−2}`.
pub fn zeta_md(data: &HeightData, order: usize) -> Result<PowerSeries> {
    let family = excursion_series(data, order)?;
    zeta_from_family(&family)
}

fn zeta_from_family(family: &ExcursionFamily) -> Result<PowerSeries> {
    let one = PowerSeries::one(family.order);
    let code = code_from_family(family, Reading::Corrected)?;
    Ok(&neutral_from_family(family)? * &(&one - &code).powi(-2)?)
}

/// Which version of a published display to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    AsWritten,
    Corrected,
}

/// A display evaluated as a power series, or the reason it has none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluation {
    Series(PowerSeries),
    Undefined(String),
}

impl Evaluation {
    fn from_result(result: Result<PowerSeries>) -> Self {
        match result {
            Ok(s) => Evaluation::Series(s),
            Err(e) => Evaluation::Undefined(e.to_string()),
        }
    }

    pub fn series(&self) -> Option<&PowerSeries> {
        match self {
            Evaluation::Series(s) => Some(s),
            Evaluation::Undefined(_) => None,
        }
    }
}

/// The product formula `(∏(1 − g_h) − Π z^k)^{−2} ∏ (1 − g_h)^{2 − v_h}`
/// with `k = H + 1` (corrected) or `k = 2(H + 1)` (as written).
pub fn product_formula(data: &HeightData, order: usize, reading: Reading) -> Result<PowerSeries> {
    product_from_family(&excursion_series(data, order)?, reading)
}

fn product_from_family(family: &ExcursionFamily, reading: Reading) -> Result<PowerSeries> {
    let data = &family.data;
    let one = PowerSeries::one(family.order);
    let k = match reading {
        Reading::Corrected => data.levels(),
        Reading::AsWritten => 2 * data.levels(),
    };
    let seam = PowerSeries::monomial(int(data.pi()), k, family.order);
    let mut acc = (&family.product_one_minus() - &seam).powi(-2)?;
    for (h, g) in family.g.iter().enumerate() {
        let v = exponent(&data.vertices_at_height(h))?;
        acc = &acc * &(&one - g).powi(2 - v)?;
    }
    Ok(acc)
}

/// `√(1 − 4Nz²)`.
fn dyck_root(n: u32, order: usize) -> Result<PowerSeries> {
    PowerSeries::new(vec![int(1), int(0), int(-4 * i64::from(n))], order).sqrt()
}

/// `2(1 + s)/(1 − 2Nz + s)²` with `s = √(1 − 4Nz²)`; as written the middle
/// term is the constant `2N`.
pub fn dyck_closed_form(n: u32, order: usize, reading: Reading) -> Result<PowerSeries> {
    let s = dyck_root(n, order)?;
    let one = PowerSeries::one(order);
    let middle = match reading {
        Reading::Corrected => PowerSeries::monomial(int(2 * i64::from(n)), 1, order),
        Reading::AsWritten => PowerSeries::constant(int(2 * i64::from(n)), order),
    };
    let numerator = (&one + &s).scale(&int(2));
    let denominator = &(&one - &middle) + &s;
    Ok(&numerator * &denominator.powi(-2)?)
}

/// `F(N, M) = ½(1 − (N − M)z² − √((1 + (N − M)z²)² − 4Nz²))`, which is the
/// excursion series `g_1` of the data `(N, M)`.
pub fn two_level_f(n: u32, m: u32, order: usize) -> Result<PowerSeries> {
    let d = i64::from(n) - i64::from(m);
    let one = PowerSeries::one(order);
    let dz2 = PowerSeries::monomial(int(d), 2, order);
    let radicand = &(&(&one + &dz2) * &(&one + &dz2)) - &PowerSeries::monomial(int(4 * i64::from(n)), 2, order);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok((&(&one - &dz2) - &radicand.sqrt()?).scale(&half))
}

/// The two-level zeta formula for data `(N, M)`.
///
/// Corrected: `(1 − F(M,N))(1 − F(N,M))^{2−N} / ((1 − F(N,M))(1 − F(M,N)) − NMz²)²`.
/// As written: `F(N,M)F(M,N) / (F(N,M)^N (F(N,M)F(M,N) − NMz²))`, which has a
/// pole at the origin unless the powers of `z` happen to cancel.
pub fn two_level_formula(n: u32, m: u32, order: usize, reading: Reading) -> Result<PowerSeries> {
    let f_nm = two_level_f(n, m, order)?;
    let f_mn = two_level_f(m, n, order)?;
    let one = PowerSeries::one(order);
    let nm_z2 = PowerSeries::monomial(int(u64::from(n) * u64::from(m)), 2, order);
    match reading {
        Reading::Corrected => {
            let a = &one - &f_nm;
            let b = &one - &f_mn;
            let numerator = &b * &a.powi(2 - i64::from(n))?;
            Ok(&numerator * &(&(&a * &b) - &nm_z2).powi(-2)?)
        }
        Reading::AsWritten => {
            let product = &f_nm * &f_mn;
            let denominator = &f_nm.powi(i64::from(n))? * &(&product - &nm_z2);
            product.divide(&denominator)
        }
    }
}

/// The formula for `L`-fold periodic data `Ñ`, using the excursion series of
/// `Ñ` and the products over one period of the base.
///
/// Corrected, it is the product formula applied to `Ñ`. As written the seam
/// term is `Π(N)^L z^{2(H+1)}` and the outer product uses the base exponents
/// `2 − v_h(N)` for `0 <= h <= H` only.
pub fn periodic_data_formula(
    base: &HeightData,
    copies: usize,
    order: usize,
    reading: Reading,
) -> Result<PowerSeries> {
    let tilde = base.repeated(copies)?;
    let family = excursion_series(&tilde, order)?;
    match reading {
        Reading::Corrected => product_from_family(&family, Reading::Corrected),
        Reading::AsWritten => {
            let one = PowerSeries::one(order);
            let levels = base.levels();
            let period = family.g[..levels]
                .iter()
                .fold(one.clone(), |acc, g| &acc * &(&one - g));
            let seam = PowerSeries::monomial(int(base.pi().pow(copies as u32)), 2 * levels, order);
            let mut acc = (&period.powi(copies as i64)? - &seam).powi(-2)?;
            for (h, g) in family.g[..levels].iter().enumerate() {
                let v = exponent(&base.vertices_at_height(h))?;
                acc = &acc * &(&one - g).powi(2 - v)?;
            }
            Ok(acc)
        }
    }
}

/// Closed form for constant data `(N, …, N)` of height `H`, with
/// `s = √(1 − 4Nz²)` and `V = (N^{H+1} − 1)/(N − 1)`:
/// `2^V (1 + s)^{2H+2−V} ((1 + s)^{H+1} − (2Nz)^{H+1})^{−2}`.
///
/// As written, the power of 2 in front is `(N(H+1) − 1)/(N − 1)` and the
/// subtracted term is `(2^N z)^{H+1}`; the display is undefined when that
/// power is not an integer.
pub fn constant_data_formula(n: u32, height: usize, order: usize, reading: Reading) -> Result<PowerSeries> {
    if n < 2 {
        return Err(Error::InvalidData("constant data needs N >= 2".into()));
    }
    let levels = height + 1;
    let big_n = BigInt::from(n);
    let vertex_total: BigInt = (big_n.pow(levels as u32) - 1) / (&big_n - 1);
    let (front, step) = match reading {
        Reading::Corrected => (vertex_total.clone(), BigInt::from(2) * &big_n),
        Reading::AsWritten => {
            let numerator: BigInt = &big_n * BigInt::from(levels) - 1;
            let (q, r) = numerator.div_rem(&(&big_n - 1));
            if !r.is_zero() {
                return Err(Error::InvalidData(format!(
                    "leading power of 2 is {numerator}/{}, not an integer",
                    &big_n - 1
                )));
            }
            (q, BigInt::from(2).pow(n))
        }
    };
    let s = dyck_root(n, order)?;
    let one = PowerSeries::one(order);
    let one_plus_s = &one + &s;
    let front_exp = front
        .to_u32()
        .ok_or_else(|| Error::InvalidData("leading exponent too large".into()))?;
    let middle_exp = BigInt::from(2 * levels) - &vertex_total;
    let middle_exp = middle_exp
        .to_i64()
        .ok_or_else(|| Error::InvalidData("exponent too large".into()))?;
    let seam = PowerSeries::monomial(int(step.pow(levels as u32)), levels, order);
    let denominator = &one_plus_s.powi(levels as i64)? - &seam;
    let value = &one_plus_s.powi(middle_exp)? * &denominator.powi(-2)?;
    Ok(value.scale(&int(BigInt::from(2).pow(front_exp))))
}

/// The four polynomial sequences expressing each `g_h` as a Möbius
/// transformation `(P⁰_h − P¹_h g) / (Q⁰_h − Q¹_h g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoebiusCoefficients {
    pub p0: PowerSeries,
    pub p1: PowerSeries,
    pub q0: PowerSeries,
    pub q1: PowerSeries,
}

impl MoebiusCoefficients {
    fn apply(&self, g: &PowerSeries) -> Result<PowerSeries> {
        let numerator = &self.p0 - &(&self.p1 * g);
        let denominator = &self.q0 - &(&self.q1 * g);
        Ok(&numerator * &denominator.inverse()?)
    }
}

/// Builds the coefficients from `h = H` downwards:
/// `P⁰_H = N_{H+1}z², P¹_H = 0, Q⁰_H = Q¹_H = 1`, then
/// `P^i_h = N_{h+1}z² Q^i_{h+1}`, `Q^i_h = Q^i_{h+1} − P^i_{h+1}`.
pub fn moebius_coefficients(data: &HeightData, order: usize) -> Vec<MoebiusCoefficients> {
    let levels = data.levels();
    let step = |h: usize| PowerSeries::monomial(int(data.counts()[h]), 2, order);
    let mut out = vec![MoebiusCoefficients {
        p0: step(levels - 1),
        p1: PowerSeries::zero(order),
        q0: PowerSeries::one(order),
        q1: PowerSeries::one(order),
    }];
    for h in (0..levels - 1).rev() {
        let next = out.last().expect("nonempty");
        let current = MoebiusCoefficients {
            p0: &step(h) * &next.q0,
            p1: &step(h) * &next.q1,
            q0: &next.q0 - &next.p0,
            q1: &next.q1 - &next.p1,
        };
        out.push(current);
    }
    out.reverse();
    out
}

/// Outcome of checking the Möbius relations against the excursion series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoebiusCheck {
    /// Relations in terms of `g_0`, for every `h`.
    pub holds: bool,
    pub first_failure: Option<(usize, usize)>,
    /// Relations in terms of `g_{h+1}` for `h < H` and `g_0` for `h = H`.
    pub as_written_holds: bool,
    pub as_written_first_failure: Option<(usize, usize)>,
}

/// Checks `g_h = (P⁰_h − P¹_h g) / (Q⁰_h − Q¹_h g)` with `g = g_0`, and the
/// as-written variant with `g = g_{h+1}`. Failures are `(h, coefficient)`.
pub fn pq_recursion_check(data: &HeightData, order: usize) -> Result<MoebiusCheck> {
    let family = excursion_series(data, order)?;
    let coefficients = moebius_coefficients(data, order);
    let levels = data.levels();
    let mut first_failure = None;
    let mut as_written_first_failure = None;
    for (h, c) in coefficients.iter().enumerate() {
        if first_failure.is_none() {
            if let Some(k) = c.apply(&family.g[0])?.first_mismatch(&family.g[h]) {
                first_failure = Some((h, k));
            }
        }
        if as_written_first_failure.is_none() {
            let g = &family.g[(h + 1) % levels];
            if let Some(k) = c.apply(g)?.first_mismatch(&family.g[h]) {
                as_written_first_failure = Some((h, k));
            }
        }
    }
    Ok(MoebiusCheck {
        holds: first_failure.is_none(),
        first_failure,
        as_written_holds: as_written_first_failure.is_none(),
        as_written_first_failure,
    })
}

/// `g_0` as the small root of its quadratic.
///
/// Corrected: `(P¹_0 + Q⁰_0 − √((P¹_0 + Q⁰_0)² − 4P⁰_0Q¹_0)) / (2Q¹_0)`.
/// As written the linear coefficient is `P⁰_0 + Q⁰_0`, the discriminant uses
/// `(Q¹_0)²` and the divisor is `2Q¹_1`, which needs `H >= 1`.
pub fn g0_closed_form(data: &HeightData, order: usize, reading: Reading) -> Result<PowerSeries> {
    let c = moebius_coefficients(data, order);
    let c0 = &c[0];
    let (linear, discriminant, divisor) = match reading {
        Reading::Corrected => {
            let linear = &c0.p1 + &c0.q0;
            let disc = &(&linear * &linear) - &(&c0.p0 * &c0.q1).scale(&int(4));
            (linear, disc, c0.q1.scale(&int(2)))
        }
        Reading::AsWritten => {
            let Some(c1) = c.get(1) else {
                return Err(Error::UnsupportedHeight(data.height()));
            };
            let linear = &c0.p0 + &c0.q0;
            let disc = &(&linear * &linear) - &(&c0.p0 * &(&c0.q1 * &c0.q1)).scale(&int(4));
            (linear, disc, c1.q1.scale(&int(2)))
        }
    };
    let numerator = &linear - &discriminant.sqrt()?;
    Ok(&numerator * &divisor.inverse()?)
}

/// Comparison result for one display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Match,
    Mismatch { order: usize },
    Undefined { reason: String },
}

impl Outcome {
    pub fn is_match(&self) -> bool {
        matches!(self, Outcome::Match)
    }
}

/// One closed-form display compared with a reference series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisplayCheck {
    pub display: &'static str,
    pub reading: Reading,
    /// What the display is compared with, e.g. `census` or `excursion`.
    pub reference: &'static str,
    /// Highest coefficient index compared.
    pub through: usize,
    pub outcome: Outcome,
}

fn compare(evaluation: &Evaluation, reference: &PowerSeries, through: usize) -> Outcome {
    match evaluation {
        Evaluation::Undefined(reason) => Outcome::Undefined {
            reason: reason.clone(),
        },
        Evaluation::Series(s) => {
            let k = through.min(s.order()).min(reference.order());
            match s.truncate(k).first_mismatch(&reference.truncate(k)) {
                Some(order) => Outcome::Mismatch { order },
                None if k < through => Outcome::Undefined {
                    reason: format!("series only known through z^{k}"),
                },
                None => Outcome::Match,
            }
        }
    }
}

/// Per-class comparison of a zeta factor with the census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCheck {
    pub class: MultiplierClass,
    pub factor: &'static str,
    pub census: PowerSeries,
    pub outcome: Outcome,
}

/// Closed forms of one data tuple against its census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaReport {
    pub data: HeightData,
    pub order: usize,
    /// Highest coefficient index backed by the census.
    pub census_order: usize,
    pub zeta: PowerSeries,
    pub census: PowerSeries,
    /// First coefficient where `zeta` and `census` differ.
    pub first_mismatch: Option<usize>,
    pub classes: Vec<ClassCheck>,
    pub displays: Vec<DisplayCheck>,
}

impl ZetaReport {
    /// Builds the report for `data` at series order `order`, comparing
    /// through `min(order, census.n_max())`.
    pub fn build(data: &HeightData, order: usize, census: &PeriodicCensus) -> Result<Self> {
        let census_order = order.min(census.n_max());
        let family = excursion_series(data, order)?;
        let zeta = zeta_from_family(&family)?;
        let census_series = zeta_from_census(census, census_order)?;
        let first_mismatch = zeta.truncate(census_order).first_mismatch(&census_series);

        let one = PowerSeries::one(order);
        let neutral = neutral_from_family(&family)?;
        let code = code_from_family(&family, Reading::Corrected)?;
        let signed = (&one - &code).inverse()?;
        let mut classes = Vec::new();
        for class in MultiplierClass::ALL {
            let census_class = class_zeta_from_census(census, class, census_order)?;
            let factor = match class {
                MultiplierClass::Neutral => ("neutral_factor", &neutral),
                _ => ("code_factor", &signed),
            };
            let outcome = compare(&Evaluation::Series(factor.1.clone()), &census_class, census_order);
            classes.push(ClassCheck {
                class,
                factor: factor.0,
                census: census_class,
                outcome,
            });
        }

        let mut report = Self {
            data: data.clone(),
            order,
            census_order,
            zeta,
            census: census_series,
            first_mismatch,
            classes,
            displays: Vec::new(),
        };
        report.add_displays(&family, census)?;
        Ok(report)
    }

    fn push(&mut self, display: &'static str, reading: Reading, reference: &'static str, through: usize, outcome: Outcome) {
        self.displays.push(DisplayCheck {
            display,
            reading,
            reference,
            through,
            outcome,
        });
    }

    fn add_displays(&mut self, family: &ExcursionFamily, census: &PeriodicCensus) -> Result<()> {
        let data = family.data.clone();
        let order = self.order;
        let through = self.census_order;
        let census_series = self.census.clone();
        let one = PowerSeries::one(order);
        let negative = class_zeta_from_census(census, MultiplierClass::Negative, through)?;

        for reading in [Reading::AsWritten, Reading::Corrected] {
            let eval = Evaluation::from_result(product_from_family(family, reading));
            self.push("product_formula", reading, "census", through, compare(&eval, &census_series, through));
        }
        let as_written_code = code_from_family(family, Reading::AsWritten)
            .and_then(|c| (&one - &c).inverse());
        self.push(
            "code_factor",
            Reading::AsWritten,
            "census_negative",
            through,
            compare(&Evaluation::from_result(as_written_code), &negative, through),
        );

        let moebius = pq_recursion_check(&data, order)?;
        let outcome = |holds: bool, failure: Option<(usize, usize)>| match (holds, failure) {
            (true, _) => Outcome::Match,
            (false, Some((_, k))) => Outcome::Mismatch { order: k },
            (false, None) => Outcome::Mismatch { order: 0 },
        };
        self.push(
            "excursion_recursion",
            Reading::AsWritten,
            "excursion",
            order,
            outcome(moebius.as_written_holds, moebius.as_written_first_failure),
        );
        self.push(
            "excursion_recursion",
            Reading::Corrected,
            "excursion",
            order,
            outcome(moebius.holds, moebius.first_failure),
        );
        for reading in [Reading::AsWritten, Reading::Corrected] {
            let eval = Evaluation::from_result(g0_closed_form(&data, order, reading));
            self.push("excursion_quadratic_root", reading, "excursion", order, compare(&eval, &family.g[0], order));
        }

        let counts = data.counts();
        if data.height() == 0 {
            for reading in [Reading::AsWritten, Reading::Corrected] {
                let eval = Evaluation::from_result(dyck_closed_form(counts[0], order, reading));
                self.push("dyck_closed_form", reading, "census", through, compare(&eval, &census_series, through));
            }
        }
        if data.height() == 1 {
            for reading in [Reading::AsWritten, Reading::Corrected] {
                let eval = Evaluation::from_result(two_level_formula(counts[0], counts[1], order, reading));
                self.push("two_level_formula", reading, "census", through, compare(&eval, &census_series, through));
            }
        }
        if let Some(n) = data.constant_value() {
            for reading in [Reading::AsWritten, Reading::Corrected] {
                let eval = Evaluation::from_result(constant_data_formula(n, data.height(), order, reading));
                self.push("constant_data_formula", reading, "census", through, compare(&eval, &census_series, through));
            }
        }
        Ok(())
    }

    /// Whether the corrected zeta function and every class factor match.
    pub fn verified(&self) -> bool {
        self.first_mismatch.is_none() && self.classes.iter().all(|c| c.outcome.is_match())
    }

    /// Whether some as-written display disagrees with its reference.
    pub fn as_written_mismatch(&self) -> bool {
        self.displays
            .iter()
            .any(|d| d.reading == Reading::AsWritten && !d.outcome.is_match())
    }

    pub fn display(&self, name: &str, reading: Reading) -> Option<&DisplayCheck> {
        self.displays
            .iter()
            .find(|d| d.display == name && d.reading == reading)
    }
}

/// Report for `L`-fold periodic data: the ordinary report of `Ñ`, the
/// periodicity of its excursion series, and the periodic-data display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicDataReport {
    pub base: HeightData,
    pub copies: usize,
    /// `g_{h + ℓ(H+1)} = g_h` for every `h` and `ℓ`.
    pub excursions_periodic: bool,
    pub report: ZetaReport,
}

/// Builds the periodic-data report; `census` must be the census of `Ñ`.
pub fn zeta_periodic_data(
    base: &HeightData,
    copies: usize,
    order: usize,
    census: &PeriodicCensus,
) -> Result<PeriodicDataReport> {
    let tilde = base.repeated(copies)?;
    let family = excursion_series(&tilde, order)?;
    let levels = base.levels();
    let excursions_periodic = (0..tilde.levels()).all(|h| family.g[h] == family.g[h % levels]);
    let mut report = ZetaReport::build(&tilde, order, census)?;
    let through = report.census_order;
    for reading in [Reading::AsWritten, Reading::Corrected] {
        let eval = Evaluation::from_result(periodic_data_formula(base, copies, order, reading));
        let outcome = compare(&eval, &report.census, through);
        report.push("periodic_data_formula", reading, "census", through, outcome);
    }
    Ok(PeriodicDataReport {
        base: base.clone(),
        copies,
        excursions_periodic,
        report,
    })
}

/// Report for the two-level data `(N, M)`; the two-level formula appears
/// among the display checks.
pub fn two_level_formula_check(n: u32, m: u32, order: usize, census: &PeriodicCensus) -> Result<ZetaReport> {
    let data = HeightData::new(vec![n, m])?;
    ZetaReport::build(&data, order, census)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::census;
    use crate::graphs::build_rotational;

    fn data(counts: &[u32]) -> HeightData {
        HeightData::new(counts.to_vec()).unwrap()
    }

    fn ints(values: &[i64], order: usize) -> PowerSeries {
        PowerSeries::from_integers(values.iter().copied(), order)
    }

    #[test]
    fn excursion_examples() {
        let f = excursion_series(&data(&[2]), 6).unwrap();
        assert_eq!(f.g[0], ints(&[0, 0, 2, 0, 4, 0, 16], 6));
        let f = excursion_series(&data(&[1, 2]), 5).unwrap();
        assert_eq!(&f.g[0].coeffs()[..5], ints(&[0, 0, 1, 0, 2], 4).coeffs());
        for counts in [&[2][..], &[1, 2], &[1, 1, 2], &[3, 1, 2]] {
            let f = excursion_series(&data(counts), 10).unwrap();
            for g in &f.g {
                assert!(g.coeff(1).is_zero());
                assert!(g.is_integral() && g.is_nonnegative());
            }
        }
    }

    #[test]
    fn dyck_excursion_is_quadratic_root() {
        // g = (1 − √(1 − 8z²))/2 for N = 2
        let s = dyck_root(2, 12).unwrap();
        let expected = (&PowerSeries::one(12) - &s).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(excursion_series(&data(&[2]), 12).unwrap().g[0], expected);
    }

    #[test]
    fn neutral_and_code_examples() {
        let z = zeta_neutral(&data(&[2]), 4).unwrap();
        assert_eq!(z, ints(&[1, 0, 2, 0, 8], 4));
        let c = code_gf(&data(&[2]), 3).unwrap();
        assert_eq!(c, ints(&[0, 2, 0, 4], 3));
        let c = code_gf(&data(&[1, 2]), 6).unwrap();
        assert_eq!(c.valuation(), Some(2));
        assert_eq!(c.coeff(2), &int(2));
        for counts in [&[2][..], &[1, 2], &[1, 1, 2], &[2, 1, 1, 3]] {
            let d = data(counts);
            assert_eq!(code_gf(&d, 10).unwrap().valuation(), Some(d.levels()));
            assert!(zeta_neutral(&d, 9).unwrap().coeff(1).is_zero());
        }
    }

    #[test]
    fn dyck_zeta_against_closed_form() {
        for n in [2, 3, 5] {
            let corrected = dyck_closed_form(n, 14, Reading::Corrected).unwrap();
            assert_eq!(zeta_md(&data(&[n]), 14).unwrap(), corrected);
            let literal = dyck_closed_form(n, 14, Reading::AsWritten).unwrap();
            assert_ne!(literal, corrected);
        }
        assert_eq!(
            zeta_md(&data(&[2]), 8).unwrap(),
            ints(&[1, 4, 14, 48, 160, 528, 1720, 5568, 17888], 8)
        );
    }

    #[test]
    fn product_formula_is_the_factorization() {
        for counts in [&[2][..], &[1, 2], &[2, 2], &[1, 1, 2], &[2, 3, 2]] {
            let d = data(counts);
            assert_eq!(product_formula(&d, 12, Reading::Corrected).unwrap(), zeta_md(&d, 12).unwrap());
        }
    }

    #[test]
    fn zeta_matches_census() {
        let cases: [(&[u32], &[i64]); 3] = [
            (&[1, 2], &[1, 0, 7, 0, 47, 0, 309, 0, 2005]),
            (&[2, 2], &[1, 0, 14, 0, 164, 0, 1792, 0, 18848]),
            (&[1, 1, 2], &[1, 0, 4, 4, 16, 32, 78, 192, 424]),
        ];
        for (counts, expected) in cases {
            let d = data(counts);
            let z = zeta_md(&d, 8).unwrap();
            assert_eq!(z, ints(expected, 8));
            let c = census(&build_rotational(&d), 8).unwrap();
            let report = ZetaReport::build(&d, 8, &c).unwrap();
            assert!(report.verified(), "{d}");
            assert!(report.as_written_mismatch());
            let written = report.display("product_formula", Reading::AsWritten).unwrap();
            assert_eq!(written.outcome, Outcome::Mismatch { order: d.levels() });
        }
    }

    #[test]
    fn moebius_relations() {
        for counts in [&[2][..], &[1, 2], &[1, 1, 2], &[2, 1, 3, 2]] {
            let check = pq_recursion_check(&data(counts), 10).unwrap();
            assert!(check.holds, "{counts:?}");
        }
        let check = pq_recursion_check(&data(&[1, 1, 2]), 10).unwrap();
        assert!(!check.as_written_holds);
        let check = pq_recursion_check(&data(&[2]), 10).unwrap();
        assert!(check.as_written_holds);
    }

    #[test]
    fn quadratic_root_for_g0() {
        for counts in [&[2][..], &[1, 2], &[1, 1, 2], &[3, 2, 2]] {
            let d = data(counts);
            let g0 = &excursion_series(&d, 12).unwrap().g[0];
            assert_eq!(&g0_closed_form(&d, 12, Reading::Corrected).unwrap(), g0);
        }
        assert!(g0_closed_form(&data(&[2]), 8, Reading::AsWritten).is_err());
    }

    #[test]
    fn two_level_f_is_an_excursion_series() {
        for (n, m) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
            let f = excursion_series(&data(&[n, m]), 12).unwrap();
            assert_eq!(two_level_f(n, m, 12).unwrap(), f.g[1]);
            assert_eq!(two_level_f(m, n, 12).unwrap(), f.g[0]);
            assert_eq!(
                two_level_formula(n, m, 12, Reading::Corrected).unwrap(),
                zeta_md(&data(&[n, m]), 12).unwrap()
            );
        }
        assert_eq!(two_level_f(1, 2, 4).unwrap().coeff(2), &int(2));
        assert!(two_level_f(1, 2, 4).unwrap().coeff(0).is_zero());
    }

    #[test]
    fn constant_data_closed_form() {
        for (n, h) in [(2, 0), (2, 1), (2, 2), (3, 1), (3, 2)] {
            let d = HeightData::new(vec![n; h + 1]).unwrap();
            assert_eq!(
                constant_data_formula(n, h, 12, Reading::Corrected).unwrap(),
                zeta_md(&d, 12).unwrap(),
                "N={n} H={h}"
            );
        }
        assert!(constant_data_formula(3, 1, 8, Reading::AsWritten).is_err());
    }

    #[test]
    fn periodic_data() {
        let base = data(&[1, 2]);
        let c = census(&build_rotational(&base.repeated(2).unwrap()), 6).unwrap();
        let report = zeta_periodic_data(&base, 2, 12, &c).unwrap();
        assert!(report.excursions_periodic);
        assert!(report.report.verified());
        let corrected = report.report.display("periodic_data_formula", Reading::Corrected).unwrap();
        assert!(corrected.outcome.is_match());
        let single = zeta_periodic_data(&data(&[2]), 1, 8, &census(&build_rotational(&data(&[2])), 8).unwrap()).unwrap();
        assert_eq!(single.report.zeta, zeta_md(&data(&[2]), 8).unwrap());
    }
}
