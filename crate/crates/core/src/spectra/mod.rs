//! Characteristic polynomials, certified Perron roots and entropies.

mod certified;
mod poly;
mod radicals;
mod structured;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use certified::CertifiedReal;
pub use poly::{char_poly, IntegerPolynomial};
pub use radicals::{certify, isolation_width, solve_cubic, solve_quartic, RadicalRoot, CERTIFY_TOLERANCE};
pub use structured::{
    cyclic_independent_sets, structured_charpoly_report, Auxiliary, DisplayedPolynomial, MonomialSum,
    PolynomialVerdict, QuarticBranch, RadicalCheck, StructuredReport, SUPPORTED_HEIGHTS,
};

use crate::error::{Error, Result};
use crate::graphs::{build_companion, AdjacencyMatrix, HeightData};

/// Largest real root of `det(zI − A)` for irreducible non-negative `A`.
///
/// The root lies between the smallest and largest row sums.
pub fn perron_root(matrix: &AdjacencyMatrix) -> Result<CertifiedReal> {
    if !matrix.is_irreducible() {
        return Err(Error::Reducible);
    }
    let roots = char_poly(matrix).real_roots(&isolation_width());
    let root = roots.last().cloned().ok_or(Error::Reducible)?;
    let sums = matrix.row_sums();
    let lo = BigRational::from_integer(sums.iter().min().cloned().unwrap_or_default());
    let hi = BigRational::from_integer(sums.iter().max().cloned().unwrap_or_default());
    debug_assert!(root.hi() >= &lo && root.lo() <= &hi, "Perron root outside row-sum bounds");
    Ok(root)
}

/// Topological entropy `log λ` of the companion edge shift of `data`.
pub fn entropy(data: &HeightData) -> Result<CertifiedReal> {
    perron_root(&build_companion(data).1)?.ln()
}

/// Entropy of the Markov-Dyck shift of the Fibonacci graph, `log(8/3)`.
pub fn fibonacci_entropy() -> CertifiedReal {
    CertifiedReal::exact(BigRational::new(BigInt::from(8), BigInt::from(3)))
        .ln()
        .expect("8/3 is positive")
}
