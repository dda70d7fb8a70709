//! Characteristic polynomials with section coefficients, substitution of a
//! matrix into a polynomial, Cayley–Hamilton, eigen-sections and the
//! reciprocity of symplectic spectra.

mod eigen;

pub use eigen::{
    eigen_presheaf_glue, eigen_sections, pointwise_eigenpairs, reciprocal_spectrum_check, EigenPair, EigenPresheaf,
    EigenReport, Omission, ReciprocityReport,
};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::free_module::{FreeModuleError, QMatrix, SectionMatrix, MAX_EXPANSION_SIZE};
use crate::scalar::{Polynomial, Rational};
use crate::sheaf::{Section, SheafError};
use crate::site::OpenSet;
use crate::symplectic::SymplecticError;

/// Trial divisions allowed while enumerating rational-root candidates.
pub const ROOT_SEARCH_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix of size {0} exceeds the limit of {MAX_EXPANSION_SIZE}")]
    TooLarge(usize),
    #[error("polynomial coefficients live over {coeffs:?}, matrix over {matrix:?}")]
    DomainMismatch { coeffs: OpenSet, matrix: OpenSet },
    #[error("Cayley–Hamilton residue is nonzero")]
    CayleyHamiltonViolation,
    #[error("no rational eigenvalue at points {points:?}")]
    NoRationalEigenvalue { points: Vec<usize> },
    #[error("rational root search exceeds {ROOT_SEARCH_BUDGET} trial divisions")]
    RootSearchTooLarge,
    #[error("pair {0} is not an eigenpair of the matrix")]
    NotAnEigenpair(usize),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    FreeModule(#[from] FreeModuleError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

fn require_square(m: &SectionMatrix) -> Result<usize, SpectraError> {
    if !m.is_square() {
        return Err(SpectraError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() > MAX_EXPANSION_SIZE {
        return Err(SpectraError::TooLarge(m.rows()));
    }
    Ok(m.rows())
}

/// Coefficients of `det(tI − A)`, constant term first, by the
/// Faddeev–LeVerrier recursion.
pub fn char_poly_q(a: &QMatrix) -> Vec<Rational> {
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = QMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&QMatrix::identity(n).scale(&coeffs[n + 1 - k]));
        let tr = a.mul(&m).trace();
        coeffs[n - k] = -(tr.checked_div(&Rational::from(k as i64)).expect("k > 0"));
    }
    coeffs
}

/// `det(tI − M)` with section coefficients, computed at each stalk.
pub fn char_poly(m: &SectionMatrix) -> Result<Polynomial<Section>, SpectraError> {
    let n = require_square(m)?;
    let stalks: Vec<Vec<Rational>> = m.pointwise().iter().map(|(_, a)| char_poly_q(a)).collect();
    let coeffs = (0..=n)
        .map(|i| Section::new(m.domain(), stalks.iter().map(|c| c[i].clone()).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::from_coeffs(coeffs))
}

/// `p(M) = Σ cᵢ·Mⁱ`, by Horner's scheme.
pub fn poly_apply(p: &Polynomial<Section>, m: &SectionMatrix) -> Result<SectionMatrix, SpectraError> {
    let n = require_square(m)?;
    let domain = m.domain();
    if let Some(c) = p.coeffs().iter().find(|c| c.domain() != domain) {
        return Err(SpectraError::DomainMismatch {
            coeffs: c.domain(),
            matrix: domain,
        });
    }
    let id = SectionMatrix::identity(domain, n);
    let mut acc = SectionMatrix::zero(domain, n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mat_mul(m)?.add(&id.scale(c)?)?;
    }
    Ok(acc)
}

/// `P_M(M)`, which must be the zero matrix; returned as a certificate.
pub fn cayley_hamilton_check(m: &SectionMatrix) -> Result<SectionMatrix, SpectraError> {
    let residue = poly_apply(&char_poly(m)?, m)?;
    if residue.is_zero() {
        Ok(residue)
    } else {
        Err(SpectraError::CayleyHamiltonViolation)
    }
}

/// `M⁻¹ = −c₀⁻¹·(M^{n−1} + c_{n−1}M^{n−2} + … + c₁I)`, read off from
/// Cayley–Hamilton; requires `c₀ = (−1)ⁿ det M` to be a unit.
pub fn inverse_via_char_poly(m: &SectionMatrix) -> Result<SectionMatrix, SpectraError> {
    let p = char_poly(m)?;
    let c0 = p.coeffs()[0].clone();
    let inv = c0.inverse().map_err(|_| FreeModuleError::NonUnitDeterminant { zeros: c0.zero_set() })?;
    let quotient = Polynomial::from_coeffs(p.coeffs()[1..].to_vec());
    Ok(poly_apply(&quotient, m)?.scale(&-inv)?)
}

/// Distinct rational roots of `Σ cᵢtⁱ`, ascending, by the rational root
/// theorem.
pub fn rational_roots(coeffs: &[Rational]) -> Result<Vec<Rational>, SpectraError> {
    let p = Polynomial::from_coeffs(coeffs.to_vec());
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    // Clear denominators.
    let scale: BigInt = p.coeffs().iter().map(|c| c.denom().clone()).product();
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&scale / c.denom()))
        .collect();
    let low = ints.iter().position(|a| !a.is_zero()).expect("nonzero polynomial");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(Rational::zero());
    }
    let trimmed = &ints[low..];
    if trimmed.len() > 1 {
        let mut budget = ROOT_SEARCH_BUDGET;
        let numerators = divisors(&trimmed[0], &mut budget)?;
        let denominators = divisors(trimmed.last().expect("nonempty"), &mut budget)?;
        for d in &denominators {
            for n in &numerators {
                for sign in [1i64, -1] {
                    let candidate = Rational::from_bigints(n * sign, d.clone()).expect("positive divisor");
                    if p.evaluate(&candidate).is_zero() && !roots.contains(&candidate) {
                        roots.push(candidate);
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn divisors(n: &BigInt, budget: &mut u64) -> Result<Vec<BigInt>, SpectraError> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if *budget == 0 {
            return Err(SpectraError::RootSearchTooLarge);
        }
        *budget -= 1;
        if (&n % &i).is_zero() {
            let q = &n / &i;
            if q != i {
                large.push(q);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}
