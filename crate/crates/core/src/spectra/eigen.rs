use serde_json::{json, Value};

use crate::free_module::{QMatrix, SectionMatrix, SectionVector};
use crate::json::{compact_section_json, vector_to_json};
use crate::scalar::{Polynomial, Rational};
use crate::sheaf::{Presheaf, Section, SheafError, SECTION_BUDGET};
use crate::site::{FiniteSpace, OpenSet};
use crate::symplectic::SymplecticMap;

use super::{char_poly, char_poly_q, rational_roots, SpectraError};

/// Eigenvalue section `λ` with a nowhere-zero eigenvector section `s`,
/// `M·s = λ·s`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub lambda: Section,
    pub vector: SectionVector,
}

impl EigenPair {
    pub fn domain(&self) -> OpenSet {
        self.lambda.domain()
    }

    /// `M·s = λ·s` exactly, with `s` nowhere zero.
    pub fn is_eigenpair_of(&self, m: &SectionMatrix) -> bool {
        if m.domain() != self.domain() || self.vector.domain() != self.domain() || m.cols() != self.vector.len() {
            return false;
        }
        let (Ok(lhs), Ok(rhs)) = (m.mul_vector(&self.vector), self.vector.scale(&self.lambda)) else {
            return false;
        };
        lhs == rhs && self.vector.is_nowhere_zero()
    }

    pub fn restrict(&self, to: OpenSet) -> Result<EigenPair, SpectraError> {
        Ok(EigenPair {
            lambda: self.lambda.restrict(to)?,
            vector: self.vector.restrict(to)?,
        })
    }

    pub fn to_json(&self, space: &FiniteSpace) -> Value {
        json!({
            "lambda": compact_section_json(space, &self.lambda),
            "vector": vector_to_json(space, &self.vector),
        })
    }
}

/// One stalk eigenpair `(λ, v)` over ℚ.
pub type Pointwise = (Rational, Vec<Rational>);

/// Eigenpairs of a rational matrix: eigenvalues ascending, each eigenspace
/// spanned by kernel-basis vectors scaled so the first nonzero entry is 1.
pub fn pointwise_eigenpairs(a: &QMatrix) -> Result<Vec<Pointwise>, SpectraError> {
    let n = a.rows();
    let mut out = Vec::new();
    for lambda in rational_roots(&char_poly_q(a))? {
        let shifted = a.sub(&QMatrix::identity(n).scale(&lambda));
        for v in shifted.kernel_basis() {
            let lead = v.iter().find(|x| !x.is_zero()).expect("kernel vectors are nonzero").clone();
            let inv = lead.inverse().expect("nonzero");
            out.push((lambda.clone(), v.iter().map(|x| x * &inv).collect()));
        }
    }
    Ok(out)
}

/// A point at which fewer than the maximal number of eigenpairs exist, so
/// the corresponding gluing branches are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Omission {
    pub point: usize,
    pub available: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenReport {
    pub pairs: Vec<EigenPair>,
    pub omitted: Vec<Omission>,
}

impl EigenReport {
    pub fn omitted_points(&self) -> Vec<usize> {
        self.omitted.iter().map(|o| o.point).collect()
    }
}

/// Glues the `j`-th pointwise eigenpair (in the deterministic order of
/// [`pointwise_eigenpairs`]) across all points, for every `j` available at
/// every point.
pub fn eigen_sections(m: &SectionMatrix) -> Result<EigenReport, SpectraError> {
    super::require_square(m)?;
    let domain = m.domain();
    let n = m.rows();
    let per_point: Vec<(usize, Vec<Pointwise>)> = m
        .pointwise()
        .into_iter()
        .map(|(p, a)| pointwise_eigenpairs(&a).map(|pairs| (p, pairs)))
        .collect::<Result<_, _>>()?;
    let counts: Vec<usize> = per_point.iter().map(|(_, pairs)| pairs.len()).collect();
    let glued = counts.iter().copied().min().unwrap_or(0);
    let most = counts.iter().copied().max().unwrap_or(0);
    let omitted = per_point
        .iter()
        .filter(|(_, pairs)| pairs.is_empty() || pairs.len() < most)
        .map(|(p, pairs)| Omission {
            point: *p,
            available: pairs.len(),
        })
        .collect();
    let at = |p: usize, j: usize| &per_point.iter().find(|(q, _)| *q == p).expect("point").1[j];
    let mut pairs = Vec::with_capacity(glued);
    for j in 0..glued {
        let pair = EigenPair {
            lambda: Section::from_fn(domain, |p| at(p, j).0.clone()),
            vector: SectionVector::from_pointwise(domain, n, |p| at(p, j).1.clone()),
        };
        if !pair.is_eigenpair_of(m) {
            return Err(SpectraError::NotAnEigenpair(j));
        }
        pairs.push(pair);
    }
    Ok(EigenReport { pairs, omitted })
}

/// Glues eigenpairs of `M` given over the members of a cover of `M`'s
/// domain into one eigenpair over the whole domain.
pub fn eigen_presheaf_glue(space: &FiniteSpace, m: &SectionMatrix, pieces: &[EigenPair]) -> Result<EigenPair, SpectraError> {
    for (i, piece) in pieces.iter().enumerate() {
        if !piece.is_eigenpair_of(&m.restrict(piece.domain())?) {
            return Err(SpectraError::NotAnEigenpair(i));
        }
    }
    let target = m.domain();
    let lambdas: Vec<Section> = pieces.iter().map(|p| p.lambda.clone()).collect();
    let vectors: Vec<SectionVector> = pieces.iter().map(|p| p.vector.clone()).collect();
    let glued = EigenPair {
        lambda: Section::glue(space, target, &lambdas)?,
        vector: SectionVector::glue(space, target, &vectors)?,
    };
    debug_assert!(glued.is_eigenpair_of(m));
    Ok(glued)
}

/// The eigenvector presheaf of a fixed matrix `M` over the whole space,
/// sampled: over `U`, pairs whose stalk at each point is one of the
/// pointwise eigenpairs of `M` with the vector rescaled by a factor from
/// `scalars`.
#[derive(Debug, Clone)]
pub struct EigenPresheaf {
    space: FiniteSpace,
    matrix: SectionMatrix,
    /// Per point of the space: the admissible `(λ, v)` stalk choices.
    choices: Vec<Vec<(Rational, Vec<Rational>)>>,
}

impl EigenPresheaf {
    pub fn new(space: FiniteSpace, matrix: SectionMatrix, scalars: &[Rational]) -> Result<Self, SpectraError> {
        if matrix.domain() != space.whole() {
            return Err(SpectraError::DomainMismatch {
                coeffs: space.whole(),
                matrix: matrix.domain(),
            });
        }
        super::require_square(&matrix)?;
        let mut choices = Vec::with_capacity(space.len());
        for p in 0..space.len() {
            let mut at_p = Vec::new();
            for (lambda, v) in pointwise_eigenpairs(&matrix.at_point(p))? {
                for c in scalars.iter().filter(|c| !c.is_zero()) {
                    at_p.push((lambda.clone(), v.iter().map(|x| x * c).collect()));
                }
            }
            choices.push(at_p);
        }
        Ok(EigenPresheaf { space, matrix, choices })
    }

    pub fn matrix(&self) -> &SectionMatrix {
        &self.matrix
    }
}

impl Presheaf for EigenPresheaf {
    type Section = EigenPair;

    fn space(&self) -> &FiniteSpace {
        &self.space
    }

    fn domain(&self, section: &EigenPair) -> OpenSet {
        section.domain()
    }

    fn restrict(&self, section: &EigenPair, to: OpenSet) -> Result<EigenPair, SheafError> {
        section.restrict(to).map_err(|e| match e {
            SpectraError::Sheaf(s) => s,
            SpectraError::FreeModule(crate::free_module::FreeModuleError::Sheaf(s)) => s,
            other => SheafError::NonEnumerableSections(other.to_string()),
        })
    }

    fn sections(&self, u: OpenSet) -> Result<Vec<EigenPair>, SheafError> {
        let points: Vec<usize> = u.points().collect();
        let radices: Vec<usize> = points.iter().map(|&p| self.choices[p].len()).collect();
        let count = radices
            .iter()
            .try_fold(1usize, |acc, &r| acc.checked_mul(r))
            .filter(|&c| c <= SECTION_BUDGET)
            .ok_or_else(|| SheafError::NonEnumerableSections(format!("eigenpair choices over {u:?} exceed the budget")))?;
        let n = self.matrix.rows();
        let mut out = Vec::with_capacity(count);
        for mut code in 0..count {
            let mut digits = vec![0; points.len()];
            for (d, &r) in digits.iter_mut().zip(&radices).rev() {
                *d = code % r;
                code /= r;
            }
            let pick = |p: usize| {
                let slot = points.iter().position(|&q| q == p).expect("point of u");
                &self.choices[p][digits[slot]]
            };
            out.push(EigenPair {
                lambda: Section::from_fn(u, |p| pick(p).0.clone()),
                vector: SectionVector::from_pointwise(u, n, |p| pick(p).1.clone()),
            });
        }
        Ok(out)
    }

    fn section_json(&self, section: &EigenPair) -> Value {
        section.to_json(&self.space)
    }
}

/// Outcome of [`reciprocal_spectrum_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocityReport {
    pub char_poly: Polynomial<Section>,
    /// `t^{2n}·P(1/t) = P(t)` coefficientwise.
    pub palindromic: bool,
    /// `(point, distinct rational eigenvalues ascending)`.
    pub spectrum: Vec<(usize, Vec<Rational>)>,
    /// Every rational eigenvalue `λ` has `1/λ` in the same stalk spectrum.
    pub closed_under_inverse: bool,
    /// `P(λ) = P(1/λ) = 0` for every rational eigenvalue `λ`.
    pub roots_verified: bool,
}

impl ReciprocityReport {
    pub fn holds(&self) -> bool {
        self.palindromic && self.closed_under_inverse && self.roots_verified
    }
}

pub fn reciprocal_spectrum_check(m: &SectionMatrix) -> Result<ReciprocityReport, SpectraError> {
    let map = SymplecticMap::new(m.clone())?;
    let p = char_poly(map.matrix())?;
    let degree = m.rows();
    let palindromic = p.reversal(degree) == p;
    let mut spectrum = Vec::new();
    let mut closed = true;
    let mut verified = true;
    for (point, a) in map.matrix().pointwise() {
        let coeffs = char_poly_q(&a);
        let stalk_poly = Polynomial::from_coeffs(coeffs.clone());
        let roots = rational_roots(&coeffs)?;
        for lambda in &roots {
            // det M = 1, so 0 is never an eigenvalue.
            let inv = lambda.inverse().expect("symplectic eigenvalues are units");
            closed &= roots.contains(&inv);
            verified &= stalk_poly.evaluate(lambda).is_zero() && stalk_poly.evaluate(&inv).is_zero();
        }
        spectrum.push((point, roots));
    }
    Ok(ReciprocityReport {
        char_poly: p,
        palindromic,
        spectrum,
        closed_under_inverse: closed,
        roots_verified: verified,
    })
}
