//! Free modules `A(U)ⁿ` of structure sections: coordinate vectors, matrices
//! of sections as morphisms between them, determinants and adjugates,
//! transposes, Kronecker products, and linear independence.
//!
//! Everything is expressed in a chosen gauge (basis). Operations that are not
//! coefficient-wise (determinant, adjugate, rank) are computed over ℚ at each
//! point of the domain and reassembled into sections.

mod qmatrix;

pub use qmatrix::QMatrix;

use std::fmt;

use thiserror::Error;

use crate::scalar::{Rational, Ring};
use crate::sheaf::{Section, SheafError};
use crate::site::{is_open_cover, FiniteSpace, OpenSet};

/// Cap on matrix size for expansion-based determinants.
pub const MAX_EXPANSION_SIZE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeModuleError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different open sets ({left:?} vs {right:?})")]
    DomainMismatch { left: OpenSet, right: OpenSet },
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("determinant is not a unit: vanishes at {zeros:?}")]
    NonUnitDeterminant { zeros: OpenSet },
    #[error("matrix of size {0} exceeds the expansion limit of {MAX_EXPANSION_SIZE}")]
    TooLarge(usize),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
}

fn same_domain(left: OpenSet, right: OpenSet) -> Result<(), FreeModuleError> {
    if left == right {
        Ok(())
    } else {
        Err(FreeModuleError::DomainMismatch { left, right })
    }
}

/// Element of `A(U)ⁿ`: `n` sections over a common open set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SectionVector {
    domain: OpenSet,
    entries: Vec<Section>,
}

impl SectionVector {
    pub fn new(domain: OpenSet, entries: Vec<Section>) -> Result<Self, FreeModuleError> {
        for e in &entries {
            same_domain(domain, e.domain())?;
        }
        Ok(SectionVector { domain, entries })
    }

    pub fn constant(domain: OpenSet, values: &[Rational]) -> Self {
        SectionVector {
            domain,
            entries: values.iter().map(|v| Section::constant(domain, v.clone())).collect(),
        }
    }

    pub fn zero(domain: OpenSet, n: usize) -> Self {
        SectionVector {
            domain,
            entries: vec![Section::zero(domain); n],
        }
    }

    /// The `i`-th vector of the Kronecker gauge (0-based).
    pub fn basis(domain: OpenSet, n: usize, i: usize) -> Self {
        let mut v = Self::zero(domain, n);
        v.entries[i] = Section::one(domain);
        v
    }

    /// Assembles a vector from one rational vector per point of `domain`.
    pub fn from_pointwise(domain: OpenSet, n: usize, mut at: impl FnMut(usize) -> Vec<Rational>) -> Self {
        let per_point: Vec<Vec<Rational>> = domain.points().map(&mut at).collect();
        let entries = (0..n)
            .map(|i| {
                Section::new(domain, per_point.iter().map(|v| v[i].clone()).collect())
                    .expect("one value per point")
            })
            .collect();
        SectionVector { domain, entries }
    }

    pub fn domain(&self) -> OpenSet {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Section] {
        &self.entries
    }

    pub fn at_point(&self, point: usize) -> Vec<Rational> {
        self.entries
            .iter()
            .map(|s| s.at(point).expect("point in domain").clone())
            .collect()
    }

    pub fn add(&self, other: &SectionVector) -> Result<SectionVector, FreeModuleError> {
        self.check_compatible(other)?;
        Ok(SectionVector {
            domain: self.domain,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &SectionVector) -> Result<SectionVector, FreeModuleError> {
        self.check_compatible(other)?;
        Ok(SectionVector {
            domain: self.domain,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    /// Multiplication by a ring element `s ∈ A(U)`.
    pub fn scale(&self, s: &Section) -> Result<SectionVector, FreeModuleError> {
        same_domain(self.domain, s.domain())?;
        Ok(SectionVector {
            domain: self.domain,
            entries: self.entries.iter().map(|e| e * s).collect(),
        })
    }

    /// Coordinate pairing `Σ uᵢ vᵢ`.
    pub fn dot(&self, other: &SectionVector) -> Result<Section, FreeModuleError> {
        self.check_compatible(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(Section::zero(self.domain), |acc, (a, b)| acc + a * b))
    }

    /// True iff the vector is nonzero at every point of its domain.
    pub fn is_nowhere_zero(&self) -> bool {
        self.domain
            .points()
            .all(|p| self.entries.iter().any(|e| !e.at(p).unwrap().is_zero()))
    }

    pub fn restrict(&self, to: OpenSet) -> Result<SectionVector, FreeModuleError> {
        Ok(SectionVector {
            domain: to,
            entries: self
                .entries
                .iter()
                .map(|e| e.restrict(to))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Glues vectors over the members of a cover of `target`.
    pub fn glue(space: &FiniteSpace, target: OpenSet, pieces: &[SectionVector]) -> Result<SectionVector, FreeModuleError> {
        let n = pieces.first().map_or(0, SectionVector::len);
        if pieces.iter().any(|p| p.len() != n) {
            return Err(FreeModuleError::DimensionMismatch("glued vectors differ in length".into()));
        }
        let entries = (0..n)
            .map(|i| {
                let comps: Vec<Section> = pieces.iter().map(|p| p.entries[i].clone()).collect();
                Section::glue(space, target, &comps)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if n == 0 {
            let cover: Vec<OpenSet> = pieces.iter().map(SectionVector::domain).collect();
            if !is_open_cover(space, target, &cover) {
                return Err(SheafError::NotACover.into());
            }
        }
        Ok(SectionVector { domain: target, entries })
    }

    fn check_compatible(&self, other: &SectionVector) -> Result<(), FreeModuleError> {
        same_domain(self.domain, other.domain)?;
        if self.len() != other.len() {
            return Err(FreeModuleError::DimensionMismatch(format!(
                "vectors of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for SectionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

/// The Kronecker gauge `ε₁, …, εₙ` of `A(U)ⁿ`.
pub fn kronecker_gauge(domain: OpenSet, n: usize) -> Vec<SectionVector> {
    (0..n).map(|i| SectionVector::basis(domain, n, i)).collect()
}

/// Rectangular matrix of sections over a common open set, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SectionMatrix {
    domain: OpenSet,
    rows: usize,
    cols: usize,
    entries: Vec<Section>,
}

impl SectionMatrix {
    pub fn new(domain: OpenSet, rows: usize, cols: usize, entries: Vec<Section>) -> Result<Self, FreeModuleError> {
        if entries.len() != rows * cols {
            return Err(FreeModuleError::DimensionMismatch(format!(
                "{} entries for a {rows}×{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            same_domain(domain, e.domain())?;
        }
        Ok(SectionMatrix { domain, rows, cols, entries })
    }

    /// Matrix of constant sections.
    pub fn constant(domain: OpenSet, m: &QMatrix) -> Self {
        SectionMatrix {
            domain,
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|v| Section::constant(domain, v.clone())).collect(),
        }
    }

    pub fn identity(domain: OpenSet, n: usize) -> Self {
        Self::constant(domain, &QMatrix::identity(n))
    }

    pub fn zero(domain: OpenSet, rows: usize, cols: usize) -> Self {
        Self::constant(domain, &QMatrix::zeros(rows, cols))
    }

    /// Assembles a matrix from one rational matrix per point of `domain`; all
    /// stalk matrices must share the given shape.
    pub fn from_pointwise(
        domain: OpenSet,
        rows: usize,
        cols: usize,
        mut at: impl FnMut(usize) -> QMatrix,
    ) -> Result<Self, FreeModuleError> {
        let per_point: Vec<QMatrix> = domain.points().map(&mut at).collect();
        if per_point.iter().any(|m| m.rows() != rows || m.cols() != cols) {
            return Err(FreeModuleError::DimensionMismatch(
                "pointwise matrices differ in shape".into(),
            ));
        }
        let entries = (0..rows * cols)
            .map(|k| {
                Section::new(domain, per_point.iter().map(|m| m.entries()[k].clone()).collect())
                    .expect("one value per point")
            })
            .collect();
        Ok(SectionMatrix { domain, rows, cols, entries })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(domain: OpenSet, columns: &[SectionVector]) -> Result<Self, FreeModuleError> {
        let rows = columns.first().map_or(0, SectionVector::len);
        for c in columns {
            same_domain(domain, c.domain())?;
            if c.len() != rows {
                return Err(FreeModuleError::DimensionMismatch("columns differ in length".into()));
            }
        }
        let cols = columns.len();
        let entries = (0..rows * cols)
            .map(|k| columns[k % cols].entries()[k / cols].clone())
            .collect();
        Ok(SectionMatrix { domain, rows, cols, entries })
    }

    pub fn domain(&self) -> OpenSet {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Section {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Section] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> SectionVector {
        SectionVector {
            domain: self.domain,
            entries: (0..self.rows).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn columns(&self) -> Vec<SectionVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// The stalk matrix at `point`.
    pub fn at_point(&self, point: usize) -> QMatrix {
        let pos = self.domain.position(point).expect("point in domain");
        QMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).values()[pos].clone())
    }

    /// `(point, stalk matrix)` for every point of the domain.
    pub fn pointwise(&self) -> Vec<(usize, QMatrix)> {
        self.domain.points().map(|p| (p, self.at_point(p))).collect()
    }

    /// The single rational matrix when every entry is a constant section.
    pub fn as_constant(&self) -> Option<QMatrix> {
        let first = self.domain.points().next()?;
        let m = self.at_point(first);
        self.entries
            .iter()
            .all(|e| e.as_constant().is_some())
            .then_some(m)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Section::is_identically_zero)
    }

    pub fn mat_mul(&self, other: &SectionMatrix) -> Result<SectionMatrix, FreeModuleError> {
        same_domain(self.domain, other.domain)?;
        if self.cols != other.rows {
            return Err(FreeModuleError::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Section::zero(self.domain);
                for k in 0..self.cols {
                    acc = acc + self.get(i, k) * other.get(k, j);
                }
                entries.push(acc);
            }
        }
        Ok(SectionMatrix {
            domain: self.domain,
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn mul_vector(&self, v: &SectionVector) -> Result<SectionVector, FreeModuleError> {
        same_domain(self.domain, v.domain())?;
        if self.cols != v.len() {
            return Err(FreeModuleError::DimensionMismatch(format!(
                "{}×{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let entries = (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Section::zero(self.domain), |acc, k| {
                    acc + self.get(i, k) * &v.entries()[k]
                })
            })
            .collect();
        Ok(SectionVector { domain: self.domain, entries })
    }

    fn zip(&self, other: &SectionMatrix, f: impl Fn(&Section, &Section) -> Section) -> Result<SectionMatrix, FreeModuleError> {
        same_domain(self.domain, other.domain)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(FreeModuleError::DimensionMismatch(format!(
                "{}×{} and {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(SectionMatrix {
            domain: self.domain,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &SectionMatrix) -> Result<SectionMatrix, FreeModuleError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SectionMatrix) -> Result<SectionMatrix, FreeModuleError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> SectionMatrix {
        SectionMatrix {
            entries: self.entries.iter().map(|e| -e).collect(),
            ..self.clone()
        }
    }

    /// Multiplication by a ring element `s ∈ A(U)`.
    pub fn scale(&self, s: &Section) -> Result<SectionMatrix, FreeModuleError> {
        same_domain(self.domain, s.domain())?;
        Ok(SectionMatrix {
            entries: self.entries.iter().map(|e| e * s).collect(),
            ..self.clone()
        })
    }

    /// The transpose, i.e. the matrix of `ᵗφ: u ↦ u∘φ` in the dual gauge.
    pub fn transpose(&self) -> SectionMatrix {
        let entries = (0..self.rows * self.cols)
            .map(|k| self.get(k % self.rows, k / self.rows).clone())
            .collect();
        SectionMatrix {
            domain: self.domain,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    fn require_square(&self) -> Result<(), FreeModuleError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(FreeModuleError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Determinant section, computed at each stalk.
    pub fn determinant(&self) -> Result<Section, FreeModuleError> {
        self.require_square()?;
        Ok(Section::from_fn(self.domain, |p| self.at_point(p).determinant()))
    }

    /// Determinant and adjugate with `A·adj = adj·A = det·I`.
    pub fn determinant_adjugate(&self) -> Result<(Section, SectionMatrix), FreeModuleError> {
        self.require_square()?;
        let n = self.rows;
        let stalks = self.pointwise();
        let det = Section::new(
            self.domain,
            stalks.iter().map(|(_, m)| m.determinant()).collect(),
        )?;
        let adj = SectionMatrix::from_pointwise(self.domain, n, n, |p| {
            stalks.iter().find(|(q, _)| *q == p).unwrap().1.adjugate()
        })?;
        Ok((det, adj))
    }

    /// Inverse `det⁻¹·adj`, defined iff the determinant is a unit.
    pub fn try_inverse(&self) -> Result<SectionMatrix, FreeModuleError> {
        let (det, adj) = self.determinant_adjugate()?;
        let inv = det.inverse().map_err(|_| FreeModuleError::NonUnitDeterminant {
            zeros: det.zero_set(),
        })?;
        adj.scale(&inv)
    }

    /// Kronecker (tensor) product in the product basis `eᵢ ⊗ fⱼ`, ordered
    /// with the first factor's index most significant.
    pub fn kronecker(&self, other: &SectionMatrix) -> Result<SectionMatrix, FreeModuleError> {
        same_domain(self.domain, other.domain)?;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                entries.push(
                    self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols),
                );
            }
        }
        Ok(SectionMatrix {
            domain: self.domain,
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn restrict(&self, to: OpenSet) -> Result<SectionMatrix, FreeModuleError> {
        Ok(SectionMatrix {
            domain: to,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|e| e.restrict(to))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Glues matrices over the members of a cover of `target`.
    pub fn glue(space: &FiniteSpace, target: OpenSet, pieces: &[SectionMatrix]) -> Result<SectionMatrix, FreeModuleError> {
        let cover: Vec<OpenSet> = pieces.iter().map(SectionMatrix::domain).collect();
        if !is_open_cover(space, target, &cover) {
            return Err(SheafError::NotACover.into());
        }
        let (rows, cols) = pieces.first().map_or((0, 0), |p| (p.rows, p.cols));
        if pieces.iter().any(|p| (p.rows, p.cols) != (rows, cols)) {
            return Err(FreeModuleError::DimensionMismatch("glued matrices differ in shape".into()));
        }
        let entries = (0..rows * cols)
            .map(|k| {
                let comps: Vec<Section> = pieces.iter().map(|p| p.entries[k].clone()).collect();
                Section::glue(space, target, &comps)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SectionMatrix {
            domain: target,
            rows,
            cols,
            entries,
        })
    }
}

impl fmt::Debug for SectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| &self.entries[i * self.cols..(i + 1) * self.cols]))
            .finish()
    }
}

/// Determinant by Laplace expansion along the first row, over any ring.
/// Used for matrices with polynomial entries; limited to
/// [`MAX_EXPANSION_SIZE`].
pub fn cofactor_determinant<R: Ring>(m: &[Vec<R>], one: &R) -> Result<R, FreeModuleError> {
    let n = m.len();
    if n > MAX_EXPANSION_SIZE {
        return Err(FreeModuleError::TooLarge(n));
    }
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(FreeModuleError::NotSquare { rows: n, cols: row.len() });
    }
    Ok(laplace(m, one))
}

fn laplace<R: Ring>(m: &[Vec<R>], one: &R) -> R {
    let n = m.len();
    match n {
        0 => one.one_like(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = one.zero_like();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<R>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].clone() * laplace(&minor, one);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Outcome of [`linear_independence`].
#[derive(Debug, Clone, PartialEq)]
pub enum Independence {
    Independent,
    /// At `point` the stalk vectors satisfy `Σ relation[i]·vᵢ(point) = 0`
    /// with `relation` nonzero.
    Dependent { point: usize, relation: Vec<Rational> },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

/// Linear independence over the function ring `A(U)`: the vectors are
/// independent iff their stalk vectors are ℚ-independent at every point of
/// `U` (a relation at one point extends by zero to a section relation).
pub fn linear_independence(domain: OpenSet, vectors: &[SectionVector]) -> Result<Independence, FreeModuleError> {
    let n = vectors.first().map_or(0, SectionVector::len);
    for v in vectors {
        same_domain(domain, v.domain())?;
        if v.len() != n {
            return Err(FreeModuleError::DimensionMismatch("vectors differ in length".into()));
        }
    }
    for point in domain.points() {
        let cols: Vec<Vec<Rational>> = vectors.iter().map(|v| v.at_point(point)).collect();
        let m = QMatrix::from_fn(n, vectors.len(), |i, j| cols[j][i].clone());
        if let Some(relation) = m.kernel_basis().into_iter().next() {
            return Ok(Independence::Dependent { point, relation });
        }
    }
    Ok(Independence::Independent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn two_points() -> OpenSet {
        OpenSet::from_indices([0, 1])
    }

    #[test]
    fn identity_is_neutral() {
        let u = two_points();
        let a = SectionMatrix::constant(u, &QMatrix::from_ints(&[&[1, 2], &[3, 4]]));
        assert_eq!(SectionMatrix::identity(u, 2).mat_mul(&a).unwrap(), a);
    }

    #[test]
    fn rotation_squares_to_minus_identity() {
        let u = two_points();
        let j = SectionMatrix::constant(u, &QMatrix::from_ints(&[&[0, 1], &[-1, 0]]));
        assert_eq!(j.mat_mul(&j).unwrap(), SectionMatrix::identity(u, 2).neg());
    }

    #[test]
    fn constant_matrix_times_varying_vector_is_pointwise() {
        let u = two_points();
        let a = QMatrix::from_ints(&[&[1, 2], &[0, 3]]);
        let f = Section::new(u, vec![q(1), q(2)]).unwrap();
        let v = SectionVector::new(u, vec![f.clone(), f]).unwrap();
        let w = SectionMatrix::constant(u, &a).mul_vector(&v).unwrap();
        for p in u.points() {
            assert_eq!(w.at_point(p), a.mul_vec(&v.at_point(p)));
        }
        assert_eq!(w.entries()[0].values(), &[q(3), q(6)]);
    }

    #[test]
    fn transpose_cases() {
        let u = two_points();
        assert_eq!(SectionMatrix::identity(u, 3).transpose(), SectionMatrix::identity(u, 3));
        let a = SectionMatrix::constant(u, &QMatrix::from_ints(&[&[1, 2], &[3, 4]]));
        let t = SectionMatrix::constant(u, &QMatrix::from_ints(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.transpose(), t);
        let r = SectionMatrix::constant(u, &QMatrix::from_ints(&[&[1, 2, 3], &[4, 5, 6]]));
        assert_eq!(r.transpose().rows(), 3);
        assert_eq!(r.transpose().get(2, 1), r.get(1, 2));
    }

    #[test]
    fn two_by_two_determinant_and_adjugate() {
        let u = two_points();
        let a = SectionMatrix::constant(u, &QMatrix::from_ints(&[&[1, 2], &[3, 4]]));
        let (det, adj) = a.determinant_adjugate().unwrap();
        assert_eq!(det, Section::constant(u, q(-2)));
        assert_eq!(adj, SectionMatrix::constant(u, &QMatrix::from_ints(&[&[4, -2], &[-3, 1]])));
        let (det, adj) = SectionMatrix::identity(u, 4).determinant_adjugate().unwrap();
        assert_eq!(det, Section::one(u));
        assert_eq!(adj, SectionMatrix::identity(u, 4));
    }

    #[test]
    fn inverse_cases() {
        let u = two_points();
        let d = SectionMatrix::constant(u, &QMatrix::from_ints(&[&[2, 0], &[0, 3]]));
        let inv = d.try_inverse().unwrap();
        assert_eq!(inv.get(0, 0), &Section::constant(u, Rational::new(1, 2)));
        assert_eq!(inv.get(1, 1), &Section::constant(u, Rational::new(1, 3)));

        // det = f vanishes at b only.
        let f = Section::new(u, vec![q(1), q(0)]).unwrap();
        let m = SectionMatrix::new(u, 1, 1, vec![f]).unwrap();
        assert_eq!(
            m.try_inverse(),
            Err(FreeModuleError::NonUnitDeterminant {
                zeros: OpenSet::from_indices([1])
            })
        );

        let j = SectionMatrix::constant(u, &QMatrix::standard_symplectic(1));
        assert_eq!(j.try_inverse().unwrap(), j.neg());
    }

    #[test]
    fn not_square_errors() {
        let u = two_points();
        let r = SectionMatrix::zero(u, 2, 3);
        assert!(matches!(r.determinant(), Err(FreeModuleError::NotSquare { .. })));
        assert!(matches!(r.try_inverse(), Err(FreeModuleError::NotSquare { .. })));
    }

    #[test]
    fn domain_mismatch_is_reported() {
        let a = SectionMatrix::identity(two_points(), 2);
        let b = SectionMatrix::identity(OpenSet::from_indices([0]), 2);
        assert!(matches!(a.mat_mul(&b), Err(FreeModuleError::DomainMismatch { .. })));
    }

    #[test]
    fn kronecker_cases() {
        let u = two_points();
        let i2 = SectionMatrix::identity(u, 2);
        assert_eq!(i2.kronecker(&i2).unwrap(), SectionMatrix::identity(u, 4));
        let b = SectionMatrix::constant(u, &QMatrix::from_ints(&[&[1, 2], &[3, 4]]));
        let two = SectionMatrix::constant(u, &QMatrix::from_ints(&[&[2]]));
        assert_eq!(two.kronecker(&b).unwrap(), b.scale(&Section::constant(u, q(2))).unwrap());
        let three = SectionMatrix::zero(u, 3, 3);
        let k = three.kronecker(&three).unwrap();
        // rank-3 module, tensor of order 2: 3^2 = 9 basis elements
        assert_eq!((k.rows(), k.cols()), (9, 9));
    }

    #[test]
    fn independence_cases() {
        let u = two_points();
        assert!(linear_independence(u, &kronecker_gauge(u, 3)).unwrap().is_independent());

        // Equal at b, independent at a.
        let sec = |a, b| Section::new(u, vec![q(a), q(b)]).unwrap();
        let v1 = SectionVector::new(u, vec![sec(1, 1), sec(0, 1)]).unwrap();
        let v2 = SectionVector::new(u, vec![sec(0, 1), sec(1, 1)]).unwrap();
        match linear_independence(u, &[v1, v2]).unwrap() {
            Independence::Dependent { point, relation } => {
                assert_eq!(point, 1);
                assert_eq!(relation, vec![q(-1), q(1)]);
            }
            other => panic!("expected dependence, got {other:?}"),
        }

        let single = SectionVector::new(u, vec![Section::new(u, vec![q(3), q(-1)]).unwrap()]).unwrap();
        assert!(linear_independence(u, &[single]).unwrap().is_independent());
    }

    #[test]
    fn glue_matrices() {
        let space = FiniteSpace::discrete(2);
        let a = SectionMatrix::constant(OpenSet::from_indices([0]), &QMatrix::from_ints(&[&[2]]));
        let b = SectionMatrix::constant(OpenSet::from_indices([1]), &QMatrix::from_ints(&[&[5]]));
        let g = SectionMatrix::glue(&space, space.whole(), &[a, b]).unwrap();
        assert_eq!(g.get(0, 0).values(), &[q(2), q(5)]);
    }

    #[test]
    fn cofactor_determinant_limit() {
        let big = vec![vec![q(0); 9]; 9];
        assert_eq!(cofactor_determinant(&big, &q(1)), Err(FreeModuleError::TooLarge(9)));
        let m = vec![vec![q(1), q(2)], vec![q(3), q(4)]];
        assert_eq!(cofactor_determinant(&m, &q(1)).unwrap(), q(-2));
    }
}
