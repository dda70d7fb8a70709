//! Skew-symmetric forms on `A(U)ⁿ`, symplectic (Darboux) bases, the
//! degenerate normal form and the symplectic group.
//!
//! A form is given by its Gram matrix `Ω` in the Kronecker gauge:
//! `ω(x, y) = ᵗx·Ω·y`. Bases are returned as change-of-basis matrices `P`
//! whose columns are `s₁…s_m, t₁…t_m, k₁…k_{n−2m}`, so that `ᵗP·Ω·P` is the
//! block normal form.

mod presheaf;
pub mod random;

pub use presheaf::SpPresheaf;

use serde::Serialize;
use thiserror::Error;

use crate::exterior::{form_power, ExteriorError, KForm};
use crate::free_module::{FreeModuleError, QMatrix, SectionMatrix, SectionVector};
use crate::scalar::Rational;
use crate::sheaf::Section;
use crate::site::OpenSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("form is not skew-symmetric")]
    NotSkew,
    #[error("form is degenerate: determinant vanishes at {zeros:?}")]
    Degenerate { zeros: OpenSet },
    #[error("pointwise rank is not constant: {ranks:?} (point, rank); restrict to a smaller open")]
    NonConstantRank { ranks: Vec<(usize, usize)> },
    #[error("no pivot pair with a unit pairing exists at point {point}")]
    NoUnitPivot { point: usize },
    #[error("map is not symplectic")]
    NotSymplectic,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("form power vanishes at {zeros:?}")]
    DegenerateForm { zeros: OpenSet },
    #[error(transparent)]
    FreeModule(#[from] FreeModuleError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// `Ω` as a section matrix of the standard form `[[0, I_m], [−I_m, 0]]`.
pub fn standard_form(domain: OpenSet, m: usize) -> SectionMatrix {
    SectionMatrix::constant(domain, &QMatrix::standard_symplectic(m))
}

/// The block matrix `[[0, I_m, 0], [−I_m, 0, 0], [0, 0, 0]]` of size `n`.
pub fn normal_form_matrix(n: usize, m: usize) -> QMatrix {
    QMatrix::from_fn(n, n, |i, j| {
        if i < m && j == i + m {
            Rational::one()
        } else if j < m && i == j + m {
            -Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// `ω(x, y) = ᵗx·Ω·y`.
pub fn pairing(omega: &SectionMatrix, x: &SectionVector, y: &SectionVector) -> Result<Section, FreeModuleError> {
    x.dot(&omega.mul_vector(y)?)
}

/// Congruence `ᵗP·Ω·P`.
pub fn congruence(omega: &SectionMatrix, p: &SectionMatrix) -> Result<SectionMatrix, FreeModuleError> {
    p.transpose().mat_mul(omega)?.mat_mul(p)
}

fn require_square(m: &SectionMatrix) -> Result<(), SymplecticError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(SymplecticError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

/// Outcome of [`check_form`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormCheck {
    pub skew: bool,
    /// `(point, rank)` for every point of the domain.
    pub ranks: Vec<(usize, usize)>,
    pub nondegenerate: bool,
}

impl FormCheck {
    pub fn constant_rank(&self) -> Option<usize> {
        let first = self.ranks.first().map_or(0, |r| r.1);
        self.ranks.iter().all(|r| r.1 == first).then_some(first)
    }
}

pub fn check_form(omega: &SectionMatrix) -> Result<FormCheck, SymplecticError> {
    require_square(omega)?;
    let skew = omega.transpose() == omega.neg();
    let ranks: Vec<(usize, usize)> = omega.pointwise().iter().map(|(p, m)| (*p, m.rank())).collect();
    let nondegenerate = ranks.iter().all(|&(_, r)| r == omega.rows());
    Ok(FormCheck {
        skew,
        ranks,
        nondegenerate,
    })
}

/// A symplectic basis `s₁…s_m, t₁…t_m` completed by kernel vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DarbouxBasis {
    pub s: Vec<SectionVector>,
    pub t: Vec<SectionVector>,
    pub kernel: Vec<SectionVector>,
}

impl DarbouxBasis {
    pub fn m(&self) -> usize {
        self.s.len()
    }

    pub fn vectors(&self) -> Vec<SectionVector> {
        self.s.iter().chain(&self.t).chain(&self.kernel).cloned().collect()
    }

    pub fn change_of_basis(&self) -> SectionMatrix {
        let cols = self.vectors();
        SectionMatrix::from_columns(cols[0].domain(), &cols).expect("basis vectors share a shape")
    }
}

/// Symplectic basis of a nondegenerate skew form; `ᵗP·Ω·P = J` exactly.
pub fn darboux_basis(omega: &SectionMatrix) -> Result<DarbouxBasis, SymplecticError> {
    let check = check_form(omega)?;
    if !check.skew {
        return Err(SymplecticError::NotSkew);
    }
    if !check.nondegenerate {
        let zeros = omega.determinant()?.zero_set();
        return Err(SymplecticError::Degenerate { zeros });
    }
    reduce(omega, omega.rows() / 2)
}

/// Normal form of a skew form of constant pointwise rank `2m`: returns `m`
/// and `P` with `ᵗP·Ω·P = [[0, I_m, 0], [−I_m, 0, 0], [0, 0, 0]]`.
pub fn skew_normal_form(omega: &SectionMatrix) -> Result<(usize, DarbouxBasis), SymplecticError> {
    let check = check_form(omega)?;
    if !check.skew {
        return Err(SymplecticError::NotSkew);
    }
    let rank = check
        .constant_rank()
        .ok_or_else(|| SymplecticError::NonConstantRank { ranks: check.ranks.clone() })?;
    let basis = reduce(omega, rank / 2)?;
    Ok((rank / 2, basis))
}

/// Splits off `m` hyperbolic pairs, following the proof of the basis
/// theorem: choose `s` and `t̄` with `ω(s, t̄)` a unit `u`, put `t = u⁻¹·t̄`,
/// and replace every generator `z` by its projection
/// `z − (−ω(z, s)·t + ω(z, t)·s)` onto the orthogonal complement.
fn reduce(omega: &SectionMatrix, m: usize) -> Result<DarbouxBasis, SymplecticError> {
    let n = omega.rows();
    let domain = omega.domain();
    let mut gens: Vec<SectionVector> = (0..n).map(|i| SectionVector::basis(domain, n, i)).collect();
    let mut s_vecs = Vec::with_capacity(m);
    let mut t_vecs = Vec::with_capacity(m);
    for _ in 0..m {
        let (s, t_bar, used) = match unit_pivot(omega, &gens)? {
            Some((i, j)) => (gens[i].clone(), gens[j].clone(), Some((i, j))),
            None => {
                let (s, t_bar) = pointwise_pivot(omega, &gens)?;
                (s, t_bar, None)
            }
        };
        let u = pairing(omega, &s, &t_bar)?;
        let u_inv = u.inverse().map_err(|_| SymplecticError::NoUnitPivot {
            point: u.zero_set().points().next().unwrap_or(0),
        })?;
        let t = t_bar.scale(&u_inv)?;
        let mut next = Vec::with_capacity(gens.len());
        for (k, z) in gens.iter().enumerate() {
            if used.is_some_and(|(i, j)| k == i || k == j) {
                continue;
            }
            let a = pairing(omega, z, &s)?;
            let b = pairing(omega, z, &t)?;
            let along = t.scale(&-a)?.add(&s.scale(&b)?)?;
            next.push(z.sub(&along)?);
        }
        gens = next;
        s_vecs.push(s);
        t_vecs.push(t);
    }
    let kernel = kernel_sections(omega, n - 2 * m)?;
    Ok(DarbouxBasis {
        s: s_vecs,
        t: t_vecs,
        kernel,
    })
}

/// First pair `(i, j)`, `i < j`, in lexicographic order with `ω(gᵢ, gⱼ)` a
/// unit section.
fn unit_pivot(omega: &SectionMatrix, gens: &[SectionVector]) -> Result<Option<(usize, usize)>, SymplecticError> {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if pairing(omega, &gens[i], &gens[j])?.is_nowhere_zero() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Chooses a pivot pair independently at each point (each stalk is over ℚ)
/// and glues the choices into sections.
fn pointwise_pivot(omega: &SectionMatrix, gens: &[SectionVector]) -> Result<(SectionVector, SectionVector), SymplecticError> {
    let n = omega.rows();
    let mut s_at = Vec::new();
    let mut t_at = Vec::new();
    for (point, w) in omega.pointwise() {
        let stalk: Vec<Vec<Rational>> = gens.iter().map(|g| g.at_point(point)).collect();
        let found = (0..stalk.len())
            .flat_map(|i| (i + 1..stalk.len()).map(move |j| (i, j)))
            .find(|&(i, j)| !dot(&stalk[i], &w.mul_vec(&stalk[j])).is_zero());
        let (i, j) = found.ok_or(SymplecticError::NoUnitPivot { point })?;
        s_at.push(stalk[i].clone());
        t_at.push(stalk[j].clone());
    }
    let domain = omega.domain();
    let mut k = 0;
    let s = SectionVector::from_pointwise(domain, n, |_| {
        k += 1;
        s_at[k - 1].clone()
    });
    k = 0;
    let t = SectionVector::from_pointwise(domain, n, |_| {
        k += 1;
        t_at[k - 1].clone()
    });
    Ok((s, t))
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pointwise kernel bases of `Ω`, glued; all stalks must have the same
/// kernel dimension `count`.
fn kernel_sections(omega: &SectionMatrix, count: usize) -> Result<Vec<SectionVector>, SymplecticError> {
    let n = omega.rows();
    let stalks: Vec<(usize, Vec<Vec<Rational>>)> =
        omega.pointwise().into_iter().map(|(p, w)| (p, w.kernel_basis())).collect();
    if stalks.iter().any(|(_, k)| k.len() != count) {
        return Err(SymplecticError::NonConstantRank {
            ranks: stalks.iter().map(|(p, k)| (*p, n - k.len())).collect(),
        });
    }
    Ok((0..count)
        .map(|c| {
            SectionVector::from_pointwise(omega.domain(), n, |p| {
                stalks.iter().find(|(q, _)| *q == p).expect("point of domain").1[c].clone()
            })
        })
        .collect())
}

/// `Σ_{i<j} Ωᵢⱼ·εⁱ∧εʲ`, the 2-form with Gram matrix `Ω`.
pub fn form_of_matrix(omega: &SectionMatrix) -> KForm {
    KForm::from_fn(omega.domain(), omega.rows(), 2, |idx| omega.get(idx[0], idx[1]).clone())
}

/// `Σᵢ sᵢ*∧tᵢ*`, where `sᵢ*, tᵢ*` are the dual covectors (rows of `P⁻¹`).
pub fn standard_sum_decomposition(basis: &DarbouxBasis) -> Result<KForm, SymplecticError> {
    let p = basis.change_of_basis();
    let dual = p.try_inverse()?.transpose();
    let m = basis.m();
    let mut acc = KForm::zero(p.domain(), p.rows(), 2);
    for i in 0..m {
        let s_star = KForm::one_form(&dual.column(i));
        let t_star = KForm::one_form(&dual.column(m + i));
        acc = acc.add(&s_star.wedge(&t_star)?)?;
    }
    Ok(acc)
}

/// `((−1)^⌊m/2⌋ / m!)·ωᵐ` for a 2-form on a module of rank `2m`.
pub fn orientation_form(omega: &KForm, m: usize) -> Result<KForm, SymplecticError> {
    if omega.degree() != 2 || omega.rank() != 2 * m {
        return Err(SymplecticError::DimensionMismatch(format!(
            "orientation needs a 2-form on rank {}, got degree {} on rank {}",
            2 * m,
            omega.degree(),
            omega.rank()
        )));
    }
    let power = form_power(omega, m)?;
    let top = &power.coeffs()[0];
    if !top.is_nowhere_zero() {
        return Err(SymplecticError::DegenerateForm { zeros: top.zero_set() });
    }
    let factorial: i64 = (1..=m as i64).product();
    let sign = if (m / 2).is_multiple_of(2) { 1 } else { -1 };
    let c = Rational::new(sign, factorial);
    Ok(power.scale(&Section::constant(omega.domain(), c))?)
}

/// Gram matrix of `ω((s₁,α₁),(s₂,α₂)) = α₂(s₁) − α₁(s₂)` on `E ⊕ E*`, in the
/// basis `e₁…e_n, e₁*…e_n*`.
pub fn hyperbolic_sum_form(domain: OpenSet, n: usize) -> SectionMatrix {
    // Basis element k as a pair (vector part, covector part) over ℚ.
    let element = |k: usize| -> (Vec<Rational>, Vec<Rational>) {
        let unit = |i: usize| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect();
        if k < n {
            (unit(k), vec![Rational::zero(); n])
        } else {
            (vec![Rational::zero(); n], unit(k - n))
        }
    };
    let gram = QMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let (s1, a1) = element(i);
        let (s2, a2) = element(j);
        dot(&a2, &s1) - dot(&a1, &s2)
    });
    SectionMatrix::constant(domain, &gram)
}

/// `ᵗM·Ω₂·M = Ω₁` exactly.
pub fn is_symplectic_map(
    m: &SectionMatrix,
    omega1: &SectionMatrix,
    omega2: &SectionMatrix,
) -> Result<bool, SymplecticError> {
    require_square(m)?;
    if omega1.rows() != m.cols() || omega2.rows() != m.rows() || !omega1.is_square() || !omega2.is_square() {
        return Err(SymplecticError::DimensionMismatch(format!(
            "map {}×{} between forms of size {} and {}",
            m.rows(),
            m.cols(),
            omega1.rows(),
            omega2.rows()
        )));
    }
    Ok(congruence(omega2, m)? == *omega1)
}

/// Element of `Sp(2m, A(U))`: `ᵗM·J·M = J`, and therefore `det M = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMap {
    matrix: SectionMatrix,
}

impl SymplecticMap {
    pub fn new(matrix: SectionMatrix) -> Result<Self, SymplecticError> {
        require_square(&matrix)?;
        if !matrix.rows().is_multiple_of(2) {
            return Err(SymplecticError::DimensionMismatch(format!("odd size {}", matrix.rows())));
        }
        let j = standard_form(matrix.domain(), matrix.rows() / 2);
        if !is_symplectic_map(&matrix, &j, &j)? {
            return Err(SymplecticError::NotSymplectic);
        }
        // Corollary of ᵗMJM = J; a failure here is an arithmetic fault.
        if matrix.determinant()? != Section::one(matrix.domain()) {
            return Err(SymplecticError::NotSymplectic);
        }
        Ok(SymplecticMap { matrix })
    }

    pub fn identity(domain: OpenSet, m: usize) -> Self {
        SymplecticMap {
            matrix: SectionMatrix::identity(domain, 2 * m),
        }
    }

    pub fn matrix(&self) -> &SectionMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SectionMatrix {
        self.matrix
    }

    pub fn compose(&self, other: &SymplecticMap) -> Result<SymplecticMap, SymplecticError> {
        Self::new(self.matrix.mat_mul(&other.matrix)?)
    }

    /// Inverse through the adjugate (the determinant is 1), cross-checked
    /// against `−J·ᵗM·J`.
    pub fn inverse(&self) -> Result<SymplecticMap, SymplecticError> {
        let (det, adj) = self.matrix.determinant_adjugate()?;
        if det != Section::one(self.matrix.domain()) {
            return Err(SymplecticError::NotSymplectic);
        }
        let j = standard_form(self.matrix.domain(), self.matrix.rows() / 2);
        let via_form = j.mat_mul(&self.matrix.transpose())?.mat_mul(&j)?.neg();
        if via_form != adj {
            return Err(SymplecticError::NotSymplectic);
        }
        Self::new(adj)
    }

    pub fn restrict(&self, to: OpenSet) -> Result<SymplecticMap, SymplecticError> {
        Ok(SymplecticMap {
            matrix: self.matrix.restrict(to)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn u() -> OpenSet {
        OpenSet::from_indices([0, 1])
    }

    fn c(rows: &[&[i64]]) -> SectionMatrix {
        SectionMatrix::constant(u(), &QMatrix::from_ints(rows))
    }

    fn verify_darboux(omega: &SectionMatrix) -> DarbouxBasis {
        let basis = darboux_basis(omega).unwrap();
        let p = basis.change_of_basis();
        assert_eq!(congruence(omega, &p).unwrap(), standard_form(u(), omega.rows() / 2));
        basis
    }

    #[test]
    fn check_form_examples() {
        let j = standard_form(u(), 2);
        let r = check_form(&j).unwrap();
        assert!(r.skew && r.nondegenerate);
        assert_eq!(r.constant_rank(), Some(4));

        let d = check_form(&c(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]])).unwrap();
        assert!(d.skew && !d.nondegenerate);
        assert_eq!(d.constant_rank(), Some(2));

        assert!(!check_form(&c(&[&[0, 1], &[1, 0]])).unwrap().skew);
        assert!(matches!(
            check_form(&c(&[&[0, 1, 2]])),
            Err(SymplecticError::NotSquare { .. })
        ));
    }

    #[test]
    fn standard_form_has_identity_basis() {
        for m in 1..4 {
            let basis = verify_darboux(&standard_form(u(), m));
            assert_eq!(basis.change_of_basis(), SectionMatrix::identity(u(), 2 * m));
        }
    }

    #[test]
    fn scaled_pairing_is_normalized() {
        let basis = verify_darboux(&c(&[&[0, 2], &[-2, 0]]));
        assert_eq!(basis.s[0], SectionVector::basis(u(), 2, 0));
        let half = Rational::new(1, 2);
        assert_eq!(basis.t[0], SectionVector::constant(u(), &[Rational::zero(), half]));
    }

    #[test]
    fn negative_pivot_is_handled() {
        verify_darboux(&c(&[&[0, -3, 1, 0], &[3, 0, 0, 2], &[-1, 0, 0, 5], &[0, -2, -5, 0]]));
    }

    #[test]
    fn pivot_chosen_pointwise_when_no_pair_is_a_unit() {
        // At a: pairs (1,2),(3,4); at b: pairs (1,3),(2,4). No single pair
        // of basis vectors pairs to a unit section.
        let at_a = QMatrix::from_ints(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        let at_b = QMatrix::standard_symplectic(2);
        let omega = SectionMatrix::from_pointwise(u(), 4, 4, |p| if p == 0 { at_a.clone() } else { at_b.clone() }).unwrap();
        let basis = verify_darboux(&omega);
        assert!(basis.t[0].entries().iter().any(|e| e.as_constant().is_none()));
    }

    #[test]
    fn degenerate_forms_are_refused_by_darboux() {
        let omega = c(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
        assert!(matches!(darboux_basis(&omega), Err(SymplecticError::Degenerate { .. })));
        assert_eq!(darboux_basis(&c(&[&[0, 1], &[1, 0]])), Err(SymplecticError::NotSkew));
    }

    #[test]
    fn normal_form_examples() {
        let zero = c(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let (m, basis) = skew_normal_form(&zero).unwrap();
        assert_eq!(m, 0);
        assert_eq!(basis.change_of_basis(), SectionMatrix::identity(u(), 3));

        let block = c(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]);
        let (m, basis) = skew_normal_form(&block).unwrap();
        assert_eq!(m, 1);
        assert_eq!(basis.change_of_basis(), SectionMatrix::identity(u(), 3));

        // a∧b for a = (1,0,2,1), b = (0,1,1,3): rank 2.
        let rank2 = c(&[&[0, 1, 1, 3], &[-1, 0, -2, -1], &[-1, 2, 0, 5], &[-3, 1, -5, 0]]);
        let (m, basis) = skew_normal_form(&rank2).unwrap();
        assert_eq!(m, 1);
        let p = basis.change_of_basis();
        assert_eq!(
            congruence(&rank2, &p).unwrap(),
            SectionMatrix::constant(u(), &normal_form_matrix(4, m))
        );
        assert!(p.try_inverse().is_ok());
    }

    #[test]
    fn varying_rank_is_reported() {
        let omega = SectionMatrix::from_pointwise(u(), 2, 2, |p| {
            if p == 0 {
                QMatrix::standard_symplectic(1)
            } else {
                QMatrix::zeros(2, 2)
            }
        })
        .unwrap();
        assert_eq!(
            skew_normal_form(&omega).unwrap_err(),
            SymplecticError::NonConstantRank {
                ranks: vec![(0, 2), (1, 0)]
            }
        );
    }

    #[test]
    fn sum_decomposition_uses_paired_indices() {
        let basis = darboux_basis(&standard_form(u(), 2)).unwrap();
        let sum = standard_sum_decomposition(&basis).unwrap();
        let expected = KForm::basis(u(), 4, &[0, 2])
            .unwrap()
            .add(&KForm::basis(u(), 4, &[1, 3]).unwrap())
            .unwrap();
        assert_eq!(sum, expected);

        let one = darboux_basis(&standard_form(u(), 1)).unwrap();
        assert_eq!(standard_sum_decomposition(&one).unwrap(), KForm::top(u(), 2));
    }

    #[test]
    fn sum_decomposition_reproduces_the_form() {
        let omega = c(&[&[0, -3, 1, 0], &[3, 0, 0, 2], &[-1, 0, 0, 5], &[0, -2, -5, 0]]);
        let basis = darboux_basis(&omega).unwrap();
        assert_eq!(standard_sum_decomposition(&basis).unwrap(), form_of_matrix(&omega));
    }

    #[test]
    fn hyperbolic_forms() {
        assert_eq!(hyperbolic_sum_form(u(), 1), c(&[&[0, 1], &[-1, 0]]));
        assert_eq!(hyperbolic_sum_form(u(), 2), standard_form(u(), 2));
        let h3 = hyperbolic_sum_form(u(), 3);
        let r = check_form(&h3).unwrap();
        assert!(r.nondegenerate);
        assert_eq!(r.constant_rank(), Some(6));
        assert_eq!(darboux_basis(&h3).unwrap().m(), 3);
    }

    #[test]
    fn orientation_of_standard_forms() {
        for m in 1..=3 {
            let omega = form_of_matrix(&standard_form(u(), m));
            assert_eq!(orientation_form(&omega, m).unwrap(), KForm::top(u(), 2 * m));
        }
        let degenerate = KForm::basis(u(), 4, &[0, 1]).unwrap();
        assert!(matches!(
            orientation_form(&degenerate, 2),
            Err(SymplecticError::DegenerateForm { .. })
        ));
    }

    #[test]
    fn symplectic_map_examples() {
        let j = standard_form(u(), 1);
        assert!(is_symplectic_map(&SectionMatrix::identity(u(), 2), &j, &j).unwrap());
        let shear = c(&[&[1, 1], &[0, 1]]);
        assert!(is_symplectic_map(&shear, &j, &j).unwrap());
        let double = SectionMatrix::identity(u(), 2).scale(&Section::constant(u(), Rational::from(2))).unwrap();
        assert!(!is_symplectic_map(&double, &j, &j).unwrap());
        assert_eq!(congruence(&j, &double).unwrap(), j.scale(&Section::constant(u(), Rational::from(4))).unwrap());
        assert!(matches!(
            is_symplectic_map(&shear, &standard_form(u(), 2), &j),
            Err(SymplecticError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn group_operations() {
        let shear = SymplecticMap::new(c(&[&[1, 1], &[0, 1]])).unwrap();
        let inv = shear.inverse().unwrap();
        assert_eq!(inv.matrix(), &c(&[&[1, -1], &[0, 1]]));
        assert_eq!(shear.compose(&inv).unwrap(), SymplecticMap::identity(u(), 1));
        assert_eq!(
            SymplecticMap::new(c(&[&[2, 0], &[0, 2]])),
            Err(SymplecticError::NotSymplectic)
        );
    }
}
