//! Exterior forms on free modules of sections.
//!
//! A [`KForm`] of degree `k` on `A(U)ⁿ` stores one section per strictly
//! increasing multi-index `i₁ < … < i_k`; the coefficient at `I` is the value
//! of the form on `(e_{i₁}, …, e_{i_k})`. With the `(k+l)!/(k!l!)`
//! normalization of the wedge product this makes `εⁱ¹∧…∧εⁱᵏ` the basis form
//! with coefficient 1 at `I`, and its value on any arguments the determinant
//! of the pairing matrix.

mod tensor;

pub use tensor::{CovariantTensor, MAX_ALTERNATION_ORDER};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::free_module::{linear_independence, FreeModuleError, QMatrix, SectionMatrix, SectionVector};
use crate::scalar::{OrderedRing, Rational, ScalarError};
use crate::sheaf::Section;
use crate::site::OpenSet;

use tensor::{check_args, permutation_sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("operands live over different open sets")]
    DomainMismatch,
    #[error("operands have different module ranks ({left} vs {right})")]
    RankMismatch { left: usize, right: usize },
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("order {0} exceeds the alternation limit of {MAX_ALTERNATION_ORDER}")]
    DegreeTooLarge(usize),
    #[error("degree {degree} exceeds the module rank {rank}")]
    DegreeOverflow { degree: usize, rank: usize },
    #[error("multi-index {0:?} is not strictly increasing within the rank")]
    BadMultiIndex(Vec<usize>),
    #[error("metric is not symmetric")]
    NotSymmetric,
    #[error("vectors do not form a basis")]
    NotABasis,
    #[error("metric determinant vanishes at {zeros:?}")]
    DegenerateMetric { zeros: OpenSet },
    #[error("volume scaling has no exact square root")]
    NotExact,
    #[error(transparent)]
    FreeModule(#[from] FreeModuleError),
}

pub(crate) fn same_shape(d1: OpenSet, r1: usize, d2: OpenSet, r2: usize) -> Result<(), ExteriorError> {
    if d1 != d2 {
        return Err(ExteriorError::DomainMismatch);
    }
    if r1 != r2 {
        return Err(ExteriorError::RankMismatch { left: r1, right: r2 });
    }
    Ok(())
}

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order.
pub fn multi_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Exterior `k`-form on `A(U)ⁿ`. Degrees above `n` are allowed and hold only
/// the zero form; [`KForm::is_degree_overflow`] flags them.
#[derive(Debug, Clone, PartialEq)]
pub struct KForm {
    domain: OpenSet,
    rank: usize,
    degree: usize,
    coeffs: Vec<Section>,
}

impl KForm {
    pub fn zero(domain: OpenSet, rank: usize, degree: usize) -> Self {
        KForm {
            domain,
            rank,
            degree,
            coeffs: vec![Section::zero(domain); binomial(rank, degree)],
        }
    }

    pub fn from_fn(domain: OpenSet, rank: usize, degree: usize, mut f: impl FnMut(&[usize]) -> Section) -> Self {
        KForm {
            domain,
            rank,
            degree,
            coeffs: multi_indices(rank, degree).iter().map(|i| f(i)).collect(),
        }
    }

    /// Degree-0 form: a ring element.
    pub fn scalar(s: Section, rank: usize) -> Self {
        KForm {
            domain: s.domain(),
            rank,
            degree: 0,
            coeffs: vec![s],
        }
    }

    /// One-form with the given coefficients on `ε¹, …, εⁿ`.
    pub fn one_form(v: &SectionVector) -> Self {
        KForm {
            domain: v.domain(),
            rank: v.len(),
            degree: 1,
            coeffs: v.entries().to_vec(),
        }
    }

    /// The basis form `εⁱ¹∧…∧εⁱᵏ` for a strictly increasing 0-based index.
    pub fn basis(domain: OpenSet, rank: usize, index: &[usize]) -> Result<Self, ExteriorError> {
        let mut form = Self::zero(domain, rank, index.len());
        *form.coeff_mut(index)? = Section::one(domain);
        Ok(form)
    }

    /// `ε¹∧…∧εⁿ`.
    pub fn top(domain: OpenSet, rank: usize) -> Self {
        Self::basis(domain, rank, &(0..rank).collect::<Vec<_>>()).expect("full index")
    }

    pub fn domain(&self) -> OpenSet {
        self.domain
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_degree_overflow(&self) -> bool {
        self.degree > self.rank
    }

    /// Coefficients in the order of [`multi_indices`].
    pub fn coeffs(&self) -> &[Section] {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Section)> {
        multi_indices(self.rank, self.degree).into_iter().zip(self.coeffs.iter())
    }

    fn position(&self, index: &[usize]) -> Result<usize, ExteriorError> {
        let bad = || ExteriorError::BadMultiIndex(index.to_vec());
        if index.len() != self.degree
            || index.windows(2).any(|w| w[0] >= w[1])
            || index.last().is_some_and(|&i| i >= self.rank)
        {
            return Err(bad());
        }
        // Lexicographic rank of the subset.
        let n = self.rank;
        let k = self.degree;
        let mut pos = 0;
        let mut prev = 0;
        for (slot, &i) in index.iter().enumerate() {
            for skipped in prev..i {
                pos += binomial(n - skipped - 1, k - slot - 1);
            }
            prev = i + 1;
        }
        Ok(pos)
    }

    pub fn coeff(&self, index: &[usize]) -> Result<&Section, ExteriorError> {
        Ok(&self.coeffs[self.position(index)?])
    }

    pub fn coeff_mut(&mut self, index: &[usize]) -> Result<&mut Section, ExteriorError> {
        let pos = self.position(index)?;
        Ok(&mut self.coeffs[pos])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Section::is_identically_zero)
    }

    fn check_same(&self, other: &KForm) -> Result<(), ExteriorError> {
        same_shape(self.domain, self.rank, other.domain, other.rank)?;
        if self.degree != other.degree {
            return Err(ExteriorError::ArityMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &KForm) -> Result<KForm, ExteriorError> {
        self.check_same(other)?;
        Ok(KForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &KForm) -> Result<KForm, ExteriorError> {
        self.check_same(other)?;
        Ok(KForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &Section) -> Result<KForm, ExteriorError> {
        if s.domain() != self.domain {
            return Err(ExteriorError::DomainMismatch);
        }
        Ok(KForm {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..self.clone()
        })
    }

    /// Exterior product `ξ∧η = ((k+l)!/(k!l!))·Alt(ξ⊗η)`, computed on
    /// coefficients: `(ξ∧η)_I = Σ sign(A, I∖A)·ξ_A·η_{I∖A}` over the
    /// `k`-subsets `A` of `I`.
    pub fn wedge(&self, other: &KForm) -> Result<KForm, ExteriorError> {
        same_shape(self.domain, self.rank, other.domain, other.rank)?;
        let (k, l) = (self.degree, other.degree);
        let domain = self.domain;
        Ok(KForm::from_fn(domain, self.rank, k + l, |index| {
            let mut acc = Section::zero(domain);
            for pick in multi_indices(k + l, k) {
                let left: Vec<usize> = pick.iter().map(|&p| index[p]).collect();
                let right: Vec<usize> = (0..k + l)
                    .filter(|p| !pick.contains(p))
                    .map(|p| index[p])
                    .collect();
                let a = self.coeff(&left).expect("increasing subset");
                let b = other.coeff(&right).expect("increasing subset");
                if a.is_identically_zero() || b.is_identically_zero() {
                    continue;
                }
                let order: Vec<usize> = pick.iter().copied().chain((0..k + l).filter(|p| !pick.contains(p))).collect();
                let term = a * b;
                acc = if permutation_sign(&order) > 0 { acc + term } else { acc - term };
            }
            acc
        }))
    }

    /// Value on `k` argument vectors: `Σ_I ξ_I · det[(v_b)_{i_a}]`.
    pub fn evaluate(&self, args: &[SectionVector]) -> Result<Section, ExteriorError> {
        check_args(self.domain, self.rank, self.degree, args)?;
        let points: Vec<usize> = self.domain.points().collect();
        let mut values = vec![Rational::zero(); points.len()];
        let stalk_args: Vec<Vec<Vec<Rational>>> = points
            .iter()
            .map(|&p| args.iter().map(|v| v.at_point(p)).collect())
            .collect();
        for (index, c) in self.terms() {
            if c.is_identically_zero() {
                continue;
            }
            for (slot, args_at) in stalk_args.iter().enumerate() {
                let minor = QMatrix::from_fn(self.degree, self.degree, |a, b| args_at[b][index[a]].clone());
                let term = &c.values()[slot] * &minor.determinant();
                values[slot] = &values[slot] + &term;
            }
        }
        Ok(Section::new(self.domain, values).expect("one value per point"))
    }

    /// Full antisymmetric tensor with the same values.
    pub fn to_tensor(&self) -> CovariantTensor {
        CovariantTensor::from_fn(self.domain, self.rank, self.degree, |idx| {
            let mut sorted = idx.to_vec();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Section::zero(self.domain);
            }
            let c = self.coeff(&sorted).expect("sorted distinct index").clone();
            if permutation_sign(idx) > 0 {
                c
            } else {
                -c
            }
        })
    }

    pub fn restrict(&self, to: OpenSet) -> Result<KForm, ExteriorError> {
        Ok(KForm {
            domain: to,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.restrict(to))
                .collect::<Result<_, _>>()
                .map_err(FreeModuleError::from)?,
            ..self.clone()
        })
    }
}

/// `ω^m = ω∧…∧ω` (`m` factors); `m = 0` gives the constant 1.
pub fn form_power(omega: &KForm, m: usize) -> Result<KForm, ExteriorError> {
    let degree = omega.degree() * m;
    if degree > omega.rank() {
        return Err(ExteriorError::DegreeOverflow {
            degree,
            rank: omega.rank(),
        });
    }
    let mut acc = KForm::scalar(Section::one(omega.domain()), omega.rank());
    for _ in 0..m {
        acc = acc.wedge(omega)?;
    }
    Ok(acc)
}

/// Volume element `√|det ρ(sᵢ,sⱼ)|·s¹*∧…∧sⁿ*` of a symmetric metric `ρ` in
/// the basis `s`, expressed in the Kronecker gauge.
pub fn volume_element(metric: &SectionMatrix, basis: &[SectionVector]) -> Result<KForm, ExteriorError> {
    let n = metric.rows();
    if !metric.is_square() {
        return Err(FreeModuleError::NotSquare {
            rows: metric.rows(),
            cols: metric.cols(),
        }
        .into());
    }
    if metric.transpose() != *metric {
        return Err(ExteriorError::NotSymmetric);
    }
    let domain = metric.domain();
    if basis.len() != n || basis.iter().any(|v| v.len() != n) {
        return Err(ExteriorError::NotABasis);
    }
    if !linear_independence(domain, basis)?.is_independent() {
        return Err(ExteriorError::NotABasis);
    }
    let b = SectionMatrix::from_columns(domain, basis)?;
    let gram = b.transpose().mat_mul(metric)?.mat_mul(&b)?;
    let det = gram.determinant()?;
    let zeros = det.zero_set();
    if !zeros.is_empty() {
        return Err(ExteriorError::DegenerateMetric { zeros });
    }
    let scaling = OrderedRing::abs(&det).try_sqrt().map_err(|e| match e {
        ScalarError::NotExact => ExteriorError::NotExact,
        _ => ExteriorError::NotExact,
    })?;
    // s¹*∧…∧sⁿ* = det(B)⁻¹·ε¹∧…∧εⁿ, since the dual basis is the rows of B⁻¹.
    let inv_det_b = b.determinant()?.inverse().map_err(|_| ExteriorError::NotABasis)?;
    KForm::top(domain, n).scale(&(&scaling * &inv_det_b))
}

/// Element of the Grassmann algebra `Ω⁰ ⊕ … ⊕ Ωⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedForm {
    domain: OpenSet,
    rank: usize,
    components: BTreeMap<usize, KForm>,
}

impl GradedForm {
    pub fn zero(domain: OpenSet, rank: usize) -> Self {
        GradedForm {
            domain,
            rank,
            components: BTreeMap::new(),
        }
    }

    /// Adds `form` into its degree component.
    pub fn insert(&mut self, form: KForm) -> Result<(), ExteriorError> {
        same_shape(self.domain, self.rank, form.domain(), form.rank())?;
        if form.is_degree_overflow() {
            return Err(ExteriorError::DegreeOverflow {
                degree: form.degree(),
                rank: self.rank,
            });
        }
        let entry = match self.components.remove(&form.degree()) {
            Some(existing) => existing.add(&form)?,
            None => form,
        };
        self.components.insert(entry.degree(), entry);
        Ok(())
    }

    pub fn component(&self, degree: usize) -> Option<&KForm> {
        self.components.get(&degree)
    }

    pub fn components(&self) -> impl Iterator<Item = &KForm> {
        self.components.values()
    }

    /// Distributive extension of the wedge; products above the rank vanish.
    pub fn wedge(&self, other: &GradedForm) -> Result<GradedForm, ExteriorError> {
        same_shape(self.domain, self.rank, other.domain, other.rank)?;
        let mut out = GradedForm::zero(self.domain, self.rank);
        for a in self.components.values() {
            for b in other.components.values() {
                if a.degree() + b.degree() <= self.rank {
                    out.insert(a.wedge(b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Number of coefficients when every degree is present: `Σ C(n,k) = 2ⁿ`.
    pub fn full_dimension(rank: usize) -> usize {
        (0..=rank).map(|k| binomial(rank, k)).sum()
    }

    pub fn coefficient_count(&self) -> usize {
        self.components.values().map(|f| f.coeffs().len()).sum()
    }
}
