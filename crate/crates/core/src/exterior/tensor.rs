use crate::free_module::SectionVector;
use crate::scalar::Rational;
use crate::sheaf::Section;
use crate::site::OpenSet;

use super::{same_shape, ExteriorError, KForm};

/// Largest order accepted by the alternation map (it sums over `S_k`).
pub const MAX_ALTERNATION_ORDER: usize = 8;

/// Covariant tensor of order `k` on `A(U)ⁿ`, stored on all `nᵏ` index tuples
/// (first index most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct CovariantTensor {
    domain: OpenSet,
    rank: usize,
    order: usize,
    coeffs: Vec<Section>,
}

impl CovariantTensor {
    pub fn zero(domain: OpenSet, rank: usize, order: usize) -> Self {
        CovariantTensor {
            domain,
            rank,
            order,
            coeffs: vec![Section::zero(domain); rank.pow(order as u32)],
        }
    }

    pub fn from_fn(domain: OpenSet, rank: usize, order: usize, mut f: impl FnMut(&[usize]) -> Section) -> Self {
        let coeffs = (0..rank.pow(order as u32))
            .map(|flat| f(&unflatten(flat, rank, order)))
            .collect();
        CovariantTensor { domain, rank, order, coeffs }
    }

    /// The dual basis one-form `εⁱ` (0-based).
    pub fn dual_basis(domain: OpenSet, rank: usize, i: usize) -> Self {
        Self::from_fn(domain, rank, 1, |idx| {
            if idx[0] == i {
                Section::one(domain)
            } else {
                Section::zero(domain)
            }
        })
    }

    pub fn domain(&self) -> OpenSet {
        self.domain
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, index: &[usize]) -> &Section {
        &self.coeffs[flatten(index, self.rank)]
    }

    pub fn coeffs(&self) -> &[Section] {
        &self.coeffs
    }

    pub fn scale(&self, s: &Section) -> Result<Self, ExteriorError> {
        if s.domain() != self.domain {
            return Err(ExteriorError::DomainMismatch);
        }
        Ok(CovariantTensor {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..self.clone()
        })
    }

    /// `(t₁⊗t₂)(s₁,…,s_{k+l}) = t₁(s₁,…,s_k)·t₂(s_{k+1},…,s_{k+l})`.
    pub fn tensor_product(&self, other: &CovariantTensor) -> Result<CovariantTensor, ExteriorError> {
        same_shape(self.domain, self.rank, other.domain, other.rank)?;
        let stride = other.coeffs.len();
        let coeffs = (0..self.coeffs.len() * stride)
            .map(|flat| &self.coeffs[flat / stride] * &other.coeffs[flat % stride])
            .collect();
        Ok(CovariantTensor {
            domain: self.domain,
            rank: self.rank,
            order: self.order + other.order,
            coeffs,
        })
    }

    /// Multilinear evaluation `Σ T_{i₁…i_k} v₁[i₁]⋯v_k[i_k]`.
    pub fn evaluate(&self, args: &[SectionVector]) -> Result<Section, ExteriorError> {
        check_args(self.domain, self.rank, self.order, args)?;
        let mut acc = Section::zero(self.domain);
        for (flat, c) in self.coeffs.iter().enumerate() {
            if c.is_identically_zero() {
                continue;
            }
            let idx = unflatten(flat, self.rank, self.order);
            let term = idx
                .iter()
                .zip(args)
                .fold(c.clone(), |t, (&i, v)| &t * &v.entries()[i]);
            acc = acc + term;
        }
        Ok(acc)
    }

    /// The alternation map `(1/k!) Σ_σ sign(σ) t(s_{σ(1)}, …, s_{σ(k)})`.
    pub fn alternation(&self) -> Result<CovariantTensor, ExteriorError> {
        if self.order > MAX_ALTERNATION_ORDER {
            return Err(ExteriorError::DegreeTooLarge(self.order));
        }
        let perms = signed_permutations(self.order);
        let inv_fact = Rational::one()
            .checked_div(&Rational::from(factorial(self.order) as i64))
            .expect("k! > 0");
        Ok(Self::from_fn(self.domain, self.rank, self.order, |idx| {
            let mut permuted = vec![0; idx.len()];
            let sum = perms.iter().fold(Section::zero(self.domain), |acc, (perm, sign)| {
                for (slot, &p) in permuted.iter_mut().zip(perm) {
                    *slot = idx[p];
                }
                let term = self.get(&permuted);
                if *sign > 0 {
                    &acc + term
                } else {
                    &acc - term
                }
            });
            sum.scale(&inv_fact)
        }))
    }

    /// True iff swapping any two index slots flips the sign.
    pub fn is_antisymmetric(&self) -> bool {
        (0..self.coeffs.len()).all(|flat| {
            let idx = unflatten(flat, self.rank, self.order);
            (0..self.order).all(|a| {
                (a + 1..self.order).all(|b| {
                    let mut swapped = idx.clone();
                    swapped.swap(a, b);
                    *self.get(&swapped) == -self.get(&idx)
                })
            })
        })
    }

    /// Components on increasing multi-indices, as a form. Only meaningful
    /// for antisymmetric tensors.
    pub fn to_form(&self) -> KForm {
        KForm::from_fn(self.domain, self.rank, self.order, |idx| self.get(idx).clone())
    }
}

pub(crate) fn flatten(index: &[usize], rank: usize) -> usize {
    index.iter().fold(0, |acc, &i| acc * rank + i)
}

pub(crate) fn unflatten(mut flat: usize, rank: usize, order: usize) -> Vec<usize> {
    let mut idx = vec![0; order];
    for slot in idx.iter_mut().rev() {
        *slot = flat % rank.max(1);
        flat /= rank.max(1);
    }
    idx
}

pub(crate) fn check_args(domain: OpenSet, rank: usize, degree: usize, args: &[SectionVector]) -> Result<(), ExteriorError> {
    if args.len() != degree {
        return Err(ExteriorError::ArityMismatch {
            expected: degree,
            got: args.len(),
        });
    }
    for v in args {
        same_shape(domain, rank, v.domain(), v.len())?;
    }
    Ok(())
}

pub(crate) fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// All permutations of `0..k` with their signs, in lexicographic order.
pub(crate) fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::with_capacity(factorial(k) as usize);
    let mut current: Vec<usize> = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn rec(k: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i8)>) {
        if current.len() == k {
            out.push((current.clone(), permutation_sign(current)));
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(k, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(k, &mut current, &mut used, &mut out);
    out
}

/// Sign of a permutation given as a sequence of distinct integers, by
/// counting inversions.
pub(crate) fn permutation_sign(perm: &[usize]) -> i8 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> OpenSet {
        OpenSet::from_indices([0])
    }

    fn half() -> Section {
        Section::constant(u(), Rational::new(1, 2))
    }

    #[test]
    fn symmetric_input_alternates_to_zero() {
        let e1 = CovariantTensor::dual_basis(u(), 2, 0);
        let t = e1.tensor_product(&e1).unwrap();
        let alt = t.alternation().unwrap();
        assert!(alt.coeffs().iter().all(Section::is_identically_zero));
    }

    #[test]
    fn alternation_of_e1_e2() {
        let e1 = CovariantTensor::dual_basis(u(), 2, 0);
        let e2 = CovariantTensor::dual_basis(u(), 2, 1);
        let alt = e1.tensor_product(&e2).unwrap().alternation().unwrap();
        // (1/2)(ε¹⊗ε² − ε²⊗ε¹)
        assert_eq!(alt.get(&[0, 1]), &half());
        assert_eq!(alt.get(&[1, 0]), &-half());
        assert!(alt.get(&[0, 0]).is_identically_zero());
        assert!(alt.get(&[1, 1]).is_identically_zero());
        assert_eq!(alt.alternation().unwrap(), alt);
        assert!(alt.is_antisymmetric());
    }

    #[test]
    fn dual_pairing_product() {
        let e1 = CovariantTensor::dual_basis(u(), 2, 0);
        let e2 = CovariantTensor::dual_basis(u(), 2, 1);
        let t = e1.tensor_product(&e2).unwrap();
        let args = [SectionVector::basis(u(), 2, 0), SectionVector::basis(u(), 2, 1)];
        assert_eq!(t.evaluate(&args).unwrap(), Section::one(u()));
    }

    #[test]
    fn product_with_scalar_tensor() {
        let s = Section::constant(u(), Rational::from(3));
        let scalar = CovariantTensor::from_fn(u(), 2, 0, |_| s.clone());
        let t = CovariantTensor::dual_basis(u(), 2, 1);
        assert_eq!(t.tensor_product(&scalar).unwrap(), t.scale(&s).unwrap());
    }

    #[test]
    fn signs_of_small_permutations() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|(_, s)| *s as i32).sum::<i32>(), 0);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }

    #[test]
    fn alternation_order_guard() {
        let t = CovariantTensor::zero(u(), 1, 9);
        assert_eq!(t.alternation(), Err(ExteriorError::DegreeTooLarge(9)));
    }
}
