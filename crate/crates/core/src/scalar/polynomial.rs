use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Rational, Ring};

/// Dense univariate polynomial in `t` over a ring `R`, constant term first.
///
/// Invariant: the coefficient vector has no trailing zero, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Polynomial<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c·t^deg`.
    pub fn monomial(c: R, deg: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); deg];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// The variable `t` over the carrier of `like`.
    pub fn variable(like: &R) -> Self {
        Self::monomial(like.one_like(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&R> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(Ring::is_one)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| c.clone() * a.clone()).collect())
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> Polynomial<S> {
        Polynomial::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation `Σ cᵢ aⁱ`.
    pub fn evaluate(&self, a: &R) -> R {
        let mut acc = a.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * a.clone() + c.clone();
        }
        acc
    }

    /// `self(other(t))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// Coefficients of `t^d · p(1/t)` for `d ≥ deg p`: the coefficient list
    /// zero-padded to length `d + 1` and reversed.
    pub fn reversal(&self, d: usize) -> Self {
        assert!(
            self.degree().is_none_or(|deg| deg <= d),
            "reversal degree below polynomial degree"
        );
        let Some(first) = self.coeffs.first() else {
            return Polynomial::zero();
        };
        let mut padded = self.coeffs.clone();
        padded.resize(d + 1, first.zero_like());
        padded.reverse();
        Self::from_coeffs(padded)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(R, R) -> R) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let pick = |p: &Self, i: usize, like: &R| {
            p.coeffs.get(i).cloned().unwrap_or_else(|| like.zero_like())
        };
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let like = self.coeffs.get(i).or(other.coeffs.get(i)).unwrap();
            out.push(f(pick(self, i, like), pick(other, i, like)));
        }
        Self::from_coeffs(out)
    }
}

impl<R: Ring> Add for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: Self) -> Polynomial<R> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<R: Ring> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: Self) -> Polynomial<R> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<R: Ring> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: Self) -> Polynomial<R> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let term = a.clone() * b.clone();
                out[i + j] = out[i + j].clone() + term;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl<R: Ring> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        self.map(|c| -c.clone())
    }
}

impl<R: Ring> Add for Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: Self) -> Polynomial<R> {
        &self + &rhs
    }
}

impl<R: Ring> Sub for Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: Self) -> Polynomial<R> {
        &self - &rhs
    }
}

impl<R: Ring> Mul for Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: Self) -> Polynomial<R> {
        &self * &rhs
    }
}

impl<R: Ring> Neg for Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        -&self
    }
}

impl<R: fmt::Debug> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial{:?}", self.coeffs)
    }
}

impl Polynomial<Rational> {
    /// Rational polynomial from integer coefficients, constant term first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }
}

/// `ℚ[t]` as a ring in its own right (units are the nonzero constants), so
/// determinant routines can run over it.
impl Ring for Polynomial<Rational> {
    fn zero_like(&self) -> Self {
        Polynomial::zero()
    }

    fn one_like(&self) -> Self {
        Polynomial::constant(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn try_inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => c.inverse().ok().map(Polynomial::constant),
            _ => None,
        }
    }
}

impl fmt::Display for Polynomial<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}·")?,
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_ints(c)
    }

    /// Schoolbook convolution written independently of the `Mul` impl.
    fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        (0..a.len() + b.len() - 1)
            .map(|k| {
                (0..=k)
                    .filter(|&i| i < a.len() && k - i < b.len())
                    .map(|i| a[i] * b[k - i])
                    .sum()
            })
            .collect()
    }

    #[test]
    fn multiply_difference_of_squares() {
        assert_eq!(convolve(&[1, 1], &[-1, 1]), vec![-1, 0, 1]);
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
    }

    #[test]
    fn evaluate_constant_term() {
        assert_eq!(p(&[1, 0, 1]).evaluate(&Rational::zero()), Rational::one());
        assert_eq!(p(&[1, 0, 1]).evaluate(&Rational::from(3)), Rational::from(10));
        assert_eq!(p(&[]).evaluate(&Rational::from(3)), Rational::zero());
    }

    #[test]
    fn compose_square_with_shift() {
        // (t+1)^2 = t^2 + 2t + 1
        assert_eq!(p(&[0, 0, 1]).compose(&p(&[1, 1])), p(&[1, 2, 1]));
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        let z = p(&[0, 0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
        assert_eq!(&p(&[1, 1]) - &p(&[0, 1]), p(&[1]));
    }

    #[test]
    fn reversal_pads_then_reverses() {
        // t^3 * (1 + 2/t) = t^3 + 2t^2
        assert_eq!(p(&[1, 2]).reversal(3), p(&[0, 0, 2, 1]));
        assert_eq!(p(&[1, 0, 1]).reversal(2), p(&[1, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 1]).to_string(), "t^2 + 1");
        assert_eq!(p(&[-1, -2, 3]).to_string(), "3·t^2 - 2·t - 1");
        assert_eq!(p(&[]).to_string(), "0");
    }

    proptest! {
        #[test]
        fn mul_is_commutative_and_matches_convolution(
            a in prop::collection::vec(-20i64..20, 0..6),
            b in prop::collection::vec(-20i64..20, 0..6),
        ) {
            let pa = p(&a);
            let pb = p(&b);
            prop_assert_eq!(&pa * &pb, &pb * &pa);
            prop_assert_eq!(&pa * &pb, p(&convolve(&a, &b)));
        }

        #[test]
        fn evaluation_is_a_ring_map(
            a in prop::collection::vec(-9i64..9, 0..5),
            b in prop::collection::vec(-9i64..9, 0..5),
            x in -5i64..5,
        ) {
            let x = Rational::from(x);
            let (pa, pb) = (p(&a), p(&b));
            prop_assert_eq!((&pa * &pb).evaluate(&x), pa.evaluate(&x) * pb.evaluate(&x));
            prop_assert_eq!((&pa + &pb).evaluate(&x), pa.evaluate(&x) + pb.evaluate(&x));
            prop_assert_eq!(pa.compose(&pb).evaluate(&x), pa.evaluate(&pb.evaluate(&x)));
        }
    }
}
