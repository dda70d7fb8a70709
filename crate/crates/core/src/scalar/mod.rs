//! Exact scalars: arbitrary-precision rationals, the ring capability traits
//! shared by rationals and structure sections, and dense univariate
//! polynomials over any such ring.

mod polynomial;
mod rational;

pub use polynomial::Polynomial;
pub use rational::Rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative value")]
    NegativeInput,
    #[error("no exact rational square root")]
    NotExact,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Commutative unital ring whose elements carry enough context to produce
/// their own zero and one.
///
/// Structure sections live over a fixed open set, so there is no context-free
/// `zero()`; `zero_like`/`one_like` build the neutral elements over the same
/// carrier as `self`. For rationals they ignore `self`.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// Multiplicative inverse when `self` is a unit.
    fn try_inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// Ordered-ring enrichment: positivity cone, absolute value and a partial
/// square root.
///
/// Contract: `is_strictly_positive(s)` implies `try_inverse(s)` is `Some`.
pub trait OrderedRing: Ring {
    fn is_strictly_positive(&self) -> bool;
    fn abs(&self) -> Self;
    fn try_sqrt(&self) -> Result<Self, ScalarError>;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &(-&a), Rational::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inverse().unwrap(), Rational::one());
            }
        }

        #[test]
        fn positive_elements_are_units(a in rational()) {
            if a.is_strictly_positive() {
                let inv = a.try_inverse().expect("positive rational must be invertible");
                prop_assert_eq!(&a * &inv, Rational::one());
            }
        }

        #[test]
        fn absolute_value_laws(a in rational(), b in rational()) {
            prop_assert_eq!(OrderedRing::abs(&(&a * &b)), &OrderedRing::abs(&a) * &OrderedRing::abs(&b));
            let abs = OrderedRing::abs(&a);
            prop_assert!(abs == a || abs == -&a);
            prop_assert!(!abs.is_negative());
        }

        #[test]
        fn sqrt_squares_back(a in rational()) {
            let sq = &a * &a;
            let r = sq.try_sqrt().unwrap();
            prop_assert_eq!(&r * &r, sq);
            if let Ok(r) = a.try_sqrt() {
                prop_assert_eq!(&r * &r, a);
            }
        }
    }
}
