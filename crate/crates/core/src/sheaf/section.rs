use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{OrderedRing, Rational, Ring, ScalarError};
use crate::site::{is_open_cover, FiniteSpace, OpenSet};

use super::SheafError;

/// A section of the structure sheaf over an open set `U`: one rational per
/// point of `U`.
///
/// Values are stored in ascending point order. Ring operations are
/// pointwise; combining sections over different domains through the
/// operator traits panics, so callers compare domains first (the matrix
/// and form types do).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Section {
    domain: OpenSet,
    values: Vec<Rational>,
}

impl Section {
    pub fn new(domain: OpenSet, values: Vec<Rational>) -> Result<Self, SheafError> {
        if values.len() != domain.len() {
            return Err(SheafError::ValueCount {
                expected: domain.len(),
                got: values.len(),
            });
        }
        Ok(Section { domain, values })
    }

    pub fn from_fn(domain: OpenSet, mut f: impl FnMut(usize) -> Rational) -> Self {
        Section {
            domain,
            values: domain.points().map(&mut f).collect(),
        }
    }

    pub fn constant(domain: OpenSet, value: Rational) -> Self {
        Section {
            domain,
            values: vec![value; domain.len()],
        }
    }

    pub fn zero(domain: OpenSet) -> Self {
        Self::constant(domain, Rational::zero())
    }

    pub fn one(domain: OpenSet) -> Self {
        Self::constant(domain, Rational::one())
    }

    pub fn domain(&self) -> OpenSet {
        self.domain
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `(point, value)` pairs in ascending point order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.domain.points().zip(self.values.iter())
    }

    pub fn at(&self, point: usize) -> Option<&Rational> {
        self.domain.position(point).map(|i| &self.values[i])
    }

    /// The common value, if the section is constant (the empty section
    /// has none).
    pub fn as_constant(&self) -> Option<&Rational> {
        let first = self.values.first()?;
        self.values.iter().all(|v| v == first).then_some(first)
    }

    pub fn restrict(&self, to: OpenSet) -> Result<Section, SheafError> {
        if !to.is_subset_of(self.domain) {
            return Err(SheafError::NotASubset {
                domain: self.domain,
                target: to,
            });
        }
        Ok(Section::from_fn(to, |p| self.at(p).unwrap().clone()))
    }

    /// Points where the section vanishes.
    pub fn zero_set(&self) -> OpenSet {
        OpenSet::from_indices(self.iter().filter(|(_, v)| v.is_zero()).map(|(p, _)| p))
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.values.iter().all(|v| !v.is_zero())
    }

    pub fn is_identically_zero(&self) -> bool {
        self.values.iter().all(Rational::is_zero)
    }

    /// Pointwise inverse; fails with the vanishing points if the section is
    /// not a unit.
    pub fn inverse(&self) -> Result<Section, SheafError> {
        let zeros = self.zero_set();
        if !zeros.is_empty() {
            return Err(SheafError::NotAUnit { zeros });
        }
        Ok(self.map(|v| v.inverse().expect("nonzero")))
    }

    pub fn map(&self, f: impl FnMut(&Rational) -> Rational) -> Section {
        Section {
            domain: self.domain,
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Section {
        self.map(|v| v * c)
    }

    fn zip(&self, other: &Section, f: impl Fn(&Rational, &Rational) -> Rational) -> Section {
        assert_eq!(
            self.domain, other.domain,
            "section arithmetic across different domains"
        );
        Section {
            domain: self.domain,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Glues sections over the members of an open cover of `target` into the
    /// unique section over `target` restricting to each of them.
    pub fn glue(space: &FiniteSpace, target: OpenSet, pieces: &[Section]) -> Result<Section, SheafError> {
        let cover: Vec<OpenSet> = pieces.iter().map(Section::domain).collect();
        if !is_open_cover(space, target, &cover) {
            return Err(SheafError::NotACover);
        }
        for (i, a) in pieces.iter().enumerate() {
            for (j, b) in pieces.iter().enumerate().skip(i + 1) {
                let overlap = a.domain.intersection(b.domain);
                if a.restrict(overlap)? != b.restrict(overlap)? {
                    return Err(SheafError::IncompatibleFamily {
                        first: i,
                        second: j,
                        overlap,
                    });
                }
            }
        }
        Ok(Section::from_fn(target, |p| {
            pieces
                .iter()
                .find_map(|s| s.at(p))
                .expect("cover reaches every point")
                .clone()
        }))
    }
}

impl fmt::Debug for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

macro_rules! pointwise_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Section {
            type Output = Section;
            fn $method(self, rhs: Section) -> Section {
                self.zip(&rhs, |a, b| a.$method(b))
            }
        }
        impl<'a> $trait<&'a Section> for &'a Section {
            type Output = Section;
            fn $method(self, rhs: &'a Section) -> Section {
                self.zip(rhs, |a, b| a.$method(b))
            }
        }
    };
}

pointwise_binop!(Add, add);
pointwise_binop!(Sub, sub);
pointwise_binop!(Mul, mul);

impl Neg for Section {
    type Output = Section;
    fn neg(self) -> Section {
        -&self
    }
}

impl Neg for &Section {
    type Output = Section;
    fn neg(self) -> Section {
        self.map(|v| -v)
    }
}

impl Ring for Section {
    fn zero_like(&self) -> Self {
        Section::zero(self.domain)
    }

    fn one_like(&self) -> Self {
        Section::one(self.domain)
    }

    fn is_zero(&self) -> bool {
        self.is_identically_zero()
    }

    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl OrderedRing for Section {
    /// Pointwise positivity: `s(x) > 0` at every point of the domain.
    fn is_strictly_positive(&self) -> bool {
        self.values.iter().all(|v| v.is_strictly_positive())
    }

    fn abs(&self) -> Self {
        self.map(Rational::abs)
    }

    fn try_sqrt(&self) -> Result<Self, ScalarError> {
        let values = self
            .values
            .iter()
            .map(Rational::sqrt)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Section {
            domain: self.domain,
            values,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn restriction_cases() {
        let ab = OpenSet::from_indices([0, 1]);
        let s = Section::new(ab, vec![q(1), q(2)]).unwrap();
        let a = OpenSet::from_indices([0]);
        assert_eq!(s.restrict(a).unwrap(), Section::new(a, vec![q(1)]).unwrap());
        assert_eq!(s.restrict(ab).unwrap(), s);
        let empty = s.restrict(OpenSet::EMPTY).unwrap();
        assert_eq!(empty.values().len(), 0);
        assert!(matches!(
            s.restrict(OpenSet::from_indices([2])),
            Err(SheafError::NotASubset { .. })
        ));
    }

    #[test]
    fn units_are_nowhere_zero_sections() {
        let u = OpenSet::from_indices([0, 1, 2]);
        let s = Section::new(u, vec![q(2), q(-3), q(5)]).unwrap();
        assert_eq!(&s * &s.inverse().unwrap(), Section::one(u));
        let t = Section::new(u, vec![q(2), q(0), q(5)]).unwrap();
        assert_eq!(
            t.inverse(),
            Err(SheafError::NotAUnit {
                zeros: OpenSet::from_indices([1])
            })
        );
    }

    #[test]
    fn glue_two_points() {
        let space = FiniteSpace::discrete(2);
        let a = Section::constant(OpenSet::from_indices([0]), q(2));
        let b = Section::constant(OpenSet::from_indices([1]), q(5));
        let g = Section::glue(&space, space.whole(), &[a, b]).unwrap();
        assert_eq!(g.values(), &[q(2), q(5)]);
    }

    proptest! {
        #[test]
        fn restriction_is_functorial(
            bits in 0u64..32, sub in 0u64..32, subsub in 0u64..32,
            vals in prop::collection::vec(-10i64..10, 5),
        ) {
            let u = OpenSet::from_bits(bits);
            let v = OpenSet::from_bits(bits & sub);
            let w = OpenSet::from_bits(bits & sub & subsub);
            let s = Section::from_fn(u, |p| q(vals[p]));
            let via_v = s.restrict(v).unwrap().restrict(w).unwrap();
            prop_assert_eq!(via_v, s.restrict(w).unwrap());
            prop_assert_eq!(s.restrict(u).unwrap(), s);
        }

        #[test]
        fn positive_sections_are_units(vals in prop::collection::vec(1i64..50, 4)) {
            let u = OpenSet::from_indices(0..4);
            let s = Section::from_fn(u, |p| Rational::new(vals[p], 7));
            prop_assert!(s.is_strictly_positive());
            let inv = s.try_inverse().unwrap();
            prop_assert_eq!(&s * &inv, Section::one(u));
            prop_assert_eq!(&inv * &s, Section::one(u));
        }
    }
}
