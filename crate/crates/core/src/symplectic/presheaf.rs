use serde_json::Value;

use crate::free_module::{QMatrix, SectionMatrix};
use crate::json::matrix_to_json;
use crate::sheaf::{grid_functions, Presheaf, SheafError};
use crate::site::{FiniteSpace, OpenSet};

use super::SymplecticMap;

/// The presheaf `U ↦ Sp(2m, A(U))`, sampled: sections over `U` are the
/// symplectic matrices whose stalk at each point is drawn from a fixed
/// finite list of elements of `Sp(2m, ℚ)`.
#[derive(Debug, Clone)]
pub struct SpPresheaf {
    space: FiniteSpace,
    size: usize,
    samples: Vec<QMatrix>,
}

impl SpPresheaf {
    /// Panics if a sample is not a `2m×2m` symplectic matrix.
    pub fn new(space: FiniteSpace, m: usize, samples: Vec<QMatrix>) -> Self {
        let j = QMatrix::standard_symplectic(m);
        for s in &samples {
            assert!(
                s.rows() == 2 * m && s.transpose().mul(&j).mul(s) == j,
                "sample is not in Sp({}, Q)",
                2 * m
            );
        }
        SpPresheaf {
            space,
            size: 2 * m,
            samples,
        }
    }
}

impl Presheaf for SpPresheaf {
    type Section = SectionMatrix;

    fn space(&self) -> &FiniteSpace {
        &self.space
    }

    fn domain(&self, section: &SectionMatrix) -> OpenSet {
        section.domain()
    }

    fn restrict(&self, section: &SectionMatrix, to: OpenSet) -> Result<SectionMatrix, SheafError> {
        section.restrict(to).map_err(|e| match e {
            crate::free_module::FreeModuleError::Sheaf(s) => s,
            other => SheafError::NonEnumerableSections(other.to_string()),
        })
    }

    fn sections(&self, u: OpenSet) -> Result<Vec<SectionMatrix>, SheafError> {
        let points: Vec<usize> = u.points().collect();
        grid_functions(points.len(), self.samples.len())?
            .into_iter()
            .map(|digits| {
                let m = SectionMatrix::from_pointwise(u, self.size, self.size, |p| {
                    let slot = points.iter().position(|&q| q == p).expect("point of u");
                    self.samples[digits[slot]].clone()
                })
                .expect("samples share a shape");
                debug_assert!(u.is_empty() || SymplecticMap::new(m.clone()).is_ok());
                Ok(m)
            })
            .collect()
    }

    fn section_json(&self, section: &SectionMatrix) -> Value {
        matrix_to_json(&self.space, section)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheaf::check_completeness;
    use crate::symplectic::random::transvection;
    use crate::Rational;

    #[test]
    fn sp_presheaf_is_complete_on_small_sites() {
        let shear = transvection(&[Rational::one(), Rational::zero()], &Rational::one());
        for n in 0..=3 {
            for space in FiniteSpace::all_topologies(n) {
                let sp = SpPresheaf::new(space.clone(), 1, vec![QMatrix::identity(2), shear.clone()]);
                for &u in space.opens() {
                    let within = space.opens_within(u);
                    let cover: Vec<OpenSet> = within.filter(|&v| v != u).collect();
                    if crate::site::is_open_cover(&space, u, &cover) {
                        assert!(check_completeness(&sp, u, &cover).unwrap().is_complete());
                    }
                    assert!(check_completeness(&sp, u, &[u]).unwrap().is_complete());
                }
            }
        }
    }
}
