use serde_json::json;

use crate::json::section_to_json;
use crate::scalar::Rational;
use crate::site::{FiniteSpace, OpenSet};

use super::{Presheaf, Section, SheafError};

/// Largest candidate list a sampled presheaf will materialize for one open.
pub const SECTION_BUDGET: usize = 100_000;

/// The structure sheaf of all rational-valued functions, sampled on a finite
/// grid of values: the candidates over `U` are all functions `U → grid`.
#[derive(Debug, Clone)]
pub struct FunctionSheaf {
    space: FiniteSpace,
    grid: Vec<Rational>,
}

impl FunctionSheaf {
    pub fn new(space: FiniteSpace, mut grid: Vec<Rational>) -> Self {
        dedup_in_order(&mut grid);
        FunctionSheaf { space, grid }
    }

    pub fn grid(&self) -> &[Rational] {
        &self.grid
    }
}

impl Presheaf for FunctionSheaf {
    type Section = Section;

    fn space(&self) -> &FiniteSpace {
        &self.space
    }

    fn domain(&self, section: &Section) -> OpenSet {
        section.domain()
    }

    fn restrict(&self, section: &Section, to: OpenSet) -> Result<Section, SheafError> {
        section.restrict(to)
    }

    fn sections(&self, u: OpenSet) -> Result<Vec<Section>, SheafError> {
        grid_functions(u.len(), self.grid.len())?
            .into_iter()
            .map(|digits| Section::new(u, digits.iter().map(|&d| self.grid[d].clone()).collect()))
            .collect()
    }

    fn section_json(&self, section: &Section) -> serde_json::Value {
        section_to_json(&self.space, section)
    }
}

/// A section of the constant presheaf: one value over a nonempty open, or
/// the unique section over the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantSection {
    domain: OpenSet,
    value: Option<Rational>,
}

impl ConstantSection {
    /// Normalizes so that the section over ∅ carries no value.
    pub fn new(domain: OpenSet, value: Option<Rational>) -> Self {
        let value = if domain.is_empty() { None } else { value };
        ConstantSection { domain, value }
    }

    pub fn domain(&self) -> OpenSet {
        self.domain
    }

    pub fn value(&self) -> Option<&Rational> {
        self.value.as_ref()
    }
}

/// The constant presheaf `P(U) = ℚ` for nonempty `U`, `P(∅) = {*}`, with
/// identity restrictions between nonempty opens. It satisfies S1 but fails
/// S2 over disconnected opens.
#[derive(Debug, Clone)]
pub struct ConstantPresheaf {
    space: FiniteSpace,
    grid: Vec<Rational>,
}

impl ConstantPresheaf {
    pub fn new(space: FiniteSpace, mut grid: Vec<Rational>) -> Self {
        dedup_in_order(&mut grid);
        ConstantPresheaf { space, grid }
    }
}

impl Presheaf for ConstantPresheaf {
    type Section = ConstantSection;

    fn space(&self) -> &FiniteSpace {
        &self.space
    }

    fn domain(&self, section: &ConstantSection) -> OpenSet {
        section.domain
    }

    fn restrict(&self, section: &ConstantSection, to: OpenSet) -> Result<ConstantSection, SheafError> {
        if !to.is_subset_of(section.domain) {
            return Err(SheafError::NotASubset {
                domain: section.domain,
                target: to,
            });
        }
        Ok(ConstantSection::new(to, section.value.clone()))
    }

    fn sections(&self, u: OpenSet) -> Result<Vec<ConstantSection>, SheafError> {
        if u.is_empty() {
            return Ok(vec![ConstantSection::new(u, None)]);
        }
        Ok(self
            .grid
            .iter()
            .map(|v| ConstantSection::new(u, Some(v.clone())))
            .collect())
    }

    fn section_json(&self, section: &ConstantSection) -> serde_json::Value {
        json!({
            "open": self.space.labels(section.domain),
            "value": section.value,
        })
    }
}

/// All maps from `points` points into a grid of size `k`, as digit lists
/// (mixed-radix counter, first point most significant).
pub(crate) fn grid_functions(points: usize, k: usize) -> Result<Vec<Vec<usize>>, SheafError> {
    let count = checked_power(k, points)
        .filter(|&c| c <= SECTION_BUDGET)
        .ok_or_else(|| {
            SheafError::NonEnumerableSections(format!(
                "{k}^{points} grid functions exceed the budget of {SECTION_BUDGET}"
            ))
        })?;
    Ok((0..count)
        .map(|mut code| {
            let mut digits = vec![0; points];
            for d in digits.iter_mut().rev() {
                *d = code % k;
                code /= k;
            }
            digits
        })
        .collect())
}

fn checked_power(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

fn dedup_in_order(grid: &mut Vec<Rational>) {
    let mut seen = Vec::with_capacity(grid.len());
    grid.retain(|v| {
        if seen.contains(v) {
            false
        } else {
            seen.push(v.clone());
            true
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheaf::check_completeness;

    fn grid(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| Rational::from(v)).collect()
    }

    #[test]
    fn function_sheaf_enumerates_all_grid_functions() {
        let sheaf = FunctionSheaf::new(FiniteSpace::discrete(3), grid(&[0, 1]));
        let all = sheaf.sections(OpenSet::from_indices(0..3)).unwrap();
        assert_eq!(all.len(), 8);
        assert_eq!(all[1].values(), &grid(&[0, 0, 1])[..]);
        assert_eq!(sheaf.sections(OpenSet::EMPTY).unwrap().len(), 1);
    }

    #[test]
    fn oversized_enumeration_is_refused() {
        let sheaf = FunctionSheaf::new(FiniteSpace::indiscrete(20), grid(&[0, 1, 2]));
        assert!(matches!(
            sheaf.sections(OpenSet::from_indices(0..20)),
            Err(SheafError::NonEnumerableSections(_))
        ));
    }

    /// The structure sheaf passes both axioms for every open and every cover
    /// made of opens inside it, on every topology with at most 3 points.
    /// (The 4-point case runs in the acceptance suite.)
    #[test]
    fn function_sheaf_complete_on_small_sites() {
        for n in 0..=3 {
            for space in FiniteSpace::all_topologies(n) {
                let sheaf = FunctionSheaf::new(space.clone(), grid(&[0, 1]));
                for &u in space.opens() {
                    let inside: Vec<OpenSet> = space.opens_within(u).collect();
                    for mask in 0u32..(1 << inside.len()) {
                        let cover: Vec<OpenSet> = inside
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask & (1 << i) != 0)
                            .map(|(_, &v)| v)
                            .collect();
                        if !crate::site::is_open_cover(&space, u, &cover) {
                            continue;
                        }
                        let report = check_completeness(&sheaf, u, &cover).unwrap();
                        assert!(report.is_complete(), "{space:?} {u:?} {cover:?}");
                    }
                }
            }
        }
    }
}
