//! Presheaves over finite sites, the completeness axioms, sheafification by
//! compatible families, and stalks.
//!
//! Section sets are finite or sampled: every [`Presheaf`] hands out a finite
//! list of candidate sections per open set, closed under restriction, and
//! the axiom checks are exhaustive over those lists.

mod instances;
mod section;

pub use instances::{ConstantPresheaf, ConstantSection, FunctionSheaf, SECTION_BUDGET};
pub(crate) use instances::grid_functions;
pub use section::Section;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::site::{is_open_cover, FiniteSpace, OpenSet, SiteError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("target {target:?} is not contained in the section's domain {domain:?}")]
    NotASubset { domain: OpenSet, target: OpenSet },
    #[error("section over {expected} points given {got} values")]
    ValueCount { expected: usize, got: usize },
    #[error("section is not a unit: vanishes at {zeros:?}")]
    NotAUnit { zeros: OpenSet },
    #[error("family is not an open cover of the target")]
    NotACover,
    #[error("members {first} and {second} disagree on their overlap {overlap:?}")]
    IncompatibleFamily {
        first: usize,
        second: usize,
        overlap: OpenSet,
    },
    #[error("cannot enumerate sections: {0}")]
    NonEnumerableSections(String),
    #[error(transparent)]
    Site(#[from] SiteError),
}

/// A presheaf over a finite space with finitely enumerable (or sampled)
/// section sets.
pub trait Presheaf {
    type Section: Clone + PartialEq + fmt::Debug;

    fn space(&self) -> &FiniteSpace;

    fn domain(&self, section: &Self::Section) -> OpenSet;

    /// Restriction along `to ⊆ domain(section)`.
    fn restrict(&self, section: &Self::Section, to: OpenSet) -> Result<Self::Section, SheafError>;

    /// Candidate sections over `u`. Implementations must return lists that
    /// are closed under restriction for the axiom checks to be meaningful.
    fn sections(&self, u: OpenSet) -> Result<Vec<Self::Section>, SheafError>;

    /// JSON rendering of a section, for reports.
    fn section_json(&self, section: &Self::Section) -> serde_json::Value;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    S1,
    S2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomStatus {
    Pass,
    Fail,
}

/// Evidence that an axiom fails.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness<S> {
    /// Two distinct sections over `U` with equal restrictions to every
    /// cover member.
    Separation { first: S, second: S },
    /// A compatible family with no section over `U` restricting to it.
    Gluing(CompatibleFamily<S>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomCheck<S> {
    pub axiom: Axiom,
    pub status: AxiomStatus,
    pub witness: Option<Witness<S>>,
}

impl<S> AxiomCheck<S> {
    fn pass(axiom: Axiom) -> Self {
        AxiomCheck {
            axiom,
            status: AxiomStatus::Pass,
            witness: None,
        }
    }

    fn fail(axiom: Axiom, witness: Witness<S>) -> Self {
        AxiomCheck {
            axiom,
            status: AxiomStatus::Fail,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == AxiomStatus::Pass
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessReport<S> {
    pub s1: AxiomCheck<S>,
    pub s2: AxiomCheck<S>,
    pub sections_checked: usize,
    pub families_checked: usize,
}

impl<S> CompletenessReport<S> {
    pub fn is_complete(&self) -> bool {
        self.s1.passed() && self.s2.passed()
    }
}

/// Sections chosen over the members of a cover, agreeing on overlaps.
#[derive(Debug, Clone, PartialEq)]
pub struct CompatibleFamily<S> {
    pub cover: Vec<OpenSet>,
    pub sections: Vec<S>,
}

/// Upper bound on the number of compatible families a single check may
/// enumerate.
pub const FAMILY_BUDGET: usize = 2_000_000;

/// Checks S1 (locality) and S2 (gluing) for `presheaf` over `u` and `cover`,
/// exhaustively over the presheaf's candidate sections.
pub fn check_completeness<P: Presheaf>(
    presheaf: &P,
    u: OpenSet,
    cover: &[OpenSet],
) -> Result<CompletenessReport<P::Section>, SheafError> {
    if !is_open_cover(presheaf.space(), u, cover) {
        return Err(SheafError::NotACover);
    }
    let over_u = presheaf.sections(u)?;
    let restricted: Vec<Vec<P::Section>> = over_u
        .iter()
        .map(|s| cover.iter().map(|&v| presheaf.restrict(s, v)).collect())
        .collect::<Result<_, _>>()?;

    let mut s1 = AxiomCheck::pass(Axiom::S1);
    'outer: for i in 0..over_u.len() {
        for j in i + 1..over_u.len() {
            if over_u[i] != over_u[j] && restricted[i] == restricted[j] {
                s1 = AxiomCheck::fail(
                    Axiom::S1,
                    Witness::Separation {
                        first: over_u[i].clone(),
                        second: over_u[j].clone(),
                    },
                );
                break 'outer;
            }
        }
    }

    let families = compatible_families(presheaf, cover)?;
    let mut s2 = AxiomCheck::pass(Axiom::S2);
    for family in &families {
        if !restricted.contains(&family.sections) {
            s2 = AxiomCheck::fail(Axiom::S2, Witness::Gluing(family.clone()));
            break;
        }
    }

    Ok(CompletenessReport {
        s1,
        s2,
        sections_checked: over_u.len(),
        families_checked: families.len(),
    })
}

/// All compatible families over `cover` built from the presheaf's candidate
/// sections, in lexicographic order of the candidate lists.
pub fn compatible_families<P: Presheaf>(
    presheaf: &P,
    cover: &[OpenSet],
) -> Result<Vec<CompatibleFamily<P::Section>>, SheafError> {
    let candidates: Vec<Vec<P::Section>> = cover
        .iter()
        .map(|&v| presheaf.sections(v))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    let mut chosen: Vec<P::Section> = Vec::with_capacity(cover.len());
    extend_family(presheaf, cover, &candidates, &mut chosen, &mut out)?;
    Ok(out)
}

fn extend_family<P: Presheaf>(
    presheaf: &P,
    cover: &[OpenSet],
    candidates: &[Vec<P::Section>],
    chosen: &mut Vec<P::Section>,
    out: &mut Vec<CompatibleFamily<P::Section>>,
) -> Result<(), SheafError> {
    let k = chosen.len();
    if k == cover.len() {
        if out.len() >= FAMILY_BUDGET {
            return Err(SheafError::NonEnumerableSections(format!(
                "more than {FAMILY_BUDGET} compatible families"
            )));
        }
        out.push(CompatibleFamily {
            cover: cover.to_vec(),
            sections: chosen.clone(),
        });
        return Ok(());
    }
    for candidate in &candidates[k] {
        let mut compatible = true;
        for (j, earlier) in chosen.iter().enumerate() {
            let overlap = cover[j].intersection(cover[k]);
            if presheaf.restrict(earlier, overlap)? != presheaf.restrict(candidate, overlap)? {
                compatible = false;
                break;
            }
        }
        if compatible {
            chosen.push(candidate.clone());
            extend_family(presheaf, cover, candidates, chosen, out)?;
            chosen.pop();
        }
    }
    Ok(())
}

/// Sections of the sheafification over `u`, as compatible families over the
/// minimal open neighbourhoods of the points of `u` (one member per point).
pub fn sheafify_sections<P: Presheaf>(
    presheaf: &P,
    u: OpenSet,
) -> Result<Vec<CompatibleFamily<P::Section>>, SheafError> {
    if !presheaf.space().is_open(u) {
        return Err(SiteError::NotOpen(presheaf.space().labels(u)).into());
    }
    compatible_families(presheaf, &presheaf.space().minimal_cover(u))
}

/// The stalk at `point`, realized as the sections over its minimal open
/// neighbourhood.
pub fn stalk_at<P: Presheaf>(presheaf: &P, point: usize) -> Result<(OpenSet, Vec<P::Section>), SheafError> {
    let nbhd = presheaf.space().minimal_open_neighborhood(point)?;
    Ok((nbhd, presheaf.sections(nbhd)?))
}

/// JSON report for a completeness check: one `{axiom, status, witness}`
/// object per axiom.
pub fn report_json<P: Presheaf>(presheaf: &P, report: &CompletenessReport<P::Section>) -> serde_json::Value {
    let space = presheaf.space();
    let axiom_json = |check: &AxiomCheck<P::Section>| {
        let witness = match &check.witness {
            None => serde_json::Value::Null,
            Some(Witness::Separation { first, second }) => serde_json::json!({
                "kind": "separation",
                "sections": [presheaf.section_json(first), presheaf.section_json(second)],
            }),
            Some(Witness::Gluing(family)) => serde_json::json!({
                "kind": "gluing",
                "cover": family.cover.iter().map(|&v| space.labels(v)).collect::<Vec<_>>(),
                "sections": family.sections.iter().map(|s| presheaf.section_json(s)).collect::<Vec<_>>(),
            }),
        };
        serde_json::json!({
            "axiom": check.axiom,
            "status": check.status,
            "witness": witness,
        })
    };
    serde_json::json!([axiom_json(&report.s1), axiom_json(&report.s2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn three_point() -> FiniteSpace {
        FiniteSpace::from_bitsets(3, [0b000, 0b001, 0b010, 0b011, 0b111]).unwrap()
    }

    fn grid() -> Vec<Rational> {
        vec![Rational::from(1), Rational::from(2), Rational::new(-1, 2)]
    }

    #[test]
    fn function_sheaf_is_complete_on_split_cover() {
        let space = three_point();
        let sheaf = FunctionSheaf::new(space.clone(), grid());
        let ab = OpenSet::from_indices([0, 1]);
        let cover = [OpenSet::from_indices([0]), OpenSet::from_indices([1])];
        let report = check_completeness(&sheaf, ab, &cover).unwrap();
        assert!(report.s1.passed());
        assert!(report.s2.passed());
        // 3 values at each of 2 points; every pair is compatible.
        assert_eq!(report.sections_checked, 9);
        assert_eq!(report.families_checked, 9);
    }

    #[test]
    fn constant_presheaf_fails_gluing_with_witness() {
        let space = three_point();
        let pre = ConstantPresheaf::new(space.clone(), grid());
        let ab = OpenSet::from_indices([0, 1]);
        let a = OpenSet::from_indices([0]);
        let b = OpenSet::from_indices([1]);
        let report = check_completeness(&pre, ab, &[a, b]).unwrap();
        assert!(report.s1.passed());
        assert!(!report.s2.passed());
        let Some(Witness::Gluing(family)) = report.s2.witness else {
            panic!("expected gluing witness");
        };
        assert_eq!(
            family.sections,
            vec![
                ConstantSection::new(a, Some(Rational::from(1))),
                ConstantSection::new(b, Some(Rational::from(2))),
            ]
        );
    }

    #[test]
    fn single_member_cover_passes_locality() {
        let space = three_point();
        let pre = ConstantPresheaf::new(space.clone(), grid());
        for &u in space.opens() {
            if u.is_empty() {
                continue;
            }
            assert!(check_completeness(&pre, u, &[u]).unwrap().s1.passed());
        }
    }

    #[test]
    fn not_a_cover_is_rejected() {
        let space = three_point();
        let sheaf = FunctionSheaf::new(space, grid());
        let err = check_completeness(&sheaf, OpenSet::from_indices([0, 1]), &[OpenSet::from_indices([0])]);
        assert_eq!(err.unwrap_err(), SheafError::NotACover);
    }

    #[test]
    fn sheafification_of_constant_presheaf_on_discrete_space() {
        let space = FiniteSpace::discrete(2);
        let pre = ConstantPresheaf::new(space.clone(), grid());
        let families = sheafify_sections(&pre, space.whole()).unwrap();
        // Minimal neighbourhoods are singletons, so the families are all
        // pairs of grid values: Q² sampled on the grid.
        assert_eq!(families.len(), 9);
        assert_eq!(pre.sections(space.whole()).unwrap().len(), 3);
        let empty = sheafify_sections(&pre, OpenSet::EMPTY).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].sections.is_empty());
    }

    #[test]
    fn sheafification_of_complete_sheaf_is_bijective() {
        for space in FiniteSpace::all_topologies(3) {
            let sheaf = FunctionSheaf::new(space.clone(), grid());
            for &u in space.opens() {
                let sections = sheaf.sections(u).unwrap();
                let families = sheafify_sections(&sheaf, u).unwrap();
                assert_eq!(sections.len(), families.len());
                let cover = space.minimal_cover(u);
                for family in &families {
                    let matches = sections
                        .iter()
                        .filter(|s| {
                            cover
                                .iter()
                                .zip(&family.sections)
                                .all(|(&v, t)| s.restrict(v).unwrap() == *t)
                        })
                        .count();
                    assert_eq!(matches, 1);
                }
            }
        }
    }

    #[test]
    fn stalks_on_sierpinski() {
        let space = FiniteSpace::sierpinski();
        let sheaf = FunctionSheaf::new(space.clone(), grid());
        let (nbhd_a, at_a) = stalk_at(&sheaf, 0).unwrap();
        assert_eq!(nbhd_a, OpenSet::from_indices([0]));
        assert_eq!(at_a.len(), 3);
        let (nbhd_b, at_b) = stalk_at(&sheaf, 1).unwrap();
        assert_eq!(nbhd_b, space.whole());
        assert_eq!(at_b.len(), 9);
        assert!(stalk_at(&sheaf, 7).is_err());

        let constant = ConstantPresheaf::new(space, grid());
        assert_eq!(stalk_at(&constant, 1).unwrap().1.len(), 3);
    }

    #[test]
    fn report_json_shape() {
        let space = FiniteSpace::discrete(2);
        let pre = ConstantPresheaf::new(space.clone(), grid());
        let cover = [OpenSet::from_indices([0]), OpenSet::from_indices([1])];
        let report = check_completeness(&pre, space.whole(), &cover).unwrap();
        let json = report_json(&pre, &report);
        assert_eq!(json[0]["axiom"], "S1");
        assert_eq!(json[0]["status"], "pass");
        assert_eq!(json[1]["status"], "fail");
        assert_eq!(json[1]["witness"]["cover"], serde_json::json!([["a"], ["b"]]));
    }
}
