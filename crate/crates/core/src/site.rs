//! Finite topological spaces with explicitly enumerated opens.
//!
//! Points are indexed `0..len` in declaration order and open sets are
//! bitsets over those indices, so spaces are capped at 64 points.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_POINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SiteError {
    #[error("opens not closed under union: {left:?} ∪ {right:?} missing")]
    NotClosedUnderUnion { left: Vec<String>, right: Vec<String> },
    #[error("opens not closed under intersection: {left:?} ∩ {right:?} missing")]
    NotClosedUnderIntersection { left: Vec<String>, right: Vec<String> },
    #[error("opens must contain the empty set and the whole space (missing {missing:?})")]
    MissingEmptyOrWhole { missing: Vec<String> },
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("duplicate point label {0:?}")]
    DuplicatePoint(String),
    #[error("{0:?} is not an open set of this space")]
    NotOpen(Vec<String>),
    #[error("spaces are limited to {MAX_POINTS} points (got {0})")]
    TooManyPoints(usize),
}

/// A subset of a finite space's points, as a bitset over point indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OpenSet(u64);

impl OpenSet {
    pub const EMPTY: OpenSet = OpenSet(0);

    pub fn from_bits(bits: u64) -> Self {
        OpenSet(bits)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        OpenSet(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, point: usize) -> bool {
        point < 64 && self.0 & (1u64 << point) != 0
    }

    pub fn is_subset_of(self, other: OpenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: OpenSet) -> OpenSet {
        OpenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: OpenSet) -> OpenSet {
        OpenSet(self.0 & other.0)
    }

    /// Point indices in ascending order.
    pub fn points(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits & (1u64 << i) != 0)
    }

    /// Position of `point` within [`OpenSet::points`], if it is a member.
    pub fn position(self, point: usize) -> Option<usize> {
        if !self.contains(point) {
            return None;
        }
        let below = self.0 & ((1u64 << point) - 1);
        Some(below.count_ones() as usize)
    }
}

impl fmt::Debug for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.points()).finish()
    }
}

/// JSON shape of a space: `{"points": [...], "opens": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

/// A validated finite topological space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    opens: Vec<OpenSet>,
}

impl FiniteSpace {
    /// Validates the open-set lattice: contains ∅ and the whole set, closed
    /// under pairwise union and intersection.
    pub fn new(points: Vec<String>, opens: &[Vec<String>]) -> Result<Self, SiteError> {
        if points.len() > MAX_POINTS {
            return Err(SiteError::TooManyPoints(points.len()));
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(SiteError::DuplicatePoint(p.clone()));
            }
        }
        let mut space = FiniteSpace { points, opens: Vec::new() };
        let mut set = BTreeSet::new();
        for open in opens {
            set.insert(space.subset(open)?);
        }
        space.opens = set.into_iter().collect();
        space.validate()?;
        Ok(space)
    }

    pub fn from_spec(spec: &SpaceSpec) -> Result<Self, SiteError> {
        Self::new(spec.points.clone(), &spec.opens)
    }

    pub fn to_spec(&self) -> SpaceSpec {
        SpaceSpec {
            points: self.points.clone(),
            opens: self.opens.iter().map(|&u| self.labels(u)).collect(),
        }
    }

    /// Validates a space given directly by bitsets over `n` points.
    pub fn from_bitsets(n: usize, opens: impl IntoIterator<Item = u64>) -> Result<Self, SiteError> {
        let points: Vec<String> = (0..n).map(default_label).collect();
        let mut space = FiniteSpace { points, opens: Vec::new() };
        let set: BTreeSet<OpenSet> = opens.into_iter().map(OpenSet).collect();
        space.opens = set.into_iter().collect();
        space.validate()?;
        Ok(space)
    }

    pub fn discrete(n: usize) -> Self {
        let opens = (0..1u64 << n).collect::<Vec<_>>();
        Self::from_bitsets(n, opens).expect("power set is a topology")
    }

    pub fn indiscrete(n: usize) -> Self {
        Self::from_bitsets(n, [0, full_bits(n)]).expect("indiscrete topology")
    }

    /// Points `a`, `b` with opens ∅, {a}, {a,b}.
    pub fn sierpinski() -> Self {
        Self::from_bitsets(2, [0b00, 0b01, 0b11]).expect("Sierpinski space")
    }

    /// Every topology on `n` labelled points (n ≤ 4), in a fixed order.
    pub fn all_topologies(n: usize) -> Vec<FiniteSpace> {
        assert!(n <= 4, "topology enumeration is limited to 4 points");
        let full = full_bits(n);
        // Candidate opens are the proper nonempty subsets.
        let candidates: Vec<u64> = (1..full).collect();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << candidates.len()) {
            let mut opens = vec![0, full];
            opens.extend(
                candidates
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1u64 << i) != 0)
                    .map(|(_, &c)| c),
            );
            if lattice_closed(&opens) {
                out.push(Self::from_bitsets(n, opens).expect("closed lattice"));
            }
        }
        out
    }

    fn validate(&self) -> Result<(), SiteError> {
        let whole = self.whole();
        let missing: Vec<String> = [OpenSet::EMPTY, whole]
            .into_iter()
            .filter(|u| !self.is_open(*u))
            .flat_map(|u| {
                if u.is_empty() {
                    vec!["∅".to_string()]
                } else {
                    self.labels(u)
                }
            })
            .collect();
        if !missing.is_empty() {
            return Err(SiteError::MissingEmptyOrWhole { missing });
        }
        for (i, &u) in self.opens.iter().enumerate() {
            for &v in &self.opens[i + 1..] {
                if !self.is_open(u.union(v)) {
                    return Err(SiteError::NotClosedUnderUnion {
                        left: self.labels(u),
                        right: self.labels(v),
                    });
                }
                if !self.is_open(u.intersection(v)) {
                    return Err(SiteError::NotClosedUnderIntersection {
                        left: self.labels(u),
                        right: self.labels(v),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn label(&self, point: usize) -> &str {
        &self.points[point]
    }

    pub fn point_index(&self, label: &str) -> Result<usize, SiteError> {
        self.points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| SiteError::UnknownPoint(label.to_string()))
    }

    /// All opens, sorted by bitset value.
    pub fn opens(&self) -> &[OpenSet] {
        &self.opens
    }

    pub fn whole(&self) -> OpenSet {
        OpenSet(full_bits(self.points.len()))
    }

    pub fn is_open(&self, u: OpenSet) -> bool {
        self.opens.binary_search(&u).is_ok()
    }

    /// The subset named by `labels`, without checking openness.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<OpenSet, SiteError> {
        labels.iter().try_fold(OpenSet::EMPTY, |acc, l| {
            Ok(acc.union(OpenSet::from_indices([self.point_index(l.as_ref())?])))
        })
    }

    /// The open set named by `labels`.
    pub fn open_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<OpenSet, SiteError> {
        let u = self.subset(labels)?;
        if self.is_open(u) {
            Ok(u)
        } else {
            Err(SiteError::NotOpen(self.labels(u)))
        }
    }

    pub fn labels(&self, u: OpenSet) -> Vec<String> {
        u.points().map(|i| self.points[i].clone()).collect()
    }

    /// Intersection of all opens containing `point`: the smallest open
    /// neighbourhood, which exists because the space is finite.
    pub fn minimal_open_neighborhood(&self, point: usize) -> Result<OpenSet, SiteError> {
        if point >= self.points.len() {
            return Err(SiteError::UnknownPoint(format!("#{point}")));
        }
        Ok(self
            .opens
            .iter()
            .filter(|u| u.contains(point))
            .fold(self.whole(), |acc, &u| acc.intersection(u)))
    }

    pub fn minimal_open_neighborhood_of(&self, label: &str) -> Result<OpenSet, SiteError> {
        self.minimal_open_neighborhood(self.point_index(label)?)
    }

    /// Opens contained in `u`.
    pub fn opens_within(&self, u: OpenSet) -> impl Iterator<Item = OpenSet> + '_ {
        self.opens.iter().copied().filter(move |v| v.is_subset_of(u))
    }

    /// The cover of `u` by minimal neighbourhoods of its points, one per point
    /// in ascending point order (duplicates kept).
    pub fn minimal_cover(&self, u: OpenSet) -> Vec<OpenSet> {
        u.points()
            .map(|x| self.minimal_open_neighborhood(x).expect("point of the space"))
            .collect()
    }
}

/// True iff the members of `family` are opens contained in `u` whose union
/// is `u`.
pub fn is_open_cover(space: &FiniteSpace, u: OpenSet, family: &[OpenSet]) -> bool {
    family.iter().all(|v| space.is_open(*v) && v.is_subset_of(u))
        && family.iter().fold(OpenSet::EMPTY, |acc, v| acc.union(*v)) == u
}

fn full_bits(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn default_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("p{i}")
    }
}

fn lattice_closed(opens: &[u64]) -> bool {
    opens.iter().all(|&u| {
        opens
            .iter()
            .all(|&v| opens.contains(&(u | v)) && opens.contains(&(u & v)))
    })
}
