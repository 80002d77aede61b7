//! Homomorphisms between structures and a backtracking search for them.

mod chromatic;
mod search;

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::structure::{Element, Structure};

pub use chromatic::{chromatic_number, chromatic_number_with_budget};
pub use search::{count_homs, enumerate_homs, find_hom};

/// Default cap on search nodes.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("vocabularies differ")]
    VocabularyMismatch,
    #[error("inconsistent partial map: {0}")]
    InconsistentPartial(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("structure is not a graph")]
    NotAGraph,
}

/// Properties of a homomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HomKind {
    pub injective: bool,
    pub strong: bool,
    pub full: bool,
}

impl HomKind {
    /// Injective and strong.
    pub fn embedding(&self) -> bool {
        self.injective && self.strong
    }
}

/// A validated homomorphism with its classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    map: Vec<Element>,
    kind: HomKind,
}

impl Homomorphism {
    /// Validates `map` as a homomorphism `source → target` and classifies it.
    pub fn new(source: &Structure, target: &Structure, map: Vec<Element>) -> Result<Self, SolverError> {
        if source.vocab() != target.vocab() {
            return Err(SolverError::VocabularyMismatch);
        }
        if map.len() != source.size() {
            return Err(SolverError::NotAHomomorphism(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.size()
            )));
        }
        if let Some(&b) = map.iter().find(|&&b| b >= target.size()) {
            return Err(SolverError::NotAHomomorphism(format!("image {b} out of range")));
        }
        for (s, t) in source.tuples() {
            let img: Vec<Element> = t.iter().map(|&e| map[e]).collect();
            if !target.contains(s, &img) {
                return Err(SolverError::NotAHomomorphism(format!(
                    "tuple {:?} of `{}` maps to {:?}, which is absent",
                    t,
                    source.vocab().symbols()[s].name,
                    img
                )));
            }
        }
        let kind = classify_map(source, target, &map);
        Ok(Homomorphism { map, kind })
    }

    pub(crate) fn from_trusted(source: &Structure, target: &Structure, map: Vec<Element>) -> Self {
        debug_assert!(Homomorphism::new(source, target, map.clone()).is_ok());
        let kind = classify_map(source, target, &map);
        Homomorphism { map, kind }
    }

    pub fn map(&self) -> &[Element] {
        &self.map
    }

    pub fn apply(&self, e: Element) -> Element {
        self.map[e]
    }

    pub fn kind(&self) -> HomKind {
        self.kind
    }

    /// `other ∘ self`.
    pub fn then(
        &self,
        other: &Homomorphism,
        source: &Structure,
        target: &Structure,
    ) -> Result<Homomorphism, SolverError> {
        let map = self.map.iter().map(|&e| other.map[e]).collect();
        Homomorphism::new(source, target, map)
    }
}

/// Classification flags for a map already known to be a homomorphism.
pub fn classify(source: &Structure, target: &Structure, map: &[Element]) -> Result<HomKind, SolverError> {
    Homomorphism::new(source, target, map.to_vec()).map(|h| h.kind())
}

fn classify_map(source: &Structure, target: &Structure, map: &[Element]) -> HomKind {
    let image: BTreeSet<Element> = map.iter().copied().collect();
    let injective = image.len() == map.len();
    let surjective = image.len() == target.size();

    let mut preimages = vec![Vec::new(); target.size()];
    for (a, &b) in map.iter().enumerate() {
        preimages[b].push(a);
    }
    // strong: every preimage tuple of a target tuple is a source tuple
    let mut strong = true;
    'outer: for (s, t) in target.tuples() {
        let mut idx = vec![0usize; t.len()];
        if t.iter().any(|&b| preimages[b].is_empty()) {
            continue;
        }
        loop {
            let pre: Vec<Element> = t.iter().zip(&idx).map(|(&b, &i)| preimages[b][i]).collect();
            if !source.contains(s, &pre) {
                strong = false;
                break 'outer;
            }
            // odometer
            let mut k = 0;
            loop {
                if k == t.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < preimages[t[k]].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == t.len() {
                break;
            }
        }
    }

    let full = surjective && {
        let images: HashSet<(usize, Vec<Element>)> = source
            .tuples()
            .map(|(s, t)| (s, t.iter().map(|&e| map[e]).collect()))
            .collect();
        target
            .tuples()
            .all(|(s, t)| images.contains(&(s, t.to_vec())))
    };
    HomKind {
        injective,
        strong,
        full,
    }
}

/// Side constraints for homomorphism search.
#[derive(Debug, Clone)]
pub struct Constraints {
    pub injective: bool,
    pub strong: bool,
    pub full: bool,
    /// Pairs `(a, b)` forcing `a ↦ b`.
    pub partial: Vec<(Element, Element)>,
    /// Maximum number of search nodes.
    pub budget: u64,
}

impl Default for Constraints {
    fn default() -> Self {
        Constraints {
            injective: false,
            strong: false,
            full: false,
            partial: Vec::new(),
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Constraints {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn injective() -> Self {
        Constraints {
            injective: true,
            ..Self::default()
        }
    }

    pub fn embedding() -> Self {
        Constraints {
            injective: true,
            strong: true,
            ..Self::default()
        }
    }

    pub fn full() -> Self {
        Constraints {
            full: true,
            ..Self::default()
        }
    }

    pub fn with_partial(mut self, partial: Vec<(Element, Element)>) -> Self {
        self.partial = partial;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn admits(&self, kind: HomKind) -> bool {
        (!self.injective || kind.injective) && (!self.strong || kind.strong) && (!self.full || kind.full)
    }
}
