use rayon::prelude::*;

use super::LabError;
use crate::hom::{find_hom, Constraints, SolverError, DEFAULT_BUDGET};
use crate::logic::{holds, Formula};
use crate::structure::Structure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreservationMode {
    /// Any homomorphism `A → B`.
    Hom,
    /// Embeddings `A → B` (injective and strong).
    Extension,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationReport {
    pub instances: usize,
    /// Which instances model the formula.
    pub models: Vec<bool>,
    /// Ordered pairs `(A, B)` with `A ⊨ φ` and `B ⊭ φ` that were searched.
    pub pairs_checked: usize,
    /// Pairs with a map `A → B` of the requested kind.
    pub violations: Vec<(usize, usize)>,
    /// Pairs whose search ran out of budget.
    pub skipped: Vec<(usize, usize)>,
}

impl PreservationReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty() && self.skipped.is_empty()
    }
}

/// Looks for ordered pairs `(A, B)` of instances with a homomorphism (or
/// embedding) `A → B` where `A ⊨ φ` and `B ⊭ φ`. Only such pairs can violate
/// preservation, so only they are searched.
pub fn check_preservation(
    phi: &Formula,
    instances: &[Structure],
    mode: PreservationMode,
    budget: Option<u64>,
) -> Result<PreservationReport, LabError> {
    let models: Vec<bool> = instances
        .par_iter()
        .map(|s| holds(phi, s))
        .collect::<Result<_, _>>()?;
    let cons = match mode {
        PreservationMode::Hom => Constraints::none(),
        PreservationMode::Extension => Constraints::embedding(),
    }
    .with_budget(budget.unwrap_or(DEFAULT_BUDGET));
    let pairs: Vec<(usize, usize)> = (0..instances.len())
        .flat_map(|i| (0..instances.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| models[i] && !models[j])
        .collect();
    let results: Vec<Result<Option<bool>, LabError>> = pairs
        .par_iter()
        .map(|&(i, j)| match find_hom(&instances[i], &instances[j], &cons) {
            Ok(h) => Ok(Some(h.is_some())),
            Err(SolverError::BudgetExceeded(_)) => Ok(None),
            Err(e) => Err(e.into()),
        })
        .collect();
    let mut report = PreservationReport {
        instances: instances.len(),
        models,
        pairs_checked: pairs.len(),
        violations: Vec::new(),
        skipped: Vec::new(),
    };
    for (&pair, r) in pairs.iter().zip(results) {
        match r? {
            Some(true) => report.violations.push(pair),
            Some(false) => {}
            None => report.skipped.push(pair),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, Family};
    use crate::logic::builtin;
    use crate::structure::disjoint_union;

    #[test]
    fn bouquet_sentence_on_wheels() {
        let phi = builtin("phi_bouquet").unwrap();
        let w5 = generate(&Family::Wheel(5)).unwrap();
        let w7 = generate(&Family::Wheel(7)).unwrap();
        let (a, b) = (w7.element_by_label("c1").unwrap(), w7.element_by_label("c2").unwrap());
        let pool = vec![
            w5.clone(),
            w7.clone(),
            disjoint_union(&w5, &w7).unwrap(),
            w7.without_edges(&[(a, b)]).unwrap(),
        ];
        let r = check_preservation(&phi, &pool, PreservationMode::Hom, None).unwrap();
        assert!(r.clean());
        assert_eq!(r.models, [true, true, true, false]);
        assert_eq!(r.pairs_checked, 3);

        let apex = w5.element_by_label("apex").unwrap();
        let bad = vec![w5.clone(), w5.with_vertex(&[apex]).unwrap()];
        let r = check_preservation(&phi, &bad, PreservationMode::Hom, None).unwrap();
        assert_eq!(r.violations, [(0, 1)]);
        let r = check_preservation(&phi, &bad, PreservationMode::Extension, None).unwrap();
        assert_eq!(r.violations, [(0, 1)]);
    }

    #[test]
    fn single_instance_is_clean() {
        let phi = builtin("phi_planar").unwrap();
        let r = check_preservation(&phi, &[generate(&Family::D(4)).unwrap()], PreservationMode::Hom, None).unwrap();
        assert!(r.clean());
        assert_eq!(r.pairs_checked, 0);
    }

    #[test]
    fn exhausted_budget_skips_the_pair() {
        let phi = builtin("phi_bouquet").unwrap();
        let w9 = generate(&Family::Wheel(9)).unwrap();
        let c9 = generate(&Family::Cycle(9)).unwrap();
        let r = check_preservation(&phi, &[w9, c9], PreservationMode::Hom, Some(1)).unwrap();
        assert_eq!(r.skipped, [(0, 1)]);
        assert!(!r.clean());
    }
}
