use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::LabError;
use crate::logic::{holds, Formula};
use crate::structure::{induced_substructure, Element, Structure};

/// Largest structure accepted by the full subset scan.
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Fraction of subsets re-evaluated directly in proxy mode.
pub const SPOT_CHECK_RATE: f64 = 0.05;

#[derive(Debug, Clone, Copy)]
pub enum ScanMode {
    /// Every proper subset, evaluated directly.
    Exhaustive,
    /// Only subsets missing one element. Partial evidence.
    Deletion,
    /// Every proper subset, with `oracle` standing in for the formula and a
    /// seeded random sample evaluated directly as a spot check.
    Proxy {
        oracle: fn(&Structure) -> bool,
        rate: f64,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalityReport {
    pub minimal: bool,
    /// Set in deletion mode: absence of a witness is not conclusive.
    pub partial: bool,
    pub subsets: u64,
    pub in_class: u64,
    /// Smallest (by bitmask) proper subset inducing a class member that models
    /// the formula.
    pub witness: Option<Vec<Element>>,
    pub spot_checks: u64,
    /// Subsets where the oracle and direct evaluation disagree.
    pub spot_mismatches: Vec<Vec<Element>>,
}

impl std::fmt::Display for MinimalityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "minimal={} subsets={} in-class={}",
            self.minimal, self.subsets, self.in_class
        )?;
        if self.partial {
            write!(f, " (partial evidence: deletion only)")?;
        }
        if self.spot_checks > 0 {
            write!(f, " spot-checks={} mismatches={}", self.spot_checks, self.spot_mismatches.len())?;
        }
        if let Some(w) = &self.witness {
            write!(f, " witness={w:?}")?;
        }
        Ok(())
    }
}

struct Outcome {
    in_class: bool,
    models: bool,
    spot: Option<bool>,
}

/// Checks that `m` is a minimal induced model of `phi` within the class
/// given by `class`: no proper induced substructure in the class models
/// `phi`.
pub fn is_minimal_induced_model<C>(
    phi: &Formula,
    m: &Structure,
    class: C,
    mode: ScanMode,
) -> Result<MinimalityReport, LabError>
where
    C: Fn(&Structure) -> bool + Sync,
{
    if !holds(phi, m)? {
        return Err(LabError::NotAModel);
    }
    let n = m.size();
    let subsets: Vec<Vec<Element>> = match mode {
        ScanMode::Deletion => (0..n)
            .map(|skip| (0..n).filter(|&v| v != skip).collect())
            .collect(),
        ScanMode::Exhaustive | ScanMode::Proxy { .. } => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(LabError::TooLarge { size: n, limit: EXHAUSTIVE_LIMIT });
            }
            let full = 1u64 << n;
            (0..full - 1)
                .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
                .collect()
        }
    };
    let spot: Vec<bool> = match mode {
        ScanMode::Proxy { rate, seed, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            subsets.iter().map(|_| rng.gen_bool(rate)).collect()
        }
        _ => vec![false; subsets.len()],
    };
    let outcomes: Vec<Outcome> = subsets
        .par_iter()
        .zip(spot.par_iter())
        .map(|(s, &check)| -> Result<Outcome, LabError> {
            let sub = induced_substructure(m, s.iter().copied())?.structure;
            let in_class = class(&sub);
            let (models, spot) = match mode {
                ScanMode::Proxy { oracle, .. } => {
                    let proxy = oracle(&sub);
                    let spot = if check { Some(holds(phi, &sub)? == proxy) } else { None };
                    (proxy, spot)
                }
                _ => (in_class && holds(phi, &sub)?, None),
            };
            Ok(Outcome { in_class, models, spot })
        })
        .collect::<Result<_, _>>()?;

    let mut report = MinimalityReport {
        minimal: true,
        partial: matches!(mode, ScanMode::Deletion),
        subsets: subsets.len() as u64,
        in_class: 0,
        witness: None,
        spot_checks: 0,
        spot_mismatches: Vec::new(),
    };
    for (s, o) in subsets.iter().zip(&outcomes) {
        report.in_class += o.in_class as u64;
        if o.in_class && o.models && report.witness.is_none() {
            report.witness = Some(s.clone());
        }
        if let Some(agrees) = o.spot {
            report.spot_checks += 1;
            if !agrees {
                report.spot_mismatches.push(s.clone());
            }
        }
    }
    report.minimal = report.witness.is_none() && report.spot_mismatches.is_empty();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{bouquet_oracle, generate, in_class_c, Family};
    use crate::logic::{builtin, parse};

    fn any(_: &Structure) -> bool {
        true
    }

    #[test]
    fn single_edge_is_minimal_for_an_edge() {
        let phi = parse("(exists x (exists y (rel E x y)))").unwrap();
        let k2 = generate(&Family::Clique(2)).unwrap();
        let r = is_minimal_induced_model(&phi, &k2, any, ScanMode::Exhaustive).unwrap();
        assert!(r.minimal);
        assert_eq!(r.subsets, 3);
        let k3 = generate(&Family::Clique(3)).unwrap();
        let r = is_minimal_induced_model(&phi, &k3, any, ScanMode::Exhaustive).unwrap();
        assert!(!r.minimal);
        assert_eq!(r.witness, Some(vec![0, 1]));
    }

    #[test]
    fn non_models_are_rejected() {
        let phi = parse("(exists x (exists y (rel E x y)))").unwrap();
        let e = Structure::graph(3, []).unwrap();
        assert_eq!(
            is_minimal_induced_model(&phi, &e, any, ScanMode::Exhaustive),
            Err(LabError::NotAModel)
        );
    }

    #[test]
    fn wheel_five_in_class_c() {
        let phi = builtin("phi_bouquet").unwrap();
        let w5 = generate(&Family::Wheel(5)).unwrap();
        let c = |g: &Structure| in_class_c(g).unwrap_or(false);
        let r = is_minimal_induced_model(&phi, &w5, c, ScanMode::Exhaustive).unwrap();
        assert!(r.minimal, "{r}");
        assert_eq!(r.subsets, 63);
        let proxy = ScanMode::Proxy { oracle: bouquet_oracle, rate: 0.5, seed: 3 };
        let r = is_minimal_induced_model(&phi, &w5, c, proxy).unwrap();
        assert!(r.minimal && r.spot_checks > 0, "{r}");
    }

    #[test]
    fn deletion_mode_is_partial() {
        let phi = builtin("phi_bouquet").unwrap();
        let w7 = generate(&Family::Wheel(7)).unwrap();
        let r = is_minimal_induced_model(&phi, &w7, any, ScanMode::Deletion).unwrap();
        assert!(r.partial && r.minimal);
        assert_eq!(r.subsets, 8);
        assert!(r.to_string().contains("partial evidence"));
        let big = generate(&Family::Wheel(13)).unwrap();
        assert_eq!(
            is_minimal_induced_model(&phi, &big, any, ScanMode::Exhaustive),
            Err(LabError::TooLarge { size: 14, limit: EXHAUSTIVE_LIMIT })
        );
    }
}
