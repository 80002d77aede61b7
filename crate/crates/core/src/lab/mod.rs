//! Verification harness: minimal-model scans, preservation checks, the
//! double-ring chain extraction and the named verification suites.

mod chain;
mod minimal;
mod preservation;
mod suites;

use thiserror::Error;

use crate::families::FamilyError;
use crate::hom::SolverError;
use crate::logic::LogicError;
use crate::minor::MinorError;
use crate::structure::StructureError;

pub use chain::{find_induced_dm, hom_image_audit, AuditEntry, AuditReport, DmOutcome};
pub use minimal::{is_minimal_induced_model, MinimalityReport, ScanMode, EXHAUSTIVE_LIMIT, SPOT_CHECK_RATE};
pub use preservation::{check_preservation, PreservationMode, PreservationReport};
pub use suites::{run_suite, SuiteOptions, SuiteReport, SUITE_NAMES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("the structure is not a model of the formula")]
    NotAModel,
    #[error("{size} elements exceed the full-scan limit of {limit}; use deletion mode")]
    TooLarge { size: usize, limit: usize },
    #[error("chain did not close within {0} extension steps")]
    ChainBudget(usize),
    #[error("chain closed but does not give an induced D_{m}: {reason}")]
    ChainInvalid { m: usize, reason: String },
    #[error("cannot build thread pool: {0}")]
    ThreadPool(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Minor(#[from] MinorError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}
