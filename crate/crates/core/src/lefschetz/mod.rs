//! Verifiers for Lefschetz properties, anisotropy, the differential formula
//! and flag face-number inequalities.

mod anisotropy;
mod counterexample;
mod differential;
mod ends;
mod inequalities;
mod instance;
mod report;
mod slp;

pub use anisotropy::check_anisotropy_symbolic;
pub use counterexample::{counterexample_complex, reproduce_counterexample};
pub use differential::{transversal_sequences, verify_differential_formula};
pub use ends::{check_graded_ends, ends_range};
pub use inequalities::{verify_inequalities, Inequality};
pub use report::{CheckRecord, CheckReport, CheckVerdict, ElementChoice, Hypothesis, LefschetzConfig, Summary};
pub use slp::{check_2cm_injectivity, check_bmu_slp, check_manifold_surjectivity, check_multigraded_slp, cone_lemma_check, describe};
