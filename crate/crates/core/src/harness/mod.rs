//! Instance generators, exact verification oracles, statistics helpers,
//! and the seeded experiment runner behind the CLI.

mod certify;
mod gen;
mod runner;
mod stats;
mod structural;
mod verifysuite;

pub use certify::{certify_far, FarCertificate};
pub use gen::{gen_random_dnf, gen_random_dnf_over, realize, Instance, InstanceKind, InstanceSpec, WidthDist};
pub use runner::{run_experiment, ExperimentConfig, Report, TrialRecord};
pub use stats::{binomial_tail_ok, chi_square_p, three_sigma};
pub use verifysuite::{
    bench_rows, criterion_adequacy_gap, criterion_candidate_soundness, criterion_clustering_suite,
    criterion_cube_bound, criterion_learner_exactness, criterion_no_case,
    criterion_one_sidedness, criterion_query_accounting, criterion_reproducibility,
    criterion_yes_case, run_all as run_acceptance_checks, BenchRow, CheckOutcome,
};
pub use structural::{
    adequate_gap, dominating_function, is_attracted, is_dense, is_stable, terms_of_pool,
    AdequateGapEstimate,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("degenerate instance spec: {0}")]
    DegenerateSpec(String),
    #[error("{0}")]
    BoolFn(#[from] crate::boolfn::BoolFnError),
    #[error("{0}")]
    Param(#[from] crate::params::ParamError),
    #[error("{0}")]
    Learner(#[from] crate::learner::LearnerError),
    #[error("io error on {path}: {err}")]
    Io { path: String, err: std::io::Error },
}
