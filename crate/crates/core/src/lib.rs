//! Relative-error testing of `s`-term DNF formulas.
//!
//! The library is organized around the stages of the tester:
//!
//! * [`boolfn`] — points, terms, DNFs, factored DNFs, subcubes, restrictions,
//!   truth tables and exact relative distance.
//! * [`oracle`] — query-counted membership/sampling oracles, deterministic
//!   random tapes and seed derivation.
//! * [`params`] — every scalar knob, in `theory` or `desk` mode.
//! * [`clustering`] — the deterministic K-clustering of a DNF's terms
//!   (a reference/verification component, never called by the tester).
//! * [`pooling`] — pool construction over samples and the pool-backed
//!   membership/sampling simulators.
//! * [`learner`] — the implicit learner for the factored-DNF tail.
//! * [`conscheck`] — the consistency checker and conjunction tester.
//! * [`tester`] — `test_factored_dnf` and the top-level `test_dnf` driver.
//! * [`harness`] — instance generators, exact verification oracles and the
//!   experiment runner behind the `dnfrt` CLI.

pub mod boolfn;
pub mod clustering;
pub mod conscheck;
pub mod harness;
pub mod learner;
pub mod oracle;
pub mod params;
pub mod pooling;
pub mod tester;

pub use boolfn::{Dnf, FactoredDnf, Literal, Point, Rat, Subcube, Term, TruthTable};
pub use params::{Mode, ParameterSet};
