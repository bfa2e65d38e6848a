//! Boolean-function representations and exact distance computations.
//!
//! The domain is `{0,1}^n` with coordinate indices `1..=n` and `n <= 20`
//! wherever exhaustive enumeration is involved. Points are packed into a
//! `u64`, truth tables into bit vectors, and all distances are exact
//! rationals so acceptance tests never depend on float ties.

mod dnf;
mod func;
mod point;
mod rat;
mod reldist;
mod subcube;
mod term;
mod text;
mod truthtable;

pub use dnf::{Dnf, FactoredDnf};
pub use func::{restrict, BoolFn, ClosureFn, Restriction, TermFn};
pub use point::{CoordSet, Point};
pub use rat::Rat;
pub use reldist::{reldist_exhaustive, reldist_tables};
pub use subcube::{CubeSample, Subcube};
pub use term::{Literal, LiteralSet, Term};
pub use text::{format_dnf, format_truth_table, parse_dnf, parse_truth_table};
pub use truthtable::TruthTable;

use thiserror::Error;

/// The exhaustive-enumeration cap: no exact engine ever runs above this
/// dimension.
pub const ENUM_CAP: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoolFnError {
    #[error("coordinate index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} exceeds enumeration cap {1}")]
    DimensionTooLarge(usize, usize),
    #[error("function has empty support")]
    EmptySupport,
    #[error("term contains a variable together with its negation: x{0}")]
    ContradictoryTerm(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
