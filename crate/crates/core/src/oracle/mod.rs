//! Query-counted membership and sampling oracles, plus the deterministic
//! per-point randomness that makes pool-backed simulators well-defined
//! functions.
//!
//! Counter discipline: every handle counts its own calls; simulators keep
//! their own counters and forward work to the base handles they wrap, so
//! the base counters always reflect the total downstream cost.

mod handles;
mod seed;

pub use handles::{MqHandle, OracleStats, SampHandle};
pub use seed::{RandomTape, SeedTree};

use crate::boolfn::Point;

/// Membership-query access to some Boolean function, counting calls.
pub trait Membership {
    fn query(&self, x: Point) -> bool;
    fn calls(&self) -> u64;
    /// Ambient dimension of query points.
    fn n(&self) -> usize;
}

/// Sampling access to the satisfying assignments of some Boolean function,
/// counting calls. Handles own their generators; a handle is used by one
/// trial at a time.
pub trait Sampler {
    fn draw(&self) -> Point;
    fn calls(&self) -> u64;
    fn n(&self) -> usize;
}

impl<T: Membership + ?Sized> Membership for std::rc::Rc<T> {
    fn query(&self, x: Point) -> bool {
        (**self).query(x)
    }
    fn calls(&self) -> u64 {
        (**self).calls()
    }
    fn n(&self) -> usize {
        (**self).n()
    }
}

impl<T: Sampler + ?Sized> Sampler for std::rc::Rc<T> {
    fn draw(&self) -> Point {
        (**self).draw()
    }
    fn calls(&self) -> u64 {
        (**self).calls()
    }
    fn n(&self) -> usize {
        (**self).n()
    }
}
