use std::cell::{Cell, RefCell};
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Membership, Sampler, SeedTree};
use crate::boolfn::{BoolFn, BoolFnError, Point, TruthTable, ENUM_CAP};

/// Per-oracle statistics, exported as JSON records.
#[derive(Clone, Debug, Serialize)]
pub struct OracleStats {
    pub oracle_id: String,
    pub role: String,
    pub calls: u64,
    pub forwarded_calls: u64,
}

/// Concrete membership oracle over a materialized truth table.
/// Deterministic: identical queries always return identical bits.
pub struct MqHandle {
    table: Arc<TruthTable>,
    calls: Cell<u64>,
    tag: String,
}

impl MqHandle {
    pub fn new(table: Arc<TruthTable>, tag: impl Into<String>) -> Self {
        MqHandle {
            table,
            calls: Cell::new(0),
            tag: tag.into(),
        }
    }

    pub fn from_fn<F: BoolFn + ?Sized>(f: &F, tag: impl Into<String>) -> Result<Self, BoolFnError> {
        Ok(MqHandle::new(Arc::new(TruthTable::from_fn(f)?), tag))
    }

    pub fn table(&self) -> &Arc<TruthTable> {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn stats(&self) -> OracleStats {
        OracleStats {
            oracle_id: self.tag.clone(),
            role: "mq".into(),
            calls: self.calls.get(),
            forwarded_calls: 0,
        }
    }
}

impl Membership for MqHandle {
    fn query(&self, x: Point) -> bool {
        self.calls.set(self.calls.get() + 1);
        self.table.get_index(x.index())
    }

    fn calls(&self) -> u64 {
        self.calls.get()
    }

    fn n(&self) -> usize {
        self.table.n()
    }
}

/// Concrete sampling oracle: exactly uniform over `f^{-1}(1)`, with the
/// support enumerated once at construction. Construction fails rather than
/// silently rejection-sampling when the dimension is too large to
/// enumerate.
pub struct SampHandle {
    support: Arc<Vec<u32>>,
    n: usize,
    rng: RefCell<ChaCha8Rng>,
    calls: Cell<u64>,
    tag: String,
}

impl SampHandle {
    pub fn new(
        table: &TruthTable,
        seed: SeedTree,
        tag: impl Into<String>,
    ) -> Result<Self, BoolFnError> {
        if table.n() > ENUM_CAP {
            return Err(BoolFnError::DimensionTooLarge(table.n(), ENUM_CAP));
        }
        let support = table.support();
        if support.is_empty() {
            return Err(BoolFnError::EmptySupport);
        }
        Ok(SampHandle {
            support: Arc::new(support),
            n: table.n(),
            rng: RefCell::new(seed.rng()),
            calls: Cell::new(0),
            tag: tag.into(),
        })
    }

    pub fn from_support(
        support: Arc<Vec<u32>>,
        n: usize,
        seed: SeedTree,
        tag: impl Into<String>,
    ) -> Result<Self, BoolFnError> {
        if support.is_empty() {
            return Err(BoolFnError::EmptySupport);
        }
        Ok(SampHandle {
            support,
            n,
            rng: RefCell::new(seed.rng()),
            calls: Cell::new(0),
            tag: tag.into(),
        })
    }

    pub fn support(&self) -> &Arc<Vec<u32>> {
        &self.support
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stats(&self) -> OracleStats {
        OracleStats {
            oracle_id: self.tag.clone(),
            role: "samp".into(),
            calls: self.calls.get(),
            forwarded_calls: 0,
        }
    }
}

impl Sampler for SampHandle {
    fn draw(&self) -> Point {
        self.calls.set(self.calls.get() + 1);
        let mut rng = self.rng.borrow_mut();
        let idx = rng.gen_range(0..self.support.len());
        Point::from_index(self.support[idx] as usize, self.n)
    }

    fn calls(&self) -> u64 {
        self.calls.get()
    }

    fn n(&self) -> usize {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{Dnf, Term};

    fn table_of(terms: Vec<Term>, n: usize) -> Arc<TruthTable> {
        Arc::new(TruthTable::from_fn(&Dnf::new(terms, n).unwrap()).unwrap())
    }

    #[test]
    fn mq_counts_calls() {
        let mq = MqHandle::new(table_of(vec![Term::of(&[1])], 2), "f");
        assert_eq!(mq.calls(), 0);
        assert!(mq.query(Point::parse("10").unwrap()));
        assert_eq!(mq.calls(), 1);
        assert!(!mq.query(Point::parse("01").unwrap()));
        assert_eq!(mq.calls(), 2);
    }

    #[test]
    fn samp_singleton_support() {
        let t = table_of(vec![Term::of(&[1, 2])], 2);
        let samp = SampHandle::new(&t, SeedTree::new(1), "f").unwrap();
        for _ in 0..16 {
            assert_eq!(samp.draw(), Point::parse("11").unwrap());
        }
        assert_eq!(samp.calls(), 16);
    }

    #[test]
    fn samp_uniform_on_constant_one() {
        // f = constant 1 at n=2: each of the 4 points within 3 sigma of 1/4
        // over 10^4 draws.
        let t = Arc::new(TruthTable::constant(2, true));
        let samp = SampHandle::new(&t, SeedTree::new(5), "one").unwrap();
        let mut counts = [0u32; 4];
        let draws = 10_000;
        for _ in 0..draws {
            counts[samp.draw().index()] += 1;
        }
        let sigma = (draws as f64 * 0.25 * 0.75).sqrt();
        for &c in &counts {
            assert!((c as f64 - 2500.0).abs() <= 3.0 * sigma, "{counts:?}");
        }
    }

    #[test]
    fn empty_support_and_dimension_errors() {
        let z = TruthTable::constant(2, false);
        assert!(matches!(
            SampHandle::new(&z, SeedTree::new(0), "z"),
            Err(BoolFnError::EmptySupport)
        ));
    }
}
