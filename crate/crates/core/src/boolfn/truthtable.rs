use std::fmt;

use super::{BoolFn, BoolFnError, Point, ENUM_CAP};

/// A fully materialized Boolean function: one bit per point, indexed by
/// `Point::index()` (bit 0 is the all-zero point).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn from_fn<F: BoolFn + ?Sized>(f: &F) -> Result<Self, BoolFnError> {
        let n = f.n();
        if n > ENUM_CAP {
            return Err(BoolFnError::DimensionTooLarge(n, ENUM_CAP));
        }
        let size = 1usize << n;
        let mut words = vec![0u64; size.div_ceil(64)];
        for idx in 0..size {
            if f.eval(Point::from_index(idx, n)) {
                words[idx / 64] |= 1u64 << (idx % 64);
            }
        }
        Ok(TruthTable { n, words })
    }

    pub fn from_words(n: usize, words: Vec<u64>) -> Self {
        let size = 1usize << n;
        let mut words = words;
        words.resize(size.div_ceil(64), 0);
        if size % 64 != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << (size % 64)) - 1;
        }
        TruthTable { n, words }
    }

    pub fn constant(n: usize, value: bool) -> Self {
        let size = 1usize << n;
        let mut t = TruthTable {
            n,
            words: vec![if value { u64::MAX } else { 0 }; size.div_ceil(64)],
        };
        if value && size % 64 != 0 {
            let last = t.words.len() - 1;
            t.words[last] &= (1u64 << (size % 64)) - 1;
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        1usize << self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get_index(&self, idx: usize) -> bool {
        (self.words[idx / 64] >> (idx % 64)) & 1 == 1
    }

    pub fn set_index(&mut self, idx: usize, value: bool) {
        if value {
            self.words[idx / 64] |= 1u64 << (idx % 64);
        } else {
            self.words[idx / 64] &= !(1u64 << (idx % 64));
        }
    }

    /// `|f^{-1}(1)|`.
    pub fn support_size(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Point indices of `f^{-1}(1)`, ascending.
    pub fn support(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.support_size());
        for idx in 0..self.size() {
            if self.get_index(idx) {
                out.push(idx as u32);
            }
        }
        out
    }

    /// `|self^{-1}(1) △ other^{-1}(1)|`.
    pub fn sym_diff_size(&self, other: &TruthTable) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn or_with(&mut self, other: &TruthTable) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    /// True when `self^{-1}(1) ⊆ other^{-1}(1)`.
    pub fn subset_of(&self, other: &TruthTable) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

impl BoolFn for TruthTable {
    fn n(&self) -> usize {
        self.n
    }
    fn eval(&self, x: Point) -> bool {
        self.get_index(x.index())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, |sup|={})", self.n, self.support_size())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{Dnf, Term};

    #[test]
    fn table_matches_dnf() {
        let f = Dnf::new(vec![Term::of(&[1, -2]), Term::of(&[3])], 3).unwrap();
        let t = TruthTable::from_fn(&f).unwrap();
        for idx in 0..8 {
            assert_eq!(t.get_index(idx), f.eval(Point::from_index(idx, 3)));
        }
        assert_eq!(t.support_size(), t.support().len());
    }

    #[test]
    fn subset_and_symdiff() {
        let a = TruthTable::from_fn(&Dnf::new(vec![Term::of(&[1, 2])], 2).unwrap()).unwrap();
        let b = TruthTable::from_fn(&Dnf::new(vec![Term::of(&[1])], 2).unwrap()).unwrap();
        assert!(a.subset_of(&b));
        assert!(!b.subset_of(&a));
        assert_eq!(a.sym_diff_size(&b), 1);
    }
}
