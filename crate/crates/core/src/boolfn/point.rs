use std::fmt;

use serde::{Deserialize, Serialize};

use super::BoolFnError;

/// A point of `{0,1}^n`, packed into a `u64`. Coordinate `i` (1-based) is
/// bit `i-1`; bit `i-1` of `bits` above `n` is always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    bits: u64,
    n: u8,
}

impl Point {
    pub fn new(bits: u64, n: usize) -> Self {
        assert!(n <= 64, "dimension too large");
        Point {
            bits: bits & mask(n),
            n: n as u8,
        }
    }

    pub fn zero(n: usize) -> Self {
        Point::new(0, n)
    }

    pub fn ones(n: usize) -> Self {
        Point::new(mask(n), n)
    }

    /// Parse from a left-to-right coordinate string, e.g. `"101"` sets
    /// x1=1, x2=0, x3=1.
    pub fn parse(s: &str) -> Result<Self, BoolFnError> {
        let mut bits = 0u64;
        let mut n = 0usize;
        for c in s.chars() {
            match c {
                '0' => {}
                '1' => bits |= 1 << n,
                _ => return Err(BoolFnError::Parse(format!("bad point char {c:?}"))),
            }
            n += 1;
        }
        if n > 64 {
            return Err(BoolFnError::Parse("point longer than 64 bits".into()));
        }
        Ok(Point::new(bits, n))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Value of coordinate `var` (1-based).
    pub fn get(&self, var: usize) -> bool {
        debug_assert!(var >= 1 && var <= self.n());
        (self.bits >> (var - 1)) & 1 == 1
    }

    pub fn with(&self, var: usize, value: bool) -> Point {
        let b = 1u64 << (var - 1);
        Point {
            bits: if value { self.bits | b } else { self.bits & !b },
            n: self.n,
        }
    }

    pub fn flipped_all(&self) -> Point {
        Point {
            bits: !self.bits & mask(self.n()),
            n: self.n,
        }
    }

    /// Flip exactly the coordinates in `set`.
    pub fn flipped_on(&self, set: CoordSet) -> Point {
        Point {
            bits: self.bits ^ (set.mask & mask(self.n())),
            n: self.n,
        }
    }

    /// Take coordinates in `set` from `other`, the rest from `self`.
    pub fn overwrite(&self, set: CoordSet, other: Point) -> Point {
        debug_assert_eq!(self.n, other.n);
        Point {
            bits: (self.bits & !set.mask) | (other.bits & set.mask),
            n: self.n,
        }
    }

    pub fn xor(&self, other: Point) -> Point {
        debug_assert_eq!(self.n, other.n);
        Point {
            bits: self.bits ^ other.bits,
            n: self.n,
        }
    }

    pub fn hamming(&self, other: Point) -> u32 {
        (self.bits ^ other.bits).count_ones()
    }

    /// Index of the point in truth-table order (x = 0…0 is index 0).
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn from_index(index: usize, n: usize) -> Point {
        Point::new(index as u64, n)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n() {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of coordinate indices (1-based), packed as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CoordSet {
    mask: u64,
}

impl CoordSet {
    pub const EMPTY: CoordSet = CoordSet { mask: 0 };

    pub fn from_mask(mask: u64) -> Self {
        CoordSet { mask }
    }

    pub fn full(n: usize) -> Self {
        CoordSet { mask: mask(n) }
    }

    pub fn single(var: usize) -> Self {
        CoordSet {
            mask: 1u64 << (var - 1),
        }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, var: usize) -> bool {
        (self.mask >> (var - 1)) & 1 == 1
    }

    pub fn insert(&mut self, var: usize) {
        self.mask |= 1u64 << (var - 1);
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn union(&self, other: CoordSet) -> CoordSet {
        CoordSet {
            mask: self.mask | other.mask,
        }
    }

    pub fn intersect(&self, other: CoordSet) -> CoordSet {
        CoordSet {
            mask: self.mask & other.mask,
        }
    }

    pub fn minus(&self, other: CoordSet) -> CoordSet {
        CoordSet {
            mask: self.mask & !other.mask,
        }
    }

    /// Complement within dimension `n`.
    pub fn complement(&self, n: usize) -> CoordSet {
        CoordSet {
            mask: !self.mask & mask(n),
        }
    }

    /// Ascending coordinate indices (1-based).
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=64usize).filter(move |&v| self.contains(v))
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(vars: I) -> CoordSet {
        let mut s = CoordSet::EMPTY;
        for v in vars {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_roundtrip() {
        let p = Point::parse("100").unwrap();
        assert_eq!(p.n(), 3);
        assert!(p.get(1));
        assert!(!p.get(2));
        assert!(!p.get(3));
        assert_eq!(p.to_string(), "100");
        assert_eq!(p.index(), 1);
    }

    #[test]
    fn overwrite_and_flip() {
        let a = Point::parse("1100").unwrap();
        let b = Point::parse("0011").unwrap();
        let s = CoordSet::from_iter([2, 3]);
        assert_eq!(a.overwrite(s, b).to_string(), "1010");
        assert_eq!(a.flipped_on(s).to_string(), "1010");
        assert_eq!(a.flipped_all().to_string(), "0011");
        assert_eq!(a.hamming(b), 4);
    }

    #[test]
    fn coordset_ops() {
        let s = CoordSet::from_iter([1, 5]);
        let t = CoordSet::from_iter([5, 6]);
        assert_eq!(s.union(t), CoordSet::from_iter([1, 5, 6]));
        assert_eq!(s.intersect(t), CoordSet::from_iter([5]));
        assert_eq!(s.minus(t), CoordSet::from_iter([1]));
        assert_eq!(s.complement(6), CoordSet::from_iter([2, 3, 4, 6]));
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 5]);
    }
}
