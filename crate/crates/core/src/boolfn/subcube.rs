use rand::Rng;

use super::{CoordSet, Point};

/// The subcube of `{0,1}^n` that has `a` and `b` as antipodal points:
/// membership requires agreeing with `a` on every coordinate where `a` and
/// `b` agree. An optional exempt block removes the condition on those
/// coordinates entirely.
#[derive(Clone, Copy, Debug)]
pub struct Subcube {
    a: Point,
    b: Point,
    exempt: CoordSet,
}

/// A draw from a subcube. When the cube has an exempt block, those
/// coordinates are reported back unset for the caller to fill.
#[derive(Clone, Copy, Debug)]
pub struct CubeSample {
    pub point: Point,
    pub unset: CoordSet,
}

impl Subcube {
    pub fn new(a: Point, b: Point) -> Self {
        debug_assert_eq!(a.n(), b.n());
        Subcube {
            a,
            b,
            exempt: CoordSet::EMPTY,
        }
    }

    /// `Cube_X(a,b)`: no condition on coordinates in `exempt`.
    pub fn with_exempt(a: Point, b: Point, exempt: CoordSet) -> Self {
        Subcube { a, b, exempt }
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    /// Coordinates where `a` and `b` differ (excluding the exempt block).
    pub fn free(&self) -> CoordSet {
        CoordSet::from_mask(self.a.bits() ^ self.b.bits()).minus(self.exempt)
    }

    pub fn exempt(&self) -> CoordSet {
        self.exempt
    }

    /// Number of points (counting exempt coordinates as free).
    pub fn size(&self) -> u64 {
        1u64 << (self.free().len() + self.exempt.len())
    }

    pub fn contains(&self, z: Point) -> bool {
        let agree = CoordSet::from_mask(!(self.a.bits() ^ self.b.bits()))
            .intersect(CoordSet::full(z.n()))
            .minus(self.exempt);
        (z.bits() ^ self.a.bits()) & agree.mask() == 0
    }

    /// Uniform draw: agreeing coordinates fixed, differing coordinates
    /// independent fair bits, exempt coordinates left at `a`'s values and
    /// reported in `unset`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> CubeSample {
        let free = self.free();
        let coins: u64 = rng.gen();
        let point = Point::new(
            (self.a.bits() & !free.mask()) | (coins & free.mask()),
            self.a.n(),
        );
        CubeSample {
            point,
            unset: self.exempt,
        }
    }

    /// Uniform draw using pre-supplied random bits (for tape-driven,
    /// deterministic sampling). Only the bits on free coordinates are used.
    pub fn sample_with_bits(&self, coins: u64) -> CubeSample {
        let free = self.free();
        let point = Point::new(
            (self.a.bits() & !free.mask()) | (coins & free.mask()),
            self.a.n(),
        );
        CubeSample {
            point,
            unset: self.exempt,
        }
    }

    /// All points of the cube (exempt coordinates enumerated too).
    pub fn enumerate(&self) -> Vec<Point> {
        let vars: Vec<usize> = self.free().union(self.exempt).iter().collect();
        let mut out = Vec::with_capacity(1 << vars.len());
        for pattern in 0u64..(1 << vars.len()) {
            let mut p = self.a;
            for (j, &v) in vars.iter().enumerate() {
                p = p.with(v, (pattern >> j) & 1 == 1);
            }
            out.push(p);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn cube_membership_and_size() {
        let a = Point::parse("000").unwrap();
        let b = Point::parse("001").unwrap();
        let c = Subcube::new(a, b);
        assert_eq!(c.size(), 2);
        assert!(c.contains(a) && c.contains(b));
        assert!(!c.contains(Point::parse("100").unwrap()));
        assert_eq!(c.enumerate().len(), 2);
    }

    #[test]
    fn degenerate_cube_sample() {
        let a = Point::parse("101").unwrap();
        let c = Subcube::new(a, a);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..32 {
            assert_eq!(c.sample(&mut rng).point, a);
        }
    }

    #[test]
    fn two_free_coords_uniform() {
        // Empirical frequency of each member of Cube(00,11) within 3 sigma
        // of 1/4 over 10^4 draws; the expected value comes from exact
        // enumeration of the 4-point cube.
        let a = Point::parse("00").unwrap();
        let b = Point::parse("11").unwrap();
        let cube = Subcube::new(a, b);
        let members = cube.enumerate();
        assert_eq!(members.len(), 4);
        let mut counts = [0u32; 4];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 10_000;
        for _ in 0..draws {
            counts[cube.sample(&mut rng).point.index()] += 1;
        }
        let p = 0.25f64;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for &c in &counts {
            assert!((c as f64 - draws as f64 * p).abs() <= 3.0 * sigma, "{counts:?}");
        }
    }

    #[test]
    fn exempt_block_reported_unset() {
        let a = Point::parse("0000").unwrap();
        let b = Point::parse("0011").unwrap();
        let cube = Subcube::with_exempt(a, b, CoordSet::single(1));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = cube.sample(&mut rng);
        assert_eq!(s.unset, CoordSet::single(1));
        // Coordinate 2 agrees on a,b and is not exempt: always 0.
        assert!(!s.point.get(2));
    }
}
