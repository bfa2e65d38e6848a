use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::boolfn::Point;

/// 64-bit finalizer (splitmix64). Statistical quality only; nothing here is
/// a cryptographic guarantee.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn combine(key: u64, word: u64) -> u64 {
    mix(key ^ mix(word))
}

fn label_hash(label: &str) -> u64 {
    // FNV-1a; stable across platforms and runs.
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Deterministic seed derivation: one master seed, with every subroutine
/// deriving a child key from its structural path label so runs are
/// bit-reproducible and trials are independent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedTree {
    key: u64,
}

impl SeedTree {
    pub fn new(master: u64) -> Self {
        SeedTree { key: mix(master) }
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    pub fn child(&self, label: &str) -> SeedTree {
        SeedTree {
            key: combine(self.key, label_hash(label)),
        }
    }

    pub fn child_indexed(&self, label: &str, index: u64) -> SeedTree {
        SeedTree {
            key: combine(combine(self.key, label_hash(label)), index),
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.key)
    }
}

/// A keyed pseudorandom function over (point, slot): the "sufficiently long
/// random string" attached to a pool, realized at O(1) space. Identical
/// (key, point, slot) always yields identical bits, across calls and
/// processes, which is what turns the pool membership simulator into a
/// well-defined Boolean function.
#[derive(Clone, Copy, Debug)]
pub struct RandomTape {
    key: u64,
}

impl RandomTape {
    pub fn new(seed: SeedTree, namespace: &str) -> Self {
        RandomTape {
            key: seed.child(namespace).key(),
        }
    }

    pub fn from_key(key: u64) -> Self {
        RandomTape { key }
    }

    /// One 64-bit word of tape randomness for (point, slot).
    pub fn word(&self, point: Point, slot: u64) -> u64 {
        let pk = combine(self.key, point.bits() ^ ((point.n() as u64) << 56));
        combine(pk, slot)
    }

    /// A second-order word keyed additionally by an auxiliary point (used
    /// to key cube draws by both the query point and the pool member).
    pub fn word2(&self, point: Point, aux: Point, slot: u64) -> u64 {
        let pk = combine(self.key, point.bits() ^ ((point.n() as u64) << 56));
        let ak = combine(pk, aux.bits() ^ ((aux.n() as u64) << 56));
        combine(ak, slot)
    }

    /// `count` deterministic bits derived from (point, slot stream).
    pub fn bits(&self, point: Point, count: usize) -> Vec<bool> {
        let mut out = Vec::with_capacity(count);
        let mut slot = 0u64;
        while out.len() < count {
            let w = self.word(point, slot);
            for b in 0..64 {
                if out.len() == count {
                    break;
                }
                out.push((w >> b) & 1 == 1);
            }
            slot += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tape_is_deterministic() {
        let tape = RandomTape::new(SeedTree::new(42), "pool-0");
        let p = Point::parse("1011").unwrap();
        assert_eq!(tape.bits(p, 200), tape.bits(p, 200));
        assert_eq!(tape.word(p, 3), tape.word(p, 3));
    }

    #[test]
    fn distinct_points_diverge() {
        // Two distinct points should differ somewhere within 128 bits;
        // check every pair among 10^3 points.
        let tape = RandomTape::new(SeedTree::new(7), "collision");
        let n = 16;
        let mut seen = std::collections::HashMap::new();
        for idx in 0..1000usize {
            let p = Point::from_index(idx, n);
            let bits = tape.bits(p, 128);
            if let Some(prev) = seen.insert(bits, idx) {
                panic!("points {prev} and {idx} share a 128-bit prefix");
            }
        }
    }

    #[test]
    fn bit_bias_within_3_sigma() {
        let tape = RandomTape::new(SeedTree::new(1234), "bias");
        let total = 100_000usize;
        let mut ones = 0usize;
        for idx in 0..100usize {
            let p = Point::from_index(idx, 12);
            ones += tape
                .bits(p, total / 100)
                .iter()
                .filter(|&&b| b)
                .count();
        }
        let mean = total as f64 * 0.5;
        let sigma = (total as f64 * 0.25).sqrt();
        assert!((ones as f64 - mean).abs() <= 3.0 * sigma, "ones={ones}");
    }

    #[test]
    fn seed_tree_children_differ() {
        let root = SeedTree::new(5);
        assert_ne!(root.child("a").key(), root.child("b").key());
        assert_ne!(
            root.child_indexed("t", 0).key(),
            root.child_indexed("t", 1).key()
        );
        assert_eq!(root.child("a").key(), root.child("a").key());
    }
}
