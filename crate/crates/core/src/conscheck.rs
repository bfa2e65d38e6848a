//! The consistency checker: does the input function look like a
//! conjunction on the non-R coordinates conjoined with the learned tail on
//! R? Phase 1 cross-checks samples of `h` against the tail simulators;
//! phase 2 tests the induced head function for being a conjunction via an
//! anti-monotone tester on XOR-shifted oracles.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::boolfn::{CoordSet, Point, Rat};
use crate::oracle::{Membership, Sampler};
use crate::params::{Mode, ParameterSet};

/// Answer of the head-membership simulator: it never returns 0; a failed
/// recombination is a global rejection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaAnswer {
    One,
    Reject,
}

/// Membership simulator for the head indicator: draw tail samples and
/// check that every recombination satisfies `h`.
pub fn sim_mq_gamma(
    alpha: Point,
    mq: &dyn Membership,
    samp_j: &dyn Sampler,
    r_set: CoordSet,
    eps: Rat,
    params: &ParameterSet,
) -> GammaAnswer {
    for _ in 0..params.gamma_draws(eps) {
        let w = samp_j.draw();
        if !mq.query(alpha.overwrite(r_set, w)) {
            return GammaAnswer::Reject;
        }
    }
    GammaAnswer::One
}

/// Projection sampler: one base draw restricted to `y_set` (all other
/// coordinates zeroed).
pub fn sim_samp_proj(samp: &dyn Sampler, y_set: CoordSet) -> Point {
    let z = samp.draw();
    Point::zero(z.n()).overwrite(y_set, z)
}

fn conj_rounds(params: &ParameterSet, eps: Rat) -> (u32, u32) {
    match params.mode {
        Mode::Theory => (((Rat::int(8) / eps).ceil()).min(u32::MAX as u64) as u32, 16),
        Mode::Desk => (params.conj_p1_rounds, params.conj_p2_rounds),
    }
}

/// Relative-error conjunction tester. Membership probes may themselves
/// reject globally (`None`); the tester accepts iff every probe it makes
/// comes back 1.
pub fn conj_test<M, S, R>(
    mq: &mut M,
    samp: &mut S,
    n: usize,
    eps: Rat,
    params: &ParameterSet,
    rng: &mut R,
) -> bool
where
    M: FnMut(Point) -> Option<bool>,
    S: FnMut() -> Point,
    R: Rng + ?Sized,
{
    // Shift by one satisfying point; the shifted function of a conjunction
    // is an anti-monotone conjunction, and shifting preserves distances to
    // the class.
    let shift = samp();
    let mut mq_shifted = |x: Point| mq(x.xor(shift));
    let mut samp_shifted = || samp().xor(shift);
    anti_monotone_conj_test(&mut mq_shifted, &mut samp_shifted, n, eps, params, rng)
}

/// Tester for anti-monotone conjunctions. Accepts iff every membership
/// probe returns 1.
pub fn anti_monotone_conj_test<M, S, R>(
    mq: &mut M,
    samp: &mut S,
    n: usize,
    eps: Rat,
    params: &ParameterSet,
    rng: &mut R,
) -> bool
where
    M: FnMut(Point) -> Option<bool>,
    S: FnMut() -> Point,
    R: Rng + ?Sized,
{
    let (p1, p2) = conj_rounds(params, eps);
    for _ in 0..p1 {
        let x = samp();
        let y = samp();
        match mq(x.xor(y)) {
            Some(true) => {}
            _ => return false,
        }
    }
    for _ in 0..p2 {
        let x = samp();
        // Uniform y below x: keep each set bit with probability 1/2.
        let coins = Point::new(rng.gen::<u64>(), n);
        let y = Point::new(x.bits() & coins.bits(), n);
        let u = samp();
        match mq(y.xor(u)) {
            Some(true) => {}
            _ => return false,
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConsVerdict {
    Accept,
    /// A phase-1 cross-check failed.
    RejectVerify,
    /// The conjunction test (or a head-membership recombination inside it)
    /// failed.
    RejectConj,
}

/// Full consistency check.
#[allow(clippy::too_many_arguments)]
pub fn cons_check(
    r_set: CoordSet,
    eps: Rat,
    mq_h: &dyn Membership,
    samp_h: &dyn Sampler,
    j_mq: &dyn Membership,
    j_samp: &dyn Sampler,
    params: &ParameterSet,
    rng: &mut ChaCha8Rng,
) -> ConsVerdict {
    let rounds = params.cc_rounds(eps);

    // Phase 1: verify h against the tail simulators.
    for _ in 0..rounds {
        let z = samp_h.draw();
        if !j_mq.query(z) {
            return ConsVerdict::RejectVerify;
        }
        for _ in 0..params.cross_points {
            let v = j_samp.draw();
            if !mq_h.query(z.overwrite(r_set, v)) {
                return ConsVerdict::RejectVerify;
            }
        }
    }
    for _ in 0..rounds {
        let z = samp_h.draw();
        let v = j_samp.draw();
        if !mq_h.query(z.overwrite(r_set, v)) {
            return ConsVerdict::RejectVerify;
        }
    }

    // Phase 2: is the induced head function a conjunction?
    let n = mq_h.n();
    let not_r = r_set.complement(n);
    let conj_eps = eps / Rat::int(10);
    let mut mq_gamma = |alpha: Point| -> Option<bool> {
        match sim_mq_gamma(alpha, mq_h, j_samp, r_set, eps, params) {
            GammaAnswer::One => Some(true),
            GammaAnswer::Reject => None,
        }
    };
    let mut samp_proj = || sim_samp_proj(samp_h, not_r);
    if conj_test(&mut mq_gamma, &mut samp_proj, n, conj_eps, params, rng) {
        ConsVerdict::Accept
    } else {
        ConsVerdict::RejectConj
    }
}

#[cfg(test)]
mod tests {
    use std::rc::Rc;
    use std::sync::Arc;

    use super::*;
    use crate::boolfn::{BoolFn, Dnf, Term, TruthTable};
    use crate::oracle::{MqHandle, SampHandle, SeedTree};

    fn desk() -> ParameterSet {
        ParameterSet::desk(2, Rat::new(1, 4)).unwrap()
    }

    fn oracles_for(f: &dyn BoolFn, seed: u64) -> (Rc<MqHandle>, Rc<SampHandle>) {
        let table = Arc::new(TruthTable::from_fn(f).unwrap());
        let mq = Rc::new(MqHandle::new(table.clone(), "f"));
        let samp = Rc::new(SampHandle::new(&table, SeedTree::new(seed), "f").unwrap());
        (mq, samp)
    }

    #[test]
    fn conj_test_accepts_conjunctions_with_any_satisfying_sampler() {
        // A conjunction with a deliberately skewed satisfying-only sampler
        // still gets accepted with probability 1.
        let params = desk();
        let n = 6;
        let f = Dnf::new(vec![Term::of(&[1, -3])], n).unwrap();
        let table = TruthTable::from_fn(&f).unwrap();
        let support = table.support();
        let mut rng = SeedTree::new(8).rng();
        for trial in 0..200 {
            // Skew: only a sub-slice of the support, round-robin.
            let k = 1 + (trial % (support.len() - 1));
            let slice = &support[..k];
            let mut i = 0usize;
            let mut samp = || {
                i += 1;
                Point::from_index(slice[i % slice.len()] as usize, n)
            };
            let mut probes: Vec<Point> = Vec::new();
            let mut mq = |x: Point| {
                probes.push(x);
                Some(f.eval(x))
            };
            assert!(conj_test(
                &mut mq,
                &mut samp,
                n,
                Rat::new(1, 4),
                &params,
                &mut rng
            ));
            // Robustness: every probe landed on a satisfying point.
            for p in probes {
                assert!(f.eval(p), "probe {p} off support");
            }
        }
    }

    #[test]
    fn conj_test_accepts_singleton_support() {
        let params = desk();
        let n = 4;
        let f = Dnf::new(vec![Term::of(&[1, 2, 3, 4])], n).unwrap();
        let only = Point::parse("1111").unwrap();
        let mut rng = SeedTree::new(9).rng();
        let mut samp = || only;
        let mut mq = |x: Point| Some(f.eval(x));
        for _ in 0..50 {
            assert!(conj_test(
                &mut mq,
                &mut samp,
                n,
                Rat::new(1, 4),
                &params,
                &mut rng
            ));
        }
    }

    #[test]
    fn conj_test_rejects_xor() {
        // XOR on 2 variables has relative distance exactly 1/2 to every
        // conjunction; honest oracles should reject almost surely.
        let params = desk();
        let n = 2;
        let xor = |p: Point| p.get(1) != p.get(2);
        let support = [Point::parse("10").unwrap(), Point::parse("01").unwrap()];
        let mut rng = SeedTree::new(10).rng();
        let mut rejects = 0;
        for _ in 0..500 {
            let mut draw_rng = rng.clone();
            let mut samp = || support[draw_rng.gen_range(0..2)];
            let mut mq = |x: Point| Some(xor(x));
            if !conj_test(&mut mq, &mut samp, n, Rat::new(1, 4), &params, &mut rng) {
                rejects += 1;
            }
        }
        assert!(rejects >= 475, "rejects={rejects}");
    }

    #[test]
    fn gamma_answers_are_one_or_reject_only() {
        let params = desk();
        let n = 4;
        // h = x1 & x3 with R = {3,4}: head x1 on non-R coordinates.
        let f = Dnf::new(vec![Term::of(&[1, 3])], n).unwrap();
        let (mq, _samp) = oracles_for(&f, 3);
        let r_set = CoordSet::from_iter([3, 4]);
        // Tail sampler: uniform over satisfying R-patterns of the tail x3.
        let tail = Dnf::new(vec![Term::of(&[3])], n).unwrap();
        let tail_table = TruthTable::from_fn(&tail).unwrap();
        let tail_support: Vec<u32> = tail_table
            .support()
            .into_iter()
            .filter(|&i| i & !(r_set.mask() as u32) == 0)
            .collect();
        let j_samp =
            SampHandle::from_support(Arc::new(tail_support), n, SeedTree::new(5), "tail").unwrap();

        // alpha satisfying the head: every recombination satisfies h.
        let alpha1 = Point::parse("1000").unwrap();
        assert_eq!(
            sim_mq_gamma(alpha1, mq.as_ref(), &j_samp, r_set, Rat::new(1, 4), &params),
            GammaAnswer::One
        );
        // alpha violating the head: the first recombination fails.
        let alpha0 = Point::parse("0000").unwrap();
        assert_eq!(
            sim_mq_gamma(alpha0, mq.as_ref(), &j_samp, r_set, Rat::new(1, 4), &params),
            GammaAnswer::Reject
        );
    }

    #[test]
    fn projection_sampler() {
        let n = 2;
        let f = Dnf::new(vec![Term::of(&[1, 2])], n).unwrap();
        let (_, samp) = oracles_for(&f, 4);
        // Project to {1}: always "10" (x2 zeroed).
        for _ in 0..20 {
            let p = sim_samp_proj(samp.as_ref(), CoordSet::from_iter([1]));
            assert_eq!(p, Point::parse("10").unwrap());
        }
        // Full-domain projection is the base draw.
        let q = sim_samp_proj(samp.as_ref(), CoordSet::full(n));
        assert_eq!(q, Point::parse("11").unwrap());
    }

    #[test]
    fn cons_check_rejects_dead_tail_mq() {
        // A tail membership simulator that always answers 0 trips the very
        // first phase-1 check, deterministically.
        use std::cell::Cell;
        struct DeadMq {
            calls: Cell<u64>,
        }
        impl Membership for DeadMq {
            fn query(&self, _x: Point) -> bool {
                self.calls.set(self.calls.get() + 1);
                false
            }
            fn calls(&self) -> u64 {
                self.calls.get()
            }
            fn n(&self) -> usize {
                4
            }
        }
        struct ZeroSamp;
        impl Sampler for ZeroSamp {
            fn draw(&self) -> Point {
                Point::zero(4)
            }
            fn calls(&self) -> u64 {
                0
            }
            fn n(&self) -> usize {
                4
            }
        }
        let params = desk();
        let f = Dnf::new(vec![Term::of(&[1])], 4).unwrap();
        let (mq, samp) = oracles_for(&f, 6);
        let dead = DeadMq {
            calls: Cell::new(0),
        };
        let mut rng = SeedTree::new(7).rng();
        let verdict = cons_check(
            CoordSet::from_iter([2, 3, 4]),
            Rat::new(1, 4),
            mq.as_ref(),
            samp.as_ref(),
            &dead,
            &ZeroSamp,
            &params,
            &mut rng,
        );
        assert_eq!(verdict, ConsVerdict::RejectVerify);
        assert_eq!(dead.calls(), 1);
    }
}
