//! Pool construction over samples of `f^{-1}(1)` and the pool-backed
//! membership/sampling simulators.
//!
//! Pools are built in five phases: draw samples and connect pairs whose
//! spanned cube looks full of satisfying assignments, reject when more
//! than `s` components appear, merge components that a fresh sample links,
//! estimate each pool's weight and drop the light ones, and finally wrap
//! each surviving pool in a simulator pair.
//!
//! The membership simulator is deterministic given its pool and tape:
//! cube draws are keyed by (query point, member, repetition), so it
//! computes a fixed Boolean function of its input.

use std::cell::Cell;
use std::rc::Rc;

use rand::Rng;
use serde::Serialize;

use crate::boolfn::{Point, Subcube};
use crate::oracle::{Membership, MqHandle, RandomTape, SampHandle, Sampler, SeedTree};
use crate::params::ParameterSet;

/// A subset of `f^{-1}(1)` with its per-point randomness source. Members
/// are kept in insertion order; the weight counter is the phase-4 estimate.
#[derive(Clone)]
pub struct Pool {
    pub id: usize,
    pub members: Vec<Point>,
    pub tape: RandomTape,
    pub counter: u64,
    pub heavy: bool,
}

#[derive(Serialize)]
pub struct PoolDump {
    pub id: usize,
    pub member_points: Vec<String>,
    pub counter: u64,
    pub heavy: bool,
}

impl Pool {
    pub fn dump(&self) -> PoolDump {
        PoolDump {
            id: self.id,
            member_points: self
                .members
                .iter()
                .map(|p| format!("{:x}", p.bits()))
                .collect(),
            counter: self.counter,
            heavy: self.heavy,
        }
    }
}

/// True iff any of `eq_samples` uniform draws from `Cube(a,b)` satisfies
/// `f`. One-sided: when `a` and `b` jointly satisfy a term of a DNF `f`,
/// every point of the cube satisfies `f`, so the result is True with
/// probability 1. Exits on the first satisfying draw; the remaining draws
/// cannot change the verdict.
pub fn test_equivalence<R: Rng + ?Sized>(
    a: Point,
    b: Point,
    mq: &dyn Membership,
    params: &ParameterSet,
    rng: &mut R,
) -> bool {
    let cube = Subcube::new(a, b);
    for _ in 0..params.eq_samples {
        let z = cube.sample(rng).point;
        if mq.query(z) {
            return true;
        }
    }
    false
}

/// Deterministic pool-membership probe: walk members in insertion order;
/// for each member draw `in_pool_reps` cube samples with tape randomness
/// keyed by (query point, member, repetition) and succeed on the first
/// member whose samples all satisfy `f`. A failing member is abandoned at
/// its first unsatisfying sample; keyed draws mean the skipped samples
/// could not have altered any later draw or the verdict.
pub fn in_pool(a: Point, pool: &Pool, mq: &dyn Membership, params: &ParameterSet) -> bool {
    for b in &pool.members {
        let cube = Subcube::new(a, *b);
        let mut all = true;
        for rep in 0..params.in_pool_reps {
            let z = cube
                .sample_with_bits(pool.tape.word2(a, *b, rep as u64))
                .point;
            if !mq.query(z) {
                all = false;
                break;
            }
        }
        if all {
            return true;
        }
    }
    false
}

/// Pool-backed membership simulator: 0 wherever `f` is 0, otherwise the
/// deterministic `in_pool` verdict.
pub struct PoolMq {
    pool: Rc<Pool>,
    base: Rc<MqHandle>,
    params: ParameterSet,
    calls: Cell<u64>,
}

impl PoolMq {
    pub fn new(pool: Rc<Pool>, base: Rc<MqHandle>, params: ParameterSet) -> Self {
        PoolMq {
            pool,
            base,
            params,
            calls: Cell::new(0),
        }
    }

    pub fn pool(&self) -> &Rc<Pool> {
        &self.pool
    }

    pub fn base_calls(&self) -> u64 {
        self.base.calls()
    }
}

impl Membership for PoolMq {
    fn query(&self, x: Point) -> bool {
        self.calls.set(self.calls.get() + 1);
        if !self.base.query(x) {
            return false;
        }
        in_pool(x, &self.pool, self.base.as_ref(), &self.params)
    }

    fn calls(&self) -> u64 {
        self.calls.get()
    }

    fn n(&self) -> usize {
        self.base.n()
    }
}

/// Pool-backed sampling simulator: redraw from `SAMP(f)` until the
/// membership simulator accepts, with a bounded number of attempts and the
/// all-zero string as the give-up default. Default events are counted so
/// harness code can observe them.
pub struct PoolSamp {
    mq_star: Rc<PoolMq>,
    base_samp: Rc<SampHandle>,
    reps: u32,
    calls: Cell<u64>,
    defaults: Cell<u64>,
}

impl PoolSamp {
    pub fn new(mq_star: Rc<PoolMq>, base_samp: Rc<SampHandle>, reps: u32) -> Self {
        PoolSamp {
            mq_star,
            base_samp,
            reps,
            calls: Cell::new(0),
            defaults: Cell::new(0),
        }
    }

    pub fn default_draws(&self) -> u64 {
        self.defaults.get()
    }
}

impl Sampler for PoolSamp {
    fn draw(&self) -> Point {
        self.calls.set(self.calls.get() + 1);
        for _ in 0..self.reps {
            let z = self.base_samp.draw();
            if self.mq_star.query(z) {
                return z;
            }
        }
        self.defaults.set(self.defaults.get() + 1);
        Point::zero(self.base_samp.n())
    }

    fn calls(&self) -> u64 {
        self.calls.get()
    }

    fn n(&self) -> usize {
        self.base_samp.n()
    }
}

/// One returned simulator pair.
pub struct PoolOracles {
    pub pool: Rc<Pool>,
    pub mq: Rc<PoolMq>,
    pub samp: Rc<PoolSamp>,
}

/// Rejection is a normal outcome of pool construction, distinct from
/// oracle failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RejectPhase {
    TooManyPools,
    UncoveredSample,
}

pub enum FindOutcome {
    Reject(RejectPhase),
    Oracles(Vec<PoolOracles>),
}

impl FindOutcome {
    pub fn is_reject(&self) -> bool {
        matches!(self, FindOutcome::Reject(_))
    }
}

/// All pools as of the last completed phase, plus the outcome.
pub struct FindReport {
    pub pools: Vec<Pool>,
    pub outcome: FindOutcome,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            // Smaller index wins so component ids follow draw order.
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
        }
    }
}

/// Five-phase pool construction. Returns one simulator pair per heavy
/// pool, or a rejection.
pub fn find_factored_dnfs(
    mq: &Rc<MqHandle>,
    samp: &Rc<SampHandle>,
    params: &ParameterSet,
    seed: SeedTree,
) -> FindReport {
    let mut rng = seed.child("equivalence").rng();
    let make_pools = |groups: Vec<Vec<Point>>| -> Vec<Pool> {
        groups
            .into_iter()
            .enumerate()
            .map(|(id, members)| Pool {
                id,
                members,
                tape: RandomTape::new(seed.child_indexed("str_pool", id as u64), "in-pool"),
                counter: 0,
                heavy: false,
            })
            .collect()
    };

    // Phase 1: building pools. Samples dedup to their first occurrence; a
    // repeated point is trivially in its own component already.
    let mut sample_set: Vec<Point> = Vec::with_capacity(params.pool_samples);
    for _ in 0..params.pool_samples {
        let z = samp.draw();
        if !sample_set.contains(&z) {
            sample_set.push(z);
        }
    }
    let m = sample_set.len();
    let mut uf = UnionFind::new(m);
    for i in 0..m {
        for j in (i + 1)..m {
            if test_equivalence(sample_set[i], sample_set[j], mq.as_ref(), params, &mut rng) {
                uf.union(i, j);
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut pools: Vec<Vec<Point>> = Vec::new();
    for i in 0..m {
        let r = uf.find(i);
        match roots.iter().position(|&x| x == r) {
            Some(id) => pools[id].push(sample_set[i]),
            None => {
                roots.push(r);
                pools.push(vec![sample_set[i]]);
            }
        }
    }

    // Phase 2: sanity check.
    if pools.len() > params.s {
        return FindReport {
            pools: make_pools(pools),
            outcome: FindOutcome::Reject(RejectPhase::TooManyPools),
        };
    }

    // Phase 3: merging pools. A fresh batch per pass; the first sample (in
    // draw order) that links two pools (in id order) triggers the merge and
    // a restart of the phase. Merges strictly reduce the pool count, so at
    // most s-1 passes merge.
    'restart: loop {
        if pools.len() <= 1 {
            break;
        }
        let batch: Vec<Point> = (0..params.merge_samples).map(|_| samp.draw()).collect();
        for z in &batch {
            let mut linked: Vec<usize> = Vec::new();
            for (pi, pool) in pools.iter().enumerate() {
                if pool
                    .iter()
                    .any(|a| test_equivalence(*a, *z, mq.as_ref(), params, &mut rng))
                {
                    linked.push(pi);
                    if linked.len() == 2 {
                        break;
                    }
                }
            }
            if linked.len() == 2 {
                let absorbed = pools.remove(linked[1]);
                pools[linked[0]].extend(absorbed);
                continue 'restart;
            }
        }
        break;
    }

    // Phase 4: removing low-weight pools. Tapes are fixed per pool before
    // any weighing so the membership verdicts are functions of the input.
    let mut finalized = make_pools(pools);
    for _ in 0..params.omega {
        let z = samp.draw();
        let mut any = false;
        for pool in &mut finalized {
            if in_pool(z, pool, mq.as_ref(), params) {
                pool.counter += 1;
                any = true;
            }
        }
        if !any {
            return FindReport {
                pools: finalized,
                outcome: FindOutcome::Reject(RejectPhase::UncoveredSample),
            };
        }
    }
    for pool in &mut finalized {
        pool.heavy = params.is_heavy(pool.counter);
    }

    // Phase 5: returning oracles for the heavy pools.
    let mut oracles = Vec::new();
    for pool in finalized.iter().filter(|p| p.heavy) {
        let pool_rc = Rc::new(pool.clone());
        let mq_star = Rc::new(PoolMq::new(pool_rc.clone(), mq.clone(), params.clone()));
        let samp_star = Rc::new(PoolSamp::new(
            mq_star.clone(),
            samp.clone(),
            params.samp_star_reps,
        ));
        oracles.push(PoolOracles {
            pool: pool_rc,
            mq: mq_star,
            samp: samp_star,
        });
    }
    FindReport {
        pools: finalized,
        outcome: FindOutcome::Oracles(oracles),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::boolfn::{Dnf, Rat, Term, TruthTable};

    fn setup(terms: Vec<Term>, n: usize, seed: u64) -> (Rc<MqHandle>, Rc<SampHandle>) {
        let f = Dnf::new(terms, n).unwrap();
        let table = Arc::new(TruthTable::from_fn(&f).unwrap());
        let mq = Rc::new(MqHandle::new(table.clone(), "f"));
        let samp = Rc::new(SampHandle::new(&table, SeedTree::new(seed), "f").unwrap());
        (mq, samp)
    }

    fn desk(s: usize) -> ParameterSet {
        ParameterSet::desk(s, Rat::new(1, 4)).unwrap()
    }

    #[test]
    fn test_equivalence_one_sided() {
        let (mq, _) = setup(vec![Term::of(&[1, 2])], 4, 3);
        let params = desk(2);
        let mut rng = SeedTree::new(9).rng();
        let a = Point::parse("1100").unwrap();
        let b = Point::parse("1111").unwrap();
        for _ in 0..100 {
            assert!(test_equivalence(a, b, mq.as_ref(), &params, &mut rng));
        }
        // a = b satisfying: the cube is {a}.
        assert!(test_equivalence(a, a, mq.as_ref(), &params, &mut rng));
    }

    #[test]
    fn test_equivalence_false_on_dead_cube() {
        let (mq, _) = setup(vec![Term::of(&[1, 2])], 4, 3);
        let params = desk(2);
        let mut rng = SeedTree::new(10).rng();
        // Both points have x1=0, so the whole cube misses the term.
        let a = Point::parse("0000").unwrap();
        let b = Point::parse("0011").unwrap();
        for _ in 0..50 {
            assert!(!test_equivalence(a, b, mq.as_ref(), &params, &mut rng));
        }
    }

    #[test]
    fn in_pool_one_sided_and_deterministic() {
        let (mq, _) = setup(vec![Term::of(&[1]), Term::of(&[3, 4])], 4, 3);
        let params = desk(2);
        let tape = RandomTape::new(SeedTree::new(77), "t");
        let b = Point::parse("1010").unwrap(); // satisfies x1
        let pool = Pool {
            id: 0,
            members: vec![b],
            tape,
            counter: 0,
            heavy: false,
        };
        // a shares the term x1 with b: always true.
        let a = Point::parse("1100").unwrap();
        assert!(in_pool(a, &pool, mq.as_ref(), &params));
        // Singleton pool {a} with f(a)=1: the cube is {a}.
        let pool_a = Pool {
            id: 1,
            members: vec![a],
            tape,
            counter: 0,
            heavy: false,
        };
        assert!(in_pool(a, &pool_a, mq.as_ref(), &params));
        // Determinism: repeated calls agree bit for bit.
        let c = Point::parse("0011").unwrap();
        let first = in_pool(c, &pool, mq.as_ref(), &params);
        for _ in 0..10 {
            assert_eq!(in_pool(c, &pool, mq.as_ref(), &params), first);
        }
    }

    #[test]
    fn in_pool_false_when_every_cube_dead() {
        // Pool member off the support: every cube it spans with a probe
        // sharing its zeroed term coordinates stays entirely off-support.
        let (mq, _) = setup(vec![Term::of(&[1, 2])], 6, 4);
        let params = desk(2);
        let pool = Pool {
            id: 0,
            members: vec![Point::parse("000000").unwrap()],
            tape: RandomTape::new(SeedTree::new(5), "t"),
            counter: 0,
            heavy: false,
        };
        // Probe agrees with the member on x1=0: no point of the cube can
        // satisfy x1&x2, so every sampled bit is 0.
        let probe = Point::parse("001111").unwrap();
        for _ in 0..20 {
            assert!(!in_pool(probe, &pool, mq.as_ref(), &params));
        }
    }

    #[test]
    fn single_conjunction_yields_one_pool_no_reject() {
        let (mq, samp) = setup(vec![Term::of(&[1, 2])], 8, 21);
        let params = desk(1);
        let report = find_factored_dnfs(&mq, &samp, &params, SeedTree::new(100));
        assert!(!report.outcome.is_reject());
        assert_eq!(report.pools.len(), 1);
        match report.outcome {
            FindOutcome::Oracles(list) => assert_eq!(list.len(), 1),
            FindOutcome::Reject(_) => unreachable!(),
        }
    }

    #[test]
    fn mq_star_semantics() {
        let (mq, samp) = setup(vec![Term::of(&[1, 2]), Term::of(&[7, 8])], 8, 22);
        let params = desk(2);
        let report = find_factored_dnfs(&mq, &samp, &params, SeedTree::new(101));
        let FindOutcome::Oracles(list) = report.outcome else {
            panic!("unexpected reject");
        };
        assert!(!list.is_empty());
        for po in &list {
            // f(x)=0 forces 0.
            assert!(!po.mq.query(Point::parse("00000000").unwrap()));
            // A pool member satisfies a covered term, so the answer is 1.
            assert!(po.mq.query(po.pool.members[0]));
        }
    }

    #[test]
    fn mq_star_query_cost_bounds() {
        let (mq, samp) = setup(vec![Term::of(&[1, 2])], 8, 23);
        let params = desk(1);
        let report = find_factored_dnfs(&mq, &samp, &params, SeedTree::new(102));
        let FindOutcome::Oracles(list) = report.outcome else {
            panic!("unexpected reject")
        };
        let po = &list[0];
        let p = po.pool.members.len();
        let before = po.mq.base_calls();
        // Probe satisfying the unique term: every member shares it, so the
        // first member accepts after exactly in_pool_reps cube draws.
        let probe = Point::parse("11010101").unwrap();
        assert!(po.mq.query(probe));
        let cost = po.mq.base_calls() - before;
        assert_eq!(cost, 1 + params.in_pool_reps as u64);
        assert!(cost <= 1 + params.in_pool_reps as u64 * p as u64);
    }

    #[test]
    fn counters_monotone() {
        let (mq, samp) = setup(vec![Term::of(&[1])], 4, 2);
        let params = desk(1);
        let mut rng = SeedTree::new(1).rng();
        let mut last = mq.calls();
        for _ in 0..10 {
            let a = samp.draw();
            let b = samp.draw();
            test_equivalence(a, b, mq.as_ref(), &params, &mut rng);
            assert!(mq.calls() >= last);
            last = mq.calls();
        }
    }
}
