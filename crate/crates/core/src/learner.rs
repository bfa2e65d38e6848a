//! The implicit learner for the factored-DNF tail.
//!
//! Given a coordinate set R on which samples disagree, the learner finds
//! relevant blocks of R by hybrid probes and binary search, extracting for
//! each a restricted sub-oracle that is (close to) a single literal. It
//! then prunes a precomputed candidate set of marginal-majority
//! approximators against extracted samples, verifies that each sub-oracle
//! really behaves like a literal, and wraps the surviving candidate in
//! membership/sampling simulators over `{0,1}^R`.

use std::cell::{Cell, RefCell};
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::rc::Rc;
use std::sync::{Arc, LazyLock, Mutex};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::boolfn::{CoordSet, Point, Rat};
use crate::oracle::{Membership, Sampler};
use crate::params::ParameterSet;

#[derive(Debug, Error)]
pub enum LearnerError {
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("candidate has empty support")]
    EmptySupport,
    #[error("cache file: {0}")]
    Cache(String),
}

/// One restricted sub-oracle `g(y) = h(y ∘ v outside block)`, realized by a
/// stored witness point. Every query costs one base membership call.
#[derive(Clone)]
pub struct BlockOracle {
    base: Rc<dyn Membership>,
    block: CoordSet,
    witness: Point,
}

impl BlockOracle {
    pub fn new(base: Rc<dyn Membership>, block: CoordSet, witness: Point) -> Self {
        BlockOracle {
            base,
            block,
            witness,
        }
    }

    pub fn block(&self) -> CoordSet {
        self.block
    }

    pub fn witness(&self) -> Point {
        self.witness
    }

    /// Evaluate with the block coordinates taken from `y`.
    pub fn query(&self, y: Point) -> bool {
        self.base.query(self.witness.overwrite(self.block, y))
    }
}

/// An ordered list of block oracles over pairwise-disjoint blocks of R.
pub struct VariableOracleList {
    pub entries: Vec<BlockOracle>,
    pub r_set: CoordSet,
    /// Ambient dimension of the underlying function.
    pub n: usize,
}

impl VariableOracleList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn blocks_disjoint(&self) -> bool {
        let mut seen = CoordSet::EMPTY;
        for e in &self.entries {
            if !seen.intersect(e.block()).is_empty() {
                return false;
            }
            seen = seen.union(e.block());
        }
        true
    }
}

/// Coordinates on which the samples disagree.
pub fn compute_r(samples: &[Point]) -> CoordSet {
    if samples.is_empty() {
        return CoordSet::EMPTY;
    }
    let first = samples[0];
    let mut diff = 0u64;
    for s in samples {
        diff |= s.bits() ^ first.bits();
    }
    CoordSet::from_mask(diff)
}

/// Hybrid binary search over blocks. `a` satisfies `h`, `b` is `a` with
/// the blocks listed in `live` overwritten by `b`'s values and `h(b) = 0`.
/// Returns (position in `live`, witness v with h(v)=1, partner with the
/// found block overwritten and h=0), using at most ceil(log2(live.len()))+1
/// membership calls.
pub fn block_binary_search(
    mq: &dyn Membership,
    blocks: &[CoordSet],
    live: &[usize],
    a: Point,
    b: Point,
) -> (usize, Point, Point) {
    debug_assert!(!live.is_empty());
    let mut lo = 0usize;
    let mut hi = live.len();
    let mut a = a;
    let mut b = b;
    while hi - lo > 1 {
        let mid = lo + (hi - lo).div_ceil(2);
        // c = a with the first-half blocks set according to b.
        let mut first_half = CoordSet::EMPTY;
        for &bi in &live[lo..mid] {
            first_half = first_half.union(blocks[bi]);
        }
        let c = a.overwrite(first_half, b);
        if mq.query(c) {
            // h(c) = h(a) = 1: the flip lives in the second half.
            a = c;
            lo = mid;
        } else {
            b = c;
            hi = mid;
        }
    }
    (lo, a, b)
}

/// Outcome of a learner phase; rejection is a verdict, not an error.
pub enum LearnOutcome<T> {
    Reject,
    Found(T),
}

/// Relevant-block discovery. Draws a satisfying sample and a fresh uniform
/// assignment on the unexplored part of R; on a mismatch, binary search
/// pins a new relevant block and its witness, and the idle counter resets.
/// Stops after `t_star` consecutive quiet rounds, rejecting if more than
/// `mu` blocks turn up.
pub fn approximate(
    mq: &Rc<dyn Membership>,
    samp: &Rc<dyn Sampler>,
    r_set: CoordSet,
    params: &ParameterSet,
    rng: &mut ChaCha8Rng,
) -> LearnOutcome<VariableOracleList> {
    let n = mq.n();
    // Random tau-way partition of R.
    let tau = params.tau.max(1);
    let mut blocks: Vec<CoordSet> = vec![CoordSet::EMPTY; tau];
    for v in r_set.iter() {
        let b = rng.gen_range(0..tau);
        blocks[b].insert(v);
    }

    let mut entries: Vec<BlockOracle> = Vec::new();
    let mut found = CoordSet::EMPTY;
    let mut live: Vec<usize> = (0..tau).filter(|&i| !blocks[i].is_empty()).collect();
    let mut t = 0u64;
    while t <= params.t_star {
        let z = samp.draw();
        let open = r_set.minus(found);
        let w = Point::new(rng.gen::<u64>(), n);
        let probe = z.overwrite(open, w);
        t += 1;
        if !mq.query(probe) {
            let (pos, v, partner) = block_binary_search(mq.as_ref(), &blocks, &live, z, probe);
            let bi = live.remove(pos);
            let block = blocks[bi];
            entries.push(BlockOracle::new(mq.clone(), block, v));
            let _ = partner;
            found = found.union(block);
            t = 0;
            if entries.len() > params.mu {
                return LearnOutcome::Reject;
            }
        }
    }
    LearnOutcome::Found(VariableOracleList { entries, r_set, n })
}

/// Per-entry majority vote on which half of the block carries the relevant
/// variable; with perfect literal oracles the output is deterministic and
/// equals the witness pattern of `w` at the relevant coordinates.
pub fn extract<R: Rng + ?Sized>(
    list: &VariableOracleList,
    w: Point,
    delta: Rat,
    params: &ParameterSet,
    rng: &mut R,
) -> Vec<bool> {
    let rounds = params.extract_rounds(delta);
    let mut z = Vec::with_capacity(list.len());
    for entry in &list.entries {
        let block = entry.block();
        let y1 = CoordSet::from_mask(block.mask() & w.bits());
        let y0 = block.minus(y1);
        let mut g0 = 0u32;
        let mut g1 = 0u32;
        for _ in 0..rounds {
            let coins = Point::new(rng.gen::<u64>(), list.n);
            let q1 = entry.query(coins);
            let q2 = entry.query(coins.flipped_on(y0));
            if q1 != q2 {
                g0 += 1;
            } else {
                g1 += 1;
            }
        }
        z.push(g0 <= g1);
    }
    z
}

fn bits_to_index(z: &[bool]) -> usize {
    z.iter()
        .enumerate()
        .fold(0usize, |acc, (i, &b)| acc | ((b as usize) << i))
}

/// A set of candidate truth tables over `{0,1}^ell` (tables packed into a
/// `u64`, so `ell <= 6`). Tables are kept sorted by the point-0-first
/// lexicographic order used for tie-breaking.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub ell: usize,
    pub r: usize,
    pub mu: usize,
    pub kappa: Rat,
    pub tables: Vec<u64>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn contains(&self, table: u64) -> bool {
        self.tables.iter().any(|&t| t == table)
    }
}

/// Point-0-first lexicographic key: smaller means the first differing
/// point's value is 0.
fn lex_key(table: u64, ell: usize) -> u64 {
    table.reverse_bits() >> (64 - (1u32 << ell) as u64).max(0)
}

fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// All term truth tables over `{0,1}^mu` (each variable absent, positive,
/// or negated), including the empty term (constant 1).
fn term_tables(mu: usize) -> Vec<u64> {
    let size = 1usize << mu;
    let var_mask: Vec<u64> = (0..mu)
        .map(|v| {
            let mut m = 0u64;
            for i in 0..size {
                if (i >> v) & 1 == 1 {
                    m |= 1 << i;
                }
            }
            m
        })
        .collect();
    let full = low_mask(size);
    let mut out = Vec::with_capacity(3usize.pow(mu as u32));
    let mut state = vec![0u8; mu];
    loop {
        let mut t = full;
        for v in 0..mu {
            match state[v] {
                0 => {}
                1 => t &= var_mask[v],
                _ => t &= !var_mask[v] & full,
            }
        }
        out.push(t);
        // ternary counter
        let mut pos = 0;
        loop {
            if pos == mu {
                return out;
            }
            state[pos] += 1;
            if state[pos] < 3 {
                break;
            }
            state[pos] = 0;
            pos += 1;
        }
    }
}

/// Prefix-majority compression of a table over `{0,1}^mu` to its first
/// `ell` coordinates: for each prefix, the majority value over suffixes,
/// with exact ties resolved to 1. Returns (full-arity table, compressed
/// table over `{0,1}^ell`).
fn prefix_majority(table: u64, stride_masks: &[u64], suffix_count: u32) -> (u64, u64) {
    let mut maj_full = 0u64;
    let mut maj_low = 0u64;
    for (p, &mask) in stride_masks.iter().enumerate() {
        let ones = (table & mask).count_ones();
        if 2 * ones >= suffix_count {
            maj_full |= mask;
            maj_low |= 1 << p;
        }
    }
    (maj_full, maj_low)
}

fn stride_masks(ell: usize, mu: usize) -> Vec<u64> {
    let prefixes = 1usize << ell;
    let suffixes = 1usize << (mu - ell);
    (0..prefixes)
        .map(|p| {
            let mut m = 0u64;
            for q in 0..suffixes {
                m |= 1 << (p + (q << ell));
            }
            m
        })
        .collect()
}

/// Exact inclusion test: reldist(table, approx) <= kappa/2, i.e.
/// 2 * |sym diff| * kappa.den <= kappa.num * |support|.
fn within_half_kappa(table: u64, approx: u64, kappa: Rat) -> bool {
    if table == approx {
        return true;
    }
    let sym = (table ^ approx).count_ones() as u128;
    let sup = table.count_ones() as u128;
    if sup == 0 {
        return false;
    }
    2 * sym * kappa.den() as u128 <= kappa.num() as u128 * sup
}

/// Enumerate the candidate set for arity `ell`: the distinct compressed
/// tables of every DNF with at most `r` terms over `{0,1}^mu` whose
/// prefix-majority approximation is within relative distance `kappa/2`.
pub fn enumerate_dnf_approx(
    ell: usize,
    r: usize,
    mu: usize,
    kappa: Rat,
    params: &ParameterSet,
) -> Result<Arc<CandidateSet>, LearnerError> {
    if mu > params.enum_mu_cap || mu > 6 {
        return Err(LearnerError::CapExceeded(format!(
            "mu {mu} over cap {}",
            params.enum_mu_cap.min(6)
        )));
    }
    if r > params.enum_r_cap {
        return Err(LearnerError::CapExceeded(format!(
            "r {r} over cap {}",
            params.enum_r_cap
        )));
    }
    if ell > mu {
        return Err(LearnerError::CapExceeded(format!("ell {ell} over mu {mu}")));
    }

    type Key = (usize, usize, usize, u64, u64);
    static CACHE: LazyLock<Mutex<BTreeMap<Key, Arc<CandidateSet>>>> =
        LazyLock::new(|| Mutex::new(BTreeMap::new()));
    let key = (ell, r, mu, kappa.num(), kappa.den());
    if let Some(hit) = CACHE.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }

    let masks = stride_masks(ell, mu);
    let suffix_count = 1u32 << (mu - ell);
    let ell_mask = low_mask(1 << ell);
    let terms = term_tables(mu);
    let mut seen: std::collections::HashSet<u64> = std::collections::HashSet::new();

    let mut consider = |table: u64| {
        let (maj_full, maj_low) = prefix_majority(table, &masks, suffix_count);
        if within_half_kappa(table, maj_full, kappa) {
            seen.insert(maj_low & ell_mask);
        }
    };

    consider(0); // the empty disjunction
    for i in 0..terms.len() {
        consider(terms[i]);
        if r >= 2 {
            for j in (i + 1)..terms.len() {
                let tij = terms[i] | terms[j];
                consider(tij);
                if r >= 3 {
                    for k in (j + 1)..terms.len() {
                        consider(tij | terms[k]);
                    }
                }
            }
        }
    }

    let mut tables: Vec<u64> = seen.into_iter().collect();
    tables.sort_by_key(|&t| lex_key(t, ell));
    let set = Arc::new(CandidateSet {
        ell,
        r,
        mu,
        kappa,
        tables,
    });
    CACHE.lock().unwrap().insert(key, set.clone());
    Ok(set)
}

/// Serialize a candidate set: a header line with exact rationals, then one
/// hex table per line in stored order.
pub fn save_candidates<W: Write>(set: &CandidateSet, out: &mut W) -> std::io::Result<()> {
    writeln!(
        out,
        "ell={} r={} mu={} kappa={}",
        set.ell, set.r, set.mu, set.kappa
    )?;
    for t in &set.tables {
        writeln!(out, "{t:016x}")?;
    }
    Ok(())
}

pub fn load_candidates<R: BufRead>(input: R) -> Result<CandidateSet, LearnerError> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| LearnerError::Cache("empty file".into()))?
        .map_err(|e| LearnerError::Cache(e.to_string()))?;
    let mut ell = None;
    let mut r = None;
    let mut mu = None;
    let mut kappa = None;
    for tok in header.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| LearnerError::Cache(format!("bad header token {tok:?}")))?;
        match k {
            "ell" => ell = v.parse().ok(),
            "r" => r = v.parse().ok(),
            "mu" => mu = v.parse().ok(),
            "kappa" => kappa = v.parse().ok(),
            _ => return Err(LearnerError::Cache(format!("unknown header key {k:?}"))),
        }
    }
    let (ell, r, mu, kappa) = (
        ell.ok_or_else(|| LearnerError::Cache("missing ell".into()))?,
        r.ok_or_else(|| LearnerError::Cache("missing r".into()))?,
        mu.ok_or_else(|| LearnerError::Cache("missing mu".into()))?,
        kappa.ok_or_else(|| LearnerError::Cache("missing kappa".into()))?,
    );
    let mut tables = Vec::new();
    for line in lines {
        let line = line.map_err(|e| LearnerError::Cache(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        tables.push(
            u64::from_str_radix(line, 16)
                .map_err(|e| LearnerError::Cache(format!("bad table line: {e}")))?,
        );
    }
    Ok(CandidateSet {
        ell,
        r,
        mu,
        kappa,
        tables,
    })
}

/// Prune the candidate set against extracted samples; return the survivor
/// with the fewest satisfying assignments (ties to the lexicographically
/// smallest table), or reject if nothing survives.
pub fn find_candidate(
    samp: &Rc<dyn Sampler>,
    list: &VariableOracleList,
    candidates: &CandidateSet,
    params: &ParameterSet,
    rng: &mut ChaCha8Rng,
) -> LearnOutcome<u64> {
    let mut alive: Vec<u64> = candidates.tables.clone();
    for _ in 0..params.eta {
        if alive.is_empty() {
            break;
        }
        let w = samp.draw();
        let z = extract(list, w, Rat::new(1, 2), params, rng);
        let idx = bits_to_index(&z);
        alive.retain(|t| (t >> idx) & 1 == 1);
    }
    alive
        .into_iter()
        .min_by_key(|&t| (t.count_ones(), lex_key(t, candidates.ell)))
        .map_or(LearnOutcome::Reject, LearnOutcome::Found)
}

/// One-sided junta test under the uniform distribution over `domain`:
/// always accepts a k-junta; an eps-far function is rejected with
/// probability at least 1-delta. Relevant blocks are certified by hybrid
/// flips, so a k-junta can never produce more than k of them.
pub fn uniform_junta_test<F, R>(
    g: F,
    domain: CoordSet,
    ambient_n: usize,
    k: usize,
    eps: Rat,
    delta: Rat,
    params: &ParameterSet,
    rng: &mut R,
) -> bool
where
    F: Fn(Point) -> bool,
    R: Rng + ?Sized,
{
    let tau = (params.junta_c_blocks * k * k).max(1);
    let mut blocks: Vec<CoordSet> = vec![CoordSet::EMPTY; tau];
    for v in domain.iter() {
        let b = rng.gen_range(0..tau);
        blocks[b].insert(v);
    }
    let mut live: Vec<usize> = (0..tau).filter(|&i| !blocks[i].is_empty()).collect();
    let mut found_count = 0usize;
    let mut found = CoordSet::EMPTY;
    let rounds = params.junta_rounds(k, eps, delta);
    for _ in 0..rounds {
        if live.is_empty() {
            break;
        }
        let x = Point::new(rng.gen::<u64>(), ambient_n);
        let w = Point::new(rng.gen::<u64>(), ambient_n);
        let open = domain.minus(found);
        let hybrid = x.overwrite(open, w);
        let gx = g(x);
        if gx != g(hybrid) {
            // Certified flip: binary search for one responsible block.
            let (a, b) = if gx {
                (x, hybrid)
            } else {
                (hybrid, x)
            };
            let probe =
                |p: Point| -> bool { g(p) };
            let (pos, _, _) = binary_search_blocks_fn(&probe, &blocks, &live, a, b);
            let bi = live.remove(pos);
            found = found.union(blocks[bi]);
            found_count += 1;
            if found_count > k {
                return false;
            }
        }
    }
    true
}

fn binary_search_blocks_fn<F: Fn(Point) -> bool>(
    g: &F,
    blocks: &[CoordSet],
    live: &[usize],
    a: Point,
    b: Point,
) -> (usize, Point, Point) {
    let mut lo = 0usize;
    let mut hi = live.len();
    let mut a = a;
    let mut b = b;
    while hi - lo > 1 {
        let mid = lo + (hi - lo).div_ceil(2);
        let mut first_half = CoordSet::EMPTY;
        for &bi in &live[lo..mid] {
            first_half = first_half.union(blocks[bi]);
        }
        let c = a.overwrite(first_half, b);
        if g(c) {
            a = c;
            lo = mid;
        } else {
            b = c;
            hi = mid;
        }
    }
    (lo, a, b)
}

/// Check that every sub-oracle behaves like a literal: the one-sided junta
/// test at k=1, then antipodal probes that any literal passes identically.
pub fn check_lit<R: Rng + ?Sized>(
    list: &VariableOracleList,
    params: &ParameterSet,
    rng: &mut R,
) -> bool {
    for entry in &list.entries {
        let block = entry.block();
        let ok = uniform_junta_test(
            |p| entry.query(p),
            block,
            list.n,
            1,
            Rat::new(1, 30),
            Rat::new(1, 100),
            params,
            rng,
        );
        if !ok {
            return false;
        }
        for _ in 0..10 {
            let a = Point::new(rng.gen::<u64>(), list.n);
            if entry.query(a) == entry.query(a.flipped_on(block)) {
                return false;
            }
        }
    }
    true
}

/// Membership simulator for the remapped candidate: extract, then a table
/// lookup.
pub struct JMq {
    list: Rc<VariableOracleList>,
    table: u64,
    params: ParameterSet,
    rng: RefCell<ChaCha8Rng>,
    calls: Cell<u64>,
}

impl Membership for JMq {
    fn query(&self, x: Point) -> bool {
        self.calls.set(self.calls.get() + 1);
        let mut rng = self.rng.borrow_mut();
        let z = extract(&self.list, x, self.params.kappa, &self.params, &mut *rng);
        (self.table >> bits_to_index(&z)) & 1 == 1
    }

    fn calls(&self) -> u64 {
        self.calls.get()
    }

    fn n(&self) -> usize {
        self.list.n
    }
}

/// Sampling simulator for the remapped candidate: draw a uniform
/// assignment on R and a satisfying pattern of the table, then flip whole
/// blocks wherever the extracted pattern disagrees with the target.
pub struct JSamp {
    list: Rc<VariableOracleList>,
    support: Vec<u64>,
    params: ParameterSet,
    rng: RefCell<ChaCha8Rng>,
    calls: Cell<u64>,
}

impl Sampler for JSamp {
    fn draw(&self) -> Point {
        self.calls.set(self.calls.get() + 1);
        let mut rng = self.rng.borrow_mut();
        let n = self.list.n;
        let r_set = self.list.r_set;
        let coins = Point::new(rng.gen::<u64>(), n);
        let mut y = Point::zero(n).overwrite(r_set, coins);
        let z = self.support[rng.gen_range(0..self.support.len())];
        let x = extract(&self.list, y, self.params.kappa, &self.params, &mut *rng);
        for (i, entry) in self.list.entries.iter().enumerate() {
            if x[i] != ((z >> i) & 1 == 1) {
                y = y.flipped_on(entry.block());
            }
        }
        y
    }

    fn calls(&self) -> u64 {
        self.calls.get()
    }

    fn n(&self) -> usize {
        self.list.n
    }
}

/// Trivial pair for the no-relevant-blocks case: the all-1 function over
/// `{0,1}^R`.
pub struct AllOneMq {
    n: usize,
    calls: Cell<u64>,
}

impl Membership for AllOneMq {
    fn query(&self, _x: Point) -> bool {
        self.calls.set(self.calls.get() + 1);
        true
    }
    fn calls(&self) -> u64 {
        self.calls.get()
    }
    fn n(&self) -> usize {
        self.n
    }
}

pub struct AllOneSamp {
    n: usize,
    r_set: CoordSet,
    rng: RefCell<ChaCha8Rng>,
    calls: Cell<u64>,
}

impl Sampler for AllOneSamp {
    fn draw(&self) -> Point {
        self.calls.set(self.calls.get() + 1);
        let coins = Point::new(self.rng.borrow_mut().gen::<u64>(), self.n);
        Point::zero(self.n).overwrite(self.r_set, coins)
    }
    fn calls(&self) -> u64 {
        self.calls.get()
    }
    fn n(&self) -> usize {
        self.n
    }
}

/// What the learner hands to the consistency checker.
pub struct JOracles {
    pub mq: Rc<dyn Membership>,
    pub samp: Rc<dyn Sampler>,
    /// (arity, table) of the candidate behind the simulators; arity 0 with
    /// table 1 is the all-1 case.
    pub ell: usize,
    pub table: u64,
}

pub fn make_j_oracles(
    list: Rc<VariableOracleList>,
    table: u64,
    params: &ParameterSet,
    seed: crate::oracle::SeedTree,
) -> Result<JOracles, LearnerError> {
    let ell = list.len();
    let support: Vec<u64> = (0..(1u64 << ell))
        .filter(|z| (table >> z) & 1 == 1)
        .collect();
    if support.is_empty() {
        return Err(LearnerError::EmptySupport);
    }
    let mq = Rc::new(JMq {
        list: list.clone(),
        table,
        params: params.clone(),
        rng: RefCell::new(seed.child("j-mq").rng()),
        calls: Cell::new(0),
    });
    let samp = Rc::new(JSamp {
        list,
        support,
        params: params.clone(),
        rng: RefCell::new(seed.child("j-samp").rng()),
        calls: Cell::new(0),
    });
    Ok(JOracles {
        mq,
        samp,
        ell,
        table,
    })
}

pub fn make_all_one_oracles(r_set: CoordSet, n: usize, seed: crate::oracle::SeedTree) -> JOracles {
    JOracles {
        mq: Rc::new(AllOneMq {
            n,
            calls: Cell::new(0),
        }),
        samp: Rc::new(AllOneSamp {
            n,
            r_set,
            rng: RefCell::new(seed.child("one-samp").rng()),
            calls: Cell::new(0),
        }),
        ell: 0,
        table: 1,
    }
}

/// The full learner: relevant blocks, candidate pruning, literal checks,
/// then simulators for the surviving candidate. Rejection from any phase
/// propagates.
pub fn dnf_learner(
    r_set: CoordSet,
    mq: &Rc<dyn Membership>,
    samp: &Rc<dyn Sampler>,
    r: usize,
    params: &ParameterSet,
    seed: crate::oracle::SeedTree,
) -> Result<LearnOutcome<JOracles>, LearnerError> {
    let mut rng = seed.child("learner").rng();
    let list = match approximate(mq, samp, r_set, params, &mut rng) {
        LearnOutcome::Reject => return Ok(LearnOutcome::Reject),
        LearnOutcome::Found(l) => l,
    };
    if list.is_empty() {
        return Ok(LearnOutcome::Found(make_all_one_oracles(
            r_set,
            mq.n(),
            seed.child("all-one"),
        )));
    }
    let candidates = enumerate_dnf_approx(list.len(), r, params.mu, params.kappa, params)?;
    let table = match find_candidate(samp, &list, &candidates, params, &mut rng) {
        LearnOutcome::Reject => return Ok(LearnOutcome::Reject),
        LearnOutcome::Found(t) => t,
    };
    if !check_lit(&list, params, &mut rng) {
        return Ok(LearnOutcome::Reject);
    }
    if table == 0 {
        // A candidate with no satisfying pattern cannot back a sampler;
        // treat like an empty survivor set.
        return Ok(LearnOutcome::Reject);
    }
    let oracles = make_j_oracles(Rc::new(list), table, params, seed.child("sims"))?;
    Ok(LearnOutcome::Found(oracles))
}
