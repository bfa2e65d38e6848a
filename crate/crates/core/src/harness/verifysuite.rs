//! The acceptance checks, runnable both from `dnfrt verify` and from the
//! integration test suite. Each check owns its instances, seeds, and
//! thresholds; statistical checks pin their tolerances here.

use std::rc::Rc;
use std::sync::Arc;

use rand::Rng;

use super::certify::certify_far;
use super::gen::{realize, InstanceKind, InstanceSpec, WidthDist};
use super::runner::{run_experiment, ExperimentConfig};
use super::stats::{binomial_tail_ok, chi_square_p};
use super::structural::{adequate_gap, terms_of_pool};
use super::HarnessError;
use crate::boolfn::{ClosureFn, CoordSet, Dnf, Literal, Point, Rat, Term, TruthTable};
use crate::clustering::{cluster_to_factored, k_clustering};
use crate::learner::{enumerate_dnf_approx, extract, make_j_oracles, BlockOracle, VariableOracleList};
use crate::oracle::{Membership, MqHandle, RandomTape, SampHandle, Sampler, SeedTree};
use crate::params::{Mode, ParameterSet};
use crate::pooling::{find_factored_dnfs, in_pool, test_equivalence, FindOutcome, Pool};

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, pass: bool, detail: String) -> Self {
        CheckOutcome {
            name: name.into(),
            pass,
            detail,
        }
    }
}

/// Run every acceptance check in order.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        criterion_cube_bound(),
        criterion_clustering_suite(),
        criterion_one_sidedness(),
        criterion_learner_exactness(),
        criterion_candidate_soundness(),
        criterion_yes_case(),
        criterion_no_case(),
        criterion_adequacy_gap(),
        criterion_query_accounting(),
        criterion_reproducibility(),
    ]
}

// --------------------------------------------------------------------
// 1. Cube bound
// --------------------------------------------------------------------

/// Exhaustive over the quotient of all (a, b, T) configurations at Hamming
/// distance d <= 16: a configuration is (d, violations of T by b on free
/// coordinates, violations by a on free coordinates, joint violations on
/// fixed coordinates, satisfied fixed literals); the satisfying fraction
/// of the cube and both distances depend only on these. Fractions come
/// from direct enumeration of the cube, and the bound is checked exactly.
pub fn criterion_cube_bound() -> CheckOutcome {
    let mut configs = 0u64;
    let mut checked = 0u64;
    for d in 0..=16usize {
        for fp in 0..=d {
            for fm in 0..=(d - fp) {
                for v in 0..=2usize {
                    for s_extra in 0..=1usize {
                        let n = d + v + s_extra;
                        if n == 0 || n > 16 {
                            continue;
                        }
                        configs += 1;
                        // a = 0^n, b = 1^d 0^(n-d).
                        let mut pos_mask = 0u64;
                        let mut neg_mask = 0u64;
                        for i in 0..fp {
                            neg_mask |= 1 << i; // violated by b
                        }
                        for i in fp..fp + fm {
                            pos_mask |= 1 << i; // violated by a
                        }
                        for i in d..d + v {
                            pos_mask |= 1 << i; // violated by both
                        }
                        for i in d + v..d + v + s_extra {
                            neg_mask |= 1 << i; // satisfied by both
                        }
                        let mut sat = 0u64;
                        for z in 0..(1u64 << d) {
                            if z & pos_mask == pos_mask & ((1 << d) - 1)
                                && z & neg_mask == 0
                                && (pos_mask >> d) == 0
                            {
                                sat += 1;
                            }
                        }
                        // Fixed-coordinate positive literals are never
                        // satisfied (both endpoints are 0 there).
                        if v > 0 {
                            sat = 0;
                        }
                        let cube = 1u64 << d;
                        let dist_a = fm + v;
                        let dist_b = fp + v;
                        let frac = Rat::new(sat, cube);
                        for k in 1..=12usize {
                            if dist_a.max(dist_b) >= k {
                                checked += 1;
                                let bound = Rat::new(1, 1u64 << k);
                                if frac > bound {
                                    return CheckOutcome::new(
                                        "cube-bound",
                                        false,
                                        format!(
                                            "violated at d={d} fp={fp} fm={fm} v={v}: \
                                             frac={frac} > 2^-{k}"
                                        ),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    CheckOutcome::new(
        "cube-bound",
        true,
        format!("{configs} cube configurations, {checked} (config,k) bounds, all exact"),
    )
}

// --------------------------------------------------------------------
// 2. Clustering suite
// --------------------------------------------------------------------

pub fn criterion_clustering_suite() -> CheckOutcome {
    let mut rng = SeedTree::new(0x2222).rng();
    let n = 14usize;
    let instances = 10_000usize;
    let mut table_checks = 0usize;
    for trial in 0..instances {
        let s = 1 + trial % 8;
        let k_param = 1 + (trial / 8) % 4;
        let f = match super::gen::gen_random_dnf(
            n,
            s,
            WidthDist::Uniform { lo: 1, hi: 6 },
            &mut rng,
        ) {
            Ok(f) => f,
            Err(e) => return CheckOutcome::new("clustering-suite", false, e.to_string()),
        };
        let clustering = k_clustering(&f, k_param as u64);
        let w_min = f.min_width().unwrap() as u64;
        let terms = f.terms();

        for cluster in &clustering.clusters {
            let first = &terms[cluster.term_indices[0]];
            let label = &cluster.label;
            // Label size bound.
            let label_size = (label.tstar.width() + label.sstar.len()) as u64;
            if label_size > first.width() as u64 + 4 * (s as u64) * k_param as u64 {
                return CheckOutcome::new(
                    "clustering-suite",
                    false,
                    format!("label size bound violated on {f:?}"),
                );
            }
            if label.sstar.len() as u64 > 16 * (s as u64) * (s as u64) * k_param as u64 {
                return CheckOutcome::new(
                    "clustering-suite",
                    false,
                    format!("|S*| bound violated on {f:?}"),
                );
            }
            if !label.sstar.closed_under_negation() {
                return CheckOutcome::new(
                    "clustering-suite",
                    false,
                    format!("S* not negation-closed on {f:?}"),
                );
            }
        }

        // Pair lemma and corollary over all ordered pairs.
        for i in 0..terms.len() {
            for j in 0..terms.len() {
                if i == j {
                    continue;
                }
                let (a, b) = (&terms[i], &terms[j]);
                let same = clustering.cluster_of(i) == clustering.cluster_of(j);
                if a.width() <= b.width() + k_param
                    && b.minus(a).width() <= k_param
                    && !same
                {
                    return CheckOutcome::new(
                        "clustering-suite",
                        false,
                        format!("co-clustering lemma violated on {f:?} ({i},{j})"),
                    );
                }
                if a.width() as u64 <= w_min + k_param as u64
                    && !same
                    && b.minus(a).width() <= k_param
                {
                    return CheckOutcome::new(
                        "clustering-suite",
                        false,
                        format!("separation corollary violated on {f:?} ({i},{j})"),
                    );
                }
            }
        }

        // Factored form equals the cluster sub-DNF, checked on every 10th
        // instance by full truth tables at n = 14.
        if trial % 10 == 0 {
            table_checks += 1;
            let mu = 16 * s * s * k_param;
            for cluster in &clustering.clusters {
                let fac = match cluster_to_factored(&f, cluster, mu) {
                    Ok(fac) => fac,
                    Err(e) => {
                        return CheckOutcome::new(
                            "clustering-suite",
                            false,
                            format!("factored conversion failed: {e} on {f:?}"),
                        )
                    }
                };
                let sub = f.sub_dnf(&cluster.term_indices);
                let tf = TruthTable::from_fn(&fac).unwrap();
                let ts = TruthTable::from_fn(&sub).unwrap();
                if tf != ts {
                    return CheckOutcome::new(
                        "clustering-suite",
                        false,
                        format!("factored table mismatch on {f:?}"),
                    );
                }
            }
        }
    }
    CheckOutcome::new(
        "clustering-suite",
        true,
        format!("{instances} random DNFs (s<=8, K<=4); {table_checks} full truth-table checks"),
    )
}

// --------------------------------------------------------------------
// 3. One-sidedness
// --------------------------------------------------------------------

pub fn criterion_one_sidedness() -> CheckOutcome {
    let mut rng = SeedTree::new(0x3333).rng();
    let params = ParameterSet::desk(2, Rat::new(1, 4)).unwrap();
    let n = 12usize;

    // Test-equivalence and in-pool on common-term inputs: always true.
    for case in 0..1000usize {
        let s = 1 + case % 3;
        let f = super::gen::gen_random_dnf(n, s, WidthDist::Uniform { lo: 2, hi: 6 }, &mut rng)
            .unwrap();
        let term = &f.terms()[case % f.terms().len()];
        let a = term.force_onto(Point::new(rng.gen(), n));
        let b = term.force_onto(Point::new(rng.gen(), n));
        let mq = MqHandle::from_fn(&f, "f").unwrap();
        if !test_equivalence(a, b, &mq, &params, &mut rng) {
            return CheckOutcome::new(
                "one-sidedness",
                false,
                format!("test_equivalence false on common-term pair, case {case}"),
            );
        }
        let pool = Pool {
            id: 0,
            members: vec![Point::new(rng.gen(), n), b],
            tape: RandomTape::new(SeedTree::new(case as u64), "t"),
            counter: 0,
            heavy: false,
        };
        if !in_pool(a, &pool, &mq, &params) {
            return CheckOutcome::new(
                "one-sidedness",
                false,
                format!("in_pool false despite a shared term, case {case}"),
            );
        }
    }

    // Conjunction tester accepts conjunctions under arbitrary
    // satisfying-only samplers: zero failures over 1000 trials.
    for case in 0..1000usize {
        let w = case % (n + 1);
        let mut vars: Vec<usize> = (1..=n).collect();
        use rand::seq::SliceRandom;
        vars.shuffle(&mut rng);
        vars.truncate(w);
        let lits: Vec<Literal> = vars
            .iter()
            .map(|&v| {
                if rng.gen() {
                    Literal::pos(v)
                } else {
                    Literal::neg(v)
                }
            })
            .collect();
        let c = Dnf::new(vec![Term::new(lits).unwrap()], n).unwrap();
        let table = TruthTable::from_fn(&c).unwrap();
        let support = table.support();
        // Arbitrary satisfying-only sampler: biased toward a random slice.
        let k = 1 + rng.gen_range(0..support.len());
        let slice: Vec<u32> = support[..k].to_vec();
        let mut i = 0usize;
        let mut samp = || {
            i = (i * 7 + 3) % slice.len();
            Point::from_index(slice[i] as usize, n)
        };
        let mut mq = |x: Point| Some(c.eval(x));
        if !crate::conscheck::conj_test(&mut mq, &mut samp, n, Rat::new(1, 4), &params, &mut rng)
        {
            return CheckOutcome::new(
                "one-sidedness",
                false,
                format!("conj_test rejected a conjunction, case {case}"),
            );
        }
    }
    CheckOutcome::new(
        "one-sidedness",
        true,
        "1000 equivalence/pool cases + 1000 conjunction cases, zero failures".into(),
    )
}

// --------------------------------------------------------------------
// 4. Learner exactness
// --------------------------------------------------------------------

fn perfect_list(
    n: usize,
    picks: &[(usize, bool, CoordSet)],
) -> (Rc<VariableOracleList>, Vec<usize>) {
    let entries: Vec<BlockOracle> = picks
        .iter()
        .map(|&(var, positive, block)| {
            let term = if positive {
                Term::of(&[var as i64])
            } else {
                Term::of(&[-(var as i64)])
            };
            let lit_fn = ClosureFn::new(n, move |x: Point| term.eval(x));
            let mq: Rc<dyn Membership> = Rc::new(MqHandle::from_fn(&lit_fn, "lit").unwrap());
            BlockOracle::new(mq, block, Point::zero(n))
        })
        .collect();
    let r_set = picks
        .iter()
        .fold(CoordSet::EMPTY, |acc, &(_, _, b)| acc.union(b));
    let sigma = picks.iter().map(|&(v, _, _)| v).collect();
    (
        Rc::new(VariableOracleList {
            entries,
            r_set,
            n,
        }),
        sigma,
    )
}

pub fn criterion_learner_exactness() -> CheckOutcome {
    let mut rng = SeedTree::new(0x4444).rng();
    let params = ParameterSet::desk(2, Rat::new(1, 4)).unwrap();

    // Extract on perfect lists: equals the witness pattern on 1000 inputs.
    let n = 12usize;
    for case in 0..1000usize {
        let ell = 1 + case % 3;
        let mut coords: Vec<usize> = (1..=n).collect();
        use rand::seq::SliceRandom;
        coords.shuffle(&mut rng);
        let mut picks = Vec::new();
        let mut used = 0;
        for _ in 0..ell {
            let bsize = 1 + rng.gen_range(0..3usize);
            let block = CoordSet::from_iter(coords[used..used + bsize].iter().copied());
            let var = coords[used + rng.gen_range(0..bsize)];
            picks.push((var, rng.gen::<bool>(), block));
            used += bsize;
        }
        let (list, sigma) = perfect_list(n, &picks);
        let w = Point::new(rng.gen(), n);
        let z = extract(&list, w, Rat::new(1, 2), &params, &mut rng);
        let expected: Vec<bool> = sigma.iter().map(|&v| w.get(v)).collect();
        if z != expected {
            return CheckOutcome::new(
                "learner-exactness",
                false,
                format!("extract mismatch on case {case}: {z:?} vs {expected:?}"),
            );
        }
    }

    // Membership simulator matches the remapped table pointwise, |R| <= 12.
    for case in 0..20usize {
        let ell = 1 + case % 3;
        let picks: Vec<(usize, bool, CoordSet)> = (0..ell)
            .map(|i| {
                let base = 1 + i * 4;
                (
                    base + case % 3,
                    case % 2 == 0,
                    CoordSet::from_iter(base..base + 4),
                )
            })
            .collect();
        let (list, sigma) = perfect_list(n, &picks);
        let table = (rng.gen::<u64>() | 1) & ((1u64 << (1 << ell)) - 1);
        let j = make_j_oracles(list, table, &params, SeedTree::new(900 + case as u64)).unwrap();
        for idx in 0..(1usize << n) {
            let x = Point::from_index(idx, n);
            let z_idx: usize = sigma
                .iter()
                .enumerate()
                .map(|(i, &v)| (x.get(v) as usize) << i)
                .sum();
            let expected = (table >> z_idx) & 1 == 1;
            if j.mq.query(x) != expected {
                return CheckOutcome::new(
                    "learner-exactness",
                    false,
                    format!("membership simulator mismatch at {x} (case {case})"),
                );
            }
        }
    }

    // Sampling simulator matches the remapped support distribution,
    // chi-square p > 1e-3 at |R| <= 10.
    let picks = vec![
        (2usize, true, CoordSet::from_iter([1, 2, 3])),
        (5, false, CoordSet::from_iter([4, 5])),
        (7, true, CoordSet::from_iter([6, 7, 8])),
    ];
    let (list, sigma) = perfect_list(10, &picks);
    let r_set = list.r_set;
    let table = 0b10110110u64; // arity 3
    let j = make_j_oracles(list, table, &params, SeedTree::new(1234)).unwrap();
    // Expected: uniform over R-patterns whose sigma-extraction satisfies
    // the table.
    let r_coords: Vec<usize> = r_set.iter().collect();
    let mut satisfying: Vec<u64> = Vec::new();
    for pattern in 0u64..(1 << r_coords.len()) {
        let mut p = Point::zero(10);
        for (bit, &v) in r_coords.iter().enumerate() {
            p = p.with(v, (pattern >> bit) & 1 == 1);
        }
        let z_idx: usize = sigma
            .iter()
            .enumerate()
            .map(|(i, &v)| (p.get(v) as usize) << i)
            .sum();
        if (table >> z_idx) & 1 == 1 {
            satisfying.push(p.bits());
        }
    }
    let draws = 100_000usize;
    let mut counts = std::collections::HashMap::new();
    for _ in 0..draws {
        let p = j.samp.draw();
        *counts.entry(p.bits()).or_insert(0u64) += 1;
    }
    if counts.keys().any(|b| !satisfying.contains(b)) {
        return CheckOutcome::new(
            "learner-exactness",
            false,
            "sampling simulator produced an off-support pattern".into(),
        );
    }
    let observed: Vec<u64> = satisfying.iter().map(|b| *counts.get(b).unwrap_or(&0)).collect();
    let probs = vec![1.0 / satisfying.len() as f64; satisfying.len()];
    let p_value = chi_square_p(&observed, &probs);
    if p_value <= 1e-3 {
        return CheckOutcome::new(
            "learner-exactness",
            false,
            format!("sampling simulator chi-square p = {p_value:.2e}"),
        );
    }
    CheckOutcome::new(
        "learner-exactness",
        true,
        format!(
            "1000 extractions exact; 20 simulators pointwise-exact; sampler chi-square p = {p_value:.3}"
        ),
    )
}

// --------------------------------------------------------------------
// 5. Candidate soundness
// --------------------------------------------------------------------

pub fn criterion_candidate_soundness() -> CheckOutcome {
    let params = ParameterSet::desk(2, Rat::new(1, 4)).unwrap();
    let kappa = params.kappa;
    let big_r = 5usize; // |R| = 5 target coordinates
    // All candidate <= r-term, mu-junta DNF tables over {0,1}^R.
    let mut checked = 0u64;
    for mu in 1..=4usize {
        for r in 1..=2usize {
            // Nearest-DNF search universe: terms over R with the junta
            // constraint enforced per DNF.
            let (term_tables, term_vars) = terms_over(big_r);
            for ell in 0..=mu {
                let set = enumerate_dnf_approx(ell, r, mu, kappa, &params).unwrap();
                for &jt in &set.tables {
                    // A handful of injective maps [ell] -> R.
                    for sigma in injections(ell, big_r) {
                        let j_sigma = remap_table(jt, ell, &sigma, big_r);
                        checked += 1;
                        if !within_kappa_of_some_dnf(
                            j_sigma,
                            r,
                            mu,
                            kappa,
                            &term_tables,
                            &term_vars,
                        ) {
                            return CheckOutcome::new(
                                "candidate-soundness",
                                false,
                                format!(
                                    "candidate {jt:#x} (ell={ell}, r={r}, mu={mu}) remapped by \
                                     {sigma:?} is farther than kappa from every DNF"
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    CheckOutcome::new(
        "candidate-soundness",
        true,
        format!("{checked} (candidate, injection) pairs within kappa of some junta DNF"),
    )
}

fn terms_over(n: usize) -> (Vec<u64>, Vec<CoordSet>) {
    let size = 1usize << n;
    let mut tables = Vec::new();
    let mut vars = Vec::new();
    let mut state = vec![0u8; n];
    loop {
        let mut t = (1u64 << size) - 1;
        let mut vs = CoordSet::EMPTY;
        for v in 0..n {
            let mask: u64 = {
                let mut m = 0;
                for i in 0..size {
                    if (i >> v) & 1 == 1 {
                        m |= 1 << i;
                    }
                }
                m
            };
            match state[v] {
                0 => {}
                1 => {
                    t &= mask;
                    vs.insert(v + 1);
                }
                _ => {
                    t &= !mask & ((1u64 << size) - 1);
                    vs.insert(v + 1);
                }
            }
        }
        tables.push(t);
        vars.push(vs);
        let mut pos = 0;
        loop {
            if pos == n {
                return (tables, vars);
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

fn injections(ell: usize, n: usize) -> Vec<Vec<usize>> {
    // Identity, reversed, and two fixed scrambles, truncated to ell.
    let base: Vec<Vec<usize>> = vec![
        (1..=n).collect(),
        (1..=n).rev().collect(),
        vec![3, 1, 5, 2, 4],
        vec![2, 5, 1, 4, 3],
    ];
    base.into_iter()
        .map(|v| v.into_iter().take(ell).collect())
        .filter(|v: &Vec<usize>| v.len() == ell)
        .collect()
}

/// J over {0,1}^ell remapped by sigma into {0,1}^n: J_sigma(x) =
/// J(x_{sigma(1)}, ..., x_{sigma(ell)}).
fn remap_table(jt: u64, ell: usize, sigma: &[usize], n: usize) -> u64 {
    let mut out = 0u64;
    for idx in 0..(1usize << n) {
        let mut z = 0usize;
        for (i, &v) in sigma.iter().enumerate().take(ell) {
            z |= ((idx >> (v - 1)) & 1) << i;
        }
        if (jt >> z) & 1 == 1 {
            out |= 1 << idx;
        }
    }
    out
}

fn within_kappa_of_some_dnf(
    j_sigma: u64,
    r: usize,
    mu: usize,
    kappa: Rat,
    term_tables: &[u64],
    term_vars: &[CoordSet],
) -> bool {
    let sup = j_sigma.count_ones() as u64;
    let close = |g: u64| -> bool {
        if j_sigma == g {
            return true;
        }
        if sup == 0 {
            return false;
        }
        let sym = (j_sigma ^ g).count_ones() as u64;
        Rat::new(sym, sup) <= kappa
    };
    // Empty DNF.
    if close(0) {
        return true;
    }
    for i in 0..term_tables.len() {
        if term_vars[i].len() <= mu && close(term_tables[i]) {
            return true;
        }
        if r >= 2 {
            for j in i..term_tables.len() {
                if term_vars[i].union(term_vars[j]).len() <= mu
                    && close(term_tables[i] | term_tables[j])
                {
                    return true;
                }
            }
        }
    }
    false
}

// --------------------------------------------------------------------
// 6/7. End-to-end
// --------------------------------------------------------------------

fn yes_configs() -> Vec<(ExperimentConfig, &'static str)> {
    let mut out = Vec::new();
    for (s, n, trials_per, instances) in
        [(1usize, 16usize, 20u64, 5u64), (2, 14, 10, 10), (3, 12, 10, 10)]
    {
        for i in 0..instances {
            let cfg = ExperimentConfig {
                instance: InstanceSpec {
                    kind: InstanceKind::RandomDnf,
                    n,
                    s,
                    width: WidthDist::Uniform { lo: 2, hi: 4 },
                    seed: 1000 + s as u64 * 100 + i,
                    var_pool: Some(6),
                },
                s,
                eps: Rat::new(1, 4),
                mode: Mode::Desk,
                overrides: vec![],
                trials: trials_per,
                master_seed: 500 + i,
            };
            out.push((cfg, "yes"));
        }
    }
    out
}

pub fn criterion_yes_case() -> CheckOutcome {
    let mut accepts = 0u64;
    let mut trials = 0u64;
    let mut violations = 0u64;
    for (cfg, _) in yes_configs() {
        match run_experiment(&cfg, None) {
            Ok(rep) => {
                accepts += rep.accepts;
                trials += rep.trials;
                violations += rep.budget_violations;
            }
            Err(e) => return CheckOutcome::new("yes-case", false, e.to_string()),
        }
    }
    let pass = trials == 300 && binomial_tail_ok(accepts, trials, 2.0 / 3.0, 0.05);
    CheckOutcome::new(
        "yes-case",
        pass && violations == 0,
        format!(
            "accepted {accepts}/{trials} random s-term DNFs (one-sided binomial vs 2/3 at 95%); \
             budget violations {violations}"
        ),
    )
}

fn no_configs() -> Vec<ExperimentConfig> {
    let mut out = Vec::new();
    for (kind, s, n, trials, seeds) in [
        (InstanceKind::FarXor, 1usize, 8usize, 15u64, 5u64),
        (InstanceKind::FarXor, 2, 8, 15, 5),
        (InstanceKind::FarRandomDensity, 1, 7, 15, 5),
        (InstanceKind::FarRandomDensity, 2, 7, 15, 5),
    ] {
        for i in 0..seeds {
            out.push(ExperimentConfig {
                instance: InstanceSpec {
                    kind,
                    n,
                    s,
                    width: WidthDist::Fixed(3),
                    seed: 2000 + s as u64 * 10 + i,
                    var_pool: None,
                },
                s,
                eps: Rat::new(1, 4),
                mode: Mode::Desk,
                overrides: vec![],
                trials,
                master_seed: 700 + i,
            });
        }
    }
    out
}

pub fn criterion_no_case() -> CheckOutcome {
    let mut rejects = 0u64;
    let mut trials = 0u64;
    let mut min_dist = Rat::int(1000);
    for cfg in no_configs() {
        let inst = match realize(&cfg.instance) {
            Ok(i) => i,
            Err(e) => return CheckOutcome::new("no-case", false, e.to_string()),
        };
        // Ground truth: certified far before testing.
        let cert = match certify_far(&inst.table, cfg.s) {
            Ok(c) => c,
            Err(e) => return CheckOutcome::new("no-case", false, e.to_string()),
        };
        if cert.min_reldist < cfg.eps {
            return CheckOutcome::new(
                "no-case",
                false,
                format!(
                    "instance {:?} not far: certified reldist {}",
                    cfg.instance, cert.min_reldist
                ),
            );
        }
        min_dist = min_dist.min(cert.min_reldist);
        match run_experiment(&cfg, None) {
            Ok(rep) => {
                rejects += rep.trials - rep.accepts;
                trials += rep.trials;
            }
            Err(e) => return CheckOutcome::new("no-case", false, e.to_string()),
        }
    }
    let pass = trials == 300 && binomial_tail_ok(rejects, trials, 2.0 / 3.0, 0.05);
    CheckOutcome::new(
        "no-case",
        pass,
        format!(
            "rejected {rejects}/{trials} certified-far instances \
             (min certified reldist {min_dist}; one-sided binomial vs 2/3 at 95%)"
        ),
    )
}

// --------------------------------------------------------------------
// 8. Adequacy gap
// --------------------------------------------------------------------

pub fn criterion_adequacy_gap() -> CheckOutcome {
    let params = ParameterSet::desk(2, Rat::new(1, 4)).unwrap();
    let mut sim_acc = 0u64;
    let mut per_acc = 0u64;
    let mut trials = 0u64;
    for i in 0..8u64 {
        let spec = InstanceSpec {
            kind: InstanceKind::RandomDnf,
            n: 12,
            s: 2,
            width: WidthDist::Uniform { lo: 2, hi: 4 },
            seed: 3000 + i,
            var_pool: Some(6),
        };
        let inst = match realize(&spec) {
            Ok(i) => i,
            Err(e) => return CheckOutcome::new("adequacy-gap", false, e.to_string()),
        };
        let seed = SeedTree::new(4000 + i);
        let mq = Rc::new(MqHandle::new(inst.table.clone(), "f"));
        let samp = Rc::new(SampHandle::new(&inst.table, seed.child("samp"), "f").unwrap());
        let report = find_factored_dnfs(&mq, &samp, &params, seed.child("pools"));
        let FindOutcome::Oracles(pairs) = report.outcome else {
            continue;
        };
        let Some(pair) = pairs.first() else { continue };
        let f = inst.dnf.as_ref().unwrap();
        let covered = terms_of_pool(f, &pair.pool.members);
        let hp = f.sub_dnf(&covered);
        let hp_table = Arc::new(TruthTable::from_fn(&hp).unwrap());
        let r = covered.len().max(1);
        match adequate_gap(
            pair,
            &hp_table,
            r,
            params.mu,
            params.fact_eps,
            &params,
            seed.child("gap"),
            50,
        ) {
            Ok(est) => {
                sim_acc += est.sim_accepts;
                per_acc += est.perfect_accepts;
                trials += est.trials;
            }
            Err(e) => return CheckOutcome::new("adequacy-gap", false, e.to_string()),
        }
    }
    if trials < 400 {
        return CheckOutcome::new(
            "adequacy-gap",
            false,
            format!("only {trials} paired trials completed"),
        );
    }
    let p1 = sim_acc as f64 / trials as f64;
    let p2 = per_acc as f64 / trials as f64;
    let gap = (p1 - p2).abs();
    let se = ((p1 * (1.0 - p1) + p2 * (1.0 - p2)) / trials as f64).sqrt();
    let pass = gap <= 0.15 + 1.645 * se;
    CheckOutcome::new(
        "adequacy-gap",
        pass,
        format!(
            "|{p1:.3} - {p2:.3}| = {gap:.3} over {trials} paired trials \
             (tolerance 0.15 at 95%, desk relaxation of the 0.1 contract)"
        ),
    )
}

// --------------------------------------------------------------------
// 9. Query accounting / bench
// --------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub s: usize,
    pub trials: u64,
    pub mean_calls: f64,
    pub max_calls: u64,
    pub budget: u64,
    pub violations: u64,
}

pub fn bench_rows(trials_per_s: u64) -> Result<Vec<BenchRow>, HarnessError> {
    let mut rows = Vec::new();
    for s in 1..=3usize {
        let cfg = ExperimentConfig {
            instance: InstanceSpec {
                kind: InstanceKind::RandomDnf,
                n: 12,
                s,
                width: WidthDist::Uniform { lo: 2, hi: 4 },
                seed: 6000 + s as u64,
                var_pool: Some(6),
            },
            s,
            eps: Rat::new(1, 4),
            mode: Mode::Desk,
            overrides: vec![],
            trials: trials_per_s,
            master_seed: 6100 + s as u64,
        };
        let rep = run_experiment(&cfg, None)?;
        let total: u64 = rep
            .records
            .iter()
            .map(|r| r.mq_calls + r.samp_calls)
            .sum();
        let max = rep
            .records
            .iter()
            .map(|r| r.mq_calls + r.samp_calls)
            .max()
            .unwrap_or(0);
        rows.push(BenchRow {
            s,
            trials: rep.trials,
            mean_calls: total as f64 / rep.trials.max(1) as f64,
            max_calls: max,
            budget: rep.budget,
            violations: rep.budget_violations,
        });
    }
    Ok(rows)
}

pub fn criterion_query_accounting() -> CheckOutcome {
    let rows = match bench_rows(20) {
        Ok(r) => r,
        Err(e) => return CheckOutcome::new("query-accounting", false, e.to_string()),
    };
    let violations: u64 = rows.iter().map(|r| r.violations).sum();
    let monotone = rows.windows(2).all(|w| w[0].mean_calls <= w[1].mean_calls);
    let detail = rows
        .iter()
        .map(|r| {
            format!(
                "s={}: mean={:.0} max={} budget={}",
                r.s, r.mean_calls, r.max_calls, r.budget
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    CheckOutcome::new(
        "query-accounting",
        violations == 0 && monotone,
        format!("{detail}; violations={violations}; monotone={monotone}"),
    )
}

// --------------------------------------------------------------------
// 10. Reproducibility
// --------------------------------------------------------------------

pub fn criterion_reproducibility() -> CheckOutcome {
    let cfg = ExperimentConfig {
        instance: InstanceSpec {
            kind: InstanceKind::RandomDnf,
            n: 10,
            s: 2,
            width: WidthDist::Uniform { lo: 2, hi: 4 },
            seed: 7000,
            var_pool: Some(6),
        },
        s: 2,
        eps: Rat::new(1, 4),
        mode: Mode::Desk,
        overrides: vec![],
        trials: 5,
        master_seed: 7100,
    };
    let dir = std::env::temp_dir().join("dnfrt-verify-repro");
    let _ = std::fs::remove_dir_all(&dir);
    let run = |name: &str| -> Result<(String, Vec<String>), HarnessError> {
        let base = dir.join(name);
        run_experiment(&cfg, Some(&base))?;
        let json = std::fs::read_to_string(base.with_extension("json")).map_err(|err| {
            HarnessError::Io {
                path: base.display().to_string(),
                err,
            }
        })?;
        let csv = std::fs::read_to_string(base.with_extension("csv"))
            .map_err(|err| HarnessError::Io {
                path: base.display().to_string(),
                err,
            })?
            .lines()
            .map(|l| l.rsplit_once(',').map(|(h, _)| h.to_string()).unwrap_or_default())
            .collect();
        Ok((json, csv))
    };
    let result = (|| -> Result<bool, HarnessError> {
        let a = run("a")?;
        let b = run("b")?;
        Ok(a.0 == b.0 && a.1 == b.1)
    })();
    let _ = std::fs::remove_dir_all(&dir);
    match result {
        Ok(true) => CheckOutcome::new(
            "reproducibility",
            true,
            "two runs byte-identical (JSON; CSV up to wall-time column)".into(),
        ),
        Ok(false) => CheckOutcome::new("reproducibility", false, "reports differ".into()),
        Err(e) => CheckOutcome::new("reproducibility", false, e.to_string()),
    }
}

