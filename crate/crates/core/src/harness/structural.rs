//! Exact evaluation of the analysis predicates used by lemma-level tests:
//! stability of a coordinate set, the dominating function, cube density,
//! term attraction, and the paired accept-frequency gap between simulated
//! and perfect oracles.

use std::rc::Rc;
use std::sync::Arc;

use crate::boolfn::{
    ClosureFn, CoordSet, Dnf, FactoredDnf, Point, Rat, Subcube, Term, TruthTable,
};
use crate::oracle::{Membership, MqHandle, SampHandle, Sampler, SeedTree};
use crate::params::ParameterSet;
use crate::pooling::PoolOracles;
use crate::tester::test_factored_dnf;

use super::HarnessError;

/// Indices of the terms of `f` satisfied by at least one of the points.
pub fn terms_of_pool(f: &Dnf, members: &[Point]) -> Vec<usize> {
    (0..f.terms().len())
        .filter(|&i| members.iter().any(|m| f.terms()[i].eval(*m)))
        .collect()
}

/// Exact stability check for a factored shape: the head variables must
/// avoid R, and the off-R portion of the structured variables must be
/// essentially fixed over the support. Returns (stable, modal pattern,
/// exact disagreement probability).
pub fn is_stable(
    fac: &FactoredDnf,
    table: &TruthTable,
    r_set: CoordSet,
    xi: Rat,
) -> (bool, Option<Point>, Rat) {
    let n = table.n();
    let head_vars = fac.head().vars();
    if !head_vars.intersect(r_set).is_empty() {
        return (false, None, Rat::ONE);
    }
    let v_set = r_set
        .complement(n)
        .intersect(fac.tail_vars().union(head_vars));
    let support = table.support();
    if support.is_empty() {
        return (false, None, Rat::ONE);
    }
    let mut counts: std::collections::HashMap<u64, u64> = std::collections::HashMap::new();
    for &idx in &support {
        *counts.entry(idx as u64 & v_set.mask()).or_insert(0) += 1;
    }
    let (&modal_bits, &modal_count) = counts
        .iter()
        .max_by_key(|(bits, count)| (**count, std::cmp::Reverse(**bits)))
        .unwrap();
    let total = support.len() as u64;
    let pr = Rat::new(total - modal_count, total);
    (pr <= xi, Some(Point::new(modal_bits, n)), pr)
}

/// The function induced on R by pinning the structured off-R variables to
/// `u` (and the irrelevant off-R variables to 0). Materialized over the
/// ambient dimension; it reads only R coordinates.
pub fn dominating_function(
    table: &TruthTable,
    r_set: CoordSet,
    v_set: CoordSet,
    u: Point,
) -> Result<TruthTable, HarnessError> {
    let n = table.n();
    let off_r = r_set.complement(n);
    let base = Point::zero(n).overwrite(v_set, u);
    let f = ClosureFn::new(n, move |x: Point| {
        table.get_index(x.overwrite(off_r, base).index())
    });
    Ok(TruthTable::from_fn(&f)?)
}

/// Exact satisfying density of `Cube(a,b)`.
pub fn cube_density(table: &TruthTable, a: Point, b: Point) -> Rat {
    let cube = Subcube::new(a, b);
    let pts = cube.enumerate();
    let sat = pts.iter().filter(|p| table.get_index(p.index())).count() as u64;
    Rat::new(sat, pts.len() as u64)
}

/// Dense-cube predicate at an explicit threshold.
pub fn is_dense(table: &TruthTable, a: Point, b: Point, threshold: Rat) -> bool {
    cube_density(table, a, b) >= threshold
}

/// Exact attraction predicate: the fraction of satisfying points of the
/// term that span a dense cube with some pool member.
pub fn is_attracted(
    f_table: &TruthTable,
    term: &Term,
    members: &[Point],
    density_threshold: Rat,
    attraction_threshold: Rat,
) -> bool {
    let n = f_table.n();
    let mut total = 0u64;
    let mut attracted = 0u64;
    for idx in 0..f_table.size() {
        let b = Point::from_index(idx, n);
        if !term.eval(b) {
            continue;
        }
        total += 1;
        if members
            .iter()
            .any(|a| is_dense(f_table, *a, b, density_threshold))
        {
            attracted += 1;
        }
    }
    total > 0 && Rat::new(attracted, total) >= attraction_threshold
}

#[derive(Clone, Debug)]
pub struct AdequateGapEstimate {
    pub sim_accepts: u64,
    pub perfect_accepts: u64,
    pub trials: u64,
    pub gap: f64,
    /// 95% half-width of the gap estimate (normal approximation).
    pub ci_half: f64,
}

/// Paired accept-frequency comparison of a factored test run against the
/// pool simulators versus perfect oracles for the pool's ground-truth
/// sub-DNF.
#[allow(clippy::too_many_arguments)]
pub fn adequate_gap(
    pair: &PoolOracles,
    h_table: &Arc<TruthTable>,
    r: usize,
    mu: usize,
    eps: Rat,
    params: &ParameterSet,
    seed: SeedTree,
    trials: u64,
) -> Result<AdequateGapEstimate, HarnessError> {
    let mut sim_accepts = 0u64;
    let mut perfect_accepts = 0u64;
    for t in 0..trials {
        let sim_seed = seed.child_indexed("sim", t);
        let mq_s: Rc<dyn Membership> = pair.mq.clone();
        let samp_s: Rc<dyn Sampler> = pair.samp.clone();
        if test_factored_dnf(&mq_s, &samp_s, r, mu, eps, params, sim_seed)?.accept {
            sim_accepts += 1;
        }

        let perf_seed = seed.child_indexed("perfect", t);
        let mq_p: Rc<dyn Membership> = Rc::new(MqHandle::new(h_table.clone(), "h"));
        let samp_p: Rc<dyn Sampler> = Rc::new(
            SampHandle::new(h_table, perf_seed.child("samp"), "h")
                .map_err(HarnessError::BoolFn)?,
        );
        if test_factored_dnf(&mq_p, &samp_p, r, mu, eps, params, perf_seed)?.accept {
            perfect_accepts += 1;
        }
    }
    let p1 = sim_accepts as f64 / trials as f64;
    let p2 = perfect_accepts as f64 / trials as f64;
    let se = ((p1 * (1.0 - p1) + p2 * (1.0 - p2)) / trials as f64).sqrt();
    Ok(AdequateGapEstimate {
        sim_accepts,
        perfect_accepts,
        trials,
        gap: (p1 - p2).abs(),
        ci_half: 1.645 * se,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::BoolFn;

    #[test]
    fn dense_degenerate_cube() {
        // Cube(a,a) with f(a)=1 is dense for any threshold <= 1.
        let f = Dnf::new(vec![Term::of(&[1])], 4).unwrap();
        let t = TruthTable::from_fn(&f).unwrap();
        let a = Point::parse("1000").unwrap();
        assert!(is_dense(&t, a, a, Rat::ONE));
        assert_eq!(cube_density(&t, a, a), Rat::ONE);
    }

    #[test]
    fn stability_of_exact_factored_shape() {
        // h = x5 & (x1 | ~x2) with R = {1,2,3}: V = {5}, u = 1, and the
        // disagreement probability is exactly 0.
        let fac = FactoredDnf::new(
            Term::of(&[5]),
            vec![Term::of(&[1]), Term::of(&[-2])],
            6,
            2,
            4,
        )
        .unwrap();
        let table = TruthTable::from_fn(&fac).unwrap();
        let r_set = CoordSet::from_iter([1, 2, 3]);
        let (stable, u, pr) = is_stable(&fac, &table, r_set, Rat::new(1, 50));
        assert!(stable);
        assert!(pr.is_zero());
        assert!(u.unwrap().get(5));
    }

    #[test]
    fn dominating_function_matches_tail() {
        let fac = FactoredDnf::new(
            Term::of(&[5]),
            vec![Term::of(&[1]), Term::of(&[-2])],
            6,
            2,
            4,
        )
        .unwrap();
        let table = TruthTable::from_fn(&fac).unwrap();
        let r_set = CoordSet::from_iter([1, 2, 3]);
        let (_, u, _) = is_stable(&fac, &table, r_set, Rat::new(1, 50));
        let v_set = r_set.complement(6).intersect(
            fac.tail_vars().union(fac.head().vars()),
        );
        let dom = dominating_function(&table, r_set, v_set, u.unwrap()).unwrap();
        // The dominating function is the tail, read on R coordinates.
        let tail = Dnf::new(vec![Term::of(&[1]), Term::of(&[-2])], 6).unwrap();
        for idx in 0..64 {
            let x = Point::from_index(idx, 6);
            let x_r = Point::zero(6).overwrite(r_set, x);
            assert_eq!(dom.eval(x_r), tail.eval(x_r), "at {x_r}");
        }
    }

    #[test]
    fn attraction_when_terms_overlap_heavily() {
        // f = x1 | (x1&x2): the second term's satisfying points all form
        // density-1 cubes with any member satisfying both terms.
        let f = Dnf::new(vec![Term::of(&[1]), Term::of(&[1, 2])], 4).unwrap();
        let t = TruthTable::from_fn(&f).unwrap();
        let member = Point::parse("1100").unwrap();
        assert!(is_attracted(
            &t,
            &Term::of(&[1, 2]),
            &[member],
            Rat::new(1, 64),
            Rat::new(1, 2),
        ));
        // A far term is not attracted to a far member under a high bar.
        let g = Dnf::new(vec![Term::of(&[1, 2, 3, 4]), Term::of(&[-1, -2, -3, -4])], 4).unwrap();
        let tg = TruthTable::from_fn(&g).unwrap();
        assert!(!is_attracted(
            &tg,
            &Term::of(&[-1, -2, -3, -4]),
            &[Point::parse("1111").unwrap()],
            Rat::new(1, 2),
            Rat::new(1, 2),
        ));
    }
}
