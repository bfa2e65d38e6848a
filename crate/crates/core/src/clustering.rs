//! Deterministic K-clustering of a DNF's terms, with cluster labels, and
//! conversion of clusters to factored form.
//!
//! This is a reference/verification component: the tester never calls it,
//! but its outputs define the ground truth that the pool-construction stage
//! is checked against.

use serde::Serialize;

use crate::boolfn::{BoolFnError, Dnf, FactoredDnf, LiteralSet, Term};

/// A cluster's label: the literals shared by every member term, and the
/// negation-closed set of literals appearing in some but not all members.
#[derive(Clone, Debug, Serialize)]
pub struct ClusterLabel {
    pub tstar: Term,
    pub sstar: LiteralSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct Cluster {
    /// Indices into the input DNF's term list, in insertion order.
    pub term_indices: Vec<usize>,
    pub label: ClusterLabel,
}

#[derive(Clone, Debug, Serialize)]
pub struct Clustering {
    pub clusters: Vec<Cluster>,
    pub k_param: u64,
}

impl Clustering {
    /// The cluster index containing term `t`, if clustered.
    pub fn cluster_of(&self, t: usize) -> Option<usize> {
        self.clusters
            .iter()
            .position(|c| c.term_indices.contains(&t))
    }
}

/// Deterministic greedy clustering. Clusters start from the first
/// not-yet-clustered term in canonical order (smallest width, then
/// lexicographic, then input index) and absorb any remaining term with at
/// most `2K` literals outside the current `T* ∪ S*`, updating the label as
/// terms join: literals leaving the shared part and literals new to the
/// joining term enter `S*` with both polarities.
pub fn k_clustering(f: &Dnf, k_param: u64) -> Clustering {
    let terms = f.terms();
    let mut remaining: Vec<usize> = (0..terms.len()).collect();
    let mut clusters = Vec::new();

    // Canonical pick: smallest term, ties by index.
    let pick_first = |pool: &[usize], pred: &dyn Fn(usize) -> bool| -> Option<usize> {
        pool.iter()
            .copied()
            .filter(|&i| pred(i))
            .min_by(|&a, &b| terms[a].cmp(&terms[b]).then(a.cmp(&b)))
    };

    while !remaining.is_empty() {
        let seed = pick_first(&remaining, &|_| true).unwrap();
        remaining.retain(|&i| i != seed);
        let mut indices = vec![seed];
        let mut tstar = terms[seed].clone();
        let mut sstar = LiteralSet::default();

        loop {
            let qualifies = |i: usize| {
                let outside = terms[i]
                    .literals()
                    .iter()
                    .filter(|l| !tstar.contains(**l) && !sstar.contains(**l))
                    .count() as u64;
                outside <= 2 * k_param
            };
            let Some(next) = pick_first(&remaining, &qualifies) else {
                break;
            };
            remaining.retain(|&i| i != next);
            // Label update, both assignments against the pre-update T*.
            let joining = &terms[next];
            for l in tstar.sym_diff(joining).iter() {
                sstar.insert(l);
                sstar.insert(l.negated());
            }
            tstar = tstar.intersect(joining);
            indices.push(next);
        }

        clusters.push(Cluster {
            term_indices: indices,
            label: ClusterLabel { tstar, sstar },
        });
    }

    Clustering { clusters, k_param }
}

/// Per-term width tags relative to the minimum width. Narrow and medium
/// overlap by definition; a term can be none of the three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WidthClass {
    pub narrow: bool,
    pub medium: bool,
    pub wide: bool,
}

/// narrow: width in [w_min, w_min+alpha]; medium: [w_min, w_min+2*alpha];
/// wide: width >= w_min + K.
pub fn classify_widths(f: &Dnf, alpha: u64, k_param: u64) -> Vec<WidthClass> {
    let w_min = f.min_width().unwrap_or(0) as u64;
    f.terms()
        .iter()
        .map(|t| {
            let w = t.width() as u64;
            WidthClass {
                narrow: w <= w_min + alpha,
                medium: w <= w_min + 2 * alpha,
                wide: w >= w_min + k_param,
            }
        })
        .collect()
}

/// Rewrite one cluster of `f` as head `T*` with tail `term \ T*`, checking
/// that the label is narrow enough to fit the tail-variable budget.
pub fn cluster_to_factored(
    f: &Dnf,
    cluster: &Cluster,
    mu: usize,
) -> Result<FactoredDnf, BoolFnError> {
    if cluster.label.sstar.len() > mu {
        return Err(BoolFnError::Parse(format!(
            "label has {} literals, budget {mu}",
            cluster.label.sstar.len()
        )));
    }
    let head = cluster.label.tstar.clone();
    let tail: Vec<Term> = cluster
        .term_indices
        .iter()
        .map(|&i| f.terms()[i].minus(&head))
        .collect();
    FactoredDnf::new(head, tail, f.n(), cluster.term_indices.len(), mu)
}
