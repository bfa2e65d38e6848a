use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::boolfn::{BoolFn, Dnf, FactoredDnf, Literal, Point, Term, TruthTable, ENUM_CAP};
use crate::oracle::SeedTree;

/// Per-term width law for generated DNFs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WidthDist {
    Fixed(usize),
    Uniform { lo: usize, hi: usize },
}

impl WidthDist {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match *self {
            WidthDist::Fixed(w) => w,
            WidthDist::Uniform { lo, hi } => rng.gen_range(lo..=hi),
        }
    }

    /// P[width <= t].
    pub fn cdf(&self, t: usize) -> f64 {
        match *self {
            WidthDist::Fixed(w) => {
                if t >= w {
                    1.0
                } else {
                    0.0
                }
            }
            WidthDist::Uniform { lo, hi } => {
                if t < lo {
                    0.0
                } else if t >= hi {
                    1.0
                } else {
                    (t - lo + 1) as f64 / (hi - lo + 1) as f64
                }
            }
        }
    }
}

/// `s` contradiction-free terms with iid widths; every term is satisfiable
/// by construction, and the function is re-drawn (up to a bound) in the
/// degenerate case of an empty support.
pub fn gen_random_dnf<R: Rng + ?Sized>(
    n: usize,
    s: usize,
    width: WidthDist,
    rng: &mut R,
) -> Result<Dnf, HarnessError> {
    let vars: Vec<usize> = (1..=n).collect();
    gen_random_dnf_over(n, &vars, s, width, rng)
}

/// As `gen_random_dnf`, with term variables drawn from an explicit pool.
pub fn gen_random_dnf_over<R: Rng + ?Sized>(
    n: usize,
    vars: &[usize],
    s: usize,
    width: WidthDist,
    rng: &mut R,
) -> Result<Dnf, HarnessError> {
    if n > ENUM_CAP {
        return Err(HarnessError::CapExceeded(format!("n {n} over {ENUM_CAP}")));
    }
    for _attempt in 0..16 {
        let mut terms = Vec::with_capacity(s);
        for _ in 0..s {
            let w = width.sample(rng).clamp(1, vars.len());
            let mut chosen = vars.to_vec();
            chosen.shuffle(rng);
            chosen.truncate(w);
            let lits: Vec<Literal> = chosen
                .into_iter()
                .map(|v| {
                    if rng.gen::<bool>() {
                        Literal::pos(v)
                    } else {
                        Literal::neg(v)
                    }
                })
                .collect();
            terms.push(Term::new(lits).expect("distinct variables cannot contradict"));
        }
        let f = Dnf::new(terms, n)?;
        if !f.terms().is_empty() {
            return Ok(f);
        }
    }
    Err(HarnessError::DegenerateSpec(
        "could not generate a nonempty DNF".into(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    /// A random s-term DNF (yes instance).
    RandomDnf,
    /// A random factored shape: explicit head, random tail on few
    /// variables (yes instance with known structure).
    PlantedFactored,
    /// A head conjoined with a 2-variable parity tail (no instance; far
    /// from small factored shapes).
    FarXor,
    /// A random function of prescribed density (no instance after
    /// certification).
    FarRandomDensity,
    /// More than `s` mutually far single-point terms (drives the pool
    /// count over budget).
    AdversarialPools,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub n: usize,
    pub s: usize,
    pub width: WidthDist,
    pub seed: u64,
    /// When set, every term draws its variables from one random subset of
    /// this size, keeping the instance inside the tail-variable budget of
    /// desk mode.
    #[serde(default)]
    pub var_pool: Option<usize>,
}

/// A realized instance: the exact table, plus whatever ground truth the
/// construction knows about itself.
#[derive(Clone)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub table: Arc<TruthTable>,
    pub dnf: Option<Dnf>,
    pub factored: Option<FactoredDnf>,
}

struct XorTail {
    n: usize,
    head: Term,
    parity_vars: Vec<usize>,
}

impl BoolFn for XorTail {
    fn n(&self) -> usize {
        self.n
    }
    fn eval(&self, x: Point) -> bool {
        self.head.eval(x)
            && self
                .parity_vars
                .iter()
                .fold(false, |acc, &v| acc ^ x.get(v))
    }
}

/// Deterministically realize a spec: the generator output is a function of
/// the spec alone.
pub fn realize(spec: &InstanceSpec) -> Result<Instance, HarnessError> {
    let mut rng = SeedTree::new(spec.seed).child("instance").rng();
    let n = spec.n;
    if n > ENUM_CAP {
        return Err(HarnessError::CapExceeded(format!("n {n} over {ENUM_CAP}")));
    }
    match spec.kind {
        InstanceKind::RandomDnf => {
            let f = match spec.var_pool {
                Some(k) => {
                    let mut vars: Vec<usize> = (1..=n).collect();
                    vars.shuffle(&mut rng);
                    vars.truncate(k.clamp(1, n));
                    gen_random_dnf_over(n, &vars, spec.s, spec.width, &mut rng)?
                }
                None => gen_random_dnf(n, spec.s, spec.width, &mut rng)?,
            };
            let table = Arc::new(TruthTable::from_fn(&f)?);
            Ok(Instance {
                spec: spec.clone(),
                table,
                dnf: Some(f),
                factored: None,
            })
        }
        InstanceKind::PlantedFactored => {
            // Head on the top half of coordinates, tail on up to 4 of the
            // bottom ones.
            let tail_span = n.min(4);
            let head_w = spec.width.sample(&mut rng).clamp(1, n - tail_span);
            let head_lits: Vec<Literal> = (tail_span + 1..=tail_span + head_w)
                .map(|v| {
                    if rng.gen::<bool>() {
                        Literal::pos(v)
                    } else {
                        Literal::neg(v)
                    }
                })
                .collect();
            let head = Term::new(head_lits).unwrap();
            let tail_terms = spec.s.clamp(1, 3);
            let mut tail = Vec::new();
            for _ in 0..tail_terms {
                let w = rng.gen_range(1..=tail_span);
                let mut vs: Vec<usize> = (1..=tail_span).collect();
                vs.shuffle(&mut rng);
                vs.truncate(w);
                let lits: Vec<Literal> = vs
                    .into_iter()
                    .map(|v| {
                        if rng.gen::<bool>() {
                            Literal::pos(v)
                        } else {
                            Literal::neg(v)
                        }
                    })
                    .collect();
                tail.push(Term::new(lits).unwrap());
            }
            let fac = FactoredDnf::new(head, tail, n, tail_terms, tail_span)
                .map_err(|e| HarnessError::DegenerateSpec(e.to_string()))?;
            let table = Arc::new(TruthTable::from_fn(&fac)?);
            Ok(Instance {
                spec: spec.clone(),
                table,
                dnf: Some(fac.to_dnf()),
                factored: Some(fac),
            })
        }
        InstanceKind::FarXor => {
            // A parity tail needs s+1 variables to stay far from s-term
            // DNFs; with s of them it is expressible exactly.
            let parity_w = (spec.s + 1).min(3);
            if n < parity_w + 1 {
                return Err(HarnessError::DegenerateSpec(format!(
                    "need n > {parity_w}"
                )));
            }
            let head_w = spec.width.sample(&mut rng).clamp(1, n - parity_w);
            let head_lits: Vec<Literal> = (parity_w + 1..=parity_w + head_w)
                .map(Literal::pos)
                .collect();
            let f = XorTail {
                n,
                head: Term::new(head_lits).unwrap(),
                parity_vars: (1..=parity_w).collect(),
            };
            let table = Arc::new(TruthTable::from_fn(&f)?);
            Ok(Instance {
                spec: spec.clone(),
                table,
                dnf: None,
                factored: None,
            })
        }
        InstanceKind::FarRandomDensity => {
            // Each point satisfies independently with probability 1/8;
            // redraw on the (vanishing) chance of an empty support.
            for _ in 0..16 {
                let mut t = TruthTable::constant(n, false);
                for idx in 0..t.size() {
                    if rng.gen_range(0..8u32) == 0 {
                        t.set_index(idx, true);
                    }
                }
                if t.support_size() > 0 {
                    return Ok(Instance {
                        spec: spec.clone(),
                        table: Arc::new(t),
                        dnf: None,
                        factored: None,
                    });
                }
            }
            Err(HarnessError::DegenerateSpec("empty random support".into()))
        }
        InstanceKind::AdversarialPools => {
            // s+1 full-width terms (single satisfying points), pairwise
            // far, so samples from different terms should never link.
            let k = spec.s + 1;
            let points = spread_points(n, k).ok_or_else(|| {
                HarnessError::DegenerateSpec(format!("cannot spread {k} points at n={n}"))
            })?;
            let terms: Vec<Term> = points
                .iter()
                .map(|p| {
                    Term::new(
                        (1..=n)
                            .map(|v| {
                                if p.get(v) {
                                    Literal::pos(v)
                                } else {
                                    Literal::neg(v)
                                }
                            })
                            .collect(),
                    )
                    .unwrap()
                })
                .collect();
            let f = Dnf::new(terms, n)?;
            let table = Arc::new(TruthTable::from_fn(&f)?);
            Ok(Instance {
                spec: spec.clone(),
                table,
                dnf: Some(f),
                factored: None,
            })
        }
    }
}

/// Up to 4 points of `{0,1}^n` with pairwise Hamming distance about 2n/3.
fn spread_points(n: usize, k: usize) -> Option<Vec<Point>> {
    if k > 4 || n < 3 * (k - 1) {
        return None;
    }
    let third = n / 3;
    let mut out = vec![Point::zero(n)];
    if k >= 2 {
        // First two thirds set.
        let mut p = Point::zero(n);
        for v in 1..=(2 * third) {
            p = p.with(v, true);
        }
        out.push(p);
    }
    if k >= 3 {
        // First and last thirds set.
        let mut p = Point::zero(n);
        for v in 1..=third {
            p = p.with(v, true);
        }
        for v in (2 * third + 1)..=n {
            p = p.with(v, true);
        }
        out.push(p);
    }
    if k >= 4 {
        // Last two thirds set.
        let mut p = Point::zero(n);
        for v in (third + 1)..=n {
            p = p.with(v, true);
        }
        out.push(p);
    }
    out.truncate(k);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::reldist_tables;

    #[test]
    fn full_width_single_term() {
        let mut rng = SeedTree::new(1).rng();
        let f = gen_random_dnf(6, 1, WidthDist::Fixed(6), &mut rng).unwrap();
        let t = TruthTable::from_fn(&f).unwrap();
        assert_eq!(t.support_size(), 1);
    }

    #[test]
    fn generated_terms_satisfiable() {
        let mut rng = SeedTree::new(2).rng();
        for _ in 0..50 {
            let f = gen_random_dnf(10, 4, WidthDist::Uniform { lo: 2, hi: 6 }, &mut rng).unwrap();
            for t in f.terms() {
                // Force the term onto a zero base: must satisfy.
                let p = t.force_onto(Point::zero(10));
                assert!(t.eval(p));
            }
        }
    }

    #[test]
    fn min_width_matches_order_statistic() {
        // Empirical law of w_min over many draws vs the analytic law of
        // the minimum of s iid uniform widths, within 3 sigma per bin.
        let mut rng = SeedTree::new(3).rng();
        let (lo, hi, s, n) = (2usize, 6usize, 3usize, 12usize);
        let dist = WidthDist::Uniform { lo, hi };
        let draws = 1000;
        let mut counts = vec![0u32; hi + 1];
        for _ in 0..draws {
            let f = gen_random_dnf(n, s, dist, &mut rng).unwrap();
            counts[f.min_width().unwrap()] += 1;
        }
        for t in lo..=hi {
            // P[min <= t] = 1 - (1 - F(t))^s
            let p_le = 1.0 - (1.0 - dist.cdf(t)).powi(s as i32);
            let p_lt = if t == lo {
                0.0
            } else {
                1.0 - (1.0 - dist.cdf(t - 1)).powi(s as i32)
            };
            let p = p_le - p_lt;
            let mean = draws as f64 * p;
            let sigma = (draws as f64 * p * (1.0 - p)).sqrt().max(1.0);
            let got = counts[t] as f64;
            assert!((got - mean).abs() <= 3.0 * sigma, "width {t}: {got} vs {mean}");
        }
    }

    #[test]
    fn realize_is_reproducible() {
        let spec = InstanceSpec {
            kind: InstanceKind::RandomDnf,
            n: 10,
            s: 3,
            width: WidthDist::Uniform { lo: 2, hi: 5 },
            seed: 42,
        };
        let a = realize(&spec).unwrap();
        let b = realize(&spec).unwrap();
        assert_eq!(reldist_tables(&a.table, &b.table).unwrap(), crate::boolfn::Rat::ZERO);
    }

    #[test]
    fn adversarial_points_pairwise_far() {
        let spec = InstanceSpec {
            kind: InstanceKind::AdversarialPools,
            n: 14,
            s: 2,
            width: WidthDist::Fixed(14),
            seed: 9,
            var_pool: None,
        };
        let inst = realize(&spec).unwrap();
        let support = inst.table.support();
        assert_eq!(support.len(), 3);
        for i in 0..support.len() {
            for j in (i + 1)..support.len() {
                let a = Point::from_index(support[i] as usize, 14);
                let b = Point::from_index(support[j] as usize, 14);
                assert!(a.hamming(b) >= 8, "{a} {b}");
            }
        }
    }
}
