//! Every scalar knob of the tester, in one of two modes.
//!
//! `Theory` computes each scalar from `(s, eps)` by the closed-form
//! schedules; the resulting counts are far too large to run but are kept
//! exact for provenance and schedule tests. `Desk` keeps the same shapes
//! where affordable and replaces the unrunnable counts with documented
//! defaults, all overridable from the CLI. Every constructed set can emit a
//! provenance record of each scalar and where it came from.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolfn::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Theory,
    Desk,
}

#[derive(Debug, Error)]
pub enum ParamError {
    #[error("invalid epsilon {0}: need 0 < eps <= 1/2")]
    InvalidEps(Rat),
    #[error("invalid s {0}: need s >= 1")]
    InvalidS(usize),
    #[error("unknown override key {0:?}")]
    UnknownOverride(String),
    #[error("bad override value for {key}: {value:?}")]
    BadOverride { key: String, value: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParameterSet {
    pub mode: Mode,
    pub s: usize,
    pub eps: Rat,

    /// Cluster-distance scale K.
    pub k_param: u64,
    /// Tail-variable budget.
    pub mu: usize,
    /// log2 of the sample-scale N.
    pub alpha: u32,
    /// Sample scale N (astronomical in theory mode; recorded as f64).
    pub n_big: f64,
    /// Block count for the coordinate partition.
    pub tau: usize,
    /// Distance parameter handed to factored-DNF sub-tests.
    pub fact_eps: Rat,
    /// Candidate accuracy: kappa = fact_eps^2.
    pub kappa: Rat,
    /// Stability scale.
    pub xi: Rat,
    /// Candidate-pruning rounds.
    pub eta: u64,
    /// Consecutive idle rounds before the relevant-block search stops.
    pub t_star: u64,
    /// Pool-weight estimation sample count.
    pub omega: u64,

    pub pool_samples: usize,
    pub eq_samples: u32,
    pub merge_samples: usize,
    pub in_pool_reps: u32,
    pub density: Rat,
    pub samp_star_reps: u32,

    /// Samples drawn to compute the disagreement set R.
    pub r_samples: usize,
    /// Cap on voting rounds inside Extract.
    pub extract_cap: u32,
    /// Blocks per k^2 in the junta tester.
    pub junta_c_blocks: usize,
    /// Round multiplier in the junta tester.
    pub junta_c_rounds: u32,

    /// Consistency-check round constant c1 (rounds = ceil(c1/eps)).
    pub cc_c1: u32,
    /// Cross-check points per round (theory keeps the literal 100).
    pub cross_points: u32,
    /// c_gamma: membership-simulator draws = ceil(c_gamma * ln(1/eps)).
    pub gamma_c: u32,
    /// Conjunction-tester rounds; formulas in theory mode, flat in desk.
    pub conj_p1_rounds: u32,
    pub conj_p2_rounds: u32,

    /// Amplification constant: reps = ceil(c_amp * log2(s+2)).
    pub c_amp: u32,

    /// Enumeration caps for the candidate-set builder.
    pub enum_mu_cap: usize,
    pub enum_r_cap: usize,

    /// Configured upper bound on one factored-test invocation's base-oracle
    /// cost; defaults to the computed worst case.
    pub q_bound: u64,
}

impl ParameterSet {
    /// Theory-mode schedule: everything from the closed forms.
    pub fn theory(s: usize, eps: Rat) -> Result<Self, ParamError> {
        validate(s, eps)?;
        let s_over_eps = Rat::int(s as u64) / eps;
        let k_param = log2_squared(s_over_eps);
        let mu = 16 * s * s * k_param as usize;
        let fact_eps = eps / Rat::int(2 * s as u64);
        let kappa = fact_eps.square();
        let xi = xi_formula(kappa, mu, s);
        let eta = (Rat::ONE / (Rat::int(200) * xi)).ceil();
        let t_star = (5.0 * (200.0 * mu as f64).ln() / xi.to_f64()).ceil() as u64;
        let omega = omega_formula(s_over_eps);
        let tau = 4 * mu * mu;
        let r_samples = ((mu as f64 / xi.to_f64()) * (200.0 * mu as f64).ln()).ceil() as u64;

        let mut p = ParameterSet {
            mode: Mode::Theory,
            s,
            eps,
            k_param,
            mu,
            alpha: 0,
            n_big: 0.0,
            tau,
            fact_eps,
            kappa,
            xi,
            eta,
            t_star,
            omega,
            pool_samples: 0,
            eq_samples: 0,
            merge_samples: 0,
            in_pool_reps: 0,
            density: Rat::ZERO,
            samp_star_reps: 0,
            r_samples: r_samples.min(u64::from(u32::MAX)) as usize,
            extract_cap: u32::MAX,
            junta_c_blocks: 8,
            junta_c_rounds: 1,
            cc_c1: 8,
            cross_points: 100,
            gamma_c: 5,
            conj_p1_rounds: ceil_div_rat(8, fact_eps / Rat::int(10)),
            conj_p2_rounds: 16,
            c_amp: 5,
            enum_mu_cap: 6,
            enum_r_cap: 3,
            q_bound: 0,
        };
        // N >= Q^10 and N >= (s/eps)^10; Q is the factored-test query bound,
        // which does not depend on N.
        let q_est = p.factored_budget_samples_only();
        let n_big = (q_est as f64).max(s_over_eps.to_f64()).powi(10).max(2.0);
        p.n_big = n_big;
        p.alpha = n_big.log2().ceil() as u32;
        p.pool_samples = saturating_pow_usize(n_big, 3);
        p.merge_samples = saturating_pow_usize(n_big, 5);
        p.eq_samples = saturating_pow_usize(n_big, 3).min(u32::MAX as usize) as u32;
        p.in_pool_reps = 10 * p.alpha;
        p.density = rational_inverse_square(n_big);
        p.samp_star_reps = (100.0 * s_over_eps.to_f64() * p.alpha as f64).ceil() as u32;
        p.q_bound = p.factored_budget(p.pool_samples.min(1 << 20));
        Ok(p)
    }

    /// Desk-mode defaults: runnable counts, theory shapes where affordable.
    pub fn desk(s: usize, eps: Rat) -> Result<Self, ParamError> {
        validate(s, eps)?;
        let s_over_eps = Rat::int(s as u64) / eps;
        let k_param = 3;
        let mu = 6;
        // Desk hands eps/2 (not eps/(2s)) to the factored sub-tests; the
        // theory scaling makes the consistency checker unaffordably
        // sensitive at desk query budgets.
        let fact_eps = eps / Rat::int(2);
        let kappa = fact_eps.square();
        let mut p = ParameterSet {
            mode: Mode::Desk,
            s,
            eps,
            k_param,
            mu,
            alpha: 8,
            n_big: 256.0,
            tau: 4 * mu * mu,
            fact_eps,
            kappa,
            xi: Rat::new(1, 50),
            eta: 384,
            t_star: 192,
            omega: omega_formula(s_over_eps),
            pool_samples: 40,
            eq_samples: 512,
            merge_samples: 48,
            in_pool_reps: 80,
            density: Rat::new(1, 64),
            samp_star_reps: 128,
            r_samples: 128,
            extract_cap: 4,
            junta_c_blocks: 8,
            junta_c_rounds: 1,
            cc_c1: 8,
            cross_points: 8,
            gamma_c: 5,
            conj_p1_rounds: 64,
            conj_p2_rounds: 16,
            c_amp: 5,
            enum_mu_cap: 6,
            enum_r_cap: 3,
            q_bound: 0,
        };
        p.q_bound = p.factored_budget(p.pool_samples);
        Ok(p)
    }

    pub fn new(mode: Mode, s: usize, eps: Rat) -> Result<Self, ParamError> {
        match mode {
            Mode::Theory => Self::theory(s, eps),
            Mode::Desk => Self::desk(s, eps),
        }
    }

    /// Apply `key=value` overrides (CLI `--override`).
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<(), ParamError> {
        let bad = |key: &str, value: &str| ParamError::BadOverride {
            key: key.into(),
            value: value.into(),
        };
        macro_rules! set_int {
            ($field:ident, $ty:ty) => {{
                self.$field = value.parse::<$ty>().map_err(|_| bad(key, value))?;
            }};
        }
        match key {
            "k_param" => set_int!(k_param, u64),
            "mu" => set_int!(mu, usize),
            "alpha" => set_int!(alpha, u32),
            "tau" => set_int!(tau, usize),
            "eta" => set_int!(eta, u64),
            "t_star" => set_int!(t_star, u64),
            "omega" => set_int!(omega, u64),
            "pool_samples" => set_int!(pool_samples, usize),
            "eq_samples" => set_int!(eq_samples, u32),
            "merge_samples" => set_int!(merge_samples, usize),
            "in_pool_reps" => set_int!(in_pool_reps, u32),
            "samp_star_reps" => set_int!(samp_star_reps, u32),
            "r_samples" => set_int!(r_samples, usize),
            "extract_cap" => set_int!(extract_cap, u32),
            "junta_c_blocks" => set_int!(junta_c_blocks, usize),
            "junta_c_rounds" => set_int!(junta_c_rounds, u32),
            "cc_c1" => set_int!(cc_c1, u32),
            "cross_points" => set_int!(cross_points, u32),
            "gamma_c" => set_int!(gamma_c, u32),
            "conj_p1_rounds" => set_int!(conj_p1_rounds, u32),
            "conj_p2_rounds" => set_int!(conj_p2_rounds, u32),
            "c_amp" => set_int!(c_amp, u32),
            "enum_mu_cap" => set_int!(enum_mu_cap, usize),
            "enum_r_cap" => set_int!(enum_r_cap, usize),
            "q_bound" => set_int!(q_bound, u64),
            "density" => self.density = value.parse().map_err(|_| bad(key, value))?,
            "fact_eps" => {
                self.fact_eps = value.parse().map_err(|_| bad(key, value))?;
                self.kappa = self.fact_eps.square();
            }
            "kappa" => self.kappa = value.parse().map_err(|_| bad(key, value))?,
            "xi" => self.xi = value.parse().map_err(|_| bad(key, value))?,
            _ => return Err(ParamError::UnknownOverride(key.into())),
        }
        Ok(())
    }

    /// Heavy-pool cutoff: counter >= (eps/20s) * omega, compared exactly.
    pub fn is_heavy(&self, counter: u64) -> bool {
        // counter >= eps.num * omega / (eps.den * 20 * s)
        (counter as u128) * (self.eps.den() as u128) * 20 * (self.s as u128)
            >= (self.eps.num() as u128) * (self.omega as u128)
    }

    /// Dense-cube check: satisfying_count / cube_size >= density threshold.
    pub fn is_dense(&self, satisfying: u64, cube_size: u64) -> bool {
        (satisfying as u128) * (self.density.den() as u128)
            >= (self.density.num() as u128) * (cube_size as u128)
    }

    /// Voting rounds inside Extract for failure budget `delta`.
    pub fn extract_rounds(&self, delta: Rat) -> u32 {
        let ratio = ((self.mu + 1) as f64) / delta.to_f64();
        let rounds = ratio.log2().ceil().max(1.0) as u32;
        rounds.clamp(1, self.extract_cap.max(1))
    }

    /// Consistency-check phase rounds for a given distance parameter.
    pub fn cc_rounds(&self, eps: Rat) -> u32 {
        ceil_div_rat(self.cc_c1 as u64, eps)
    }

    /// Membership-simulator draws for the conjunction surrogate.
    pub fn gamma_draws(&self, eps: Rat) -> u32 {
        let d = (self.gamma_c as f64 * (Rat::ONE / eps).to_f64().ln()).ceil() as u32;
        d.max(1)
    }

    /// Majority repetitions in the top-level sweep.
    pub fn amp_reps(&self) -> u32 {
        let reps = (self.c_amp as f64 * ((self.s + 2) as f64).log2()).ceil() as u32;
        reps.max(1)
    }

    /// Junta-tester round count for (k, eps, delta).
    pub fn junta_rounds(&self, k: usize, eps: Rat, delta: Rat) -> u32 {
        let base = k as f64 / eps.to_f64() + (k as f64) * ((k + 1) as f64).log2();
        let r = (self.junta_c_rounds as f64 * base * (Rat::ONE / delta).to_f64().ln()).ceil();
        (r as u32).max(1)
    }

    // ----- worst-case base-oracle budgets (criterion: never exceeded) -----
    // Saturating arithmetic throughout: theory-mode counts overflow u64 by
    // design, and a saturated budget is still a valid upper bound.

    /// Upper bound on base MQ calls of one membership-simulator query.
    pub fn mq_star_cost(&self, pool_cap: usize) -> u64 {
        (self.in_pool_reps as u64)
            .saturating_mul(pool_cap as u64)
            .saturating_add(1)
    }

    /// Upper bound on base calls of one sampling-simulator draw.
    pub fn samp_star_cost(&self, pool_cap: usize) -> u64 {
        (self.samp_star_reps as u64).saturating_mul(1 + self.mq_star_cost(pool_cap))
    }

    fn extract_cost(&self, delta: Rat, pool_cap: usize) -> u64 {
        (self.mu as u64 * 2)
            .saturating_mul(self.extract_rounds(delta) as u64)
            .saturating_mul(self.mq_star_cost(pool_cap))
    }

    /// Rough factored-test budget counting only its own sample draws
    /// (used to seed the theory-mode N; independent of N by construction).
    fn factored_budget_samples_only(&self) -> u64 {
        let approx_rounds = (self.t_star.saturating_add(1)).saturating_mul(self.mu as u64 + 1);
        let bsearch = (self.tau.max(2) as f64).log2().ceil() as u64 + 1;
        (self.r_samples as u64)
            .saturating_add(approx_rounds.saturating_mul(2 + bsearch))
            .saturating_add(self.eta.saturating_mul(1 + self.mu as u64 * 16))
            .saturating_add(
                (self.mu as u64).saturating_mul(
                    self.junta_rounds(1, Rat::new(1, 30), Rat::new(1, 100)) as u64 * 4 + 20,
                ),
            )
            .saturating_add(
                (self.cc_rounds(self.fact_eps) as u64)
                    .saturating_mul(2 + self.cross_points as u64)
                    .saturating_mul(2),
            )
            .saturating_add(
                (self.conj_p1_rounds as u64 + self.conj_p2_rounds as u64)
                    .saturating_mul(3 + self.gamma_draws(self.fact_eps) as u64 * 2),
            )
    }

    /// Worst-case base-oracle calls of one factored-test invocation run
    /// against pool-backed simulators with pools of size at most
    /// `pool_cap`.
    pub fn factored_budget(&self, pool_cap: usize) -> u64 {
        let mq1 = self.mq_star_cost(pool_cap);
        let samp1 = self.samp_star_cost(pool_cap);
        let bsearch = (self.tau.max(2) as f64).log2().ceil() as u64 + 1;
        let approx_rounds = (self.t_star.saturating_add(1)).saturating_mul(self.mu as u64 + 1);
        let approximate = approx_rounds
            .saturating_mul(samp1.saturating_add(mq1))
            .saturating_add((self.mu as u64).saturating_mul((bsearch + 2).saturating_mul(mq1)));
        let find_candidate = self
            .eta
            .saturating_mul(samp1.saturating_add(self.extract_cost(Rat::new(1, 2), pool_cap)));
        let junta = self.junta_rounds(1, Rat::new(1, 30), Rat::new(1, 100)) as u64
            * (2 + (self.junta_c_blocks.max(2) as f64).log2().ceil() as u64);
        let check_lit = (self.mu as u64).saturating_mul((junta + 20).saturating_mul(mq1));
        let j_mq = self.extract_cost(self.kappa, pool_cap);
        let j_samp = self.extract_cost(self.kappa, pool_cap);
        let cc = self.cc_rounds(self.fact_eps) as u64;
        let cons_check = cc
            .saturating_mul(
                samp1
                    .saturating_add(j_mq)
                    .saturating_add((self.cross_points as u64).saturating_mul(j_samp + mq1)),
            )
            .saturating_add(cc.saturating_mul(samp1.saturating_add(j_samp).saturating_add(mq1)))
            .saturating_add(
                (self.conj_p1_rounds as u64 + self.conj_p2_rounds as u64 + 2).saturating_mul(
                    samp1.saturating_mul(3).saturating_add(
                        (self.gamma_draws(self.fact_eps) as u64)
                            .saturating_mul(j_samp.saturating_add(mq1)),
                    ),
                ),
            );
        (self.r_samples as u64)
            .saturating_mul(samp1)
            .saturating_add(approximate)
            .saturating_add(find_candidate)
            .saturating_add(check_lit)
            .saturating_add(cons_check)
    }

    /// Worst-case base-oracle calls of the pool-construction stage.
    pub fn pooling_budget(&self) -> u64 {
        let m = self.pool_samples as u64;
        let te = self.eq_samples as u64;
        let phase1 = m.saturating_add(m.saturating_mul(m.saturating_sub(1)) / 2 * te);
        let phase3 = (self.s as u64)
            .saturating_mul(self.merge_samples as u64)
            .saturating_mul(m.saturating_mul(te).saturating_add(1));
        let phase4 = self.omega.saturating_mul(
            (self.s as u64)
                .saturating_mul(self.in_pool_reps as u64)
                .saturating_mul(m)
                .saturating_add(1),
        );
        phase1.saturating_add(phase3).saturating_add(phase4)
    }

    /// Worst-case base-oracle calls of one full top-level trial.
    pub fn trial_budget(&self) -> u64 {
        let sweeps = ((self.s * self.s) as u64).saturating_mul(self.amp_reps() as u64);
        self.pooling_budget()
            .saturating_add(sweeps.saturating_mul(self.factored_budget(self.pool_samples)))
    }

    /// A provenance record of every scalar.
    pub fn provenance(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String, how: &str| {
            m.insert(k.to_string(), format!("{v} ({how})"));
        };
        let mode = match self.mode {
            Mode::Theory => "theory",
            Mode::Desk => "desk",
        };
        put("mode", mode.into(), "configured");
        put("s", self.s.to_string(), "input");
        put("eps", self.eps.to_string(), "input");
        let sched = |formula: &str| -> String {
            match self.mode {
                Mode::Theory => format!("schedule {formula}"),
                Mode::Desk => format!("desk default; theory schedule {formula}"),
            }
        };
        put("k_param", self.k_param.to_string(), &sched("log2(s/eps)^2"));
        put("mu", self.mu.to_string(), &sched("16*s^2*K"));
        put("alpha", self.alpha.to_string(), &sched("log2(N)"));
        put(
            "n_big",
            format!("{:.3e}", self.n_big),
            &sched("max(Q,s/eps)^10"),
        );
        put("tau", self.tau.to_string(), &sched("4*mu^2"));
        put("fact_eps", self.fact_eps.to_string(), &sched("eps/(2s)"));
        put("kappa", self.kappa.to_string(), "fact_eps^2");
        put(
            "xi",
            self.xi.to_string(),
            &sched("kappa/4000/ln(100*2^(2*mu*r))"),
        );
        put("eta", self.eta.to_string(), &sched("1/(200*xi)"));
        put("t_star", self.t_star.to_string(), &sched("5*ln(200*mu)/xi"));
        put(
            "omega",
            self.omega.to_string(),
            "ceil(64*(s/eps)*ln(s/eps+2))",
        );
        put(
            "pool_samples",
            self.pool_samples.to_string(),
            &sched("N^3"),
        );
        put("eq_samples", self.eq_samples.to_string(), &sched("N^3"));
        put(
            "merge_samples",
            self.merge_samples.to_string(),
            &sched("N^5"),
        );
        put(
            "in_pool_reps",
            self.in_pool_reps.to_string(),
            "10*alpha",
        );
        put("density", self.density.to_string(), &sched("1/N^2"));
        put(
            "samp_star_reps",
            self.samp_star_reps.to_string(),
            &sched("100*(s/eps)*alpha"),
        );
        put(
            "r_samples",
            self.r_samples.to_string(),
            &sched("(mu/xi)*ln(200*mu)"),
        );
        put("extract_cap", self.extract_cap.to_string(), "configured");
        put(
            "junta_c_blocks",
            self.junta_c_blocks.to_string(),
            "configured",
        );
        put(
            "junta_c_rounds",
            self.junta_c_rounds.to_string(),
            "configured",
        );
        put("cc_c1", self.cc_c1.to_string(), "configured");
        put(
            "cross_points",
            self.cross_points.to_string(),
            "theory keeps literal 100; desk scales with c1",
        );
        put("gamma_c", self.gamma_c.to_string(), "configured");
        put(
            "conj_p1_rounds",
            self.conj_p1_rounds.to_string(),
            "configured",
        );
        put(
            "conj_p2_rounds",
            self.conj_p2_rounds.to_string(),
            "configured",
        );
        put("c_amp", self.c_amp.to_string(), "configured");
        put("q_bound", self.q_bound.to_string(), "factored budget");
        m
    }
}

fn validate(s: usize, eps: Rat) -> Result<(), ParamError> {
    if s == 0 {
        return Err(ParamError::InvalidS(s));
    }
    if eps.is_zero() || eps > Rat::new(1, 2) {
        return Err(ParamError::InvalidEps(eps));
    }
    Ok(())
}

/// ceil(log2(x))^2-style schedule value: (log2 x)^2 rounded with exact
/// powers of two kept exact, then ceiled.
fn log2_squared(x: Rat) -> u64 {
    let l = x.to_f64().log2();
    let l = if (l - l.round()).abs() < 1e-9 { l.round() } else { l };
    (l * l).ceil().max(1.0) as u64
}

fn xi_formula(kappa: Rat, mu: usize, r: usize) -> Rat {
    // kappa/4000 * 1/ln(100*2^(2*mu*r)); the log factor is irrational so it
    // is ceiled into the denominator to stay exact and conservative.
    let ln_factor = (100f64 * 2f64.powi((2 * mu * r) as i32)).ln();
    let ln_factor = if ln_factor.is_finite() {
        ln_factor.ceil() as u64
    } else {
        // 2^(2 mu r) overflows f64: ln(100*2^x) = ln 100 + x ln 2.
        (100f64.ln() + (2 * mu * r) as f64 * 2f64.ln()).ceil() as u64
    };
    kappa / Rat::int(4000 * ln_factor.max(1))
}

fn omega_formula(s_over_eps: Rat) -> u64 {
    let v = s_over_eps.to_f64();
    (64.0 * v * (v + 2.0).ln()).ceil() as u64
}

fn ceil_div_rat(num: u64, eps: Rat) -> u32 {
    // ceil(num / eps)
    (Rat::int(num) / eps).ceil().min(u32::MAX as u64) as u32
}

fn saturating_pow_usize(base: f64, exp: i32) -> usize {
    let v = base.powi(exp);
    if v >= usize::MAX as f64 {
        usize::MAX
    } else {
        v.max(1.0) as usize
    }
}

fn rational_inverse_square(n_big: f64) -> Rat {
    if n_big * n_big >= u64::MAX as f64 {
        Rat::new(1, u64::MAX)
    } else {
        Rat::new(1, (n_big * n_big).max(1.0) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theory_schedule_examples() {
        // s=2, eps=1/4: s/eps = 8, log2 = 3, K = 9, mu = 16*4*9 = 576.
        let p = ParameterSet::theory(2, Rat::new(1, 4)).unwrap();
        assert_eq!(p.k_param, 9);
        assert_eq!(p.mu, 576);
        assert_eq!(p.fact_eps, Rat::new(1, 16));
        assert_eq!(p.kappa, Rat::new(1, 256));
    }

    #[test]
    fn kappa_is_eps_squared() {
        for (num, den) in [(1u64, 4u64), (1, 8), (3, 8), (1, 2)] {
            let p = ParameterSet::theory(3, Rat::new(num, den)).unwrap();
            assert_eq!(p.kappa, p.fact_eps.square());
        }
    }

    #[test]
    fn desk_defaults_echoed_in_provenance() {
        let p = ParameterSet::desk(2, Rat::new(1, 4)).unwrap();
        assert_eq!(p.k_param, 3);
        assert_eq!(p.mu, 6);
        assert_eq!(p.alpha, 8);
        assert_eq!(p.eq_samples, 512);
        assert_eq!(p.in_pool_reps, 80);
        let prov = p.provenance();
        assert!(prov["k_param"].starts_with("3 "));
        assert!(prov["eq_samples"].starts_with("512 "));
        assert!(prov["mode"].starts_with("desk"));
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(ParameterSet::desk(0, Rat::new(1, 4)).is_err());
        assert!(ParameterSet::desk(2, Rat::new(3, 4)).is_err());
        assert!(ParameterSet::desk(2, Rat::ZERO).is_err());
    }

    #[test]
    fn overrides_apply() {
        let mut p = ParameterSet::desk(2, Rat::new(1, 4)).unwrap();
        p.apply_override("eta", "99").unwrap();
        assert_eq!(p.eta, 99);
        p.apply_override("density", "1/32").unwrap();
        assert_eq!(p.density, Rat::new(1, 32));
        assert!(p.apply_override("nope", "1").is_err());
        assert!(p.apply_override("eta", "x").is_err());
    }

    #[test]
    fn heavy_threshold_exact() {
        let mut p = ParameterSet::desk(2, Rat::new(1, 4)).unwrap();
        p.omega = 400;
        // threshold = eps/(20 s) * omega = (1/4)/40 * 400 = 2.5
        assert!(!p.is_heavy(2));
        assert!(p.is_heavy(3));
    }

    #[test]
    fn budgets_positive_and_monotone_in_s() {
        let b: Vec<u64> = (1..=3)
            .map(|s| ParameterSet::desk(s, Rat::new(1, 4)).unwrap().trial_budget())
            .collect();
        assert!(b[0] > 0);
        assert!(b[0] <= b[1] && b[1] <= b[2]);
    }
}
