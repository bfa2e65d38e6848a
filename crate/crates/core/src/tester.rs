//! The factored-DNF tester and the top-level driver with amplification and
//! the tail-size sweep.

use std::collections::BTreeMap;
use std::rc::Rc;

use serde::Serialize;

use crate::boolfn::Rat;
use crate::conscheck::{cons_check, ConsVerdict};
use crate::learner::{compute_r, dnf_learner, LearnOutcome, LearnerError};
use crate::oracle::{Membership, MqHandle, SampHandle, Sampler, SeedTree};
use crate::params::{Mode, ParamError, ParameterSet};
use crate::pooling::{find_factored_dnfs, FindOutcome, RejectPhase};

/// Which line produced the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Reason {
    /// Samples never disagreed: trivially a factored DNF.
    EmptyDisagreement,
    /// The learner rejected (too many relevant blocks, empty candidate
    /// set, or a sub-oracle failed the literal check).
    LearnerReject,
    /// A consistency cross-check failed.
    ConsistencyReject,
    /// The conjunction test failed.
    ConjunctionReject,
    /// Factored test accepted.
    FactoredAccept,
    /// Pool construction rejected.
    PoolReject(RejectPhase),
    /// Some simulator pair accepted no tail size in the sweep.
    NoAcceptingTailSize,
    /// Accepted tail sizes added up over the budget.
    TailBudgetExceeded,
    /// Top-level accept.
    Accept,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct QueryReport {
    pub mq_calls: u64,
    pub samp_calls: u64,
    /// Largest per-invocation base cost seen across factored sub-tests.
    pub max_factored_calls: u64,
    pub budget: u64,
    pub within_budget: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub accept: bool,
    pub reason: Reason,
    pub r_vector: Vec<usize>,
    pub query_report: QueryReport,
    pub seed: u64,
    pub params_provenance: BTreeMap<String, String>,
}

/// Verdict of one factored-DNF test invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredVerdict {
    pub accept: bool,
    pub reason: Reason,
}

/// Test whether the function behind the oracles is close in relative
/// distance to a factored DNF with at most `r` tail terms over at most
/// `mu` tail variables.
pub fn test_factored_dnf(
    mq: &Rc<dyn Membership>,
    samp: &Rc<dyn Sampler>,
    r: usize,
    mu: usize,
    eps: Rat,
    params: &ParameterSet,
    seed: SeedTree,
) -> Result<FactoredVerdict, LearnerError> {
    let mut local = params.clone();
    local.mu = mu;
    local.fact_eps = eps;
    local.kappa = eps.square();

    let samples: Vec<_> = (0..local.r_samples).map(|_| samp.draw()).collect();
    let r_set = compute_r(&samples);
    if r_set.is_empty() {
        return Ok(FactoredVerdict {
            accept: true,
            reason: Reason::EmptyDisagreement,
        });
    }

    let j = match dnf_learner(r_set, mq, samp, r, &local, seed.child("learner"))? {
        LearnOutcome::Reject => {
            return Ok(FactoredVerdict {
                accept: false,
                reason: Reason::LearnerReject,
            })
        }
        LearnOutcome::Found(j) => j,
    };

    let mut rng = seed.child("cons").rng();
    let verdict = cons_check(
        r_set,
        eps,
        mq.as_ref(),
        samp.as_ref(),
        j.mq.as_ref(),
        j.samp.as_ref(),
        &local,
        &mut rng,
    );
    Ok(match verdict {
        ConsVerdict::Accept => FactoredVerdict {
            accept: true,
            reason: Reason::FactoredAccept,
        },
        ConsVerdict::RejectVerify => FactoredVerdict {
            accept: false,
            reason: Reason::ConsistencyReject,
        },
        ConsVerdict::RejectConj => FactoredVerdict {
            accept: false,
            reason: Reason::ConjunctionReject,
        },
    })
}

/// Top-level tester: build pools, then for each returned simulator pair
/// sweep the tail size upward until a majority of repeated factored tests
/// accepts; accept iff the accepted sizes sum to at most `s`.
pub fn test_dnf(
    mq: &Rc<MqHandle>,
    samp: &Rc<SampHandle>,
    params: &ParameterSet,
    seed: SeedTree,
) -> Result<Verdict, LearnerError> {
    let budget = params.trial_budget();
    let mut report = QueryReport {
        budget,
        within_budget: true,
        ..QueryReport::default()
    };
    let finish = |accept: bool,
                  reason: Reason,
                  r_vector: Vec<usize>,
                  mut report: QueryReport|
     -> Result<Verdict, LearnerError> {
        report.mq_calls = mq.calls();
        report.samp_calls = samp.calls();
        report.within_budget = report.mq_calls + report.samp_calls <= report.budget;
        Ok(Verdict {
            accept,
            reason,
            r_vector,
            query_report: report,
            seed: seed.key(),
            params_provenance: params.provenance(),
        })
    };

    let find = find_factored_dnfs(mq, samp, params, seed.child("pools"));
    let pairs = match find.outcome {
        FindOutcome::Reject(phase) => {
            return finish(false, Reason::PoolReject(phase), vec![], report)
        }
        FindOutcome::Oracles(pairs) => pairs,
    };

    let reps = params.amp_reps();
    let mut r_vector = Vec::with_capacity(pairs.len());
    for (i, pair) in pairs.iter().enumerate() {
        let mq_i: Rc<dyn Membership> = pair.mq.clone();
        let samp_i: Rc<dyn Sampler> = pair.samp.clone();
        let mut accepted_r = None;
        for r in 1..=params.s {
            let mut accepts = 0u32;
            for rep in 0..reps {
                let before = mq.calls() + samp.calls();
                let sub_seed = seed
                    .child_indexed("pair", i as u64)
                    .child_indexed("r", r as u64)
                    .child_indexed("rep", rep as u64);
                let v = test_factored_dnf(
                    &mq_i,
                    &samp_i,
                    r,
                    params.mu,
                    params.fact_eps,
                    params,
                    sub_seed,
                )?;
                let cost = mq.calls() + samp.calls() - before;
                report.max_factored_calls = report.max_factored_calls.max(cost);
                if v.accept {
                    accepts += 1;
                }
            }
            // Majority, ties broken toward reject.
            if 2 * accepts > reps {
                accepted_r = Some(r);
                break;
            }
        }
        match accepted_r {
            Some(r) => r_vector.push(r),
            None => return finish(false, Reason::NoAcceptingTailSize, r_vector, report),
        }
    }

    let total: usize = r_vector.iter().sum();
    if total <= params.s {
        finish(true, Reason::Accept, r_vector, report)
    } else {
        finish(false, Reason::TailBudgetExceeded, r_vector, report)
    }
}

/// Build a parameter set for `(s, eps)` in the given mode and apply
/// overrides.
pub fn parameter_schedule(
    s: usize,
    eps: Rat,
    mode: Mode,
    overrides: &[(String, String)],
) -> Result<ParameterSet, ParamError> {
    let mut p = ParameterSet::new(mode, s, eps)?;
    for (k, v) in overrides {
        p.apply_override(k, v)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::boolfn::{Dnf, Term, TruthTable};

    fn oracles(terms: Vec<Term>, n: usize, seed: u64) -> (Rc<MqHandle>, Rc<SampHandle>) {
        let f = Dnf::new(terms, n).unwrap();
        let table = Arc::new(TruthTable::from_fn(&f).unwrap());
        let mq = Rc::new(MqHandle::new(table.clone(), "f"));
        let samp = Rc::new(SampHandle::new(&table, SeedTree::new(seed), "f").unwrap());
        (mq, samp)
    }

    #[test]
    fn singleton_support_accepts_on_empty_disagreement() {
        // |h^{-1}(1)| = 1: all samples identical, R is empty.
        let params = ParameterSet::desk(1, Rat::new(1, 4)).unwrap();
        let (mq, samp) = oracles(vec![Term::of(&[1, 2, 3, 4, 5, 6])], 6, 5);
        let mq: Rc<dyn Membership> = mq;
        let samp: Rc<dyn Sampler> = samp;
        for t in 0..50 {
            let v = test_factored_dnf(
                &mq,
                &samp,
                1,
                params.mu,
                params.fact_eps,
                &params,
                SeedTree::new(t),
            )
            .unwrap();
            assert!(v.accept);
            assert_eq!(v.reason, Reason::EmptyDisagreement);
        }
    }

    #[test]
    fn schedule_wrapper_applies_overrides() {
        let p = parameter_schedule(
            2,
            Rat::new(1, 4),
            Mode::Desk,
            &[("eta".into(), "7".into())],
        )
        .unwrap();
        assert_eq!(p.eta, 7);
        assert!(parameter_schedule(2, Rat::new(1, 4), Mode::Desk, &[("x".into(), "1".into())])
            .is_err());
    }

    #[test]
    fn test_dnf_accepts_simple_conjunction() {
        let params = ParameterSet::desk(1, Rat::new(1, 4)).unwrap();
        let (mq, samp) = oracles(vec![Term::of(&[1, 2])], 8, 77);
        let v = test_dnf(&mq, &samp, &params, SeedTree::new(1)).unwrap();
        assert!(v.accept, "{v:?}");
        assert_eq!(v.r_vector, vec![1]);
        assert!(v.query_report.within_budget);
    }
}
