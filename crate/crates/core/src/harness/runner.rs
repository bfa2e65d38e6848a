use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::rc::Rc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gen::{realize, InstanceSpec};
use super::HarnessError;
use crate::boolfn::Rat;
use crate::oracle::{MqHandle, SampHandle, SeedTree};
use crate::params::Mode;
use crate::tester::{parameter_schedule, test_dnf};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub instance: InstanceSpec,
    pub s: usize,
    pub eps: Rat,
    pub mode: Mode,
    pub overrides: Vec<(String, String)>,
    pub trials: u64,
    pub master_seed: u64,
}

/// One trial's outcome. Wall time is reported only in the CSV; the JSON
/// report stays byte-identical across runs of the same (config, seed).
#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub accept: bool,
    pub reason: String,
    pub r_vector: Vec<usize>,
    pub mq_calls: u64,
    pub samp_calls: u64,
    #[serde(skip)]
    pub wall_ms: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CallSummary {
    pub total: u64,
    pub max: u64,
    pub mean: String,
    pub p50: u64,
    pub p90: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub trials: u64,
    pub accepts: u64,
    pub accept_rate: String,
    pub reasons: BTreeMap<String, u64>,
    pub mq: CallSummary,
    pub samp: CallSummary,
    pub budget: u64,
    pub budget_violations: u64,
    pub records: Vec<TrialRecord>,
}

fn fnv64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn summarize(values: &mut [u64], trials: u64) -> CallSummary {
    if values.is_empty() {
        return CallSummary {
            mean: "0".into(),
            ..CallSummary::default()
        };
    }
    values.sort_unstable();
    let total: u64 = values.iter().sum();
    let pick = |q: f64| values[((values.len() - 1) as f64 * q) as usize];
    CallSummary {
        total,
        max: *values.last().unwrap(),
        mean: format!("{total}/{trials}"),
        p50: pick(0.5),
        p90: pick(0.9),
    }
}

fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var("DNFRT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|v| v.get())
                .unwrap_or(1)
        });
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

/// Run the configured trials (in parallel across trials, each trial owning
/// its oracle handles and derived seeds), aggregate, and optionally write
/// `<out>.json` and `<out>.csv`.
pub fn run_experiment(
    config: &ExperimentConfig,
    out: Option<&Path>,
) -> Result<Report, HarnessError> {
    let instance = realize(&config.instance)?;
    let params = parameter_schedule(config.s, config.eps, config.mode, &config.overrides)?;
    let master = SeedTree::new(config.master_seed);

    let pool = thread_pool();
    let records: Result<Vec<TrialRecord>, HarnessError> = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|t| {
                let start = Instant::now();
                let trial_seed = master.child_indexed("trial", t);
                let mq = Rc::new(MqHandle::new(instance.table.clone(), format!("f/{t}")));
                let samp = Rc::new(
                    SampHandle::new(&instance.table, trial_seed.child("samp"), format!("f/{t}"))
                        .map_err(HarnessError::BoolFn)?,
                );
                let verdict = test_dnf(&mq, &samp, &params, trial_seed)?;
                Ok(TrialRecord {
                    trial: t,
                    seed: trial_seed.key(),
                    accept: verdict.accept,
                    reason: format!("{:?}", verdict.reason),
                    r_vector: verdict.r_vector,
                    mq_calls: verdict.query_report.mq_calls,
                    samp_calls: verdict.query_report.samp_calls,
                    wall_ms: start.elapsed().as_millis() as u64,
                })
            })
            .collect()
    });
    let mut records = records?;
    records.sort_by_key(|r| r.trial);

    let accepts = records.iter().filter(|r| r.accept).count() as u64;
    let mut reasons: BTreeMap<String, u64> = BTreeMap::new();
    for r in &records {
        *reasons.entry(r.reason.clone()).or_insert(0) += 1;
    }
    let budget = params.trial_budget();
    let budget_violations = records
        .iter()
        .filter(|r| r.mq_calls + r.samp_calls > budget)
        .count() as u64;
    let mut mq_values: Vec<u64> = records.iter().map(|r| r.mq_calls).collect();
    let mut samp_values: Vec<u64> = records.iter().map(|r| r.samp_calls).collect();

    let report = Report {
        config: config.clone(),
        config_hash: format!(
            "{:016x}",
            fnv64(serde_json::to_string(config).unwrap().as_bytes())
        ),
        trials: config.trials,
        accepts,
        accept_rate: if config.trials > 0 {
            format!("{accepts}/{}", config.trials)
        } else {
            "0".into()
        },
        reasons,
        mq: summarize(&mut mq_values, config.trials),
        samp: summarize(&mut samp_values, config.trials),
        budget,
        budget_violations,
        records,
    };

    if let Some(base) = out {
        write_report(&report, base)?;
    }
    Ok(report)
}

/// Write `<base>.json` (deterministic) and `<base>.csv` (with wall times).
pub fn write_report(report: &Report, base: &Path) -> Result<(), HarnessError> {
    let io_err = |path: &Path, err: std::io::Error| HarnessError::Io {
        path: path.display().to_string(),
        err,
    };
    if let Some(dir) = base.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        }
    }
    let json_path = base.with_extension("json");
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    fs::write(&json_path, json + "\n").map_err(|e| io_err(&json_path, e))?;

    let csv_path = base.with_extension("csv");
    let mut csv = String::from("trial,seed,verdict,reason,r_vector,mq_calls,samp_calls,wall_ms\n");
    for r in &report.records {
        let rvec = r
            .r_vector
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("|");
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.trial,
            r.seed,
            if r.accept { "accept" } else { "reject" },
            r.reason,
            rvec,
            r.mq_calls,
            r.samp_calls,
            r.wall_ms
        ));
    }
    fs::write(&csv_path, csv).map_err(|e| io_err(&csv_path, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::{InstanceKind, WidthDist};

    fn tiny_config(trials: u64) -> ExperimentConfig {
        ExperimentConfig {
            instance: InstanceSpec {
                kind: InstanceKind::RandomDnf,
                n: 8,
                s: 1,
                width: WidthDist::Uniform { lo: 2, hi: 3 },
                seed: 7,
            },
            s: 1,
            eps: Rat::new(1, 4),
            mode: Mode::Desk,
            overrides: vec![],
            trials,
            master_seed: 11,
        }
    }

    #[test]
    fn zero_trials_gives_config_echo() {
        let report = run_experiment(&tiny_config(0), None).unwrap();
        assert_eq!(report.trials, 0);
        assert_eq!(report.accepts, 0);
        assert!(report.records.is_empty());
        assert_eq!(report.config.master_seed, 11);
        assert!(!report.config_hash.is_empty());
    }

    #[test]
    fn repeated_runs_identical_json() {
        let cfg = tiny_config(2);
        let dir = std::env::temp_dir().join("dnfrt-test-repro");
        let _ = fs::remove_dir_all(&dir);
        let a = run_experiment(&cfg, Some(&dir.join("a"))).unwrap();
        let b = run_experiment(&cfg, Some(&dir.join("b"))).unwrap();
        assert_eq!(a.accepts, b.accepts);
        let ja = fs::read_to_string(dir.join("a.json")).unwrap();
        let jb = fs::read_to_string(dir.join("b.json")).unwrap();
        assert_eq!(ja, jb);
        // CSV matches once wall_ms (the last column) is dropped.
        let strip = |s: &str| {
            s.lines()
                .map(|l| l.rsplit_once(',').map(|(head, _)| head.to_string()).unwrap_or_default())
                .collect::<Vec<_>>()
        };
        let ca = strip(&fs::read_to_string(dir.join("a.csv")).unwrap());
        let cb = strip(&fs::read_to_string(dir.join("b.csv")).unwrap());
        assert_eq!(ca, cb);
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn report_totals_match_records() {
        let report = run_experiment(&tiny_config(3), None).unwrap();
        let total: u64 = report.records.iter().map(|r| r.mq_calls).sum();
        assert_eq!(report.mq.total, total);
        assert_eq!(report.budget_violations, 0);
    }
}
