use dnfrt_core::boolfn::Rat;
use dnfrt_core::harness::{run_experiment, ExperimentConfig, InstanceKind, InstanceSpec, WidthDist};
use dnfrt_core::params::Mode;

fn main() {
    let t0 = std::time::Instant::now();
    for (label, kind, n, s, seed) in [
        ("yes s=1", InstanceKind::RandomDnf, 12usize, 1usize, 7u64),
        ("yes s=2", InstanceKind::RandomDnf, 12, 2, 8),
        ("yes s=3", InstanceKind::RandomDnf, 12, 3, 9),
    ] {
        let cfg = ExperimentConfig {
            instance: InstanceSpec { kind, n, s, width: WidthDist::Uniform { lo: 2, hi: 4 }, seed, var_pool: Some(6) },
            s,
            eps: Rat::new(1, 4),
            mode: Mode::Desk,
            overrides: vec![],
            trials: 10,
            master_seed: 1,
        };
        let t = std::time::Instant::now();
        let rep = run_experiment(&cfg, None).unwrap();
        println!(
            "{label}: accepts={}/{} reasons={:?} mq_max={} wall={:?}",
            rep.accepts, rep.trials, rep.reasons, rep.mq.max, t.elapsed()
        );
    }
    println!("total {:?}", t0.elapsed());
}
