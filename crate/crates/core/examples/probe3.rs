use dnfrt_core::boolfn::Rat;
use dnfrt_core::harness::{certify_far, realize, run_experiment, ExperimentConfig, InstanceKind, InstanceSpec, WidthDist};
use dnfrt_core::params::Mode;

fn main() {
    let t0 = std::time::Instant::now();
    for (label, kind, n, s, seed) in [
        ("far-xor s=1", InstanceKind::FarXor, 8usize, 1usize, 3u64),
        ("far-xor s=2", InstanceKind::FarXor, 8, 2, 4),
        ("far-rand s=1", InstanceKind::FarRandomDensity, 7, 1, 5),
        ("far-rand s=2", InstanceKind::FarRandomDensity, 7, 2, 6),
    ] {
        let spec = InstanceSpec { kind, n, s, width: WidthDist::Fixed(3), seed, var_pool: None };
        let inst = realize(&spec).unwrap();
        let cert = certify_far(&inst.table, s).unwrap();
        let cfg = ExperimentConfig {
            instance: spec, s,
            eps: Rat::new(1, 4),
            mode: Mode::Desk,
            overrides: vec![],
            trials: 20,
            master_seed: 2,
        };
        let t = std::time::Instant::now();
        let rep = run_experiment(&cfg, None).unwrap();
        println!(
            "{label}: reldist={} rejects={}/{} reasons={:?} wall={:?}",
            cert.min_reldist, rep.trials - rep.accepts, rep.trials, rep.reasons, t.elapsed()
        );
    }
    println!("total {:?}", t0.elapsed());
}
