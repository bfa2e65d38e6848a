use std::rc::Rc;
use std::sync::Arc;

use dnfrt_core::boolfn::{Rat, TruthTable};
use dnfrt_core::harness::{realize, InstanceKind, InstanceSpec, WidthDist};
use dnfrt_core::oracle::{Membership, MqHandle, SampHandle, Sampler, SeedTree};
use dnfrt_core::params::ParameterSet;
use dnfrt_core::pooling::{find_factored_dnfs, FindOutcome};
use dnfrt_core::tester::test_factored_dnf;

fn main() {
    let spec = InstanceSpec {
        kind: InstanceKind::RandomDnf,
        n: 12,
        s: 2,
        width: WidthDist::Uniform { lo: 3, hi: 5 },
        seed: 8,
        var_pool: Some(6),
    };
    let inst = realize(&spec).unwrap();
    println!("instance: {:?}", inst.dnf.as_ref().unwrap());
    let params = ParameterSet::desk(2, Rat::new(1, 4)).unwrap();
    let seed = SeedTree::new(1).child_indexed("trial", 0);
    let mq = Rc::new(MqHandle::new(inst.table.clone(), "f"));
    let samp = Rc::new(SampHandle::new(&inst.table, seed.child("samp"), "f").unwrap());
    let report = find_factored_dnfs(&mq, &samp, &params, seed.child("pools"));
    println!("pools: {}", report.pools.len());
    for p in &report.pools {
        println!("  pool {}: members={} counter={} heavy={}", p.id, p.members.len(), p.counter, p.heavy);
    }
    let FindOutcome::Oracles(pairs) = report.outcome else { println!("REJECT"); return };
    println!("pairs: {}", pairs.len());
    for (i, pair) in pairs.iter().enumerate() {
        // ground truth h_P
        let f = inst.dnf.as_ref().unwrap();
        let covered = dnfrt_core::harness::terms_of_pool(f, &pair.pool.members);
        println!("pair {i}: covered terms {covered:?}");
        let hp = f.sub_dnf(&covered);
        let hp_table = Arc::new(TruthTable::from_fn(&hp).unwrap());
        for r in 1..=2usize {
            // simulated oracles
            let mq_i: Rc<dyn Membership> = pair.mq.clone();
            let samp_i: Rc<dyn Sampler> = pair.samp.clone();
            let mut sim_acc = 0;
            let mut reasons = std::collections::BTreeMap::new();
            for rep in 0..12u64 {
                let v = test_factored_dnf(&mq_i, &samp_i, r, params.mu, params.fact_eps, &params,
                    seed.child_indexed("probe", (r as u64) * 100 + rep)).unwrap();
                if v.accept { sim_acc += 1; }
                *reasons.entry(format!("{:?}", v.reason)).or_insert(0) += 1;
            }
            // perfect oracles
            let mut per_acc = 0;
            let mut per_reasons = std::collections::BTreeMap::new();
            for rep in 0..12u64 {
                let s2 = seed.child_indexed("perf", (r as u64) * 100 + rep);
                let mq_p: Rc<dyn Membership> = Rc::new(MqHandle::new(hp_table.clone(), "h"));
                let samp_p: Rc<dyn Sampler> = Rc::new(SampHandle::new(&hp_table, s2.child("samp"), "h").unwrap());
                let v = test_factored_dnf(&mq_p, &samp_p, r, params.mu, params.fact_eps, &params, s2).unwrap();
                if v.accept { per_acc += 1; }
                *per_reasons.entry(format!("{:?}", v.reason)).or_insert(0) += 1;
            }
            println!("  r={r}: sim {sim_acc}/12 {reasons:?} | perfect {per_acc}/12 {per_reasons:?}");
        }
    }
}
