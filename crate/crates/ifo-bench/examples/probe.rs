use ifo_core::families::*;
use ifo_core::verifier::*;
use ifo_core::limits::Limits;
use std::time::Instant;

fn main() {
    // Risk 1: antichain on two_event(8, 12) within 60s, 10 seeds.
    for seed in 0..10u64 {
        let inst = family_random_two_event(8, 12, seed).unwrap();
        let t = Instant::now();
        let v = verify(&inst, Algo::Antichain);
        let anti_ms = t.elapsed().as_millis();
        let t = Instant::now();
        let opts = VerifyOptions { algo: Algo::Trellis, limits: Limits::default().with_budget(1<<20), cartesian_fast_path: true };
        let tv = verify_with(&inst, &opts);
        let tr_ms = t.elapsed().as_millis();
        println!("seed {seed}: antichain {:?} nodes={} peak={} in {anti_ms}ms | trellis {:?} elems={} in {tr_ms}ms",
            v.kind, v.stats.explored, v.stats.antichain_peak, tv.kind, tv.stats.explored);
    }
}
