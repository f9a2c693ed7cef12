use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use polycert::bernstein::{certify_upper_bound, replay_with, Policy, Region, SplitRule, SubProofRegistry};
use polycert::hankel::objectives::{build_bound_polys, Variant};
use polycert::hankel::theorems::{grid_tensors, TRI_DEGREE};
use polycert::parallel::Execution;
use polycert::rational::int;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn grid(c: &mut Criterion) {
    let set = build_bound_polys(Variant::Printed).unwrap();
    let mut g = c.benchmark_group("rtilde_8x8x1_grid");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| grid_tensors(&set.rtilde, &[8, 8, 1], exec).unwrap())
        });
    }
    g.finish();
}

fn certify_and_replay(c: &mut Criterion) {
    let set = build_bound_polys(Variant::Derived).unwrap();
    let reg = SubProofRegistry::new();
    let region = Region::unit(3);
    let mut g = c.benchmark_group("r2tilde_certificate");
    g.sample_size(20);
    for (name, exec) in MODES {
        let mut policy = Policy::adaptive(6).with_exec(exec);
        policy.schedule = vec![SplitRule::Uniform(vec![4, 4, 2])];
        g.bench_function(BenchmarkId::new("certify", name), |b| {
            b.iter(|| certify_upper_bound(&set.r2tilde, &region, &int(16), &policy, &reg).unwrap())
        });
        let cert = certify_upper_bound(&set.r2tilde, &region, &int(16), &policy, &reg).unwrap();
        assert_eq!(cert.degrees, TRI_DEGREE);
        g.bench_function(BenchmarkId::new("replay", name), |b| b.iter(|| replay_with(&cert, &reg, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, grid, certify_and_replay);
criterion_main!(benches);
