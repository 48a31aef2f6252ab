use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use edslab::elliptic::CurveQ;
use edslab::galois_density::{count_affine_with, empirical_density_with, gl2_table};
use edslab::lrs::LrsSpec;
use edslab::par::Execution;
use edslab::refuter::{find_witness, FinderConfig};

const STRATEGIES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("gl2_table_q23");
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| gl2_table(23, exec)));
    }
    g.finish();
    let mut g = c.benchmark_group("count_affine_q11");
    g.sample_size(20);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| count_affine_with(exec, 11, 3, 2, 13).unwrap()));
    }
    g.finish();
}

fn prime_scans(c: &mut Criterion) {
    let curve = CurveQ::from_i64(-1, 3).unwrap();
    let point = curve.point_i64(2, 3, 1).unwrap();
    let mut g = c.benchmark_group("empirical_density_x20000");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| empirical_density_with(exec, &curve, &point, 3, 3, 20_000, &[]).unwrap())
        });
    }
    g.finish();

    // The CM curve has no witness for q = 5, so this scans every prime below p_max.
    let cm = CurveQ::from_i64(0, 3).unwrap();
    let cm_point = cm.point_i64(1, 2, 1).unwrap();
    let fib = LrsSpec::fibonacci();
    let mut g = c.benchmark_group("find_witness_exhaust_5000");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        let config = FinderConfig { p_max: 5_000, exec, ..FinderConfig::default() };
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| find_witness(&cm, &cm_point, &fib, Some(5), &config).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, prime_scans);
criterion_main!(benches);
