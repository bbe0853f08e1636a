//! Parallel vs sequential timings of the two dominant verification loops:
//! the all-triples Jacobi check (the 14³ bracket loop of the build step) and
//! the quadratic witness-identity polarization sweep behind the geodesic
//! certificates.

use criterion::{criterion_group, criterion_main, Criterion};

use gorbit::catalog::{instantiate, lookup};
use gorbit::exactmath::{Scalar, ScalarField};
use gorbit::gomet::{block_structure, metricform_build, MetricSpec};
use gorbit::liecore::{compact_form, Algebra, Element, RootSystem};
use gorbit::par;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn g2() -> Algebra {
    compact_form(&RootSystem::new("G2").unwrap(), &ScalarField::default_tower()).unwrap()
}

/// All (i, j, k) triples of the Jacobi identity, checked through the chosen
/// map implementation.
fn jacobi_sweep<M>(alg: &Algebra, map: M) -> bool
where
    M: Fn(&[(usize, usize, usize)], &(dyn Fn(&(usize, usize, usize)) -> bool + Sync)) -> Vec<bool>,
{
    let n = alg.dim();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .collect();
    let check = |&(i, j, k): &(usize, usize, usize)| {
        let (x, y, z) = (Element::basis(alg, i), Element::basis(alg, j), Element::basis(alg, k));
        x.bracket(&y.bracket(&z))
            .add(&y.bracket(&z.bracket(&x)))
            .add(&z.bracket(&x.bracket(&y)))
            .is_zero()
    };
    map(&triples, &check).into_iter().all(|b| b)
}

fn bench_jacobi(c: &mut Criterion) {
    let alg = g2();
    let mut group = c.benchmark_group("jacobi_14cubed");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| assert!(jacobi_sweep(&alg, |items, f| par::map(items, f))))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| assert!(jacobi_sweep(&alg, |items, f| par::map_seq(items, f))))
    });
    group.finish();
}

/// The polarization sweep of the witness identity: n + n(n−1)/2 exact
/// candidate directions, each requiring a solve in the 3-dim subalgebra.
fn bench_witness_identity(c: &mut Criterion) {
    let alg = g2();
    let field = alg.field();
    let h1 = instantiate(lookup("h1").unwrap(), &alg).unwrap();
    let k = h1.normalizer();
    let bs = block_structure(&k, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
    let metric = metricform_build(
        &bs,
        &MetricSpec {
            center_metric: None,
            lambdas: vec![Scalar::from_int(field, 2)],
            mus: vec![Scalar::one(field), Scalar::one(field)],
        },
    )
    .unwrap();
    let n = alg.dim();
    let mut candidates: Vec<Element> = (0..n).map(|a| Element::basis(&alg, a)).collect();
    for a in 0..n {
        for b in a + 1..n {
            candidates.push(Element::basis(&alg, a).add(&Element::basis(&alg, b)));
        }
    }
    let check = |x: &Element| -> bool {
        let w = metric.nr_witness(x).unwrap();
        w.add(x).bracket(&metric.apply(x)).is_zero()
    };
    let mut group = c.benchmark_group("witness_identity_sweep");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| assert!(par::map(&candidates, check).into_iter().all(|v| v)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| assert!(par::map_seq(&candidates, check).into_iter().all(|v| v)))
    });
    group.finish();
}

criterion_group!(benches, bench_jacobi, bench_witness_identity);
criterion_main!(benches);
