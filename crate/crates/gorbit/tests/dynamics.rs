//! Euler–Arnold cross-checks: the integrated body velocity must follow the
//! one-parameter orbit exp(t·ad_W)(X) whenever the witness identity holds,
//! and visibly depart from it when it does not.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gorbit::catalog::{instantiate, lookup};
use gorbit::dynamics::{euler_arnold_check, euler_arnold_deviation};
use gorbit::exactmath::{Scalar, ScalarField};
use gorbit::gomet::{block_structure, metricform_build, BlockKind, MetricSpec};
use gorbit::liecore::{compact_form, Algebra, Element, RootSystem};
use gorbit::subalg::Subalgebra;

fn g2() -> Algebra {
    let field = ScalarField::default_tower();
    let rs = RootSystem::new("G2").unwrap();
    compact_form(&rs, &field).unwrap()
}

fn random_element(alg: &Algebra, rng: &mut ChaCha8Rng) -> Element {
    let field = alg.field();
    let mut x = Element::zero(alg);
    for i in 0..alg.dim() {
        let c: i64 = rng.gen_range(-2..=2);
        if c != 0 {
            x = x.add(&Element::basis(alg, i).scale(&Scalar::from_int(field, c)));
        }
    }
    x
}

/// Λ = Id: bi-invariant geodesics are one-parameter subgroups, V(t) ≡ X.
#[test]
fn identity_metric_is_constant() {
    let alg = g2();
    let field = alg.field();
    let full = Subalgebra::full(&alg);
    let k = full.normalizer();
    let bs = block_structure(&k, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
    let metric = metricform_build(
        &bs,
        &MetricSpec { center_metric: None, lambdas: vec![Scalar::one(field)], mus: vec![] },
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let x = random_element(&alg, &mut rng);
    let r = euler_arnold_check(&metric, &full, &x, 10.0, 1e-3).unwrap();
    assert!(r.max_deviation < 1e-10, "deviation {}", r.max_deviation);
    assert!(r.energy_drift < 1e-8, "energy drift {}", r.energy_drift);
}

/// Naturally reductive Λ over h₁: ten seeded directions, each integrated
/// over T = 5 and matched against the closed-form orbit.
#[test]
fn nr_metric_over_h1_follows_orbit() {
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
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..10 {
        let x = random_element(&alg, &mut rng);
        let r = euler_arnold_check(&metric, &h1, &x, 5.0, 1e-3).unwrap();
        assert!(r.max_deviation < 1e-7, "trial {trial}: deviation {}", r.max_deviation);
    }
}

/// A non-g.o. Λ (distinct root-plane eigenvalues over the Cartan): no fixed
/// W keeps the orbit close; with the witness-formula W the gap is large.
#[test]
fn non_go_metric_departs_from_orbit() {
    let alg = g2();
    let field = alg.field();
    let t = instantiate(lookup("cartan").unwrap(), &alg).unwrap();
    let k = t.normalizer();
    let bs = block_structure(&k, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
    let mut mus: Vec<Scalar> = (0..6).map(|j| Scalar::from_int(field, j + 1)).collect();
    mus[0] = Scalar::from_int(field, 4);
    let metric = metricform_build(
        &bs,
        &MetricSpec { center_metric: None, lambdas: vec![], mus },
    )
    .unwrap();
    // X across two planes with distinct eigenvalues.
    let planes: Vec<&gorbit::gomet::MetricBlock> = bs
        .blocks
        .iter()
        .filter(|b| matches!(b.kind, BlockKind::MSummand(_)))
        .collect();
    let x = planes[0].basis[0].add(&planes[1].basis[0]);
    // No witness exists at this X.
    assert!(euler_arnold_check(&metric, &t, &x, 5.0, 1e-3).is_err());
    // The orbit for W = 0 (and indeed any fixed W) departs visibly.
    let r = euler_arnold_deviation(&metric, &Element::zero(&alg), &x, 5.0, 1e-3).unwrap();
    assert!(r.max_deviation > 1e-2, "deviation only {}", r.max_deviation);
}
