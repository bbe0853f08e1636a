//! Subalgebra analysis on the compact G2: normalizers, centralizers, ranks,
//! regularity, module decompositions, weak regularity, and the known
//! explicit spans.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gorbit::catalog::{instantiate, lookup, parse_recipe};
use gorbit::exactmath::ScalarField;
use gorbit::liecore::{compact_form, Algebra, Element, RootSystem};
use gorbit::repth::{decompose, hom_space, verify_decomposition, InvariantModule};
use gorbit::subalg::{SubalgError, Subalgebra};

fn g2() -> Algebra {
    let field = ScalarField::default_tower();
    let rs = RootSystem::new("G2").unwrap();
    compact_form(&rs, &field).unwrap()
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(7)
}

fn entry(alg: &Algebra, name: &str) -> Subalgebra {
    instantiate(lookup(name).unwrap(), alg).unwrap()
}

#[test]
fn catalog_entries_close() {
    let alg = g2();
    for e in gorbit::catalog::G2_CATALOG {
        let sub = instantiate(e, &alg).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        assert!(sub.dim() > 0, "{} is empty", e.name);
    }
    assert_eq!(entry(&alg, "h1").dim(), 3);
    assert_eq!(entry(&alg, "h2").dim(), 3);
    assert_eq!(entry(&alg, "su3").dim(), 8);
    assert_eq!(entry(&alg, "g2").dim(), 14);
}

#[test]
fn corrupted_recipe_fails_closure() {
    let alg = g2();
    // Swap one h1 basis vector for an unrelated root vector.
    let bad = vec![
        parse_recipe(&alg, "sqrt(2)*F[3a+2b] - sqrt(2)*F[b]").unwrap(),
        parse_recipe(&alg, "G[a+b]").unwrap(),
        parse_recipe(&alg, "2*iH[3a+b]").unwrap(),
    ];
    match Subalgebra::span_closure_check(&alg, bad) {
        Err(SubalgError::NotClosed { .. }) => {}
        other => panic!("expected closure failure, got {:?}", other.map(|s| s.dim())),
    }
}

#[test]
fn normalizers_and_centralizers() {
    let alg = g2();
    let mut rng = rng();
    for name in ["h1", "h2"] {
        let h = entry(&alg, name);
        let n = h.normalizer();
        assert_eq!(n.dim(), 3, "{name} must be self-normalizing");
        assert!(h.basis().iter().all(|x| n.contains(x)));
        assert_eq!(h.centralizer().dim(), 0, "{name} has trivial centralizer");
        let rank = h.rank(&mut rng).unwrap();
        assert_eq!(rank.rank, 1, "{name} has rank 1");
        let reg = h.is_regular(&mut rng).unwrap();
        assert!(!reg.regular, "{name} is not regular");
        assert_eq!(reg.ambient_rank, 2);
        assert_eq!(reg.normalizer_rank, 1);
    }
    // The Cartan subalgebra is self-normalizing and regular.
    let t = entry(&alg, "cartan");
    assert_eq!(t.normalizer().dim(), 2);
    let reg = t.is_regular(&mut rng).unwrap();
    assert!(reg.regular);
    // The centralizer of the whole simple algebra is zero.
    assert_eq!(Subalgebra::full(&alg).centralizer().dim(), 0);
}

#[test]
fn ambient_rank_is_two() {
    let alg = g2();
    let cert = Subalgebra::full(&alg).rank(&mut rng()).unwrap();
    assert_eq!(cert.rank, 2);
    // The certificate really is abelian.
    for (i, x) in cert.cartan.iter().enumerate() {
        for y in &cert.cartan[i + 1..] {
            assert!(x.bracket(y).is_zero());
        }
    }
}

#[test]
fn h1_module_decomposition() {
    let alg = g2();
    let mut rng = rng();
    let h1 = entry(&alg, "h1");
    let m = h1.orthocomplement();
    assert_eq!(m.len(), 11);
    let dec = decompose(&h1, &m, &mut rng).unwrap();
    let mut dims: Vec<usize> = dec.modules.iter().map(|u| u.dim()).collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![5, 6]);
    assert!(dec.certificates.iter().all(|c| c.is_certified()));
    assert_eq!(dec.classes.len(), 2, "p and q are inequivalent");
    // Hom(p, q) = 0 directly.
    assert!(hom_space(&dec.modules[0], &dec.modules[1]).is_empty());
}

#[test]
fn h1_explicit_spans_verify() {
    let alg = g2();
    let mut rng = rng();
    let h1 = entry(&alg, "h1");
    let p = vec![
        parse_recipe(&alg, "sqrt(2)*F[3a+2b] + sqrt(2)*F[b]").unwrap(),
        parse_recipe(&alg, "sqrt(2)*G[3a+2b] - sqrt(2)*G[b]").unwrap(),
        parse_recipe(&alg, "2*iH[a+b]").unwrap(),
        parse_recipe(&alg, "F[3a+b]").unwrap(),
        parse_recipe(&alg, "G[3a+b]").unwrap(),
    ];
    let q = vec![
        parse_recipe(&alg, "F[a]").unwrap(),
        parse_recipe(&alg, "G[a]").unwrap(),
        parse_recipe(&alg, "F[a+b]").unwrap(),
        parse_recipe(&alg, "G[a+b]").unwrap(),
        parse_recipe(&alg, "F[2a+b]").unwrap(),
        parse_recipe(&alg, "G[2a+b]").unwrap(),
    ];
    let m = h1.orthocomplement();
    let certs = verify_decomposition(&h1, &m, &[p, q], &mut rng).unwrap();
    assert!(certs.iter().all(|c| c.is_certified()));
}

#[test]
fn h2_module_is_irreducible() {
    let alg = g2();
    let mut rng = rng();
    let h2 = entry(&alg, "h2");
    let m = h2.orthocomplement();
    assert_eq!(m.len(), 11);
    let dec = decompose(&h2, &m, &mut rng).unwrap();
    assert_eq!(dec.modules.len(), 1);
    assert_eq!(dec.modules[0].dim(), 11);
    assert!(dec.certificates[0].is_certified());
    // The explicit m-basis is invariant and irreducible.
    let claimed = vec![
        parse_recipe(&alg, "sqrt(10)*F[a] - 3*sqrt(6)*F[b]").unwrap(),
        parse_recipe(&alg, "sqrt(10)*G[a] - 3*sqrt(6)*G[b]").unwrap(),
        parse_recipe(&alg, "2*iH[a-b]").unwrap(),
        parse_recipe(&alg, "F[a+b]").unwrap(),
        parse_recipe(&alg, "G[a+b]").unwrap(),
        parse_recipe(&alg, "F[2a+b]").unwrap(),
        parse_recipe(&alg, "G[2a+b]").unwrap(),
        parse_recipe(&alg, "F[3a+b]").unwrap(),
        parse_recipe(&alg, "G[3a+b]").unwrap(),
        parse_recipe(&alg, "F[3a+2b]").unwrap(),
        parse_recipe(&alg, "G[3a+2b]").unwrap(),
    ];
    let certs = verify_decomposition(&h2, &m, &[claimed], &mut rng).unwrap();
    assert_eq!(certs.len(), 1);
    assert!(certs[0].is_certified());
}

#[test]
fn wrong_span_is_rejected() {
    let alg = g2();
    let mut rng = rng();
    let h1 = entry(&alg, "h1");
    let m = h1.orthocomplement();
    // Deliberately wrong: a "p" containing a root plane from q.
    let bad_p = vec![
        parse_recipe(&alg, "sqrt(2)*F[3a+2b] + sqrt(2)*F[b]").unwrap(),
        parse_recipe(&alg, "sqrt(2)*G[3a+2b] - sqrt(2)*G[b]").unwrap(),
        parse_recipe(&alg, "2*iH[a+b]").unwrap(),
        parse_recipe(&alg, "F[a]").unwrap(),
        parse_recipe(&alg, "G[a]").unwrap(),
    ];
    let bad_q = vec![
        parse_recipe(&alg, "F[3a+b]").unwrap(),
        parse_recipe(&alg, "G[3a+b]").unwrap(),
        parse_recipe(&alg, "F[a+b]").unwrap(),
        parse_recipe(&alg, "G[a+b]").unwrap(),
        parse_recipe(&alg, "F[2a+b]").unwrap(),
        parse_recipe(&alg, "G[2a+b]").unwrap(),
    ];
    assert!(verify_decomposition(&h1, &m, &[bad_p, bad_q], &mut rng).is_err());
}

#[test]
fn weak_regularity_of_catalog() {
    let alg = g2();
    for name in ["h1", "h2", "cartan"] {
        let h = entry(&alg, name);
        let wr = h.weak_regularity().unwrap();
        assert!(wr.weakly_regular, "{name} must be weakly regular");
        assert_eq!(wr.hom_km_dim, 0);
        assert_eq!(wr.hom_mk_dim, 0);
    }
}

#[test]
fn hom_space_is_symmetric_in_dimension() {
    let alg = g2();
    let mut rng = rng();
    let h1 = entry(&alg, "h1");
    let m = h1.orthocomplement();
    let dec = decompose(&h1, &m, &mut rng).unwrap();
    let adj = InvariantModule::new(&h1, h1.basis().to_vec()).unwrap();
    for u in dec.modules.iter().chain(std::iter::once(&adj)) {
        for v in dec.modules.iter().chain(std::iter::once(&adj)) {
            assert_eq!(hom_space(u, v).len(), hom_space(v, u).len());
        }
    }
}

#[test]
fn su2su2_ideal_decomposition() {
    let alg = g2();
    let mut rng = rng();
    let k = entry(&alg, "su2su2");
    let dec = k.ideal_decomposition(&mut rng).unwrap();
    assert!(dec.center.is_empty());
    assert_eq!(dec.ideals.len(), 2);
    assert!(dec.ideals.iter().all(|i| i.len() == 3));
}

#[test]
fn abelian_ideal_decomposition() {
    let alg = g2();
    let mut rng = rng();
    let t = entry(&alg, "cartan");
    let dec = t.ideal_decomposition(&mut rng).unwrap();
    assert_eq!(dec.center.len(), 2);
    assert!(dec.ideals.is_empty());
}

#[test]
fn single_element_is_abelian_subalgebra() {
    let alg = g2();
    let x = Element::basis(&alg, 5);
    let sub = Subalgebra::span_closure_check(&alg, vec![x]).unwrap();
    assert_eq!(sub.dim(), 1);
}
