use gorbit::exactmath::ScalarField;
use gorbit::liecore::{compact_form, compact_sp, RootSystem};

#[test]
fn g2_smoke() {
    let field = ScalarField::default_tower();
    let rs = RootSystem::new("G2").unwrap();
    assert_eq!(rs.roots.len(), 12);
    assert_eq!(rs.positive.len(), 6);
    let alg = compact_form(&rs, &field).unwrap();
    assert_eq!(alg.dim(), 14);
    assert!(alg.jacobi_witness().is_none(), "Jacobi fails");
    assert!(alg.killing_invariance_witness().is_none());
    assert!(alg.killing_negative_definite());
    for l in alg.labels() { println!("{l}"); }
}

#[test]
fn sp3_smoke() {
    let field = ScalarField::rationals();
    let alg = compact_sp(3, &field).unwrap();
    assert_eq!(alg.dim(), 21);
    assert!(alg.jacobi_witness().is_none(), "sp3 Jacobi fails");
    assert!(alg.killing_negative_definite());
}

#[test]
fn others_smoke() {
    let field = ScalarField::rationals();
    for label in ["A1", "A2", "C3", "B2", "D4"] {
        let rs = RootSystem::new(label).unwrap();
        let alg = compact_form(&rs, &field).unwrap();
        assert!(alg.jacobi_witness().is_none(), "{label} Jacobi fails");
        assert!(alg.killing_negative_definite(), "{label} not neg def");
    }
}
