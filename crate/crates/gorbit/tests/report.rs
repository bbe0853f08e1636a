//! Report shape, determinism, schema validity, and audit-mode round trips.

use gorbit::driver::{
    classify_report, load_or_build_algebra, parse_field_spec, recheck_g2, reproduce_g2,
    reproduce_spn, RunConfig,
};
use gorbit::exactmath::{Scalar, ScalarField};
use gorbit::report::{report_emit, to_json_string};

fn cfg() -> RunConfig {
    RunConfig::new(7, ScalarField::default_tower())
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(format!("schemas/{name}.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn g2_report_structure_determinism_and_recheck() {
    let cfg = cfg();
    let r = reproduce_g2(&cfg);
    assert!(r.passed(), "{}", to_json_string(&r));
    // Exactly the seven step groups, in pipeline order.
    let names: Vec<&str> = r.steps.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(
        names,
        vec![
            "build-g2",
            "catalog-subalgebras",
            "self-normalizing",
            "non-regularity",
            "module-decompositions",
            "weak-regularity",
            "classification",
        ]
    );
    assert!(r.steps.iter().all(|s| s.passed));

    // Validates against the shipped schema.
    let value = serde_json::to_value(&r).unwrap();
    assert!(schema("repro_report").validate(&value).is_ok());

    // Same seed, same tower → byte-identical files.
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    report_emit(&r, &p1).unwrap();
    let r2 = reproduce_g2(&cfg);
    report_emit(&r2, &p2).unwrap();
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());

    // Audit mode: embedded certificates re-verify through the modules.
    recheck_g2(&r, &cfg.field).unwrap();
}

#[test]
fn spn_report_and_preconditions() {
    let cfg = cfg();
    let r = reproduce_spn(&cfg, 1, 1, 1, false).unwrap();
    assert!(r.passed(), "{}", to_json_string(&r));
    let value = serde_json::to_value(&r).unwrap();
    assert!(schema("repro_report").validate(&value).is_ok());
    // Degenerate third block and oversize runs are rejected up front.
    assert!(reproduce_spn(&cfg, 1, 1, 0, false).is_err());
    assert!(reproduce_spn(&cfg, 2, 1, 1, false).is_err());
    assert!(reproduce_spn(&cfg, 2, 2, 1, true).is_err());
}

#[test]
fn go_report_validates() {
    let cfg = cfg();
    let alg = load_or_build_algebra("g2", &cfg.field).unwrap();
    let r = classify_report(&cfg, &alg, "h2").unwrap();
    assert_eq!(r.verdict, "certified-go");
    let value = serde_json::to_value(&r).unwrap();
    assert!(schema("go_report").validate(&value).is_ok());
}

/// Scalars serialize as "a/b" or "a/b*sqrt(d)" summands joined with "+",
/// and the format round-trips bit-exactly.
#[test]
fn scalar_serialization_format() {
    let field = ScalarField::default_tower();
    let x = Scalar::from_ratio(&field, 1, 2)
        .add(&Scalar::sqrt_of_int(&field, 2).unwrap().mul(&Scalar::from_ratio(&field, -3, 4)));
    let s = x.to_string();
    assert_eq!(s, "1/2+-3/4*sqrt(2)");
    assert_eq!(Scalar::parse(&field, &s).unwrap(), x);
    let y = Scalar::sqrt_of_int(&field, 6).unwrap();
    assert_eq!(y.to_string(), "1/1*sqrt(6)");
}

#[test]
fn field_spec_parsing() {
    assert!(parse_field_spec("2,3,5").is_ok());
    assert!(parse_field_spec("rationals").is_ok());
    assert!(parse_field_spec("15").is_ok());
    assert!(parse_field_spec("2,2").is_err());
    assert!(parse_field_spec("banana").is_err());
}
