//! The JSON ledger must be byte-identical across runs, and skip semantics
//! must never silently pass.

use equigeo::checks::{
    build_context, emit_json, emit_markdown, load_descriptors, run_checks, CheckStatus, RunConfig,
};

#[test]
fn json_ledger_is_byte_identical() {
    let config = RunConfig::default();
    let ctx = build_context(&config).unwrap();
    let descriptors = load_descriptors(&config).unwrap();
    let r1 = run_checks(&ctx, &descriptors, Some("lattice.*"), 3);
    let r2 = run_checks(&ctx, &descriptors, Some("lattice.*"), 1);
    assert_eq!(emit_json(&r1, 120), emit_json(&r2, 120));
}

#[test]
fn zweb_checks_skip_without_the_optional_data() {
    let config = RunConfig::default();
    let ctx = build_context(&config).unwrap();
    let descriptors = load_descriptors(&config).unwrap();
    let reports = run_checks(&ctx, &descriptors, Some("base.615.c8"), 1);
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].status, CheckStatus::SkippedWithReason);
    assert!(reports[0].computed.contains("not present"));
    let md = emit_markdown(&reports);
    assert!(md.contains("skip"));
}

#[test]
fn zweb_checks_run_when_the_optional_data_is_supplied() {
    // Exercise the optional-data path end to end with a synthetic curve:
    // derive a conic on the quadric, render its parametrization into a
    // registry carrying a zweb section, and re-run the dependent check.
    let config = RunConfig::default();
    let ctx = build_context(&config).unwrap();
    let plane = ctx.reg.plane("C5_x2").unwrap();
    let quadric = ctx.reg.form("X2").unwrap();
    let conic = equigeo::variety::conic_through(&plane, &quadric, &[]).unwrap();
    let lits: Vec<String> = conic.param.iter().map(|p| p.render()).collect();

    let mut doc: serde_json::Value =
        serde_json::from_str(equigeo::registry::BUILTIN_REGISTRY).unwrap();
    doc["zweb"] = serde_json::json!({ "C8_x2": lits });
    let config = RunConfig {
        registry_json: Some(doc.to_string()),
        ..RunConfig::default()
    };
    let ctx = build_context(&config).unwrap();
    let descriptors = load_descriptors(&config).unwrap();
    let reports = run_checks(&ctx, &descriptors, Some("base.615.c8"), 1);
    assert_eq!(reports.len(), 1);
    // With data present the check actually runs (the synthetic stand-in is a
    // conic, so the certificate itself must still hold for it).
    assert_eq!(reports[0].status, CheckStatus::Pass, "{}", reports[0].computed);
}

#[test]
fn every_descriptor_kind_is_known() {
    // `verify describe` must work for every id, and ids are unique.
    let config = RunConfig::default();
    let descriptors = load_descriptors(&config).unwrap();
    let mut ids: Vec<&str> = descriptors.iter().map(|d| d.id.as_str()).collect();
    ids.sort_unstable();
    let n = ids.len();
    ids.dedup();
    assert_eq!(ids.len(), n);
}
