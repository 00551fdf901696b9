//! Acceptance suite: each test drives one criterion group of the check
//! registry end to end at exact (rational/cyclotomic) tolerance and prints a
//! pass/fail line. Everything expensive is shared through one lazily built
//! context, so the whole suite stays well inside the time budget.

use equigeo::checks::{
    build_context, load_descriptors, run_checks, CheckReport, CheckStatus, Context, RunConfig,
};
use std::sync::OnceLock;

static CTX: OnceLock<(Context, Vec<equigeo::checks::CheckDescriptor>)> = OnceLock::new();

fn ctx() -> &'static (Context, Vec<equigeo::checks::CheckDescriptor>) {
    CTX.get_or_init(|| {
        let config = RunConfig::default();
        let ctx = build_context(&config).expect("registry loads");
        let descriptors = load_descriptors(&config).expect("checks load");
        (ctx, descriptors)
    })
}

/// Run all checks matching any of the globs; every report must pass (or be
/// skipped-with-reason when listed in `may_skip`).
fn criterion(n: u32, label: &str, globs: &[&str], may_skip: &[&str]) {
    let (ctx, descriptors) = ctx();
    let mut reports: Vec<CheckReport> = Vec::new();
    for g in globs {
        reports.extend(run_checks(ctx, descriptors, Some(g), 2));
    }
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports.dedup_by(|a, b| a.id == b.id);
    assert!(!reports.is_empty(), "criterion {n} matched no checks");
    let mut failures = Vec::new();
    for r in &reports {
        match r.status {
            CheckStatus::Pass => {}
            CheckStatus::SkippedWithReason if may_skip.contains(&r.id.as_str()) => {}
            _ => failures.push(format!("{} [{:?}]: {}", r.id, r.status, r.computed)),
        }
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {n:2}: {verdict} — {label} ({} checks{})",
        reports.len(),
        if may_skip.is_empty() {
            String::new()
        } else {
            let skipped = reports
                .iter()
                .filter(|r| r.status == CheckStatus::SkippedWithReason)
                .count();
            format!(", {skipped} skipped-with-reason")
        }
    );
    assert!(failures.is_empty(), "criterion {n} failures:\n{}", failures.join("\n"));
}

#[test]
fn criterion_01_group_census() {
    criterion(
        1,
        "both generator sets enumerate to order 60 with census {1:1,2:15,3:20,5:24}; adding the involution gives 120",
        &["group.*"],
        &[],
    );
}

#[test]
fn criterion_02_orbit_tables() {
    criterion(
        2,
        "small-orbit scans reproduce the four orbit tables exactly, with every printed representative",
        &["orbit.*", "stab.*"],
        &[],
    );
}

#[test]
fn criterion_03_invariant_dimensions() {
    criterion(
        3,
        "invariant quadrics have dimension 2 (standard) and 1 (nonstandard); invariant cubics dimension 2 with f1, f2 in the span",
        &["invariant.*"],
        &[],
    );
}

#[test]
fn criterion_04_singularity_census() {
    criterion(
        4,
        "five A1 points on the first cubic, five A2 points on the second, the quadric section has nodes exactly at the length-5 orbit",
        &["sing.*"],
        &[],
    );
}

#[test]
fn criterion_05_cremona_images() {
    criterion(
        5,
        "five-point birational images are invariant cubics with the right 5×A1 / 5×A2 census; the nonstandard images land in span{f1, f2}",
        &["cremona.*"],
        &[],
    );
}

#[test]
fn criterion_06_pencil_singular_members() {
    criterion(
        6,
        "pencil singular parameters recovered at the stated points; quartic normal curves singular along the non-normal members",
        &["pencil.*"],
        &[],
    );
}

#[test]
fn criterion_07_containments() {
    criterion(
        7,
        "every curve orbit lies in its stated pencil member; line orbits and the genus-4 sextic lie in the invariant hyperplane section",
        &["contain.*"],
        &[],
    );
}

#[test]
fn criterion_08_disjointness() {
    criterion(
        8,
        "line orbits pairwise disjoint where stated; the ten lines through singular-point pairs meet exactly there",
        &["disjoint.*", "meet.*"],
        &[],
    );
}

#[test]
fn criterion_09_linear_system_dimensions() {
    criterion(
        9,
        "dim(V15 ∩ V20) = 5; dim(V20 ∩ V30) < 9 for all five families; 34 = 35 − 1 bookkeeping",
        &["linsys.*"],
        &[],
    );
}

#[test]
fn criterion_10_lattice_ledger() {
    criterion(
        10,
        "every displayed intersection number reproduces exactly (det 186, −2, −4, roots {−2, 0}, 4, −6, −32, −42, the four exclusions)",
        &["lattice.*"],
        &[],
    );
}

#[test]
fn criterion_11_base_locus_certificates() {
    criterion(
        11,
        "cubics through the six lines avoid every probe; the external degree-8 input is skipped-with-reason when absent",
        &["base.*"],
        &["base.615.c8"],
    );
}

#[test]
fn criterion_12_property_suites() {
    criterion(
        12,
        "field axioms, Euler identities, orbit–stabilizer, substitution functoriality, pairing multilinearity: 1000 exact trials each",
        &["prop.*"],
        &[],
    );
}
