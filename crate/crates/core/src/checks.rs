//! Named-check registry and runner: every computational claim the toolkit
//! verifies is declared as a data entry (id, anchor, kind, parameters,
//! expected value) in an embedded JSON document; the runner executes matching
//! checks concurrently, deterministically, and emits machine-readable JSON or
//! human markdown ledgers.

use crate::cremona::{census_all_of, cremona_image};
use crate::cyclo::Cyc;
use crate::group::{orbit_of_subspace, small_orbits_on, MatrixGroup, ProjPoint, ScanReport};
use crate::lattice;
use crate::linalg::Matrix;
use crate::poly::MultiPoly;
use crate::registry::{Registry, RegistryError};
use crate::variety::{self, RationalCurve, SingType};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

pub const BUILTIN_CHECKS: &str = include_str!("../checks.json");

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CheckDescriptor {
    pub id: String,
    pub anchor: String,
    pub category: String,
    pub kind: String,
    #[serde(default)]
    pub params: serde_json::Value,
    pub expected: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    SkippedWithReason,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub anchor: String,
    pub category: String,
    pub status: CheckStatus,
    pub computed: String,
    pub expected: String,
    #[serde(skip)]
    pub wall_ms: u128,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub conductor: u32,
    pub jobs: usize,
    pub registry_json: Option<String>,
    pub checks_json: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            conductor: 120,
            jobs: 0, // rayon default
            registry_json: None,
            checks_json: None,
        }
    }
}

/// Shared computation context with caches for the expensive artifacts.
pub struct Context {
    pub reg: Registry,
    scans: Mutex<BTreeMap<String, Arc<ScanReport>>>,
    curves: Mutex<BTreeMap<String, Arc<RationalCurve>>>,
}

impl Context {
    pub fn new(reg: Registry) -> Context {
        Context {
            reg,
            scans: Mutex::new(BTreeMap::new()),
            curves: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn scan(&self, group: &str, form_key: &str, max_len: usize) -> Result<Arc<ScanReport>, String> {
        let key = format!("{group}|{form_key}|{max_len}");
        if let Some(s) = self.scans.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let grp = self.reg.group(group).map_err(err_str)?;
        let form = self.reg.form(form_key).map_err(err_str)?;
        let scan = Arc::new(small_orbits_on(&grp, &form, max_len));
        self.scans.lock().unwrap().insert(key, scan.clone());
        Ok(scan)
    }

    /// All points of all orbits in a scan (used as exact-point candidates).
    fn scan_points(&self, group: &str, form_key: &str, max_len: usize) -> Result<Vec<ProjPoint>, String> {
        let scan = self.scan(group, form_key, max_len)?;
        let mut out = Vec::new();
        for o in &scan.orbits {
            out.extend(o.orbit.points.iter().cloned());
        }
        Ok(out)
    }

    /// Parametrized conic for a registered plane on a registered quadric.
    pub fn conic(&self, plane_key: &str, quadric_key: &str, group: &str) -> Result<Arc<RationalCurve>, String> {
        let key = format!("conic|{plane_key}|{quadric_key}");
        if let Some(c) = self.curves.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let plane = self.reg.plane(plane_key).map_err(err_str)?;
        let quadric = self.reg.form(quadric_key).map_err(err_str)?;
        let candidates = self.scan_points(group, quadric_key, 19)?;
        let conic = variety::conic_through(&plane, &quadric, &candidates)
            .ok_or_else(|| format!("failed to parametrize conic {plane_key} on {quadric_key}"))?;
        let conic = Arc::new(conic);
        self.curves.lock().unwrap().insert(key, conic.clone());
        Ok(conic)
    }

    /// The invariant quartic normal curve singular on the given pencil member.
    pub fn quartic(&self, member_key: &str, quadric_key: &str, group: &str, seed_rep: &str) -> Result<Arc<RationalCurve>, String> {
        let key = format!("quartic|{member_key}");
        if let Some(c) = self.curves.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let grp = self.reg.group(group).map_err(err_str)?;
        let quadric = self.reg.form(quadric_key).map_err(err_str)?;
        let member = self.reg.form(member_key).map_err(err_str)?;
        let rep = self.reg.point(seed_rep).map_err(err_str)?;
        let scan = self.scan(group, quadric_key, 19)?;
        let orbit = scan
            .find_orbit_of(&rep)
            .ok_or_else(|| format!("seed orbit of {seed_rep} not found"))?;
        let curve = variety::derive_invariant_quartic(&grp, &quadric, &member, &orbit.orbit.points)
            .ok_or_else(|| format!("failed to derive the invariant quartic for {member_key}"))?;
        let curve = Arc::new(curve);
        self.curves.lock().unwrap().insert(key, curve.clone());
        Ok(curve)
    }

    /// A curve from a descriptor: a registered line, a derived conic, or a
    /// derived quartic.
    pub fn curve(&self, desc: &serde_json::Value) -> Result<RationalCurve, String> {
        let kind = jstr(desc, "type")?;
        match kind.as_str() {
            "line" => {
                let line = self.reg.line(&jstr(desc, "key")?).map_err(err_str)?;
                Ok(RationalCurve::from_line(&line))
            }
            "conic" => {
                let c = self.conic(
                    &jstr(desc, "plane")?,
                    &jstr(desc, "quadric")?,
                    &jstr(desc, "group")?,
                )?;
                Ok((*c).clone())
            }
            "quartic" => {
                let c = self.quartic(
                    &jstr(desc, "member")?,
                    &jstr(desc, "quadric")?,
                    &jstr(desc, "group")?,
                    &jstr(desc, "seed")?,
                )?;
                Ok((*c).clone())
            }
            other => Err(format!("unknown curve type {other}")),
        }
    }
}

fn err_str<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn jstr(v: &serde_json::Value, key: &str) -> Result<String, String> {
    v.get(key)
        .and_then(|x| x.as_str())
        .map(|s| s.to_string())
        .ok_or_else(|| format!("missing string parameter '{key}'"))
}

fn jint(v: &serde_json::Value, key: &str) -> Result<i64, String> {
    v.get(key)
        .and_then(|x| x.as_i64())
        .ok_or_else(|| format!("missing integer parameter '{key}'"))
}

fn jarr<'a>(v: &'a serde_json::Value, key: &str) -> Result<&'a Vec<serde_json::Value>, String> {
    v.get(key)
        .and_then(|x| x.as_array())
        .ok_or_else(|| format!("missing array parameter '{key}'"))
}

/// A simple glob: '*' matches any run of characters.
pub fn glob_match(pattern: &str, text: &str) -> bool {
    fn inner(p: &[u8], t: &[u8]) -> bool {
        match (p.first(), t.first()) {
            (None, None) => true,
            (Some(b'*'), _) => {
                inner(&p[1..], t) || (!t.is_empty() && inner(p, &t[1..]))
            }
            (Some(c), Some(d)) if c == d => inner(&p[1..], &t[1..]),
            _ => false,
        }
    }
    inner(pattern.as_bytes(), text.as_bytes())
}

pub fn load_descriptors(config: &RunConfig) -> Result<Vec<CheckDescriptor>, String> {
    let text = config.checks_json.as_deref().unwrap_or(BUILTIN_CHECKS);
    let descriptors: Vec<CheckDescriptor> = serde_json::from_str(text).map_err(err_str)?;
    let mut ids = std::collections::BTreeSet::new();
    for d in &descriptors {
        if !ids.insert(d.id.clone()) {
            return Err(format!("duplicate check id {}", d.id));
        }
    }
    Ok(descriptors)
}

pub fn build_context(config: &RunConfig) -> Result<Context, RegistryError> {
    let reg = match &config.registry_json {
        Some(text) => Registry::from_json(text, Some(config.conductor))?,
        None => Registry::new(config.conductor)?,
    };
    Ok(Context::new(reg))
}

/// Run the checks matching the filter; reports sorted by id.
pub fn run_checks(
    ctx: &Context,
    descriptors: &[CheckDescriptor],
    filter: Option<&str>,
    jobs: usize,
) -> Vec<CheckReport> {
    let selected: Vec<&CheckDescriptor> = descriptors
        .iter()
        .filter(|d| filter.is_none_or(|f| glob_match(f, &d.id)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let mut reports: Vec<CheckReport> = pool.install(|| {
        use rayon::prelude::*;
        selected.par_iter().map(|d| run_one(ctx, d)).collect()
    });
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

pub fn run_one(ctx: &Context, d: &CheckDescriptor) -> CheckReport {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        dispatch(ctx, &d.kind, &d.params)
    }));
    let (status, computed) = match outcome {
        Ok(Ok(Outcome::Pass(computed))) => (CheckStatus::Pass, computed),
        Ok(Ok(Outcome::Fail(computed))) => (CheckStatus::Fail, computed),
        Ok(Ok(Outcome::Skip(reason))) => (CheckStatus::SkippedWithReason, reason),
        Ok(Err(msg)) => (CheckStatus::Fail, format!("error: {msg}")),
        Err(_) => (CheckStatus::Fail, "panic during check".to_string()),
    };
    CheckReport {
        id: d.id.clone(),
        anchor: d.anchor.clone(),
        category: d.category.clone(),
        status,
        computed,
        expected: d.expected.clone(),
        wall_ms: start.elapsed().as_millis(),
    }
}

pub enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn pass_if(cond: bool, computed: String) -> Outcome {
    if cond {
        Outcome::Pass(computed)
    } else {
        Outcome::Fail(computed)
    }
}

fn dispatch(ctx: &Context, kind: &str, p: &serde_json::Value) -> Result<Outcome, String> {
    match kind {
        "group_census" => group_census(ctx, p),
        "orbit_entry" => orbit_entry(ctx, p),
        "orbit_lengths" => orbit_lengths(ctx, p),
        "orbit_contains" => orbit_contains(ctx, p),
        "orbit_curve_families" => orbit_curve_families(ctx, p),
        "stabilizer_order" => stabilizer_order(ctx, p),
        "invariant_dim" => invariant_dim(ctx, p),
        "form_invariant" => form_invariant(ctx, p),
        "sing_census" => sing_census(ctx, p),
        "ci_nodes" => ci_nodes(ctx, p),
        "cremona" => cremona_check(ctx, p),
        "pencil_point_params" => pencil_point_params(ctx, p),
        "pencil_param_set" => pencil_param_set(ctx, p),
        "sing_along_quartic" => sing_along_quartic(ctx, p),
        "unique_member" => unique_member(ctx, p),
        "ci_contains_lines" => ci_contains_lines(ctx, p),
        "b6_in_q" => b6_in_q(ctx, p),
        "disjoint_orbit" => disjoint_orbit(ctx, p),
        "meet_at" => meet_at(ctx, p),
        "linsys_dim" => linsys_dim(ctx, p),
        "linsys_line_family" => linsys_line_family(ctx, p),
        "base_free" => base_free(ctx, p),
        "base_free_zweb" => base_free_zweb(ctx, p),
        "lattice_pair" => lattice_pair(ctx, p),
        "lattice_triple" => lattice_triple(ctx, p),
        "lattice_det" => lattice_det(ctx, p),
        "degeneracy" => degeneracy(ctx, p),
        "hodge" => hodge(ctx, p),
        "rr_bound" => rr_bound(ctx, p),
        "ci_genus" => ci_genus(ctx, p),
        "adjunction" => adjunction(ctx, p),
        "ruled_617" => ruled_617(ctx, p),
        "bookkeeping_82" => bookkeeping_82(ctx, p),
        "prop_field" => prop_field(ctx, p),
        "prop_euler" => prop_euler(ctx, p),
        "prop_orbit_stabilizer" => prop_orbit_stabilizer(ctx, p),
        "prop_substitution" => prop_substitution(ctx, p),
        "prop_pairing" => prop_pairing(ctx, p),
        other => Err(format!("unknown check kind {other}")),
    }
}

// --------------------------------------------------------------------------
// Handlers
// --------------------------------------------------------------------------

fn group_census(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let grp = ctx.reg.group(&jstr(p, "group")?).map_err(err_str)?;
    let order = jint(p, "order")? as usize;
    let census_expect: BTreeMap<String, usize> = p
        .get("census")
        .map(|c| serde_json::from_value(c.clone()).map_err(err_str))
        .transpose()?
        .unwrap_or_default();
    let got_order = grp.order();
    let got_census = grp.order_census();
    let census_str: Vec<String> = got_census.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    let computed = format!("order {got_order}, census {{{}}}", census_str.join(", "));
    let census_ok = census_expect
        .iter()
        .all(|(k, v)| got_census.get(&k.parse::<usize>().unwrap()) == Some(v))
        && (census_expect.is_empty() || got_census.len() == census_expect.len());
    Ok(pass_if(got_order == order && census_ok, computed))
}

fn orbit_entry(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let group = jstr(p, "group")?;
    let variety = jstr(p, "variety")?;
    let max_len = jint(p, "max_len")? as usize;
    let rep = ctx.reg.point(&jstr(p, "rep")?).map_err(err_str)?;
    let length = jint(p, "length")? as usize;
    let table: Vec<usize> = jarr(p, "table")?
        .iter()
        .map(|v| v.as_u64().unwrap() as usize)
        .collect();
    let form = ctx.reg.form(&variety).map_err(err_str)?;
    let on_variety = form.eval(&rep.coords).is_zero();
    let scan = ctx.scan(&group, &variety, max_len)?;
    let lengths = scan.lengths();
    let found = scan.find_orbit_of(&rep);
    let found_len = found.map(|o| o.orbit.len());
    let computed = format!(
        "on variety: {on_variety}; orbit length {:?}; scan table {:?}; outside-field reports {}",
        found_len,
        lengths,
        scan.outside_field.len()
    );
    Ok(pass_if(
        on_variety && found_len == Some(length) && lengths == table && scan.outside_field.is_empty(),
        computed,
    ))
}

fn orbit_lengths(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let grp = ctx.reg.group(&jstr(p, "group")?).map_err(err_str)?;
    let length = jint(p, "length")? as usize;
    let mut got = Vec::new();
    let mut ok = true;
    for r in jarr(p, "reps")? {
        let rep = ctx.reg.point(r.as_str().unwrap()).map_err(err_str)?;
        let l = grp.orbit_of(&rep).len();
        ok &= l == length;
        got.push(l);
    }
    Ok(pass_if(ok, format!("orbit lengths {got:?}")))
}

fn orbit_contains(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let grp = ctx.reg.group(&jstr(p, "group")?).map_err(err_str)?;
    let rep = ctx.reg.point(&jstr(p, "rep")?).map_err(err_str)?;
    let length = jint(p, "length")? as usize;
    let orbit = grp.orbit_of(&rep);
    let mut ok = orbit.len() == length;
    let mut notes = vec![format!("orbit length {}", orbit.len())];
    for key in jarr(p, "contains")? {
        let q = ctx.reg.point(key.as_str().unwrap()).map_err(err_str)?;
        let inside = orbit.contains(&q);
        notes.push(format!("{} inside: {inside}", key.as_str().unwrap()));
        ok &= inside;
    }
    Ok(pass_if(ok, notes.join("; ")))
}

fn point_stab_order(grp: &MatrixGroup, p: &ProjPoint) -> usize {
    grp.stabilizer(p).len()
}

fn orbit_curve_families(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let grp = ctx.reg.group(&jstr(p, "group")?).map_err(err_str)?;
    let y = ctx.reg.form(&jstr(p, "variety")?).map_err(err_str)?;
    let plane = ctx.reg.plane(&jstr(p, "plane")?).map_err(err_str)?;
    let line = ctx.reg.line(&jstr(p, "line")?).map_err(err_str)?;
    let f = ctx.reg.field();

    // The line lies inside the cubic.
    let line_curve = RationalCurve::from_line(&line);
    let line_inside = variety::contains_curve(std::slice::from_ref(&y), &line_curve);
    // Both components are pointwise fixed by an involution.
    let mut plane_fixed = false;
    let mut line_fixed = false;
    for i in 0..grp.order() {
        if grp.element_order(i) != 2 {
            continue;
        }
        let fixes = |s: &crate::linalg::Subspace| -> bool {
            let rows: Vec<Vec<Cyc>> = (0..s.basis.rows).map(|r| s.basis.row(r).to_vec()).collect();
            let imgs: Vec<Vec<Cyc>> = rows.iter().map(|r| grp.apply(i, r)).collect();
            // Pointwise fixed: every vector maps to a common scalar multiple.
            let Some(first) = rows[0].iter().position(|c| !c.is_zero()) else {
                return false;
            };
            if imgs[0][first].is_zero() {
                return false;
            }
            let lam = imgs[0][first].try_div(&rows[0][first]).unwrap();
            rows.iter().zip(imgs.iter()).all(|(r, im)| {
                r.iter()
                    .zip(im.iter())
                    .all(|(a, b)| &(&lam * a) == b)
            })
        };
        plane_fixed |= fixes(&plane);
        line_fixed |= fixes(&line);
    }
    // Generic stabilizer order 2 on both curves.
    let lp = line_curve.at(&f.integer(2), &f.integer(3));
    let line_stab = point_stab_order(&grp, &lp);
    let cusp_cubic = variety::restrict_to_plane(&y, &plane);
    let plane_pt = variety::sample_point_on_plane_section(&y, &plane, &[]);
    let plane_stab = plane_pt.as_ref().map(|q| point_stab_order(&grp, q));
    let cusp_nonzero = !cusp_cubic.is_zero();
    let computed = format!(
        "line in cubic: {line_inside}; plane fixed: {plane_fixed}; line fixed: {line_fixed}; cubic section nonzero: {cusp_nonzero}; generic stabilizers {line_stab}/{plane_stab:?}"
    );
    Ok(pass_if(
        line_inside
            && plane_fixed
            && line_fixed
            && cusp_nonzero
            && line_stab == 2
            && plane_stab == Some(2),
        computed,
    ))
}

fn stabilizer_order(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let grp = ctx.reg.group(&jstr(p, "group")?).map_err(err_str)?;
    let rep = ctx.reg.point(&jstr(p, "rep")?).map_err(err_str)?;
    let order = jint(p, "order")? as usize;
    let got = point_stab_order(&grp, &rep);
    Ok(pass_if(got == order, format!("stabilizer order {got}")))
}

fn invariant_dim(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let grp = ctx.reg.group(&jstr(p, "group")?).map_err(err_str)?;
    let degree = jint(p, "degree")? as u32;
    let dim = jint(p, "dim")? as usize;
    let basis = grp.invariant_forms(degree);
    let mut ok = basis.len() == dim;
    let mut notes = vec![format!("dim {}", basis.len())];
    if let Some(arr) = p.get("span_contains").and_then(|v| v.as_array()) {
        for name in arr {
            let form = ctx.reg.form(name.as_str().unwrap()).map_err(err_str)?;
            let inside = variety::in_span(&basis, &form);
            notes.push(format!("{} in span: {inside}", name.as_str().unwrap()));
            ok &= inside;
        }
    }
    if let Some(name) = p.get("spanned_by").and_then(|v| v.as_str()) {
        let form = ctx.reg.form(name).map_err(err_str)?;
        let prop = basis.len() == 1
            && crate::group::proportional_polys(&basis[0], &form).is_some();
        notes.push(format!("spanned by {name}: {prop}"));
        ok &= prop;
    }
    Ok(pass_if(ok, notes.join("; ")))
}

fn form_invariant(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let grp = ctx.reg.group(&jstr(p, "group")?).map_err(err_str)?;
    let form = ctx.reg.form(&jstr(p, "form")?).map_err(err_str)?;
    let (inv, scalars) = grp.is_invariant(&form);
    let all_one = scalars.iter().all(|c| c.is_one());
    let want_one = p.get("scalars_one").and_then(|v| v.as_bool()).unwrap_or(false);
    let computed = format!(
        "invariant: {inv}; scalars [{}]",
        scalars.iter().map(|c| c.render()).collect::<Vec<_>>().join(", ")
    );
    Ok(pass_if(inv && (!want_one || all_one), computed))
}

fn sing_census(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let group = jstr(p, "group")?;
    let variety_key = jstr(p, "variety")?;
    let max_len = jint(p, "max_len")? as usize;
    let singular_rep = ctx.reg.point(&jstr(p, "singular_rep")?).map_err(err_str)?;
    let kind = match jstr(p, "type")?.as_str() {
        "A1" => SingType::A1,
        "A2" => SingType::A2,
        other => return Err(format!("unknown singularity type {other}")),
    };
    let form = ctx.reg.form(&variety_key).map_err(err_str)?;
    let scan = ctx.scan(&group, &variety_key, max_len)?;
    let mut singular_count = 0usize;
    let mut wrong: Vec<String> = Vec::new();
    let target = scan
        .find_orbit_of(&singular_rep)
        .ok_or("singular orbit not found in scan")?;
    for o in &scan.orbits {
        for pt in &o.orbit.points {
            let is_target = target.orbit.contains(pt);
            let rep = variety::classify_singularity(&form, pt);
            match (is_target, rep.kind) {
                (true, k) if k == kind => singular_count += 1,
                (true, k) => wrong.push(format!("{pt} classified {k}")),
                (false, SingType::Smooth) => {}
                (false, k) => wrong.push(format!("unexpected singular point {pt} ({k})")),
            }
        }
    }
    let computed = format!(
        "{singular_count} points of type {kind} among {} scan points; anomalies: {wrong:?}",
        scan.orbits.iter().map(|o| o.orbit.len()).sum::<usize>()
    );
    Ok(pass_if(singular_count == 5 && wrong.is_empty(), computed))
}

fn ci_nodes(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let group = jstr(p, "group")?;
    let variety_key = jstr(p, "variety")?;
    let max_len = jint(p, "max_len")? as usize;
    let forms: Vec<MultiPoly> = jarr(p, "forms")?
        .iter()
        .map(|v| ctx.reg.form(v.as_str().unwrap()).map_err(err_str))
        .collect::<Result<_, _>>()?;
    let node_reps: Vec<ProjPoint> = jarr(p, "node_reps")?
        .iter()
        .map(|v| ctx.reg.point(v.as_str().unwrap()).map_err(err_str))
        .collect::<Result<_, _>>()?;
    let exact = p.get("exact").and_then(|v| v.as_bool()).unwrap_or(false);
    let scan = ctx.scan(&group, &variety_key, max_len)?;
    let mut targets = Vec::new();
    for rep in &node_reps {
        targets.push(
            scan.find_orbit_of(rep)
                .ok_or("node orbit not found in scan")?,
        );
    }
    let mut nodes = 0usize;
    let mut anomalies: Vec<String> = Vec::new();
    for o in &scan.orbits {
        for pt in &o.orbit.points {
            if forms.iter().any(|f| !f.eval(&pt.coords).is_zero()) {
                continue; // not on the complete intersection
            }
            let singular = variety::is_singular_at_ci(&forms, pt);
            let is_target = targets.iter().any(|t| t.orbit.contains(pt));
            match (is_target, singular) {
                (true, true) => {
                    if variety::ci_surface_is_node(&forms, pt) {
                        nodes += 1;
                    } else {
                        anomalies.push(format!("{pt} singular but not a node"));
                    }
                }
                (true, false) => anomalies.push(format!("{pt} unexpectedly smooth")),
                (false, true) => {
                    if exact {
                        anomalies.push(format!("unexpected singular point {pt}"));
                    }
                }
                (false, false) => {}
            }
        }
    }
    let want = jint(p, "count")? as usize;
    let computed = format!("{nodes} nodes; anomalies: {anomalies:?}");
    Ok(pass_if(nodes == want && anomalies.is_empty(), computed))
}

fn cremona_check(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let group = jstr(p, "group")?;
    let quadric_key = jstr(p, "quadric")?;
    let rep = ctx.reg.point(&jstr(p, "rep")?).map_err(err_str)?;
    let kind = match jstr(p, "type")?.as_str() {
        "A1" => SingType::A1,
        "A2" => SingType::A2,
        other => return Err(format!("unknown singularity type {other}")),
    };
    let grp = ctx.reg.group(&group).map_err(err_str)?;
    let quadric = ctx.reg.form(&quadric_key).map_err(err_str)?;
    let scan = ctx.scan(&group, &quadric_key, 19)?;
    let orbit = scan
        .find_orbit_of(&rep)
        .ok_or("length-5 orbit not found")?
        .orbit
        .clone();
    let (map, out) = cremona_image(&grp, &orbit, &quadric).map_err(err_str)?;
    let mut ok = out.invariant && census_all_of(&out.census, kind);
    let mut notes = vec![
        format!("pushforward-invariant: {}", out.invariant),
        format!(
            "census: {:?}",
            out.census.iter().map(|r| r.kind.to_string()).collect::<Vec<_>>()
        ),
        format!("involution: {}", map.monomial_involution_holds()),
        format!("base multiplicities: {:?}", map.base_multiplicities()),
    ];
    ok &= map.monomial_involution_holds();
    ok &= map.base_multiplicities() == vec![3; 5];
    if p.get("roundtrip").and_then(|v| v.as_bool()).unwrap_or(false) {
        let rt = map.roundtrip_recovers_quadric(&out.image);
        notes.push(format!("roundtrip quadric: {rt}"));
        ok &= rt;
    }
    if let Some(arr) = p.get("span").and_then(|v| v.as_array()) {
        let span: Vec<MultiPoly> = arr
            .iter()
            .map(|v| ctx.reg.form(v.as_str().unwrap()).map_err(err_str))
            .collect::<Result<_, _>>()?;
        match &out.normalized_image {
            Some(norm) => {
                let (inv, _) = grp.is_invariant(norm);
                let inside = variety::in_span(&span, norm);
                notes.push(format!("normalized invariant: {inv}; in span: {inside}"));
                ok &= inv && inside;
                // The normalized cubic is singular along a registered
                // length-5 orbit.
                if let Some(sing_opts) = p.get("sing_orbits").and_then(|v| v.as_array()) {
                    let hit = sing_opts.iter().any(|key| {
                        let rep = ctx.reg.point(key.as_str().unwrap()).unwrap();
                        norm.eval(&rep.coords).is_zero()
                            && variety::is_singular_at(norm, &rep)
                    });
                    notes.push(format!("singular along a registered orbit: {hit}"));
                    ok &= hit;
                }
            }
            None => {
                notes.push("no conjugator found".into());
                ok = false;
            }
        }
    }
    Ok(pass_if(ok, notes.join("; ")))
}

fn parse_pair(ctx: &Context, v: &serde_json::Value) -> Result<[Cyc; 2], String> {
    let arr = v.as_array().ok_or("expected [a1, a2]")?;
    let f = ctx.reg.field();
    Ok([
        f.parse(arr[0].as_str().ok_or("a1 literal")?).map_err(err_str)?,
        f.parse(arr[1].as_str().ok_or("a2 literal")?).map_err(err_str)?,
    ])
}

fn pencil_point_params(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let pencil = ctx.reg.pencil(&jstr(p, "pencil")?).map_err(err_str)?;
    let mut ok = true;
    let mut notes = Vec::new();
    for case in jarr(p, "cases")? {
        let rep = ctx.reg.point(&jstr(case, "rep")?).map_err(err_str)?;
        let want = parse_pair(ctx, case.get("param").ok_or("missing param")?)?;
        let sol = variety::pencil_singular_parameters_at(
            &pencil.a_form,
            &pencil.b_form,
            &pencil.ambient,
            &rep,
        );
        let hit = sol.matches(&want[0], &want[1]);
        if let variety::PencilSolution::Unique([a, b]) = &sol {
            notes.push(format!("[{} : {}] match {hit}", a.render(), b.render()));
        } else {
            notes.push(format!("{sol:?}"));
        }
        ok &= hit;
    }
    Ok(pass_if(ok, notes.join("; ")))
}

fn pencil_param_set(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let pencil = ctx.reg.pencil(&jstr(p, "pencil")?).map_err(err_str)?;
    let want: Vec<[Cyc; 2]> = jarr(p, "set")?
        .iter()
        .map(|v| parse_pair(ctx, v))
        .collect::<Result<_, _>>()?;
    let mut got: Vec<[Cyc; 2]> = Vec::new();
    for r in jarr(p, "reps")? {
        let rep = ctx.reg.point(r.as_str().unwrap()).map_err(err_str)?;
        match variety::pencil_singular_parameters_at(
            &pencil.a_form,
            &pencil.b_form,
            &pencil.ambient,
            &rep,
        ) {
            variety::PencilSolution::Unique(pair) => got.push(pair),
            other => return Ok(Outcome::Fail(format!("{other:?} at {rep:?}"))),
        }
    }
    // Set equality up to projective scaling (Galois-conjugate branches are
    // accepted in either order).
    let matches = want.iter().all(|w| {
        got.iter()
            .any(|g| (&(&g[0] * &w[1]) - &(&g[1] * &w[0])).is_zero())
    }) && got.len() == want.len();
    let notes: Vec<String> = got
        .iter()
        .map(|g| format!("[{} : {}]", g[0].render(), g[1].render()))
        .collect();
    Ok(pass_if(matches, notes.join("; ")))
}

fn sing_along_quartic(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let group = jstr(p, "group")?;
    let quadric_key = jstr(p, "quadric")?;
    let member_key = jstr(p, "member")?;
    let seed = jstr(p, "seed")?;
    let other_seed = jstr(p, "other_seed")?;
    let curve = ctx.quartic(&member_key, &quadric_key, &group, &seed)?;
    let quadric = ctx.reg.form(&quadric_key).map_err(err_str)?;
    let member = ctx.reg.form(&member_key).map_err(err_str)?;
    let sings = variety::sings_along_curve(&[member.clone(), quadric.clone()], &curve);
    let on_curve = curve.contains_point(&ctx.reg.point(&seed).map_err(err_str)?);
    let off_curve = !curve.contains_point(&ctx.reg.point(&other_seed).map_err(err_str)?);
    // Negative control: a smooth pencil member has full Jacobian rank along
    // the curve at sampled parameters.
    let pencil = ctx.reg.pencil(&jstr(p, "pencil")?).map_err(err_str)?;
    let smooth_pair = parse_pair(ctx, p.get("smooth_member").ok_or("missing smooth_member")?)?;
    let smooth =
        &pencil.a_form.scale(&smooth_pair[0]) + &pencil.b_form.scale(&smooth_pair[1]);
    let control =
        variety::jacobian_full_rank_at_samples(&[smooth, quadric.clone()], &curve, 20);
    let computed = format!(
        "degree {}; rank drop along curve: {sings}; seed on curve: {on_curve}; conjugate seed off curve: {off_curve}; smooth-member control: {control}",
        curve.degree
    );
    Ok(pass_if(
        curve.degree == 4 && sings && on_curve && off_curve && control,
        computed,
    ))
}

fn unique_member(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let pencil = ctx.reg.pencil(&jstr(p, "pencil")?).map_err(err_str)?;
    let curve = ctx.curve(p.get("curve").ok_or("missing curve")?)?;
    let want = parse_pair(ctx, p.get("param").ok_or("missing param")?)?;
    let sol = variety::member_containing_curve(&pencil.a_form, &pencil.b_form, &curve);
    let on_ambient = variety::contains_curve(std::slice::from_ref(&pencil.ambient), &curve);
    let hit = sol.matches(&want[0], &want[1]);
    let computed = match &sol {
        variety::PencilSolution::Unique([a, b]) => format!(
            "on ambient: {on_ambient}; member [{} : {}]; match {hit}",
            a.render(),
            b.render()
        ),
        other => format!("on ambient: {on_ambient}; {other:?}"),
    };
    Ok(pass_if(on_ambient && hit, computed))
}

fn ci_contains_lines(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let forms: Vec<MultiPoly> = jarr(p, "forms")?
        .iter()
        .map(|v| ctx.reg.form(v.as_str().unwrap()).map_err(err_str))
        .collect::<Result<_, _>>()?;
    let mut ok = true;
    let mut notes = Vec::new();
    for l in jarr(p, "lines")? {
        let line = ctx.reg.line(l.as_str().unwrap()).map_err(err_str)?;
        let curve = RationalCurve::from_line(&line);
        let inside = variety::contains_curve(&forms, &curve);
        notes.push(format!("{}: {inside}", l.as_str().unwrap()));
        ok &= inside;
    }
    Ok(pass_if(ok, notes.join("; ")))
}

fn b6_in_q(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let ci = ctx.reg.ci_forms(&jstr(p, "ci")?).map_err(err_str)?;
    let q_forms: Vec<MultiPoly> = jarr(p, "q_forms")?
        .iter()
        .map(|v| ctx.reg.form(v.as_str().unwrap()).map_err(err_str))
        .collect::<Result<_, _>>()?;
    // Containment: every form cutting Q appears in the ideal of the complete
    // intersection (here literally among its defining forms).
    let contained = q_forms.iter().all(|qf| {
        ci.iter()
            .any(|cf| crate::group::proportional_polys(cf, qf).is_some())
    });
    let degrees: Vec<i64> = ci
        .iter()
        .map(|f| f.homogeneous_degree().unwrap() as i64)
        .collect();
    let (deg, genus) = lattice::ci_curve_genus(&degrees);
    let want_genus = jint(p, "genus")?;
    let computed = format!("contained: {contained}; degree {deg}, genus {genus}");
    Ok(pass_if(contained && genus == want_genus, computed))
}

fn disjoint_orbit(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let grp = ctx.reg.group(&jstr(p, "group")?).map_err(err_str)?;
    let line = ctx.reg.line(&jstr(p, "line")?).map_err(err_str)?;
    let count = jint(p, "count")? as usize;
    let orbit = orbit_of_subspace(&grp, &line);
    let disjoint = variety::lines_pairwise_disjoint(&orbit);
    let computed = format!("{} lines; pairwise disjoint: {disjoint}", orbit.len());
    Ok(pass_if(orbit.len() == count && disjoint, computed))
}

fn meet_at(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let grp = ctx.reg.group(&jstr(p, "group")?).map_err(err_str)?;
    let line = ctx.reg.line(&jstr(p, "line")?).map_err(err_str)?;
    let count = jint(p, "count")? as usize;
    let rep = ctx.reg.point(&jstr(p, "points_rep")?).map_err(err_str)?;
    let points = grp.orbit_of(&rep).points;
    let orbit = orbit_of_subspace(&grp, &line);
    let meets = variety::lines_meet_exactly_at(&orbit, &points);
    let computed = format!("{} lines; meet exactly at the orbit: {meets}", orbit.len());
    Ok(pass_if(orbit.len() == count && meets, computed))
}

fn gather_points(ctx: &Context, p: &serde_json::Value, key: &str) -> Result<Vec<ProjPoint>, String> {
    let mut out = Vec::new();
    if let Some(arr) = p.get(key).and_then(|v| v.as_array()) {
        for spec in arr {
            let group = jstr(spec, "group")?;
            let variety = jstr(spec, "variety")?;
            let max_len = jint(spec, "max_len")? as usize;
            let rep = ctx.reg.point(&jstr(spec, "rep")?).map_err(err_str)?;
            let rep_key = jstr(spec, "rep")?;
            let scan = ctx.scan(&group, &variety, max_len)?;
            let orbit = scan
                .find_orbit_of(&rep)
                .ok_or_else(|| format!("orbit of {rep_key} not in scan"))?;
            out.extend(orbit.orbit.points.iter().cloned());
        }
    }
    Ok(out)
}

fn linsys_dim(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let f = ctx.reg.field();
    let degree = jint(p, "degree")? as u32;
    let mut points = gather_points(ctx, p, "point_orbits")?;
    if let Some(arr) = p.get("extra_orbits_by_group").and_then(|v| v.as_array()) {
        for spec in arr {
            let grp = ctx.reg.group(&jstr(spec, "group")?).map_err(err_str)?;
            let rep = ctx.reg.point(&jstr(spec, "rep")?).map_err(err_str)?;
            points.extend(grp.orbit_of(&rep).points);
        }
    }
    let modulo = match p.get("modulo").and_then(|v| v.as_str()) {
        Some(k) => Some(ctx.reg.form(k).map_err(err_str)?),
        None => None,
    };
    let dim = variety::linear_system_dim_modulo(&f, degree, &points, &[], modulo.as_ref());
    let computed = format!("dim {dim} ({} point conditions)", points.len());
    if let Some(want) = p.get("dim").and_then(|v| v.as_i64()) {
        Ok(pass_if(dim as i64 == want, computed))
    } else if let Some(lt) = p.get("lt").and_then(|v| v.as_i64()) {
        Ok(pass_if((dim as i64) < lt, computed))
    } else {
        Err("expected 'dim' or 'lt'".into())
    }
}

fn linsys_line_family(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let f = ctx.reg.field();
    let degree = jint(p, "degree")? as u32;
    let grp = ctx.reg.group(&jstr(p, "group")?).map_err(err_str)?;
    let base = gather_points(ctx, p, "point_orbits")?;
    let line = ctx.reg.line(&jstr(p, "line")?).map_err(err_str)?;
    let curve = RationalCurve::from_line(&line);
    let modulo = ctx.reg.form(&jstr(p, "modulo")?).map_err(err_str)?;
    let lt = jint(p, "lt")?;
    let mut dims = Vec::new();
    let mut ok = true;
    for t in jarr(p, "samples")? {
        let t = t.as_i64().unwrap();
        let pt = curve.at(&f.one(), &f.integer(t));
        let orbit = grp.orbit_of(&pt);
        if orbit.len() != 30 {
            return Ok(Outcome::Fail(format!(
                "sample t={t} has orbit length {}, expected 30",
                orbit.len()
            )));
        }
        let mut pts = base.clone();
        pts.extend(orbit.points);
        let dim = variety::linear_system_dim_modulo(&f, degree, &pts, &[], Some(&modulo));
        ok &= (dim as i64) < lt;
        dims.push(dim);
    }
    Ok(pass_if(ok, format!("dims {dims:?}")))
}

fn curve_orbit_curves(
    ctx: &Context,
    group: &str,
    line_key: &str,
) -> Result<Vec<RationalCurve>, String> {
    let grp = ctx.reg.group(group).map_err(err_str)?;
    let line = ctx.reg.line(line_key).map_err(err_str)?;
    Ok(orbit_of_subspace(&grp, &line)
        .iter()
        .map(RationalCurve::from_line)
        .collect())
}

fn base_free(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let f = ctx.reg.field();
    let degree = jint(p, "degree")? as u32;
    let group = jstr(p, "group")?;
    let through = curve_orbit_curves(ctx, &group, &jstr(p, "through")?)?;
    let basis = variety::linear_system_basis(&f, degree, &[], &through);
    if basis.len() < 2 {
        return Ok(Outcome::Fail(format!(
            "system dimension {} < 2",
            basis.len()
        )));
    }
    // The system is group-stable, so its base locus is invariant: testing one
    // representative per probe orbit suffices.
    let mut ok = true;
    let mut notes = vec![format!("system dim {}", basis.len())];
    for probe_key in jarr(p, "probes")? {
        let probe_line = ctx.reg.line(probe_key.as_str().unwrap()).map_err(err_str)?;
        let probe = RationalCurve::from_line(&probe_line);
        let contained = variety::base_locus_contains(&basis, &probe);
        notes.push(format!("{} avoided: {}", probe_key.as_str().unwrap(), !contained));
        ok &= !contained;
    }
    Ok(pass_if(ok, notes.join("; ")))
}

fn base_free_zweb(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let keys: Vec<String> = jarr(p, "zweb_curves")?
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let mut curves = Vec::new();
    for k in &keys {
        match ctx.reg.zweb_curve(k).map_err(err_str)? {
            Some(c) => curves.push(c),
            None => {
                return Ok(Outcome::Skip(format!(
                    "optional external curve data '{k}' not present in the registry"
                )))
            }
        }
    }
    let f = ctx.reg.field();
    let degree = jint(p, "degree")? as u32;
    let ambient = ctx.reg.form(&jstr(p, "ambient")?).map_err(err_str)?;
    for c in &curves {
        if !variety::contains_curve(std::slice::from_ref(&ambient), c) {
            return Ok(Outcome::Fail("external curve does not lie on the ambient".into()));
        }
    }
    let basis = variety::linear_system_basis(&f, degree, &[], &curves[..1]);
    if basis.len() < 2 {
        return Ok(Outcome::Fail(format!("system dimension {} < 2", basis.len())));
    }
    let mut ok = true;
    let mut notes = vec![format!("system dim {}", basis.len())];
    // Probes: the derived quartics and any further external curves.
    for probe in jarr(p, "probes")? {
        let probe_curve = ctx.curve(probe)?;
        let contained = variety::base_locus_contains(&basis, &probe_curve);
        notes.push(format!("probe avoided: {}", !contained));
        ok &= !contained;
    }
    Ok(pass_if(ok, notes.join("; ")))
}

fn lattice_pair(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let _ = ctx;
    let h2 = jint(p, "h2")?;
    let deg = jint(p, "deg")?;
    let genus = jint(p, "genus")?;
    let ctx2 = lattice::SurfaceContext::k3_with_curve(h2, deg, genus);
    let a = coords(p, "a")?;
    let b = coords(p, "b")?;
    let got = ctx2
        .pair(&lattice::DivisorClass::of_ints(&a), &lattice::DivisorClass::of_ints(&b))
        .map_err(err_str)?;
    let want = jint(p, "expected")?;
    Ok(pass_if(
        got == crate::cyclo::rat_i64(want),
        format!("pairing {got}"),
    ))
}

fn coords(p: &serde_json::Value, key: &str) -> Result<Vec<i64>, String> {
    Ok(jarr(p, key)?.iter().map(|v| v.as_i64().unwrap()).collect())
}

fn lattice_triple(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let _ = ctx;
    let h3 = jint(p, "h3")?;
    let curves: Vec<(i64, i64, i64)> = jarr(p, "curves")?
        .iter()
        .map(|v| {
            let a = v.as_array().unwrap();
            (
                a[0].as_i64().unwrap(),
                a[1].as_i64().unwrap(),
                a[2].as_i64().unwrap(),
            )
        })
        .collect();
    let ctx3 = lattice::ThreefoldContext::blowup(h3, &curves);
    let a = lattice::DivisorClass::of_ints(&coords(p, "a")?);
    let b = lattice::DivisorClass::of_ints(&coords(p, "b")?);
    let c = lattice::DivisorClass::of_ints(&coords(p, "c")?);
    let got = ctx3.triple(&a, &b, &c).map_err(err_str)?;
    let want = jint(p, "expected")?;
    Ok(pass_if(
        got == crate::cyclo::rat_i64(want),
        format!("triple {got}"),
    ))
}

fn lattice_det(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let f = ctx.reg.field();
    let rows: Vec<Vec<Cyc>> = jarr(p, "matrix")?
        .iter()
        .map(|row| {
            row.as_array()
                .unwrap()
                .iter()
                .map(|v| f.integer(v.as_i64().unwrap()))
                .collect()
        })
        .collect();
    let det = Matrix::from_rows(&f, rows).det();
    let want = f.integer(jint(p, "expected")?);
    Ok(pass_if(det == want, format!("det {}", det.render())))
}

fn degeneracy(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let _ = ctx;
    let roots = lattice::degeneracy_solve(
        jint(p, "f2")?,
        jint(p, "degf")?,
        jint(p, "c2")?,
        jint(p, "degc")?,
        jint(p, "h2")?,
    );
    let want = crate::cyclo::rat_i64(jint(p, "root")?);
    let require_cf = p.get("c_equals_f").and_then(|v| v.as_bool()).unwrap_or(false);
    let hit = roots
        .iter()
        .any(|r| r.value == want && r.is_integer && (!require_cf || r.is_c_equals_f));
    let computed: Vec<String> = roots.iter().map(|r| format!("{}", r.value)).collect();
    Ok(pass_if(hit, format!("roots [{}]", computed.join(", "))))
}

fn hodge(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let _ = ctx;
    let b = lattice::hodge_bound(jint(p, "deg")?, jint(p, "h2")?);
    let mut ok = b.bound == jint(p, "bound")?;
    if let Some(se) = p.get("strict_even").and_then(|v| v.as_i64()) {
        ok &= b.strict_even_bound == se;
    }
    Ok(pass_if(
        ok,
        format!("bound {}, strict even {}", b.bound, b.strict_even_bound),
    ))
}

fn rr_bound(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let _ = ctx;
    let sctx = lattice::SurfaceContext::k3_with_curve(jint(p, "h2")?, jint(p, "deg")?, jint(p, "genus")?);
    let d = lattice::DivisorClass::of_ints(&coords(p, "d")?);
    let d2 = sctx.pair(&d, &d).map_err(err_str)?;
    let bound = lattice::rr_h0_lower(&d2);
    let want = crate::cyclo::rat_i64(jint(p, "expected")?);
    Ok(pass_if(bound == want, format!("D² = {d2}, bound {bound}")))
}

fn ci_genus(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let _ = ctx;
    let degs = coords(p, "degrees")?;
    let (deg, genus) = lattice::ci_curve_genus(&degs);
    let ok = deg == jint(p, "degree")? && genus == jint(p, "genus")?;
    Ok(pass_if(ok, format!("degree {deg}, genus {genus}")))
}

fn adjunction(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let _ = ctx;
    let got = lattice::adjunction_genus(jint(p, "c2")?).map_err(err_str)?;
    Ok(pass_if(got == jint(p, "genus")?, format!("genus {got}")))
}

fn ruled_617(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let _ = ctx;
    let candidates: Vec<(i64, i64)> = jarr(p, "candidates")?
        .iter()
        .map(|v| {
            let a = v.as_array().unwrap();
            (a[0].as_i64().unwrap(), a[1].as_i64().unwrap())
        })
        .collect();
    let r = lattice::ruled_restriction_check(&candidates);
    let ok = r.excluded.len() == candidates.len()
        && r.degree_bound_holds_for.len() == candidates.len()
        && r.delta_degree == 4
        && r.two_h_minus_e == lattice::DivisorClass::of_ints(&[1, 3]);
    Ok(pass_if(
        ok,
        format!(
            "(2H̃−E)|_E = s+3f; degree ok for {:?}; excluded {:?}; Δ-degree {}",
            r.degree_bound_holds_for, r.excluded, r.delta_degree
        ),
    ))
}

fn bookkeeping_82(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let _ = (ctx, p);
    // (n, m) ↦ (4n−5m, 3n−4m) must be an involution pairing the two models.
    let apply = |n: i64, m: i64| (4 * n - 5 * m, 3 * n - 4 * m);
    let mut ok = true;
    for (n, m) in [(3i64, 2i64), (3, 0), (6, 1), (9, 5), (12, 7)] {
        let (n1, m1) = apply(n, m);
        let (n2, m2) = apply(n1, m1);
        ok &= (n2, m2) == (n, m);
    }
    let (n1, m1) = apply(3, 2);
    Ok(pass_if(
        ok,
        format!("involution verified; (3,2) ↦ ({n1},{m1}) ↦ (3,2)"),
    ))
}

// --------------------------------------------------------------------------
// Randomized property suites (deterministic seeds)
// --------------------------------------------------------------------------

fn prop_field(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let f = ctx.reg.field();
    let trials = jint(p, "trials")? as usize;
    let mut rng = crate::rng::XorShift::new(0xf1e1d);
    let rand_elem = |rng: &mut crate::rng::XorShift| {
        let mut v = f.zero();
        for _ in 0..3 {
            let e = rng.below(120) as i64;
            let c = rng.small_int(5);
            v = &v + &(&f.integer(c) * &f.zeta_pow(120, e).unwrap());
        }
        v
    };
    for i in 0..trials {
        let a = rand_elem(&mut rng);
        let b = rand_elem(&mut rng);
        let c = rand_elem(&mut rng);
        if &(&(&a + &b) + &c) != &(&a + &(&b + &c)) {
            return Ok(Outcome::Fail(format!("associativity failed at trial {i}")));
        }
        if &(&a * &(&b + &c)) != &(&(&a * &b) + &(&a * &c)) {
            return Ok(Outcome::Fail(format!("distributivity failed at trial {i}")));
        }
        if !a.is_zero() && !(&a * &a.inv().unwrap()).is_one() {
            return Ok(Outcome::Fail(format!("inverse failed at trial {i}")));
        }
    }
    Ok(Outcome::Pass(format!("{trials} trials, zero failures")))
}

fn prop_euler(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let f = ctx.reg.field();
    let trials = jint(p, "trials")? as usize;
    let mut rng = crate::rng::XorShift::new(0xe01e4);
    for i in 0..trials {
        // Random homogeneous polynomial of degree 2..4 with ≤ 4 terms.
        let d = 2 + (rng.below(3) as u32);
        let mut poly = MultiPoly::zero(&f);
        for _ in 0..4 {
            let mut e = [0u8; 5];
            for _ in 0..d {
                e[rng.below(5) as usize] += 1;
            }
            let c = f.integer(rng.small_int(6));
            poly = &poly + &MultiPoly::monomial(&f, crate::poly::Expo(e), c);
        }
        if poly.is_zero() {
            continue;
        }
        let mut acc = MultiPoly::zero(&f);
        for v in 0..5 {
            acc = &acc + &(&MultiPoly::variable(&f, v) * &poly.partial(v));
        }
        if acc != poly.scale(&f.integer(d as i64)) {
            return Ok(Outcome::Fail(format!("Euler identity failed at trial {i}")));
        }
    }
    Ok(Outcome::Pass(format!("{trials} trials, zero failures")))
}

fn prop_orbit_stabilizer(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let trials = jint(p, "trials")? as usize;
    let f = ctx.reg.field();
    let groups = [
        ctx.reg.group("A5-standard").map_err(err_str)?,
        ctx.reg.group("A5-nonstandard").map_err(err_str)?,
    ];
    let mut rng = crate::rng::XorShift::new(0x0b17);
    for i in 0..trials {
        let grp = &groups[(i % 2) as usize];
        let pt = ProjPoint::new(
            (0..5)
                .map(|_| f.integer(rng.small_int(20)))
                .collect::<Vec<_>>()
                .into_iter()
                .enumerate()
                .map(|(j, c)| if j == 0 && c.is_zero() { f.one() } else { c })
                .collect(),
        );
        let stab = grp.stabilizer(&pt).len();
        // Full orbits only on a subsample; the index identity must hold.
        if i % 25 == 0 {
            let orbit = grp.orbit_of(&pt).len();
            if orbit * stab != grp.order() {
                return Ok(Outcome::Fail(format!(
                    "orbit·stabilizer = {}·{} ≠ {} at trial {i}",
                    orbit,
                    stab,
                    grp.order()
                )));
            }
        } else if grp.order() % stab != 0 {
            return Ok(Outcome::Fail(format!("stabilizer order {stab} at trial {i}")));
        }
    }
    Ok(Outcome::Pass(format!("{trials} trials, zero failures")))
}

fn prop_substitution(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let f = ctx.reg.field();
    let trials = jint(p, "trials")? as usize;
    let mut rng = crate::rng::XorShift::new(0x50b5);
    for i in 0..trials {
        let mut poly = MultiPoly::zero(&f);
        for _ in 0..3 {
            let mut e = [0u8; 5];
            for _ in 0..2 {
                e[rng.below(5) as usize] += 1;
            }
            poly = &poly + &MultiPoly::monomial(&f, crate::poly::Expo(e), f.integer(rng.small_int(4)));
        }
        let rand_mat = |rng: &mut crate::rng::XorShift| {
            Matrix::from_rows(
                &f,
                (0..5)
                    .map(|_| (0..5).map(|_| f.integer(rng.small_int(2))).collect())
                    .collect(),
            )
        };
        let a = rand_mat(&mut rng);
        let b = rand_mat(&mut rng);
        let lhs = poly.substitute_matrix(&a).substitute_matrix(&b);
        let rhs = poly.substitute_matrix(&a.mul(&b));
        if lhs != rhs {
            return Ok(Outcome::Fail(format!("functoriality failed at trial {i}")));
        }
    }
    Ok(Outcome::Pass(format!("{trials} trials, zero failures")))
}

fn prop_pairing(ctx: &Context, p: &serde_json::Value) -> Result<Outcome, String> {
    let _ = ctx;
    let trials = jint(p, "trials")? as usize;
    let mut rng = crate::rng::XorShift::new(0x9a17);
    let sctx = lattice::SurfaceContext::k3_with_curve(6, 12, 5);
    let tctx = lattice::ThreefoldContext::blowup(2, &[(8, 0, -24)]);
    for i in 0..trials {
        let rand_class = |rng: &mut crate::rng::XorShift| {
            lattice::DivisorClass::of_ints(&[rng.small_int(9), rng.small_int(9)])
        };
        let a = rand_class(&mut rng);
        let b = rand_class(&mut rng);
        let c = rand_class(&mut rng);
        // Symmetry and bilinearity.
        let ab = sctx.pair(&a, &b).map_err(err_str)?;
        let ba = sctx.pair(&b, &a).map_err(err_str)?;
        let ac = sctx.pair(&a, &c).map_err(err_str)?;
        let a_bc = sctx.pair(&a, &b.add(&c)).map_err(err_str)?;
        if ab != ba || a_bc != &ab + &ac {
            return Ok(Outcome::Fail(format!("surface pairing failed at trial {i}")));
        }
        // Trilinear symmetry.
        let t1 = tctx.triple(&a, &b, &c).map_err(err_str)?;
        let t2 = tctx.triple(&c, &a, &b).map_err(err_str)?;
        let t3 = tctx.triple(&b, &c, &a).map_err(err_str)?;
        if t1 != t2 || t2 != t3 {
            return Ok(Outcome::Fail(format!("triple symmetry failed at trial {i}")));
        }
        let lin = tctx.triple(&a.add(&b), &c, &c).map_err(err_str)?;
        let l1 = tctx.triple(&a, &c, &c).map_err(err_str)?;
        let l2 = tctx.triple(&b, &c, &c).map_err(err_str)?;
        if lin != &l1 + &l2 {
            return Ok(Outcome::Fail(format!("trilinearity failed at trial {i}")));
        }
    }
    Ok(Outcome::Pass(format!("{trials} trials, zero failures")))
}

// --------------------------------------------------------------------------
// Reports
// --------------------------------------------------------------------------

#[derive(Serialize)]
struct JsonDoc<'a> {
    schema_version: u32,
    conductor: u32,
    reports: &'a [CheckReport],
    summary: Summary,
}

#[derive(Serialize)]
struct Summary {
    pass: usize,
    fail: usize,
    skipped: usize,
}

fn summarize(reports: &[CheckReport]) -> Summary {
    Summary {
        pass: reports.iter().filter(|r| r.status == CheckStatus::Pass).count(),
        fail: reports.iter().filter(|r| r.status == CheckStatus::Fail).count(),
        skipped: reports
            .iter()
            .filter(|r| r.status == CheckStatus::SkippedWithReason)
            .count(),
    }
}

/// Machine-readable JSON (deterministic: no timing data).
pub fn emit_json(reports: &[CheckReport], conductor: u32) -> String {
    let doc = JsonDoc {
        schema_version: 1,
        conductor,
        reports,
        summary: summarize(reports),
    };
    serde_json::to_string_pretty(&doc).expect("serialize")
}

/// Human markdown ledger grouped by anchor, with wall times.
pub fn emit_markdown(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    out.push_str("| status | id | anchor | computed | expected | ms |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    let mut by_anchor: BTreeMap<&str, Vec<&CheckReport>> = BTreeMap::new();
    for r in reports {
        by_anchor.entry(r.anchor.as_str()).or_default().push(r);
    }
    for (_, group) in by_anchor {
        for r in group {
            let status = match r.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::SkippedWithReason => "skip",
            };
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} |\n",
                status,
                r.id,
                r.anchor,
                r.computed.replace('|', "/"),
                r.expected.replace('|', "/"),
                r.wall_ms
            ));
        }
    }
    let s = summarize(reports);
    out.push_str(&format!(
        "\n{} pass, {} fail, {} skipped-with-reason\n",
        s.pass, s.fail, s.skipped
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glob_patterns() {
        assert!(glob_match("orbit.std.*", "orbit.std.s5"));
        assert!(!glob_match("orbit.std.*", "orbit.nonstd.s5"));
        assert!(glob_match("*", "anything"));
        assert!(glob_match("lattice.detA", "lattice.detA"));
        assert!(!glob_match("lattice.detA", "lattice.detB"));
    }

    #[test]
    fn descriptors_load_and_ids_unique() {
        let descriptors = load_descriptors(&RunConfig::default()).unwrap();
        assert!(descriptors.len() > 40);
        // orbit.std.* matches exactly the six X1 orbit entries.
        let n = descriptors
            .iter()
            .filter(|d| glob_match("orbit.std.*", &d.id))
            .count();
        assert_eq!(n, 6);
    }
}
