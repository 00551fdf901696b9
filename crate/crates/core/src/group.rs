//! Finite matrix groups acting on ℙ⁴: enumeration from generators, orbits,
//! stabilizers, invariant forms via Reynolds averaging, fixed loci of
//! subgroups, and the exhaustive small-orbit scan over a hypersurface.
//!
//! Group elements are stored as the raw products of the given generator
//! matrices (so that polynomial pullback F∘g uses honest linear
//! representatives); deduplication is projective, via a canonical key of the
//! matrix normalized by its first nonzero entry.

use crate::cyclo::{Cyc, Field};
use crate::linalg::{Matrix, Subspace};
use crate::poly::{binary_roots, restrict_to_line, Expo, MultiPoly, N_VARS};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("generator is not invertible")]
    SingularGenerator,
    #[error("group enumeration exceeded the bound of {0} elements")]
    BoundExceeded(usize),
}

/// A point of ℙ⁴, normalized so the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjPoint {
    pub coords: Vec<Cyc>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Cyc>) -> ProjPoint {
        assert_eq!(coords.len(), N_VARS);
        let i = coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("zero vector is not a projective point");
        let inv = coords[i].inv().unwrap();
        ProjPoint {
            coords: coords.iter().map(|c| c * &inv).collect(),
        }
    }

    pub fn key(&self) -> String {
        self.coords
            .iter()
            .map(|c| c.render())
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Projective equality without normalizing: cross-multiplication test.
    pub fn same_point(a: &[Cyc], b: &[Cyc]) -> bool {
        let ia = a.iter().position(|c| !c.is_zero());
        let ib = b.iter().position(|c| !c.is_zero());
        if ia != ib {
            return false;
        }
        let Some(i) = ia else { return true };
        for j in 0..a.len() {
            if j == i {
                continue;
            }
            if &(&a[i] * &b[j]) - &(&a[j] * &b[i]) != a[0].field().zero() {
                return false;
            }
        }
        true
    }
}

impl std::fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.render()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// An orbit of projective points, sorted by canonical key.
#[derive(Clone, Debug)]
pub struct PointOrbit {
    pub points: Vec<ProjPoint>,
}

impl PointOrbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.iter().any(|q| q == p)
    }

    /// Canonical representative: the point with the smallest key.
    pub fn rep(&self) -> &ProjPoint {
        &self.points[0]
    }
}

/// A fully enumerated finite subgroup of PGL₅ with raw matrix lifts.
pub struct MatrixGroup {
    pub field: Field,
    pub elements: Vec<Matrix>,
    pub generators: Vec<usize>,
    mult_table: OnceLock<Vec<Vec<usize>>>,
    keys: Vec<String>,
}

fn projective_key(m: &Matrix) -> String {
    let first = (0..m.rows * m.cols)
        .map(|i| (i / m.cols, i % m.cols))
        .find(|&(r, c)| !m[(r, c)].is_zero())
        .expect("zero matrix");
    let inv = m[first].inv().unwrap();
    let mut s = String::new();
    for r in 0..m.rows {
        for c in 0..m.cols {
            s.push_str(&(&m[(r, c)] * &inv).render());
            s.push(',');
        }
    }
    s
}

pub const DEFAULT_ENUMERATION_BOUND: usize = 10_000;

/// Breadth-first closure of the generators under multiplication, with
/// projective deduplication.
pub fn enumerate_group(
    field: &Field,
    generators: Vec<Matrix>,
    bound: usize,
) -> Result<MatrixGroup, GroupError> {
    for g in &generators {
        if g.rank() < N_VARS {
            return Err(GroupError::SingularGenerator);
        }
    }
    let id = Matrix::identity(field, N_VARS);
    let mut elements = vec![id.clone()];
    let mut keys = vec![projective_key(&id)];
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    seen.insert(keys[0].clone(), 0);
    let mut gen_idx = Vec::new();
    let mut frontier = vec![0usize];
    // Register generators first so their indices are stable.
    for g in &generators {
        let k = projective_key(g);
        let idx = *seen.entry(k.clone()).or_insert_with(|| {
            elements.push(g.clone());
            keys.push(k);
            frontier.push(elements.len() - 1);
            elements.len() - 1
        });
        gen_idx.push(idx);
    }
    while let Some(i) = frontier.pop() {
        for g in &generators {
            let prod = elements[i].mul(g);
            let k = projective_key(&prod);
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(k.clone()) {
                elements.push(prod);
                keys.push(k);
                e.insert(elements.len() - 1);
                frontier.push(elements.len() - 1);
                if elements.len() > bound {
                    return Err(GroupError::BoundExceeded(bound));
                }
            }
        }
    }
    Ok(MatrixGroup {
        field: field.clone(),
        elements,
        generators: gen_idx,
        mult_table: OnceLock::new(),
        keys,
    })
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generator_matrices(&self) -> Vec<&Matrix> {
        self.generators.iter().map(|&i| &self.elements[i]).collect()
    }

    /// Index-level multiplication table, built lazily.
    pub fn mult_table(&self) -> &Vec<Vec<usize>> {
        self.mult_table.get_or_init(|| {
            let n = self.order();
            let mut table = vec![vec![0usize; n]; n];
            let key_to_idx: BTreeMap<&str, usize> = self
                .keys
                .iter()
                .enumerate()
                .map(|(i, k)| (k.as_str(), i))
                .collect();
            for i in 0..n {
                for j in 0..n {
                    let prod = self.elements[i].mul(&self.elements[j]);
                    table[i][j] = key_to_idx[projective_key(&prod).as_str()];
                }
            }
            table
        })
    }

    /// Projective order of element i (smallest m ≥ 1 with g^m scalar).
    pub fn element_order(&self, i: usize) -> usize {
        let table = self.mult_table();
        let mut cur = i;
        let mut m = 1;
        while cur != 0 {
            cur = table[cur][i];
            m += 1;
        }
        m
    }

    /// Census {order: count} over all elements.
    pub fn order_census(&self) -> BTreeMap<usize, usize> {
        let mut census = BTreeMap::new();
        for i in 0..self.order() {
            *census.entry(self.element_order(i)).or_insert(0) += 1;
        }
        census
    }

    pub fn apply(&self, i: usize, p: &[Cyc]) -> Vec<Cyc> {
        self.elements[i].apply(p)
    }

    /// Orbit of a projective point; length × stabilizer order = group order.
    pub fn orbit_of(&self, p: &ProjPoint) -> PointOrbit {
        let mut reps: Vec<Vec<Cyc>> = vec![p.coords.clone()];
        let gens: Vec<usize> = self.generators.clone();
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for &g in &gens {
                let q = self.apply(g, &reps[i].clone());
                if !reps.iter().any(|r| ProjPoint::same_point(r, &q)) {
                    reps.push(q);
                    frontier.push(reps.len() - 1);
                }
            }
        }
        let mut points: Vec<ProjPoint> = reps.into_iter().map(ProjPoint::new).collect();
        points.sort_by_key(|p| p.key());
        PointOrbit { points }
    }

    /// Indices of the elements fixing p projectively.
    pub fn stabilizer(&self, p: &ProjPoint) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| ProjPoint::same_point(&self.apply(i, &p.coords), &p.coords))
            .collect()
    }

    /// Pullback F∘g of a form along element i.
    pub fn pullback(&self, form: &MultiPoly, i: usize) -> MultiPoly {
        form.substitute_matrix(&self.elements[i])
    }

    /// Basis of the space of degree-d forms invariant under the group, by
    /// Reynolds averaging over the monomial basis followed by an exact
    /// invariance recheck. For a perfect group acting by honest matrices the
    /// plain average is the full projection.
    pub fn invariant_forms(&self, degree: u32) -> Vec<MultiPoly> {
        let f = &self.field;
        let monos = monomials_of_degree(degree);
        let index: BTreeMap<Expo, usize> =
            monos.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let mut rows: Vec<Vec<Cyc>> = Vec::new();
        for e in &monos {
            let mono = MultiPoly::monomial(f, *e, f.one());
            let mut avg = MultiPoly::zero(f);
            for i in 0..self.order() {
                avg = &avg + &self.pullback(&mono, i);
            }
            let mut row = vec![f.zero(); monos.len()];
            for (e2, c) in avg.terms() {
                row[index[e2]] = c.clone();
            }
            rows.push(row);
        }
        let mat = Matrix::from_rows(f, rows).rref();
        let mut basis = Vec::new();
        for r in 0..mat.rows {
            let mut p = MultiPoly::zero(f);
            for (c, e) in monos.iter().enumerate() {
                let coeff = &mat[(r, c)];
                if !coeff.is_zero() {
                    p = &p + &MultiPoly::monomial(f, *e, coeff.clone());
                }
            }
            let (inv, _) = self.is_invariant(&p);
            assert!(inv, "Reynolds output failed the invariance recheck");
            basis.push(p);
        }
        basis
    }

    /// True iff F∘g is a scalar multiple of F for every generator; returns
    /// the scalars.
    pub fn is_invariant(&self, form: &MultiPoly) -> (bool, Vec<Cyc>) {
        let mut scalars = Vec::new();
        for &g in &self.generators {
            let img = self.pullback(form, g);
            match proportional_polys(form, &img) {
                Some(c) => scalars.push(c),
                None => return (false, vec![]),
            }
        }
        (true, scalars)
    }
}

/// If q = c·p for a scalar c, return c.
pub fn proportional_polys(p: &MultiPoly, q: &MultiPoly) -> Option<Cyc> {
    let f = p.field();
    let (e, c0) = p.leading()?;
    let c1 = q.coeff(e);
    if c1.is_zero() {
        return if q.is_zero() && p.is_zero() { Some(f.one()) } else { None };
    }
    let c = c1.try_div(c0).ok()?;
    if &p.scale(&c) == q {
        Some(c)
    } else {
        None
    }
}

/// All exponent tuples of total degree d (graded-lex ascending).
pub fn monomials_of_degree(d: u32) -> Vec<Expo> {
    let mut out = Vec::new();
    let d = d as i32;
    for a in 0..=d {
        for b in 0..=(d - a) {
            for c in 0..=(d - a - b) {
                for e in 0..=(d - a - b - c) {
                    let f = d - a - b - c - e;
                    out.push(Expo([a as u8, b as u8, c as u8, e as u8, f as u8]));
                }
            }
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Eigenspaces and fixed loci
// ---------------------------------------------------------------------------

/// Projective eigen-decomposition of a finite-order matrix: the scalar class
/// decomposition ker(M − λI) over all λ with λ^m = c, where M^m = c·I.
pub fn eigenspaces(field: &Field, m: &Matrix) -> Vec<(Cyc, Subspace)> {
    // Projective order and the scalar c.
    let mut pow = m.clone();
    let mut ord = 1usize;
    let id = Matrix::identity(field, N_VARS);
    loop {
        if let Some(_c) = id.proportional(&pow) {
            break;
        }
        pow = pow.mul(m);
        ord += 1;
        assert!(ord <= 360, "matrix order too large for eigen decomposition");
    }
    let c = id.proportional(&pow).unwrap();
    // One m-th root of c among roots of unity times rationals.
    let root = nth_root_of_unity_mult(field, &c, ord as u32)
        .expect("scalar has no m-th root among roots of unity");
    let mut out = Vec::new();
    let n = field.conductor();
    assert_eq!(n % ord as u32, 0, "element order must divide the conductor");
    for j in 0..ord {
        let lam = &root * &field.zeta_pow(ord as u32, j as i64).unwrap();
        let mut shifted = m.clone();
        for i in 0..N_VARS {
            shifted[(i, i)] = &shifted[(i, i)] - &lam;
        }
        let ker = shifted.kernel_basis();
        if !ker.is_empty() {
            let sub = Subspace::from_spanning(ker, field).unwrap();
            out.push((lam, sub));
        }
    }
    let total: usize = out.iter().map(|(_, s)| s.dim()).sum();
    assert_eq!(total, N_VARS, "finite-order matrix must be diagonalizable");
    out
}

/// Find y with y^m = c when c is ±(root of unity)·rational-square-free form;
/// covers every scalar arising from products of finite-order matrices.
fn nth_root_of_unity_mult(field: &Field, c: &Cyc, m: u32) -> Option<Cyc> {
    if c.is_one() {
        return Some(field.one());
    }
    let n = field.conductor();
    for k in 0..n {
        let z = field.zeta_pow(n, k as i64).unwrap();
        if &z.pow(m as i64) == c {
            return Some(z);
        }
        let zn = -&z;
        if &zn.pow(m as i64) == c {
            return Some(zn);
        }
    }
    // Rational scalars: try exact m-th root via repeated square root.
    if let Some(r) = c.as_rational() {
        if m == 2 {
            return field.sqrt_rational(&r);
        }
    }
    None
}

/// Common fixed locus of a set of matrices: all joint projective
/// eigenspaces, as canonical subspaces sorted by dimension.
pub fn fixed_locus(field: &Field, mats: &[&Matrix]) -> Vec<Subspace> {
    if mats.is_empty() {
        let id = Matrix::identity(field, N_VARS);
        return vec![Subspace { basis: id }];
    }
    let mut spaces: Vec<Subspace> = eigenspaces(field, mats[0])
        .into_iter()
        .map(|(_, s)| s)
        .collect();
    for m in &mats[1..] {
        let eig = eigenspaces(field, m);
        let mut next = Vec::new();
        for s in &spaces {
            for (_, e) in &eig {
                if let Some(i) = s.intersect(e) {
                    if !next.contains(&i) {
                        next.push(i);
                    }
                }
            }
        }
        spaces = next;
    }
    spaces.sort_by_key(|s| (s.dim(), format!("{:?}", s.basis)));
    spaces.dedup();
    spaces
}

// ---------------------------------------------------------------------------
// Small-orbit scan
// ---------------------------------------------------------------------------

/// One orbit found by the scan.
#[derive(Clone, Debug)]
pub struct ScanOrbit {
    pub orbit: PointOrbit,
}

/// A fixed component of positive dimension meeting the variety in a curve of
/// points with nontrivial stabilizer (reported, not enumerated).
#[derive(Clone, Debug)]
pub struct CurveFamily {
    pub subspace: Subspace,
    pub subgroup_order: usize,
    /// True when the component lies entirely inside the variety.
    pub inside_variety: bool,
}

#[derive(Debug, Default)]
pub struct ScanReport {
    pub orbits: Vec<ScanOrbit>,
    pub curve_families: Vec<CurveFamily>,
    /// Minimal-polynomial literals of restricted-form factors whose roots are
    /// not expressible in the field.
    pub outside_field: Vec<String>,
}

impl ScanReport {
    pub fn lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.orbit.len()).collect()
    }

    pub fn find_orbit_of(&self, p: &ProjPoint) -> Option<&ScanOrbit> {
        self.orbits.iter().find(|o| o.orbit.contains(p))
    }
}

/// All point orbits of length ≤ max_len on the hypersurface V(form), found by
/// scanning fixed loci of the subgroups that could stabilize such a point:
/// cyclic subgroups and their pairwise joins up to order 12. Fixed lines are
/// intersected with the hypersurface by exact root extraction; fixed
/// components of dimension ≥ 2 that meet the hypersurface (necessarily in a
/// curve of small-orbit points) are reported as curve families.
pub fn small_orbits_on(grp: &MatrixGroup, form: &MultiPoly, max_len: usize) -> ScanReport {
    let field = &grp.field;
    let order = grp.order();
    let min_stab = order.div_ceil(max_len);
    let mut report = ScanReport::default();

    // Cyclic subgroups, as sorted index sets, with a generator each.
    let table = grp.mult_table();
    let mut cyclic: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    for i in 1..order {
        let mut set = BTreeSet::new();
        set.insert(0);
        let mut cur = i;
        while cur != 0 {
            set.insert(cur);
            cur = table[cur][i];
        }
        cyclic.entry(set).or_insert(i);
    }
    // Joins of pairs of cyclic subgroups with closure of order ≤ 12.
    let mut scan_subgroups: BTreeMap<BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
    for (set, &g) in &cyclic {
        if set.len() >= min_stab {
            scan_subgroups.insert(set.clone(), vec![g]);
        }
    }
    let cyclic_list: Vec<(&BTreeSet<usize>, &usize)> = cyclic.iter().collect();
    for a in 0..cyclic_list.len() {
        for b in (a + 1)..cyclic_list.len() {
            let (ga, gb) = (*cyclic_list[a].1, *cyclic_list[b].1);
            if let Some(closure) = closure_bounded(table, &[ga, gb], 12) {
                if closure.len() >= min_stab {
                    scan_subgroups.entry(closure).or_insert(vec![ga, gb]);
                }
            }
        }
    }
    // Points fixed by the whole group would evade the subgroup filter.
    scan_subgroups.insert((0..order).collect(), grp.generators.clone());

    let mut seen_points: BTreeSet<String> = BTreeSet::new();
    let mut seen_families: Vec<Subspace> = Vec::new();
    let mut candidate_points: Vec<ProjPoint> = Vec::new();

    for (set, gens) in &scan_subgroups {
        let mats: Vec<&Matrix> = gens.iter().map(|&g| &grp.elements[g]).collect();
        for space in fixed_locus(field, &mats) {
            match space.dim() {
                1 => {
                    let p = space.basis.row(0).to_vec();
                    if form.eval(&p).is_zero() {
                        candidate_points.push(ProjPoint::new(p));
                    }
                }
                2 => {
                    let u = space.basis.row(0).to_vec();
                    let w = space.basis.row(1).to_vec();
                    let restricted = restrict_to_line(form, &u, &w);
                    if restricted.is_zero() {
                        // Line inside the hypersurface: pointwise fixed curve.
                        if order / set.len() <= max_len
                            && !seen_families.contains(&space)
                        {
                            seen_families.push(space.clone());
                            report.curve_families.push(CurveFamily {
                                subspace: space.clone(),
                                subgroup_order: set.len(),
                                inside_variety: true,
                            });
                        }
                        continue;
                    }
                    let roots = binary_roots(&restricted);
                    report.outside_field.extend(roots.unresolved);
                    for r in roots.roots {
                        let mut coords = Vec::with_capacity(N_VARS);
                        for i in 0..N_VARS {
                            coords.push(&(&r.s * &u[i]) + &(&r.t * &w[i]));
                        }
                        candidate_points.push(ProjPoint::new(coords));
                    }
                }
                _ => {
                    // A fixed component of dimension ≥ 2 meets the
                    // hypersurface in a curve of fixed points.
                    if order / set.len() <= max_len && !seen_families.contains(&space) {
                        seen_families.push(space.clone());
                        report.curve_families.push(CurveFamily {
                            subspace: space.clone(),
                            subgroup_order: set.len(),
                            inside_variety: false,
                        });
                    }
                }
            }
        }
    }

    for p in candidate_points {
        if seen_points.contains(&p.key()) {
            continue;
        }
        let orbit = grp.orbit_of(&p);
        for q in &orbit.points {
            seen_points.insert(q.key());
        }
        if orbit.len() <= max_len {
            report.orbits.push(ScanOrbit { orbit });
        }
    }
    report
        .orbits
        .sort_by_key(|o| (o.orbit.len(), o.orbit.rep().key()));
    report
}

/// Closure of the generated subgroup at index level, or None once it exceeds
/// the bound.
fn closure_bounded(
    table: &[Vec<usize>],
    gens: &[usize],
    bound: usize,
) -> Option<BTreeSet<usize>> {
    let mut set: BTreeSet<usize> = BTreeSet::new();
    set.insert(0);
    let mut frontier: Vec<usize> = vec![0];
    while let Some(i) = frontier.pop() {
        for &g in gens {
            let p = table[i][g];
            if set.insert(p) {
                if set.len() > bound {
                    return None;
                }
                frontier.push(p);
            }
        }
    }
    Some(set)
}

/// Orbit of a projective linear subspace under the group (canonical RREF
/// dedup): used for line orbits.
pub fn orbit_of_subspace(grp: &MatrixGroup, s: &Subspace) -> Vec<Subspace> {
    let field = &grp.field;
    let mut all: Vec<Subspace> = vec![s.clone()];
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        for &g in &grp.generators {
            let rows: Vec<Vec<Cyc>> = (0..all[i].basis.rows)
                .map(|r| grp.elements[g].apply(all[i].basis.row(r)))
                .collect();
            let img = Subspace::from_spanning(rows, field).unwrap();
            if !all.contains(&img) {
                all.push(img);
                frontier.push(all.len() - 1);
            }
        }
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::Registry;

    #[test]
    fn permutation_group_order_and_census() {
        let reg = Registry::new(120).unwrap();
        let g = reg.group("A5-standard").unwrap();
        assert_eq!(g.order(), 60);
        let census = g.order_census();
        assert_eq!(census.get(&1), Some(&1));
        assert_eq!(census.get(&2), Some(&15));
        assert_eq!(census.get(&3), Some(&20));
        assert_eq!(census.get(&5), Some(&24));
    }

    #[test]
    fn identity_group() {
        let f = Field::new(120).unwrap();
        let g = enumerate_group(&f, vec![Matrix::identity(&f, 5)], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn orbit_lengths_on_x1() {
        let reg = Registry::new(120).unwrap();
        let g = reg.group("A5-standard").unwrap();
        let f = reg.field();
        let two_i = &f.integer(2) * &f.zeta(4).unwrap();
        let p = ProjPoint::new(vec![f.one(), f.one(), f.one(), two_i, f.one()]);
        assert_eq!(g.orbit_of(&p).len(), 5);
        let z5 = f.zeta(5).unwrap();
        let q = ProjPoint::new(vec![
            f.one(),
            z5.clone(),
            z5.pow(2),
            z5.pow(3),
            z5.pow(4),
        ]);
        assert_eq!(g.orbit_of(&q).len(), 12);
        // Orbit–stabilizer
        assert_eq!(g.stabilizer(&p).len() * 5, 60);
        // Generic point has trivial stabilizer.
        let gen = ProjPoint::new(vec![
            f.integer(3),
            f.integer(-7),
            f.integer(11),
            f.integer(2),
            f.integer(19),
        ]);
        assert_eq!(g.stabilizer(&gen).len(), 1);
    }

    #[test]
    fn invariant_quadrics_dims() {
        let reg = Registry::new(120).unwrap();
        let std = reg.group("A5-standard").unwrap();
        assert_eq!(std.invariant_forms(2).len(), 2);
        let nonstd = reg.group("A5-nonstandard").unwrap();
        let basis = nonstd.invariant_forms(2);
        assert_eq!(basis.len(), 1);
        // Spanned by Σ_{i≤j} xᵢxⱼ.
        let x2 = reg.form("X2").unwrap();
        assert!(proportional_polys(&basis[0], &x2).is_some());
    }

    #[test]
    fn enumeration_error_paths() {
        let f = Field::new(120).unwrap();
        let singular = Matrix::zero(&f, 5, 5);
        assert!(matches!(
            enumerate_group(&f, vec![singular], 100),
            Err(GroupError::SingularGenerator)
        ));
        let reg = Registry::new(120).unwrap();
        let gens: Vec<Matrix> = reg
            .group("A5-standard")
            .unwrap()
            .generator_matrices()
            .into_iter()
            .cloned()
            .collect();
        assert!(matches!(
            enumerate_group(&f, gens, 12),
            Err(GroupError::BoundExceeded(12))
        ));
    }

    #[test]
    fn orbit_under_trivial_group() {
        let f = Field::new(120).unwrap();
        let g = enumerate_group(&f, vec![Matrix::identity(&f, 5)], 10).unwrap();
        let p = ProjPoint::new(vec![
            f.integer(3),
            f.integer(1),
            f.integer(4),
            f.integer(1),
            f.integer(5),
        ]);
        assert_eq!(g.orbit_of(&p).len(), 1);
    }

    #[test]
    fn invariant_dimension_independent_of_generators() {
        // Rebuild the group from shuffled generator products; the invariant
        // dimensions must not change.
        let reg = Registry::new(120).unwrap();
        let f = reg.field();
        let std = reg.group("A5-standard").unwrap();
        let gens = std.generator_matrices();
        let alt = vec![gens[0].mul(gens[1]), gens[1].clone(), gens[1].mul(gens[0])];
        let regen = enumerate_group(&f, alt, 1000).unwrap();
        assert_eq!(regen.order(), 60);
        assert_eq!(regen.invariant_forms(2).len(), std.invariant_forms(2).len());
    }

    #[test]
    fn fixed_locus_shapes() {
        let reg = Registry::new(120).unwrap();
        let g = reg.group("A5-standard").unwrap();
        let f = reg.field();
        // An order-5 element: five isolated fixed points, four on X1.
        let five = (0..g.order())
            .find(|&i| g.element_order(i) == 5)
            .unwrap();
        let spaces = fixed_locus(&f, &[&g.elements[five]]);
        assert_eq!(spaces.len(), 5);
        assert!(spaces.iter().all(|s| s.dim() == 1));
        let x1 = reg.form("X1").unwrap();
        let on_x1 = spaces
            .iter()
            .filter(|s| x1.eval(s.basis.row(0)).is_zero())
            .count();
        assert_eq!(on_x1, 4);
        // A double transposition: a projective plane and a line.
        let two = (0..g.order())
            .find(|&i| g.element_order(i) == 2)
            .unwrap();
        let mut dims: Vec<usize> = fixed_locus(&f, &[&g.elements[two]])
            .iter()
            .map(|s| s.dim())
            .collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![2, 3]);
        // Trivial subgroup: all of ℙ⁴.
        let all = fixed_locus(&f, &[]);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].dim(), 5);
    }
}
