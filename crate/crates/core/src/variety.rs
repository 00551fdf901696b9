//! Hypersurfaces, complete intersections, and rational curves in ℙ⁴:
//! singular-point detection and A₁/A₂ classification, parametrized-curve
//! containment and incidence, linear-system dimension counts, pencil
//! singular-member parameters, and build-time curve parametrizations
//! (plane conics through an exact point, torus-orbit quartic normal curves).

use crate::cyclo::{Cyc, Field};
use crate::group::{monomials_of_degree, MatrixGroup, ProjPoint};
use crate::linalg::{Matrix, Subspace};
use crate::poly::{binary_roots, restrict_to_line, MultiPoly, N_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingType {
    Smooth,
    A1,
    A2,
    Other,
}

impl std::fmt::Display for SingType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SingType::Smooth => "smooth",
            SingType::A1 => "A1",
            SingType::A2 => "A2",
            SingType::Other => "other/unresolved",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct SingularityReport {
    pub point: ProjPoint,
    pub corank: usize,
    pub kind: SingType,
}

/// A rational curve given by 5 binary forms of a common degree in (s, t)
/// (the first two polynomial variables by convention).
#[derive(Clone)]
pub struct RationalCurve {
    pub param: Vec<MultiPoly>,
    pub degree: u32,
}

impl RationalCurve {
    pub fn new(param: Vec<MultiPoly>) -> RationalCurve {
        assert_eq!(param.len(), N_VARS);
        let degree = param
            .iter()
            .filter_map(|p| p.homogeneous_degree())
            .max()
            .expect("parametrization is identically zero");
        for p in &param {
            assert!(p.is_zero() || p.homogeneous_degree() == Some(degree));
        }
        RationalCurve { param, degree }
    }

    /// Line through the two rows of a 2-dimensional subspace.
    pub fn from_line(sub: &Subspace) -> RationalCurve {
        assert_eq!(sub.dim(), 2);
        let f = sub.basis.field();
        let u = sub.basis.row(0);
        let w = sub.basis.row(1);
        let s = MultiPoly::variable(f, 0);
        let t = MultiPoly::variable(f, 1);
        let param = (0..N_VARS)
            .map(|i| &s.scale(&u[i]) + &t.scale(&w[i]))
            .collect();
        RationalCurve::new(param)
    }

    /// Point at parameter [s:t].
    pub fn at(&self, s: &Cyc, t: &Cyc) -> ProjPoint {
        let f = s.field();
        let pt = [s.clone(), t.clone(), f.zero(), f.zero(), f.zero()];
        ProjPoint::new(self.param.iter().map(|p| p.eval(&pt)).collect())
    }

    /// Image of the curve under a linear map.
    pub fn transform(&self, m: &Matrix) -> RationalCurve {
        let f = self.param[0].field();
        let mut out = vec![MultiPoly::zero(f); N_VARS];
        for (i, row) in (0..N_VARS).map(|r| (r, m.row(r))) {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out[i] = &out[i] + &self.param[j].scale(c);
                }
            }
        }
        RationalCurve::new(out)
    }

    /// Compose a form with the parametrization: the restricted binary form.
    pub fn pull(&self, form: &MultiPoly) -> MultiPoly {
        form.substitute(&self.param)
    }

    /// True when the parametrization is nondegenerate enough to be a curve
    /// (three distinct image points).
    pub fn is_honest_curve(&self) -> bool {
        let f = self.param[0].field();
        let pts = [
            self.at(&f.one(), &f.zero()),
            self.at(&f.zero(), &f.one()),
            self.at(&f.one(), &f.one()),
        ];
        pts[0] != pts[1] && pts[0] != pts[2] && pts[1] != pts[2]
    }

    /// Does the point lie on the image? Solved exactly via the common roots
    /// of the 2x2 minors of [param(s,t) | p].
    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        let mut system = Vec::new();
        for i in 0..N_VARS {
            for j in (i + 1)..N_VARS {
                let m = &self.param[i].scale(&p.coords[j]) - &self.param[j].scale(&p.coords[i]);
                system.push(m);
            }
        }
        // The common roots of the minors across all binary forms.
        let mut roots0: Option<Vec<(String, usize)>> = None;
        for m in system.iter().filter(|m| !m.is_zero()) {
            let r = binary_roots(m);
            let keys: Vec<(String, usize)> = r
                .roots
                .iter()
                .map(|br| (format!("{}|{}", br.s.render(), br.t.render()), 1))
                .collect();
            match &mut roots0 {
                None => roots0 = Some(keys),
                Some(prev) => prev.retain(|k| keys.iter().any(|k2| k2.0 == k.0)),
            }
            if roots0.as_ref().is_some_and(|v| v.is_empty()) {
                return false;
            }
        }
        match roots0 {
            None => true, // all minors vanish: parametrization proportional to p
            Some(common) => !common.is_empty(),
        }
    }
}

impl std::fmt::Debug for RationalCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ps: Vec<String> = self.param.iter().map(|p| p.render()).collect();
        write!(f, "curve deg {} [{}]", self.degree, ps.join(" ; "))
    }
}

// ---------------------------------------------------------------------------
// Singularities
// ---------------------------------------------------------------------------

/// Hypersurface case: all five partials vanish at p (p must lie on V).
pub fn is_singular_at(form: &MultiPoly, p: &ProjPoint) -> bool {
    assert!(form.eval(&p.coords).is_zero(), "point not on the hypersurface");
    form.gradient().iter().all(|d| d.eval(&p.coords).is_zero())
}

/// Complete intersection of k forms: Jacobian rank < k at p.
pub fn is_singular_at_ci(forms: &[MultiPoly], p: &ProjPoint) -> bool {
    let f = forms[0].field();
    for g in forms {
        assert!(g.eval(&p.coords).is_zero(), "point not on the variety");
    }
    let rows: Vec<Vec<Cyc>> = forms
        .iter()
        .map(|g| g.gradient().iter().map(|d| d.eval(&p.coords)).collect())
        .collect();
    Matrix::from_rows(f, rows).rank() < forms.len()
}

/// Graded pieces of F in the affine chart at p: translate p to the origin of
/// the chart where the pivot coordinate is 1, and split by chart-degree.
/// Returns (chart variables' indices, pieces f_k for k = 0..deg).
fn chart_expansion(form: &MultiPoly, p: &ProjPoint) -> (Vec<usize>, Vec<MultiPoly>) {
    let f = form.field();
    let pivot = p
        .coords
        .iter()
        .position(|c| !c.is_zero())
        .expect("projective point");
    // x_j ↦ p_j·x_pivot + x_j (j ≠ pivot), x_pivot ↦ p_pivot·x_pivot.
    let images: Vec<MultiPoly> = (0..N_VARS)
        .map(|j| {
            let scaled = MultiPoly::variable(f, pivot).scale(&p.coords[j]);
            if j == pivot {
                scaled
            } else {
                &scaled + &MultiPoly::variable(f, j)
            }
        })
        .collect();
    let expanded = form.substitute(&images);
    let deg = form.homogeneous_degree().expect("homogeneous form") as usize;
    let mut pieces = vec![MultiPoly::zero(f); deg + 1];
    for (e, c) in expanded.terms() {
        let chart_deg: u32 = (0..N_VARS)
            .filter(|&j| j != pivot)
            .map(|j| e.0[j] as u32)
            .sum();
        pieces[chart_deg as usize] =
            &pieces[chart_deg as usize] + &MultiPoly::monomial(f, *e, c.clone());
    }
    let chart_vars: Vec<usize> = (0..N_VARS).filter(|&j| j != pivot).collect();
    (chart_vars, pieces)
}

/// Symmetric matrix of the quadratic piece on the chart variables.
fn quadratic_matrix(piece: &MultiPoly, chart_vars: &[usize]) -> Matrix {
    let f = piece.field();
    let n = chart_vars.len();
    let mut m = Matrix::zero(f, n, n);
    for (e, c) in piece.terms() {
        let mut idx = Vec::new();
        for (a, &v) in chart_vars.iter().enumerate() {
            for _ in 0..e.0[v] {
                idx.push(a);
            }
        }
        assert_eq!(idx.len(), 2);
        if idx[0] == idx[1] {
            m[(idx[0], idx[0])] = &m[(idx[0], idx[0])] + c;
        } else {
            let half = c.try_div(&f.integer(2)).unwrap();
            m[(idx[0], idx[1])] = &m[(idx[0], idx[1])] + &half;
            m[(idx[1], idx[0])] = &m[(idx[1], idx[0])] + &half;
        }
    }
    m
}

/// Classify an isolated hypersurface singularity up to corank 1: A1 for a
/// nondegenerate quadratic part, A2 for corank 1 with nonvanishing restricted
/// cubic, everything deeper reported as Other.
pub fn classify_singularity(form: &MultiPoly, p: &ProjPoint) -> SingularityReport {
    let f = form.field();
    if !is_singular_at(form, p) {
        return SingularityReport {
            point: p.clone(),
            corank: 0,
            kind: SingType::Smooth,
        };
    }
    let (chart_vars, pieces) = chart_expansion(form, p);
    let q = quadratic_matrix(&pieces[2], &chart_vars);
    let rank = q.rank();
    let corank = chart_vars.len() - rank;
    let kind = match corank {
        0 => SingType::A1,
        1 => {
            // Restrict the cubic piece to the kernel line of the quadratic part.
            let ker = q.kernel_basis();
            assert_eq!(ker.len(), 1);
            let mut point = vec![f.zero(); N_VARS];
            for (a, &v) in chart_vars.iter().enumerate() {
                point[v] = ker[0][a].clone();
            }
            let cubic_val = if pieces.len() > 3 {
                pieces[3].eval(&point)
            } else {
                f.zero()
            };
            if cubic_val.is_zero() {
                SingType::Other
            } else {
                SingType::A2
            }
        }
        _ => SingType::Other,
    };
    SingularityReport {
        point: p.clone(),
        corank,
        kind,
    }
}

/// Node test for a singular point of a surface cut by two forms: one
/// combination of the forms has vanishing gradient at p; its quadratic part
/// restricted to the tangent space of the other (smooth) form has full rank 3
/// exactly for an ordinary double point.
pub fn ci_surface_is_node(forms: &[MultiPoly], p: &ProjPoint) -> bool {
    assert_eq!(forms.len(), 2);
    let f = forms[0].field();
    let grads: Vec<Vec<Cyc>> = forms
        .iter()
        .map(|g| g.gradient().iter().map(|d| d.eval(&p.coords)).collect())
        .collect();
    let jac = Matrix::from_rows(f, grads.clone());
    assert_eq!(jac.rank(), 1, "expected a singular surface point of corank 1");
    // Combination with vanishing gradient.
    let ker = jac.transpose().kernel_basis();
    let combos: Vec<Vec<Cyc>> = ker;
    let (c1, c2) = (&combos[0][0], &combos[0][1]);
    let degenerate = &forms[0].scale(c1) + &forms[1].scale(c2);
    // The other form is smooth at p: pick whichever has a nonzero gradient.
    let smooth_idx = (0..2)
        .find(|&i| grads[i].iter().any(|c| !c.is_zero()))
        .expect("Jacobian rank 1 needs a nonzero gradient");
    let smooth = &forms[smooth_idx];

    let (chart_vars, pieces) = chart_expansion(&degenerate, p);
    let q = quadratic_matrix(&pieces[2], &chart_vars);
    // Tangent space of the smooth form inside the chart.
    let (chart_vars2, spieces) = chart_expansion(smooth, p);
    assert_eq!(chart_vars, chart_vars2);
    let lin = &spieces[1];
    let mut row = vec![f.zero(); chart_vars.len()];
    for (e, c) in lin.terms() {
        for (a, &v) in chart_vars.iter().enumerate() {
            if e.0[v] == 1 {
                row[a] = c.clone();
            }
        }
    }
    let tangent = Matrix::from_rows(f, vec![row]).kernel_basis();
    assert_eq!(tangent.len(), 3);
    // Q restricted to the tangent 3-space.
    let mut restricted = Matrix::zero(f, 3, 3);
    for a in 0..3 {
        let qa = q.apply(&tangent[a]);
        for b in 0..3 {
            let mut val = f.zero();
            for (x, y) in qa.iter().zip(tangent[b].iter()) {
                val = &val + &(x * y);
            }
            restricted[(a, b)] = val;
        }
    }
    restricted.rank() == 3
}

// ---------------------------------------------------------------------------
// Containment and incidence
// ---------------------------------------------------------------------------

/// Exact containment: the restricted binary form vanishes identically for
/// every defining form.
pub fn contains_curve(forms: &[MultiPoly], curve: &RationalCurve) -> bool {
    forms.iter().all(|g| curve.pull(g).is_zero())
}

/// Certifies the 2×5 Jacobian of the two forms drops rank identically along
/// the parametrized curve (all 2×2 minors pull back to zero).
pub fn sings_along_curve(forms: &[MultiPoly], curve: &RationalCurve) -> bool {
    assert_eq!(forms.len(), 2);
    let g1 = forms[0].gradient();
    let g2 = forms[1].gradient();
    for i in 0..N_VARS {
        for j in (i + 1)..N_VARS {
            let minor = &(&g1[i] * &g2[j]) - &(&g1[j] * &g2[i]);
            if !curve.pull(&minor).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Sampled full-rank check: the Jacobian has rank 2 at each of `count`
/// deterministic parameter values (complement of `sings_along_curve`).
pub fn jacobian_full_rank_at_samples(
    forms: &[MultiPoly],
    curve: &RationalCurve,
    count: usize,
) -> bool {
    let f = forms[0].field();
    let mut rng = crate::rng::XorShift::new(0x5eed);
    for _ in 0..count {
        let s = f.integer(rng.small_int(50));
        let t = f.one();
        let p = curve.at(&s, &t);
        let rows: Vec<Vec<Cyc>> = forms
            .iter()
            .map(|g| g.gradient().iter().map(|d| d.eval(&p.coords)).collect())
            .collect();
        if Matrix::from_rows(f, rows).rank() < 2 {
            return false;
        }
    }
    true
}

/// Two lines in ℙ⁴ are disjoint iff their spans stack to rank 4.
pub fn lines_pairwise_disjoint(lines: &[Subspace]) -> bool {
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if a.intersect(b).is_some() {
                return false;
            }
        }
    }
    true
}

/// Every intersecting pair of lines meets inside the given point set, and at
/// least one pair does meet.
pub fn lines_meet_exactly_at(lines: &[Subspace], points: &[ProjPoint]) -> bool {
    let mut met = false;
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if let Some(common) = a.intersect(b) {
                if common.dim() != 1 {
                    return false;
                }
                met = true;
                let p = ProjPoint::new(common.basis.row(0).to_vec());
                if !points.iter().any(|q| *q == p) {
                    return false;
                }
            }
        }
    }
    met
}

// ---------------------------------------------------------------------------
// Linear systems
// ---------------------------------------------------------------------------

/// Basis of degree-d forms vanishing at the given points and containing the
/// given curves (kernel of the exact evaluation matrix).
pub fn linear_system_basis(
    field: &Field,
    degree: u32,
    points: &[ProjPoint],
    curves: &[RationalCurve],
) -> Vec<MultiPoly> {
    let monos = monomials_of_degree(degree);
    let mut rows: Vec<Vec<Cyc>> = Vec::new();
    for p in points {
        rows.push(
            monos
                .iter()
                .map(|e| MultiPoly::monomial(field, *e, field.one()).eval(&p.coords))
                .collect(),
        );
    }
    for c in curves {
        // Vanishing of the restricted binary form of degree d·e: one row per
        // coefficient.
        let restricted: Vec<MultiPoly> = monos
            .iter()
            .map(|e| c.pull(&MultiPoly::monomial(field, *e, field.one())))
            .collect();
        let d = degree * c.degree;
        for k in 0..=d {
            let mut row = Vec::with_capacity(monos.len());
            let mut all_zero = true;
            for r in &restricted {
                let mut e = [0u8; N_VARS];
                e[0] = (d - k) as u8;
                e[1] = k as u8;
                let v = r.coeff(&crate::poly::Expo(e));
                if !v.is_zero() {
                    all_zero = false;
                }
                row.push(v);
            }
            if !all_zero {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![field.zero(); monos.len()]);
    }
    let kernel = Matrix::from_rows(field, rows).kernel_basis();
    kernel
        .into_iter()
        .map(|v| {
            let mut p = MultiPoly::zero(field);
            for (e, c) in monos.iter().zip(v) {
                if !c.is_zero() {
                    p = &p + &MultiPoly::monomial(field, *e, c);
                }
            }
            p
        })
        .collect()
}

/// Dimension of the image of the system in H⁰(V, O(d)): subtract multiples of
/// the defining form contained in the kernel (for d = deg F_V this is the
/// span of F_V itself).
pub fn linear_system_dim_modulo(
    field: &Field,
    degree: u32,
    points: &[ProjPoint],
    curves: &[RationalCurve],
    modulo: Option<&MultiPoly>,
) -> usize {
    let basis = linear_system_basis(field, degree, points, curves);
    let mut dim = basis.len();
    if let Some(fv) = modulo {
        assert_eq!(fv.homogeneous_degree(), Some(degree));
        if in_span(&basis, fv) {
            dim -= 1;
        }
    }
    dim
}

/// Is the form in the span of the basis?
pub fn in_span(basis: &[MultiPoly], form: &MultiPoly) -> bool {
    if basis.is_empty() {
        return form.is_zero();
    }
    let field = form.field();
    let deg = form
        .homogeneous_degree()
        .or_else(|| basis[0].homogeneous_degree())
        .unwrap();
    let monos = monomials_of_degree(deg);
    let to_row = |p: &MultiPoly| -> Vec<Cyc> {
        monos.iter().map(|e| p.coeff(e)).collect()
    };
    let mut rows: Vec<Vec<Cyc>> = basis.iter().map(to_row).collect();
    let base_rank = Matrix::from_rows(&field, rows.clone()).rank();
    rows.push(to_row(form));
    Matrix::from_rows(&field, rows).rank() == base_rank
}

/// The base locus of the system contains the probe curve iff every basis
/// member vanishes on it (vanishing is linear in the member).
pub fn base_locus_contains(basis: &[MultiPoly], probe: &RationalCurve) -> bool {
    basis.iter().all(|b| probe.pull(b).is_zero())
}

// ---------------------------------------------------------------------------
// Pencils
// ---------------------------------------------------------------------------

/// Solve for the pencil parameters [a₁:a₂] making S = {a₁A + a₂B} ∩ X
/// singular at the candidate point: membership a₁A(p) + a₂B(p) = 0 together
/// with the vanishing of all 2×2 minors of the Jacobian of (a₁A + a₂B, F_X),
/// each linear in (a₁, a₂).
pub fn pencil_singular_parameters_at(
    a_form: &MultiPoly,
    b_form: &MultiPoly,
    ambient: &MultiPoly,
    p: &ProjPoint,
) -> PencilSolution {
    let f = a_form.field();
    assert!(ambient.eval(&p.coords).is_zero(), "candidate not on the ambient");
    let ga: Vec<Cyc> = a_form.gradient().iter().map(|d| d.eval(&p.coords)).collect();
    let gb: Vec<Cyc> = b_form.gradient().iter().map(|d| d.eval(&p.coords)).collect();
    let gx: Vec<Cyc> = ambient.gradient().iter().map(|d| d.eval(&p.coords)).collect();
    let mut rows: Vec<Vec<Cyc>> = Vec::new();
    rows.push(vec![a_form.eval(&p.coords), b_form.eval(&p.coords)]);
    for i in 0..N_VARS {
        for j in (i + 1)..N_VARS {
            // a1 (∂iA ∂jX − ∂jA ∂iX) + a2 (∂iB ∂jX − ∂jB ∂iX) = 0
            let ca = &(&ga[i] * &gx[j]) - &(&ga[j] * &gx[i]);
            let cb = &(&gb[i] * &gx[j]) - &(&gb[j] * &gx[i]);
            if !ca.is_zero() || !cb.is_zero() {
                rows.push(vec![ca, cb]);
            }
        }
    }
    let kernel = Matrix::from_rows(&f, rows).kernel_basis();
    match kernel.len() {
        0 => PencilSolution::None,
        1 => PencilSolution::Unique([kernel[0][0].clone(), kernel[0][1].clone()]),
        _ => PencilSolution::All,
    }
}

#[derive(Clone, Debug)]
pub enum PencilSolution {
    None,
    Unique([Cyc; 2]),
    All,
}

impl PencilSolution {
    /// Projective equality with a given parameter pair.
    pub fn matches(&self, a1: &Cyc, a2: &Cyc) -> bool {
        match self {
            PencilSolution::Unique([b1, b2]) => {
                (&(b1 * a2) - &(b2 * a1)).is_zero() && !(b1.is_zero() && b2.is_zero())
            }
            _ => false,
        }
    }
}

/// The parameter [a₁:a₂] of the unique pencil member containing the curve:
/// a₁·(A∘param) + a₂·(B∘param) ≡ 0. None if no member contains it, All if the
/// curve lies in the base locus.
pub fn member_containing_curve(
    a_form: &MultiPoly,
    b_form: &MultiPoly,
    curve: &RationalCurve,
) -> PencilSolution {
    let f = a_form.field();
    let ra = curve.pull(a_form);
    let rb = curve.pull(b_form);
    match (ra.is_zero(), rb.is_zero()) {
        (true, true) => PencilSolution::All,
        (true, false) => PencilSolution::Unique([f.one(), f.zero()]),
        (false, true) => PencilSolution::Unique([f.zero(), f.one()]),
        (false, false) => match crate::group::proportional_polys(&ra, &rb) {
            // rb = c·ra ⇒ a1 + a2·c = 0 ⇒ [a1:a2] = [c : −1].
            Some(c) => PencilSolution::Unique([c, -&f.one()]),
            None => PencilSolution::None,
        },
    }
}

// ---------------------------------------------------------------------------
// Curve construction
// ---------------------------------------------------------------------------

/// Parametrize the conic plane ∩ quadric through an exact point: first from
/// the supplied candidate points, otherwise by slicing the plane with lines
/// and extracting a root of the restricted quadric.
pub fn conic_through(
    plane: &Subspace,
    quadric: &MultiPoly,
    candidates: &[ProjPoint],
) -> Option<RationalCurve> {
    assert_eq!(plane.dim(), 3);
    let f = quadric.field();
    let on_conic = |p: &ProjPoint| {
        plane.contains_vector(&p.coords) && quadric.eval(&p.coords).is_zero()
    };
    let mut point: Option<ProjPoint> = candidates.iter().find(|p| on_conic(p)).cloned();
    if point.is_none() {
        // Slice search: restrict the quadric to lines spanned by basis pairs.
        let b = &plane.basis;
        let combos: Vec<(Vec<Cyc>, Vec<Cyc>)> = vec![
            (b.row(0).to_vec(), b.row(1).to_vec()),
            (b.row(0).to_vec(), b.row(2).to_vec()),
            (b.row(1).to_vec(), b.row(2).to_vec()),
            (
                b.row(0).iter().zip(b.row(1)).map(|(x, y)| x + y).collect(),
                b.row(2).to_vec(),
            ),
        ];
        for (u, w) in combos {
            let restricted = restrict_to_line(quadric, &u, &w);
            if restricted.is_zero() {
                point = Some(ProjPoint::new(u));
                break;
            }
            if let Some(r) = binary_roots(&restricted).roots.first() {
                let coords: Vec<Cyc> = (0..N_VARS)
                    .map(|i| &(&r.s * &u[i]) + &(&r.t * &w[i]))
                    .collect();
                point = Some(ProjPoint::new(coords));
                break;
            }
        }
    }
    let p = point?;
    // Complete p to a basis of the plane.
    let mut others = Vec::new();
    for r in 0..3 {
        let row = plane.basis.row(r).to_vec();
        let mut rows = vec![p.coords.clone()];
        rows.extend(others.clone());
        rows.push(row.clone());
        if Matrix::from_rows(&f, rows.clone()).rank() == rows.len() {
            others.push(row);
        }
        if others.len() == 2 {
            break;
        }
    }
    if others.len() != 2 {
        return None;
    }
    let (u, w) = (&others[0], &others[1]);
    // Second intersection of the line through p and v = s·u + t·w:
    // x = F(v)·p − B(p, v)·v with B the polar form.
    let s = MultiPoly::variable(&f, 0);
    let t = MultiPoly::variable(&f, 1);
    let v: Vec<MultiPoly> = (0..N_VARS)
        .map(|i| &s.scale(&u[i]) + &t.scale(&w[i]))
        .collect();
    let fv = quadric.substitute(&v);
    let grad_at_p: Vec<Cyc> = quadric.gradient().iter().map(|d| d.eval(&p.coords)).collect();
    let mut polar = MultiPoly::zero(&f);
    for i in 0..N_VARS {
        polar = &polar + &v[i].scale(&grad_at_p[i]);
    }
    let param: Vec<MultiPoly> = (0..N_VARS)
        .map(|i| &fv.scale(&p.coords[i]) - &(&polar * &v[i]))
        .collect();
    if param.iter().all(|q| q.is_zero()) {
        return None;
    }
    let curve = RationalCurve::new(param);
    if !curve.is_honest_curve() || !contains_curve(&[quadric.clone()], &curve) {
        return None;
    }
    Some(curve)
}

/// Derive the invariant quartic rational normal curve through an orbit point
/// as the closure of the weight-ordered torus orbit: express the point in the
/// eigenbasis of an order-5 element and try all weight orderings; keep the
/// ordering whose monomial curve lies on the quadric and is singular along
/// the non-normal pencil member.
pub fn derive_invariant_quartic(
    grp: &MatrixGroup,
    quadric: &MultiPoly,
    member: &MultiPoly,
    seed_orbit: &[ProjPoint],
) -> Option<RationalCurve> {
    let f = &grp.field;
    let five = (0..grp.order()).find(|&i| grp.element_order(i) == 5)?;
    let eig = crate::group::eigenspaces(f, &grp.elements[five]);
    if eig.len() != 5 || eig.iter().any(|(_, s)| s.dim() != 1) {
        return None;
    }
    let vectors: Vec<Vec<Cyc>> = eig.iter().map(|(_, s)| s.basis.row(0).to_vec()).collect();
    let values: Vec<Cyc> = eig.iter().map(|(l, _)| l.clone()).collect();
    let basis = Matrix::from_rows(f, vectors.clone()).transpose();
    let basis_inv = basis.inverse().ok()?;
    for p in seed_orbit {
        let hat = basis_inv.apply(&p.coords);
        if hat.iter().any(|c| c.is_zero()) {
            continue; // need a point of the open torus orbit
        }
        // Orderings: start index and weight step, so that eigenvalues run in
        // the progression λ_{π(k)} = λ_{π(0)}·ζ₅^(step·k).
        for start in 0..5usize {
            for step in 1..5usize {
                let mut pi = vec![start];
                let mut ok = true;
                for k in 1..5usize {
                    let z = f.zeta_pow(5, (step * k) as i64).ok()?;
                    let want = &values[start] * &z;
                    match values.iter().position(|v| *v == want) {
                        Some(idx) if !pi.contains(&idx) => pi.push(idx),
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                // Candidate monomial curve through p.
                let s = MultiPoly::variable(f, 0);
                let t = MultiPoly::variable(f, 1);
                let mut param = vec![MultiPoly::zero(f); N_VARS];
                for (k, &idx) in pi.iter().enumerate() {
                    let mono = &s.pow(4 - k as u32) * &t.pow(k as u32);
                    let coeff = &hat[idx];
                    for i in 0..N_VARS {
                        let contrib = mono.scale(&(coeff * &vectors[idx][i]));
                        param[i] = &param[i] + &contrib;
                    }
                }
                let curve = RationalCurve::new(param);
                if curve.degree != 4 {
                    continue;
                }
                if !contains_curve(std::slice::from_ref(quadric), &curve) {
                    continue;
                }
                if !contains_curve(std::slice::from_ref(member), &curve) {
                    continue;
                }
                if !sings_along_curve(&[member.clone(), quadric.clone()], &curve) {
                    continue;
                }
                return Some(curve);
            }
        }
    }
    None
}

/// The orbit of a parametrized curve under the group, deduplicated by image.
pub fn curve_orbit(grp: &MatrixGroup, curve: &RationalCurve) -> Vec<RationalCurve> {
    let f = &grp.field;
    let sample = |c: &RationalCurve| -> Vec<String> {
        [(1i64, 0i64), (0, 1), (1, 1), (1, -1), (2, 1)]
            .iter()
            .map(|&(a, b)| c.at(&f.integer(a), &f.integer(b)).key())
            .collect()
    };
    let mut out: Vec<RationalCurve> = vec![curve.clone()];
    let mut keys: Vec<Vec<String>> = vec![sample(curve)];
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        for &g in &grp.generators {
            let img = out[i].transform(&grp.elements[g]);
            let k = sample(&img);
            // Same image iff the sampled points agree as sets.
            let dup = keys.iter().any(|k2| {
                k.iter().all(|x| k2.contains(x))
            });
            if !dup {
                out.push(img);
                keys.push(k);
                frontier.push(out.len() - 1);
            }
        }
    }
    out
}

/// Plane cubic with a cusp: restrict the cubic threefold to a fixed plane and
/// return sample points plus the restricted data (used for curve families).
pub fn restrict_to_plane(form: &MultiPoly, plane: &Subspace) -> MultiPoly {
    assert_eq!(plane.dim(), 3);
    let f = form.field();
    let b = &plane.basis;
    let images: Vec<MultiPoly> = (0..N_VARS)
        .map(|i| {
            let mut acc = MultiPoly::zero(f);
            for r in 0..3 {
                acc = &acc + &MultiPoly::variable(f, r).scale(&b[(r, i)]);
            }
            acc
        })
        .collect();
    form.substitute(&images)
}

/// A sample point on plane ∩ hypersurface away from a finite exclusion set,
/// by slicing with lines through integer combinations of the plane basis.
pub fn sample_point_on_plane_section(
    form: &MultiPoly,
    plane: &Subspace,
    exclude: &[ProjPoint],
) -> Option<ProjPoint> {
    let f = form.field();
    let b = &plane.basis;
    let mut rng = crate::rng::XorShift::new(0xabcd);
    for _ in 0..80 {
        let u: Vec<Cyc> = (0..N_VARS)
            .map(|i| {
                let mut acc = f.zero();
                for r in 0..3 {
                    acc = &acc + &(&f.integer(rng.small_int(4)) * &b[(r, i)]);
                }
                acc
            })
            .collect();
        let w: Vec<Cyc> = (0..N_VARS)
            .map(|i| {
                let mut acc = f.zero();
                for r in 0..3 {
                    acc = &acc + &(&f.integer(rng.small_int(4)) * &b[(r, i)]);
                }
                acc
            })
            .collect();
        if u.iter().all(|c| c.is_zero()) || w.iter().all(|c| c.is_zero()) {
            continue;
        }
        let restricted = restrict_to_line(form, &u, &w);
        if restricted.is_zero() {
            continue;
        }
        for r in binary_roots(&restricted).roots {
            let coords: Vec<Cyc> = (0..N_VARS)
                .map(|i| &(&r.s * &u[i]) + &(&r.t * &w[i]))
                .collect();
            if coords.iter().all(|c| c.is_zero()) {
                continue;
            }
            let p = ProjPoint::new(coords);
            if !exclude.iter().any(|q| *q == p) {
                return Some(p);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::Registry;

    #[test]
    fn y1_singular_at_coordinate_points_a1() {
        let reg = Registry::new(120).unwrap();
        let y1 = reg.form("Y1").unwrap();
        let p = reg.point("y1.s5a").unwrap();
        assert!(is_singular_at(&y1, &p));
        let rep = classify_singularity(&y1, &p);
        assert_eq!(rep.kind, SingType::A1);
        // X1 is smooth everywhere on its orbit points.
        let x1 = reg.form("X1").unwrap();
        let q = reg.point("x1.s12").unwrap();
        assert!(!is_singular_at(&x1, &q));
    }

    #[test]
    fn y2_singular_points_are_a2() {
        let reg = Registry::new(120).unwrap();
        let y2 = reg.form("Y2").unwrap();
        let p = reg.point("y2.s5").unwrap();
        assert!(is_singular_at(&y2, &p));
        let rep = classify_singularity(&y2, &p);
        assert_eq!(rep.kind, SingType::A2);
    }

    #[test]
    fn cone_vertex_is_a1() {
        let reg = Registry::new(120).unwrap();
        let f = reg.field();
        let cone = MultiPoly::parse(&f, "x1*x2 - x3*x4").unwrap();
        let vertex = ProjPoint::new(vec![f.zero(), f.zero(), f.zero(), f.zero(), f.one()]);
        let rep = classify_singularity(&cone, &vertex);
        assert_eq!(rep.kind, SingType::A1);
        assert_eq!(rep.corank, 0);
    }

    #[test]
    fn q_on_y2_nodes_at_sigma5() {
        let reg = Registry::new(120).unwrap();
        let q = reg.form("X2").unwrap();
        let y2 = reg.form("Y2").unwrap();
        let p = reg.point("y2.s5").unwrap();
        let forms = vec![q, y2];
        assert!(is_singular_at_ci(&forms, &p));
        assert!(ci_surface_is_node(&forms, &p));
    }

    #[test]
    fn l12_lines_on_x2_and_disjoint() {
        let reg = Registry::new(120).unwrap();
        let x2 = reg.form("X2").unwrap();
        let grp = reg.group("A5-nonstandard").unwrap();
        for key in ["L12_x2", "L12p_x2"] {
            let line = reg.line(key).unwrap();
            let curve = RationalCurve::from_line(&line);
            assert!(
                contains_curve(std::slice::from_ref(&x2), &curve),
                "{key} not on X2"
            );
            let orbit = crate::group::orbit_of_subspace(&grp, &line);
            assert_eq!(orbit.len(), 12, "{key} orbit size");
            assert!(lines_pairwise_disjoint(&orbit), "{key} not disjoint");
        }
    }

    #[test]
    fn random_line_misses_quadric() {
        let reg = Registry::new(120).unwrap();
        let f = reg.field();
        let x1 = reg.form("X1").unwrap();
        let u: Vec<Cyc> = [1i64, 2, 3, 4, 5].iter().map(|&i| f.integer(i)).collect();
        let w: Vec<Cyc> = [7i64, -1, 0, 2, 1].iter().map(|&i| f.integer(i)).collect();
        let line = Subspace::from_spanning(vec![u, w], &f).unwrap();
        let curve = RationalCurve::from_line(&line);
        assert!(!contains_curve(std::slice::from_ref(&x1), &curve));
    }

    #[test]
    fn conjugate_points_get_identical_type_tags() {
        let reg = Registry::new(120).unwrap();
        let grp = reg.group("A5-nonstandard").unwrap();
        let y2 = reg.form("Y2").unwrap();
        let orbit = grp.orbit_of(&reg.point("y2.s5").unwrap());
        for pt in &orbit.points {
            assert_eq!(classify_singularity(&y2, pt).kind, SingType::A2);
        }
    }

    #[test]
    fn plane_conic_span_system_has_the_conic_in_its_base_locus() {
        // Degree-1 forms through a plane conic are the plane's two linear
        // forms; every member contains the conic, so the system is not
        // base-curve free against the conic itself.
        let reg = Registry::new(120).unwrap();
        let f = reg.field();
        let x2 = reg.form("X2").unwrap();
        let plane = reg.plane("C5_x2").unwrap();
        let conic = conic_through(&plane, &x2, &[]).unwrap();
        let basis = linear_system_basis(&f, 1, &[], std::slice::from_ref(&conic));
        assert_eq!(basis.len(), 2);
        assert!(base_locus_contains(&basis, &conic));
    }

    #[test]
    fn linear_system_no_constraints() {
        let reg = Registry::new(120).unwrap();
        let f = reg.field();
        let basis = linear_system_basis(&f, 1, &[], &[]);
        assert_eq!(basis.len(), 5);
    }
}
