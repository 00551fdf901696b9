//! The birational map of ℙ⁴ centered at a five-point orbit: a coordinate
//! change takes the orbit to the five coordinate points, where the map is the
//! monomial involution xᵢ ↦ ∏_{j≠i} xⱼ. Pushing the quadric through it gives
//! a cubic threefold whose equation is recovered by exact linear algebra on
//! sampled points and certified by ideal membership.

use crate::cyclo::{Cyc, Field};
use crate::group::{MatrixGroup, PointOrbit, ProjPoint};
use crate::linalg::Matrix;
use crate::poly::{Expo, MultiPoly, N_VARS};
use crate::variety::{classify_singularity, SingType, SingularityReport};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CremonaError {
    #[error("orbit must have exactly 5 points, got {0}")]
    WrongOrbitSize(usize),
    #[error("orbit points are not in general position")]
    DegeneratePosition,
    #[error("orbit does not lie on the quadric")]
    OrbitNotOnQuadric,
    #[error("image solution space has dimension {0}, expected 1")]
    BadSolutionSpace(usize),
    #[error("membership certificate failed: composite does not reduce to zero")]
    CertificateFailed,
}

pub struct CremonaMap {
    pub field: Field,
    /// M sending the orbit points to the coordinate points.
    pub to_adapted: Matrix,
    pub to_original: Matrix,
    /// The five degree-4 forms of the full map in the original coordinates.
    pub forms: Vec<MultiPoly>,
    /// The quadric in adapted coordinates, F_X ∘ M⁻¹.
    pub adapted_quadric: MultiPoly,
    orbit: Vec<ProjPoint>,
    /// True when the orbit admitted an exact equivariant vector lift, so the
    /// pushforward action coincides with the original group.
    pub equivariant_lift: bool,
}

/// The monomial involution forms cᵢ = ∏_{j≠i} xⱼ.
fn monomial_forms(field: &Field) -> Vec<MultiPoly> {
    (0..N_VARS)
        .map(|i| {
            let mut e = [1u8; N_VARS];
            e[i] = 0;
            MultiPoly::monomial(field, Expo(e), field.one())
        })
        .collect()
}

/// Equivariant vector lifts of the orbit: transport the first lift around by
/// the group so the action permutes the lift vectors exactly (possible when
/// the stabilizer acts trivially on the line, which holds for these orbits).
/// Falls back to the given representatives when no such lift exists.
fn equivariant_lifts(grp: &MatrixGroup, orbit: &PointOrbit) -> (Vec<Vec<Cyc>>, bool) {
    let base = orbit.points[0].coords.clone();
    let mut lifts: Vec<Option<Vec<Cyc>>> = vec![None; orbit.len()];
    lifts[0] = Some(base.clone());
    for g in 0..grp.order() {
        let img = grp.apply(g, &base);
        if let Some(j) = orbit
            .points
            .iter()
            .position(|q| ProjPoint::same_point(&q.coords, &img))
        {
            if lifts[j].is_none() {
                lifts[j] = Some(img);
            }
        }
    }
    if lifts.iter().any(|l| l.is_none()) {
        return (orbit.points.iter().map(|p| p.coords.clone()).collect(), false);
    }
    let lifts: Vec<Vec<Cyc>> = lifts.into_iter().map(|l| l.unwrap()).collect();
    // The lift is honest when every generator maps lift vectors to lift
    // vectors exactly, not just projectively.
    for &g in &grp.generators {
        for l in &lifts {
            let img = grp.apply(g, l);
            let exact = lifts.iter().any(|m| {
                m.iter().zip(img.iter()).all(|(a, b)| a == b)
            });
            if !exact {
                return (orbit.points.iter().map(|p| p.coords.clone()).collect(), false);
            }
        }
    }
    (lifts, true)
}

pub fn build_cremona(
    grp: &MatrixGroup,
    orbit: &PointOrbit,
    quadric: &MultiPoly,
) -> Result<CremonaMap, CremonaError> {
    let field = &grp.field;
    if orbit.len() != 5 {
        return Err(CremonaError::WrongOrbitSize(orbit.len()));
    }
    for p in &orbit.points {
        if !quadric.eval(&p.coords).is_zero() {
            return Err(CremonaError::OrbitNotOnQuadric);
        }
    }
    let (lifts, equivariant) = equivariant_lifts(grp, orbit);
    // Columns are the orbit lifts; general position means every 4-subset
    // spans a hyperplane and the 5 points span ℙ⁴.
    let pmat = Matrix::from_rows(field, lifts).transpose();
    for skip in 0..5 {
        let rows: Vec<Vec<Cyc>> = (0..5)
            .filter(|&c| c != skip)
            .map(|c| (0..5).map(|r| pmat[(r, c)].clone()).collect())
            .collect();
        if Matrix::from_rows(field, rows).rank() != 4 {
            return Err(CremonaError::DegeneratePosition);
        }
    }
    let to_adapted = pmat.inverse().map_err(|_| CremonaError::DegeneratePosition)?;
    let to_original = pmat;
    // Full map: χ = M⁻¹ ∘ c ∘ M.
    let y: Vec<MultiPoly> = (0..N_VARS)
        .map(|i| MultiPoly::linear_form(field, to_adapted.row(i)))
        .collect();
    let c_of_y: Vec<MultiPoly> = monomial_forms(field)
        .iter()
        .map(|c| c.substitute(&y))
        .collect();
    let forms: Vec<MultiPoly> = (0..N_VARS)
        .map(|i| {
            let mut acc = MultiPoly::zero(field);
            for (j, cf) in c_of_y.iter().enumerate() {
                let coeff = &to_original[(i, j)];
                if !coeff.is_zero() {
                    acc = &acc + &cf.scale(coeff);
                }
            }
            acc
        })
        .collect();
    let adapted_quadric = quadric.substitute_matrix(&to_original);
    Ok(CremonaMap {
        field: field.clone(),
        to_adapted,
        to_original,
        forms,
        adapted_quadric,
        orbit: orbit.points.clone(),
        equivariant_lift: equivariant,
    })
}

impl CremonaMap {
    /// Exact points on the adapted quadric: second intersections of lines
    /// through the known point e₁ (an orbit image).
    fn sample_adapted_points(&self, count: usize) -> Vec<Vec<Cyc>> {
        let f = &self.field;
        let q = &self.adapted_quadric;
        let grad = q.gradient();
        let mut p0 = vec![f.zero(); N_VARS];
        p0[0] = f.one();
        debug_assert!(q.eval(&p0).is_zero());
        let gp: Vec<Cyc> = grad.iter().map(|d| d.eval(&p0)).collect();
        let mut rng = crate::rng::XorShift::new(0xc4e0);
        let mut out = Vec::new();
        while out.len() < count {
            let v: Vec<Cyc> = (0..N_VARS).map(|_| f.integer(rng.small_int(7))).collect();
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            let fv = q.eval(&v);
            if fv.is_zero() {
                continue;
            }
            let mut polar = f.zero();
            for i in 0..N_VARS {
                polar = &polar + &(&gp[i] * &v[i]);
            }
            // x = F(v)·p0 − (∇F(p0)·v)·v lies on the quadric.
            let pt: Vec<Cyc> = (0..N_VARS)
                .map(|i| &(&fv * &p0[i]) - &(&polar * &v[i]))
                .collect();
            if pt.iter().all(|c| c.is_zero()) {
                continue;
            }
            out.push(pt);
        }
        out
    }

    /// The cubic F_Y with F_Y ∘ χ ≡ 0 mod F_X: found by sampling, required to
    /// be unique up to scale, certified by exact reduction.
    pub fn image_cubic(&self) -> Result<MultiPoly, CremonaError> {
        let f = &self.field;
        let monos = crate::group::monomials_of_degree(3);
        let samples = self.sample_adapted_points(46);
        let mut rows = Vec::with_capacity(samples.len());
        for y in &samples {
            // c(y) for the monomial involution.
            let mut prod_all = f.one();
            for c in y.iter() {
                prod_all = &prod_all * c;
            }
            let cy: Vec<Cyc> = (0..N_VARS)
                .map(|i| {
                    if y[i].is_zero() {
                        // fall back to the direct product
                        let mut p = f.one();
                        for (j, c) in y.iter().enumerate() {
                            if j != i {
                                p = &p * c;
                            }
                        }
                        p
                    } else {
                        prod_all.try_div(&y[i]).unwrap()
                    }
                })
                .collect();
            rows.push(
                monos
                    .iter()
                    .map(|e| MultiPoly::monomial(f, *e, f.one()).eval(&cy))
                    .collect::<Vec<Cyc>>(),
            );
        }
        let kernel = Matrix::from_rows(f, rows).kernel_basis();
        if kernel.len() != 1 {
            return Err(CremonaError::BadSolutionSpace(kernel.len()));
        }
        let mut adapted_cubic = MultiPoly::zero(f);
        for (e, c) in monos.iter().zip(&kernel[0]) {
            if !c.is_zero() {
                adapted_cubic = &adapted_cubic + &MultiPoly::monomial(f, *e, c.clone());
            }
        }
        // Certificate: (cubic ∘ monomial map) reduces to zero mod the quadric.
        let composite = adapted_cubic.substitute(&monomial_forms(f));
        if !composite.reduce_by(&self.adapted_quadric).is_zero() {
            return Err(CremonaError::CertificateFailed);
        }
        // Back to the original coordinates.
        Ok(adapted_cubic.substitute_matrix(&self.to_adapted))
    }

    /// Singularity census of the image cubic at the five orbit points (the
    /// images of the five contracted hyperplane sections).
    pub fn image_census(&self, image: &MultiPoly) -> Vec<SingularityReport> {
        self.orbit
            .iter()
            .map(|p| classify_singularity(image, p))
            .collect()
    }

    /// The involution property of the monomial map: c(c(y)) = (∏yⱼ)³·yᵢ.
    pub fn monomial_involution_holds(&self) -> bool {
        let f = &self.field;
        let c = monomial_forms(f);
        let cc: Vec<MultiPoly> = c.iter().map(|ci| ci.substitute(&c)).collect();
        let cube = MultiPoly::monomial(f, Expo([3; N_VARS]), f.one());
        (0..N_VARS).all(|i| {
            let want = &cube * &MultiPoly::variable(f, i);
            cc[i] == want
        })
    }

    /// Multiplicity of each map form at each orbit point, in adapted
    /// coordinates: the linear system has multiplicity exactly 3 at every
    /// center (and the map has degree 4).
    pub fn base_multiplicities(&self) -> Vec<usize> {
        let c = monomial_forms(&self.field);
        (0..N_VARS)
            .map(|k| {
                c.iter()
                    .map(|form| {
                        form.terms()
                            .map(|(e, _)| {
                                e.total() as usize - e.0[k] as usize
                            })
                            .min()
                            .unwrap()
                    })
                    .min()
                    .unwrap()
            })
            .collect()
    }

    /// Round trip: the quadric is the unique (up to scale) quadric pulled
    /// into the ideal of the image cubic by the monomial map.
    pub fn roundtrip_recovers_quadric(&self, image: &MultiPoly) -> bool {
        let f = &self.field;
        let adapted_cubic = image.substitute_matrix(&self.to_original);
        // Sample points on the cubic via lines through its singular point e₁
        // (a double point, so the residual intersection is rational).
        let grad = adapted_cubic.gradient();
        let mut p0 = vec![f.zero(); N_VARS];
        p0[0] = f.one();
        if !adapted_cubic.eval(&p0).is_zero() || !grad.iter().all(|d| d.eval(&p0).is_zero()) {
            return false;
        }
        let mut rng = crate::rng::XorShift::new(0x0d0b);
        let mut samples: Vec<Vec<Cyc>> = Vec::new();
        while samples.len() < 25 {
            let v: Vec<Cyc> = (0..N_VARS).map(|_| f.integer(rng.small_int(6))).collect();
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            // F(p0 + t v) = t²·L(v) + t³·C(v): residual root t = −L/C.
            let t_poly = {
                let line: Vec<MultiPoly> = (0..N_VARS)
                    .map(|i| {
                        let c0 = MultiPoly::constant(f, p0[i].clone());
                        let tv = MultiPoly::variable(f, 0).scale(&v[i]);
                        &c0 + &tv
                    })
                    .collect();
                adapted_cubic.substitute(&line)
            };
            let mut e2 = [0u8; N_VARS];
            e2[0] = 2;
            let mut e3 = [0u8; N_VARS];
            e3[0] = 3;
            let l = t_poly.coeff(&Expo(e2));
            let c = t_poly.coeff(&Expo(e3));
            if c.is_zero() || l.is_zero() {
                continue;
            }
            let t = -&l.try_div(&c).unwrap();
            let pt: Vec<Cyc> = (0..N_VARS).map(|i| &p0[i] + &(&t * &v[i])).collect();
            if adapted_cubic.eval(&pt).is_zero() {
                samples.push(pt);
            }
        }
        let monos = crate::group::monomials_of_degree(2);
        let mut rows = Vec::new();
        for y in &samples {
            let cy: Vec<Cyc> = (0..N_VARS)
                .map(|i| {
                    let mut p = f.one();
                    for (j, c) in y.iter().enumerate() {
                        if j != i {
                            p = &p * c;
                        }
                    }
                    p
                })
                .collect();
            rows.push(
                monos
                    .iter()
                    .map(|e| MultiPoly::monomial(f, *e, f.one()).eval(&cy))
                    .collect::<Vec<Cyc>>(),
            );
        }
        let kernel = Matrix::from_rows(f, rows).kernel_basis();
        if kernel.len() != 1 {
            return false;
        }
        let mut q = MultiPoly::zero(f);
        for (e, c) in monos.iter().zip(&kernel[0]) {
            if !c.is_zero() {
                q = &q + &MultiPoly::monomial(f, *e, c.clone());
            }
        }
        crate::group::proportional_polys(&q, &self.adapted_quadric).is_some()
    }
}

impl CremonaMap {
    /// Pushforward of a group generator through the map: in adapted
    /// coordinates the conjugated action is a permutation with scalings
    /// P·diag(d), and the monomial involution turns it into P·diag(1/d).
    pub fn pushforward_generator(&self, g: &Matrix) -> Result<Matrix, CremonaError> {
        let f = &self.field;
        let a = self.to_adapted.mul(g).mul(&self.to_original);
        let mut b = Matrix::zero(f, N_VARS, N_VARS);
        for col in 0..N_VARS {
            let mut hits = (0..N_VARS).filter(|&r| !a[(r, col)].is_zero());
            let row = hits.next().ok_or(CremonaError::DegeneratePosition)?;
            if hits.next().is_some() {
                // Not a generalized permutation: the orbit was not mapped to
                // the coordinate points.
                return Err(CremonaError::DegeneratePosition);
            }
            b[(row, col)] = a[(row, col)].inv().map_err(|_| CremonaError::DegeneratePosition)?;
        }
        Ok(self.to_original.mul(&b).mul(&self.to_adapted))
    }
}

/// Exact intertwiner L with L·aᵢ = bᵢ·L for the paired generator lists
/// (Schur: unique up to scale for irreducible actions), or None.
pub fn find_conjugator(field: &Field, from: &[Matrix], to: &[Matrix]) -> Option<Matrix> {
    let n = N_VARS;
    let mut rows: Vec<Vec<Cyc>> = Vec::new();
    for (a, b) in from.iter().zip(to.iter()) {
        // (L·a − b·L)_{ij} = Σ_k L_{ik} a_{kj} − Σ_k b_{ik} L_{kj} = 0.
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![field.zero(); n * n];
                for k in 0..n {
                    row[i * n + k] = &row[i * n + k] + &a[(k, j)];
                    row[k * n + j] = &row[k * n + j] - &b[(i, k)];
                }
                rows.push(row);
            }
        }
    }
    let kernel = Matrix::from_rows(field, rows).kernel_basis();
    for v in kernel {
        let mut l = Matrix::zero(field, n, n);
        for i in 0..n {
            for j in 0..n {
                l[(i, j)] = v[i * n + j].clone();
            }
        }
        if l.rank() == n {
            return Some(l);
        }
    }
    None
}

/// Full image pipeline: build the map, compute the cubic, verify invariance
/// under the pushforward action, classify the five singular points, and
/// normalize the image back to an invariant cubic of the original group via
/// an exact conjugator when the pushforward differs from it.
pub struct CremonaOutcome {
    pub image: MultiPoly,
    pub census: Vec<SingularityReport>,
    /// Image invariant under the pushforward generators.
    pub invariant: bool,
    /// Image of the cubic under the conjugator normalizing the pushforward
    /// group back to the original one (equals `image` for an honest lift).
    pub normalized_image: Option<MultiPoly>,
}

pub fn cremona_image(
    grp: &MatrixGroup,
    orbit: &PointOrbit,
    quadric: &MultiPoly,
) -> Result<(CremonaMap, CremonaOutcome), CremonaError> {
    let map = build_cremona(grp, orbit, quadric)?;
    let image = map.image_cubic()?;
    let census = map.image_census(&image);
    let gens: Vec<Matrix> = grp
        .generators
        .iter()
        .map(|&i| grp.elements[i].clone())
        .collect();
    let pushed: Result<Vec<Matrix>, CremonaError> = gens
        .iter()
        .map(|g| map.pushforward_generator(g))
        .collect();
    let pushed = pushed?;
    let invariant = pushed.iter().all(|g| {
        crate::group::proportional_polys(&image, &image.substitute_matrix(g)).is_some()
    });
    let normalized_image = if map.equivariant_lift {
        Some(image.clone())
    } else {
        // L with L·(pushforward g) = g·L conjugates the pushforward group to
        // the original; V(image∘L⁻¹) is then invariant under the original.
        find_conjugator(&grp.field, &pushed, &gens).and_then(|l| {
            l.inverse().ok().map(|linv| image.substitute_matrix(&linv))
        })
    };
    Ok((
        map,
        CremonaOutcome {
            image,
            census,
            invariant,
            normalized_image,
        },
    ))
}

pub fn census_all_of(census: &[SingularityReport], kind: SingType) -> bool {
    census.len() == 5 && census.iter().all(|r| r.kind == kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::small_orbits_on;
    use crate::registry::Registry;
    use crate::variety::in_span;

    #[test]
    fn coordinate_points_give_identity_map() {
        let reg = Registry::new(120).unwrap();
        let f = reg.field();
        // A quadric through the coordinate points.
        let q = MultiPoly::parse(&f, "x1*x2 + x2*x3 + x3*x4 + x4*x5 + x5*x1").unwrap();
        let points: Vec<ProjPoint> = (0..5)
            .map(|i| {
                let mut v = vec![f.zero(); 5];
                v[i] = f.one();
                ProjPoint::new(v)
            })
            .collect();
        let orbit = PointOrbit { points };
        let grp = crate::group::enumerate_group(&f, vec![Matrix::identity(&f, 5)], 10).unwrap();
        let map = build_cremona(&grp, &orbit, &q).unwrap();
        assert!(Matrix::identity(&f, 5)
            .proportional(&map.to_adapted)
            .is_some());
        assert!(map.monomial_involution_holds());
        assert_eq!(map.base_multiplicities(), vec![3; 5]);
    }

    #[test]
    fn image_cubic_standard_action() {
        let reg = Registry::new(120).unwrap();
        let grp = reg.group("A5-standard").unwrap();
        let x1 = reg.form("X1").unwrap();
        let scan = small_orbits_on(&grp, &x1, 19);
        let orbit = scan
            .find_orbit_of(&reg.point("x1.s5").unwrap())
            .unwrap()
            .orbit
            .clone();
        let (map, out) = cremona_image(&grp, &orbit, &x1).unwrap();
        assert!(out.invariant);
        assert!(census_all_of(&out.census, SingType::A1));
        assert!(map.roundtrip_recovers_quadric(&out.image));
    }

    #[test]
    fn composite_vanishes_at_fresh_quadric_points() {
        // Independent oracle for the membership certificate: F_Y ∘ χ must
        // vanish at 200 random points of the quadric drawn with a seed the
        // solver never used.
        let reg = Registry::new(120).unwrap();
        let f = reg.field();
        let grp = reg.group("A5-nonstandard").unwrap();
        let x2 = reg.form("X2").unwrap();
        let scan = small_orbits_on(&grp, &x2, 19);
        let orbit = scan
            .find_orbit_of(&reg.point("x2.s5").unwrap())
            .unwrap()
            .orbit
            .clone();
        let (map, out) = cremona_image(&grp, &orbit, &x2).unwrap();
        let grad = x2.gradient();
        let p0 = orbit.points[0].coords.clone();
        let gp: Vec<Cyc> = grad.iter().map(|g| g.eval(&p0)).collect();
        let mut rng = crate::rng::XorShift::new(0xfe5f);
        let mut tested = 0;
        while tested < 200 {
            let v: Vec<Cyc> = (0..5).map(|_| f.integer(rng.small_int(10))).collect();
            let fv = x2.eval(&v);
            if fv.is_zero() {
                continue;
            }
            let mut polar = f.zero();
            for i in 0..5 {
                polar = &polar + &(&gp[i] * &v[i]);
            }
            let pt: Vec<Cyc> = (0..5)
                .map(|i| &(&fv * &p0[i]) - &(&polar * &v[i]))
                .collect();
            if pt.iter().all(|c| c.is_zero()) {
                continue;
            }
            debug_assert!(x2.eval(&pt).is_zero());
            let image_pt: Vec<Cyc> = map.forms.iter().map(|form| form.eval(&pt)).collect();
            if image_pt.iter().all(|c| c.is_zero()) {
                continue; // indeterminacy locus
            }
            assert!(out.image.eval(&image_pt).is_zero());
            tested += 1;
        }
    }

    #[test]
    fn image_cubic_nonstandard_action_lands_in_pencil() {
        let reg = Registry::new(120).unwrap();
        let grp = reg.group("A5-nonstandard").unwrap();
        let x2 = reg.form("X2").unwrap();
        let scan = small_orbits_on(&grp, &x2, 19);
        let orbit = scan
            .find_orbit_of(&reg.point("x2.s5").unwrap())
            .unwrap()
            .orbit
            .clone();
        let (_, out) = cremona_image(&grp, &orbit, &x2).unwrap();
        assert!(out.invariant);
        assert!(census_all_of(&out.census, SingType::A2));
        let f1 = reg.form("f1").unwrap();
        let f2 = reg.form("f2").unwrap();
        let normalized = out.normalized_image.expect("conjugator exists");
        let (inv, _) = grp.is_invariant(&normalized);
        assert!(inv, "normalized image must be invariant under the original group");
        assert!(in_span(&[f1, f2], &normalized));
    }
}
