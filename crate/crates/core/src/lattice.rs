//! Exact divisor-class arithmetic: symmetric pairings on surfaces, trilinear
//! tables on threefold blowups, adjunction and Riemann–Roch bounds on K3
//! surfaces, Hodge-index bounds, and the degeneracy determinant solver.
//!
//! Lattice data is symbolic input (degrees, genera, pairing tables); nothing
//! here is derived from the polynomial geometry.

use crate::cyclo::{rat_i64, rat_sqrt, Rat};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("context mismatch: class has {0} coordinates, context has {1} generators")]
    ContextMismatch(usize, usize),
    #[error("self-intersection must be even on a K3 surface")]
    OddSelfIntersection,
}

/// Divisor class in a fixed generator basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass(pub Vec<Rat>);

impl DivisorClass {
    pub fn of_ints(v: &[i64]) -> DivisorClass {
        DivisorClass(v.iter().map(|&x| rat_i64(x)).collect())
    }

    pub fn scale(&self, s: &Rat) -> DivisorClass {
        DivisorClass(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// Surface intersection context: named generators and a symmetric pairing.
#[derive(Clone, Debug)]
pub struct SurfaceContext {
    pub names: Vec<String>,
    pub gram: Vec<Vec<Rat>>,
}

impl SurfaceContext {
    pub fn new(names: &[&str], gram: &[&[i64]]) -> SurfaceContext {
        let g: Vec<Vec<Rat>> = gram
            .iter()
            .map(|row| row.iter().map(|&x| rat_i64(x)).collect())
            .collect();
        for i in 0..g.len() {
            for j in 0..g.len() {
                assert_eq!(g[i][j], g[j][i], "pairing must be symmetric");
            }
        }
        SurfaceContext {
            names: names.iter().map(|s| s.to_string()).collect(),
            gram: g,
        }
    }

    /// Degree-d K3 surface with one curve class: generators (H, C) with
    /// H² = d, H·C = deg, C² = 2g − 2.
    pub fn k3_with_curve(h2: i64, deg: i64, genus: i64) -> SurfaceContext {
        let c2 = 2 * genus - 2;
        SurfaceContext::new(&["H", "C"], &[&[h2, deg], &[deg, c2]])
    }

    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rat, LatticeError> {
        let n = self.names.len();
        if a.0.len() != n || b.0.len() != n {
            return Err(LatticeError::ContextMismatch(a.0.len(), n));
        }
        let mut acc = Rat::zero();
        for i in 0..n {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b.0[j].is_zero() {
                    acc += &a.0[i] * &b.0[j] * &self.gram[i][j];
                }
            }
        }
        Ok(acc)
    }
}

/// Threefold-blowup context: generators and a fully symmetric trilinear table.
#[derive(Clone, Debug)]
pub struct ThreefoldContext {
    pub names: Vec<String>,
    pub table: Vec<Vec<Vec<Rat>>>,
}

impl ThreefoldContext {
    /// Blowup of a disjoint union of curves in an ambient with H³ = deg:
    /// generators (H, E) with H²E = 0, HE² = −Σ degᵢ,
    /// E³ = Σ (2 − 2gᵢ + K_X·Cᵢ).
    pub fn blowup(ambient_h3: i64, curves: &[(i64, i64, i64)]) -> ThreefoldContext {
        let mut he2 = 0i64;
        let mut e3 = 0i64;
        for &(deg, genus, kc) in curves {
            assert!(genus >= 0, "genus must be non-negative");
            he2 -= deg;
            e3 += 2 - 2 * genus + kc;
        }
        let names = vec!["H".to_string(), "E".to_string()];
        let vals = |i: usize, j: usize, k: usize| -> i64 {
            match i + j + k {
                0 => ambient_h3, // HHH
                1 => 0,          // HHE
                2 => he2,        // HEE
                _ => e3,         // EEE
            }
        };
        let mut table = vec![vec![vec![Rat::zero(); 2]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    table[i][j][k] = rat_i64(vals(i, j, k));
                }
            }
        }
        ThreefoldContext { names, table }
    }

    pub fn triple(
        &self,
        a: &DivisorClass,
        b: &DivisorClass,
        c: &DivisorClass,
    ) -> Result<Rat, LatticeError> {
        let n = self.names.len();
        for v in [a, b, c] {
            if v.0.len() != n {
                return Err(LatticeError::ContextMismatch(v.0.len(), n));
            }
        }
        let mut acc = Rat::zero();
        for i in 0..n {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b.0[j].is_zero() {
                    continue;
                }
                for k in 0..n {
                    if !c.0[k].is_zero() {
                        acc += &a.0[i] * &b.0[j] * &c.0[k] * &self.table[i][j][k];
                    }
                }
            }
        }
        Ok(acc)
    }
}

/// Genus from adjunction on a K3: g = C²/2 + 1.
pub fn adjunction_genus(c_squared: i64) -> Result<i64, LatticeError> {
    if c_squared.rem_euclid(2) != 0 {
        return Err(LatticeError::OddSelfIntersection);
    }
    Ok(c_squared / 2 + 1)
}

/// Degree and genus of a complete-intersection curve of the given
/// multidegree in ℙ⁴: 2g − 2 = (∏dᵢ)(Σdᵢ − 5).
pub fn ci_curve_genus(degrees: &[i64]) -> (i64, i64) {
    let prod: i64 = degrees.iter().product();
    let sum: i64 = degrees.iter().sum();
    let two_g_minus_2 = prod * (sum - 5);
    (prod, two_g_minus_2 / 2 + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeBound {
    /// floor((C·H)² / H²).
    pub bound: i64,
    /// Largest even value strictly below the rational bound (the K3 case
    /// with C not proportional to H forces strictness and evenness).
    pub strict_even_bound: i64,
    /// True when the rational bound is attained only for C ≡ (C·H/H²)·H.
    pub equality_is_proportional: bool,
}

/// Hodge-index bound C² ≤ (C·H)²/H² with the strict-even adjustment.
pub fn hodge_bound(c_deg: i64, h2: i64) -> HodgeBound {
    assert!(h2 > 0);
    let num = c_deg * c_deg;
    let bound = num.div_euclid(h2);
    let exact = num % h2 == 0;
    let mut strict = if exact { bound - 1 } else { bound };
    if strict.rem_euclid(2) != 0 {
        strict -= 1;
    }
    HodgeBound {
        bound,
        strict_even_bound: strict,
        equality_is_proportional: exact,
    }
}

/// Riemann–Roch lower bound h⁰(D) ≥ 2 + D²/2 on a K3 surface.
pub fn rr_h0_lower(d_squared: &Rat) -> Rat {
    rat_i64(2) + d_squared / rat_i64(2)
}

#[derive(Clone, Debug)]
pub struct DegeneracyRoot {
    pub value: Rat,
    pub is_integer: bool,
    pub is_nonneg: bool,
    /// Root equal to C² with matching (F², deg F) = (C², deg C): the C = F case.
    pub is_c_equals_f: bool,
}

/// Solve det [[F², x, degF], [x, C², degC], [degF, degC, H²]] = 0 for
/// x = F·C: a quadratic with exact roots (empty when irrational).
pub fn degeneracy_solve(f2: i64, degf: i64, c2: i64, degc: i64, h2: i64) -> Vec<DegeneracyRoot> {
    // Expansion: F²(C²H² − degC²) − x(xH² − degC·degF) + degF(x·degC − C²·degF)
    // = −H²·x² + 2·degF·degC·x + F²C²H² − F²degC² − C²degF².
    let a = rat_i64(-h2);
    let b = rat_i64(2 * degf * degc);
    let c = rat_i64(f2 * c2 * h2 - f2 * degc * degc - c2 * degf * degf);
    let disc = &b * &b - rat_i64(4) * &a * &c;
    if disc.is_negative() {
        return vec![];
    }
    let Some(s) = rat_sqrt(&disc) else {
        return vec![];
    };
    let two_a = rat_i64(2) * &a;
    let mut roots = vec![(&(-&b) + &s) / &two_a];
    if !s.is_zero() {
        roots.push((&(-&b) - &s) / &two_a);
    }
    roots
        .into_iter()
        .map(|r| DegeneracyRoot {
            is_integer: r.denom().is_one(),
            is_nonneg: !r.is_negative(),
            is_c_equals_f: (f2, degf) == (c2, degc) && r == rat_i64(c2),
            value: r,
        })
        .collect()
}

/// The exceptional-surface restriction ledger for the blowup of the quartic
/// normal curve: E = ℙ¹×ℙ¹ with s² = f² = 0, s·f = 1, H̃|_E = 4f, and
/// E|_E = −s + 5f (pinned by E·fiber = −1 and (E|_E)² = E³ = −deg N = −10).
#[derive(Clone, Debug)]
pub struct RuledRestriction {
    pub two_h_minus_e: DivisorClass,
    pub degree_bound_holds_for: Vec<(i64, i64)>,
    pub excluded: Vec<(i64, i64)>,
    pub delta_degree: i64,
}

pub fn ruled_restriction_check(candidates: &[(i64, i64)]) -> RuledRestriction {
    let ctx = SurfaceContext::new(&["s", "f"], &[&[0, 1], &[1, 0]]);
    let e_restr = DivisorClass::of_ints(&[-1, 5]);
    let two_h = DivisorClass::of_ints(&[0, 8]);
    let two_h_minus_e = two_h.sub(&e_restr);
    // (2H̃−E)|_E = s + 3f.
    assert_eq!(two_h_minus_e, DivisorClass::of_ints(&[1, 3]));
    let mut degree_ok = Vec::new();
    let mut excluded = Vec::new();
    for &(a, b) in candidates {
        let cls = DivisorClass::of_ints(&[a, b]);
        let deg = ctx.pair(&cls, &two_h_minus_e).unwrap();
        if deg <= rat_i64(17) {
            degree_ok.push((a, b));
        }
        // b < 9 − 2r ≤ 9 for r ≥ 0 fails exactly when b ≥ 9.
        if b >= 9 {
            excluded.push((a, b));
        }
    }
    let delta = ctx
        .pair(&DivisorClass::of_ints(&[1, 1]), &two_h_minus_e)
        .unwrap();
    RuledRestriction {
        two_h_minus_e,
        degree_bound_holds_for: degree_ok,
        excluded,
        delta_degree: delta.numer().try_into().unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_pairings() {
        // Degree-6 K3, C of degree 12, genus g: (4H−C)² = 2g−2,
        // (3H−C)·(4H−C) = 2g−14.
        let g5 = SurfaceContext::k3_with_curve(6, 12, 5);
        let h = DivisorClass::of_ints(&[1, 0]);
        let c = DivisorClass::of_ints(&[0, 1]);
        let c_prime = h.scale(&rat_i64(4)).sub(&c);
        let three_h_minus_c = h.scale(&rat_i64(3)).sub(&c);
        assert_eq!(g5.pair(&three_h_minus_c, &c_prime).unwrap(), rat_i64(-4));
        let g0 = SurfaceContext::k3_with_curve(6, 12, 0);
        assert_eq!(g0.pair(&c_prime, &c_prime).unwrap(), rat_i64(-2));
        assert_eq!(g0.pair(&h, &h).unwrap(), rat_i64(6));
    }

    #[test]
    fn blowup_triples() {
        // C8 + C8' in the quadric: (3H−E)²(5H−E) = −42.
        let ctx = ThreefoldContext::blowup(2, &[(8, 0, -24), (8, 0, -24)]);
        let h = DivisorClass::of_ints(&[1, 0]);
        let e = DivisorClass::of_ints(&[0, 1]);
        let a = h.scale(&rat_i64(3)).sub(&e);
        let b = h.scale(&rat_i64(5)).sub(&e);
        assert_eq!(ctx.triple(&a, &a, &b).unwrap(), rat_i64(-42));
        // Six lines in the cubic: (3H−E)(2H−E)² = −6.
        let lines6: Vec<(i64, i64, i64)> = (0..6).map(|_| (1, 0, -2)).collect();
        let ctx = ThreefoldContext::blowup(3, &lines6);
        let two = h.scale(&rat_i64(2)).sub(&e);
        let three = h.scale(&rat_i64(3)).sub(&e);
        assert_eq!(ctx.triple(&three, &two, &two).unwrap(), rat_i64(-6));
        // Ten lines: (4H−E)(2H−E)² = −32.
        let lines10: Vec<(i64, i64, i64)> = (0..10).map(|_| (1, 0, -2)).collect();
        let ctx = ThreefoldContext::blowup(3, &lines10);
        let four = h.scale(&rat_i64(4)).sub(&e);
        assert_eq!(ctx.triple(&four, &two, &two).unwrap(), rat_i64(-32));
        // No curves: (3H)³ = 27·2 = 54.
        let ctx = ThreefoldContext::blowup(2, &[]);
        let th = h.scale(&rat_i64(3));
        assert_eq!(ctx.triple(&th, &th, &th).unwrap(), rat_i64(54));
    }

    #[test]
    fn anticanonical_degrees() {
        // (−K̃)³ = (3H−E)³ = 2g − 6deg + 52 on the quadric.
        for (deg, genus) in [(8i64, 0i64), (10, 6)] {
            let ctx = ThreefoldContext::blowup(2, &[(deg, genus, -3 * deg)]);
            let h = DivisorClass::of_ints(&[1, 0]);
            let e = DivisorClass::of_ints(&[0, 1]);
            let k = h.scale(&rat_i64(3)).sub(&e);
            assert_eq!(
                ctx.triple(&k, &k, &k).unwrap(),
                rat_i64(2 * genus - 6 * deg + 52)
            );
            assert_eq!(ctx.triple(&k, &k, &k).unwrap(), rat_i64(4));
        }
    }

    #[test]
    fn genus_helpers() {
        assert_eq!(ci_curve_genus(&[1, 2, 3]), (6, 4));
        assert_eq!(adjunction_genus(-2).unwrap(), 0);
        assert_eq!(adjunction_genus(10).unwrap(), 6);
        assert!(adjunction_genus(7).is_err());
    }

    #[test]
    fn hodge_bounds() {
        let b = hodge_bound(12, 6);
        assert_eq!(b.bound, 24);
        assert_eq!(b.strict_even_bound, 22);
        assert!(b.equality_is_proportional);
        let b = hodge_bound(16, 6);
        assert_eq!(b.bound, 42);
        let b = hodge_bound(6, 6);
        assert_eq!(b.bound, 6);
    }

    #[test]
    fn rr_bounds() {
        // (3H−C)² = 0 for deg 12, g 10 on the degree-6 K3 ⇒ h⁰ ≥ 2.
        let ctx = SurfaceContext::k3_with_curve(6, 12, 10);
        let h = DivisorClass::of_ints(&[1, 0]);
        let c = DivisorClass::of_ints(&[0, 1]);
        let d = h.scale(&rat_i64(3)).sub(&c);
        let d2 = ctx.pair(&d, &d).unwrap();
        assert_eq!(d2, rat_i64(0));
        assert_eq!(rr_h0_lower(&d2), rat_i64(2));
        // deg 8, g 0: (3H−Z)² = 4 ⇒ h⁰ ≥ 4.
        let ctx = SurfaceContext::k3_with_curve(6, 8, 0);
        let z = DivisorClass::of_ints(&[0, 1]);
        let d = h.scale(&rat_i64(3)).sub(&z);
        let d2 = ctx.pair(&d, &d).unwrap();
        assert_eq!(rr_h0_lower(&d2), rat_i64(4));
        // H itself: 2 + 3 = 5.
        let d2 = ctx.pair(&h, &h).unwrap();
        assert_eq!(rr_h0_lower(&d2), rat_i64(5));
    }

    #[test]
    fn degeneracy_cases() {
        let roots = degeneracy_solve(-2, 16, -2, 16, 6);
        assert!(roots
            .iter()
            .any(|r| r.value == rat_i64(-2) && r.is_integer && r.is_c_equals_f));
        let roots = degeneracy_solve(-10, 10, 16, 16, 6);
        assert!(roots.iter().any(|r| r.value == rat_i64(0) && r.is_integer));
    }

    #[test]
    fn ruled_restriction() {
        let r = ruled_restriction_check(&[(0, 12), (1, 11), (1, 13), (2, 10)]);
        assert_eq!(r.two_h_minus_e, DivisorClass::of_ints(&[1, 3]));
        assert_eq!(r.degree_bound_holds_for.len(), 4);
        assert_eq!(r.excluded.len(), 4);
        assert_eq!(r.delta_degree, 4);
    }
}
