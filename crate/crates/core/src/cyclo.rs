//! Exact arithmetic in a cyclotomic field ℚ(ζ_N).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^(φ(N)−1) of
//! ℚ[z]/Φ_N(z) with arbitrary-precision rational coefficients, so equality
//! and the zero test are exact. Φ_N is computed at field construction by
//! exact division of z^N − 1 by the lower-order cyclotomic polynomials.
//!
//! The default conductor used by the built-in scenarios is 120: it is the
//! smallest N for which ζ₄, ζ₅, ζ₆, ζ₈, ζ₂₀, ζ₂₄ and the surds √2, √3, √5
//! (hence √6, √30, …) all embed.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};
use thiserror::Error;

pub type Rat = BigRational;

pub fn rat_i64(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("conductor must be positive")]
    BadConductor,
    #[error("root order {0} does not divide the conductor {1}")]
    OrderNotDividing(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("field mismatch: conductors {0} and {1}")]
    FieldMismatch(u32, u32),
}

/// Euler's totient.
pub fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Exact division of integer polynomials, used for building Φ_N.
/// Panics if the division is not exact (cyclotomic factors always are).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    if rem.len() <= dd {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, d) in den.iter().enumerate() {
                let v = &rem[k + i] - &c * d;
                rem[k + i] = v;
            }
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// Φ_d for every divisor d of n, by induction on divisors.
fn cyclotomic_polys(n: u32) -> BTreeMap<u32, Vec<BigInt>> {
    let mut table: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
    let mut divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        // z^d - 1
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        let mut phi_d = num;
        for (e, poly) in table.iter() {
            if d % e == 0 && *e != d {
                phi_d = poly_div_exact(&phi_d, poly);
            }
        }
        table.insert(d, phi_d);
    }
    table
}

struct FieldData {
    conductor: u32,
    phi: usize,
    /// Φ_N with integer coefficients, length phi + 1, monic.
    min_poly: Vec<BigInt>,
    /// Sparse rows: z^(phi + k) reduced mod Φ_N, for k in 0..phi-1.
    reduction: Vec<Vec<(usize, Rat)>>,
    /// Lazily built candidates (u, u²) for the exact square-root search.
    sqrt_candidates: OnceLock<Vec<(Cyc, Cyc)>>,
    /// Lazily built explicit square roots of the quadratic subfields.
    quad_surds: OnceLock<Vec<(i64, Cyc)>>,
}

impl fmt::Debug for FieldData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(Q(zeta_{}))", self.conductor)
    }
}

/// A fixed cyclotomic field ℚ(ζ_N); cheap to clone, safe to share.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldData>);

/// An element of ℚ(ζ_N) in canonical (fully reduced) form.
#[derive(Clone)]
pub struct Cyc {
    field: Field,
    /// Dense power-basis coefficients, always of length φ(N).
    coeffs: Vec<Rat>,
}

impl Field {
    pub fn new(conductor: u32) -> Result<Field, CycError> {
        if conductor == 0 {
            return Err(CycError::BadConductor);
        }
        let phi = euler_phi(conductor) as usize;
        let table = cyclotomic_polys(conductor);
        let min_poly = table[&conductor].clone();
        assert_eq!(min_poly.len(), phi + 1);

        // Reduction rows: z^(phi+k) reduced mod Φ_N. Products need exponents up
        // to 2φ−2; ζ_N powers need up to N−1.
        let n_rows = (2 * phi).max(conductor as usize).saturating_sub(phi).max(1);
        let mut reduction: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(n_rows);
        let mut dense_rows: Vec<Vec<Rat>> = Vec::with_capacity(n_rows);
        for k in 0..n_rows {
            let mut row = vec![Rat::zero(); phi];
            if k == 0 {
                for i in 0..phi {
                    row[i] = -Rat::from_integer(min_poly[i].clone());
                }
            } else {
                // z * previous row, reduced using rows already built.
                let prev = dense_rows[k - 1].clone();
                for i in 0..phi {
                    if prev[i].is_zero() {
                        continue;
                    }
                    if i + 1 < phi {
                        row[i + 1] += &prev[i];
                    } else {
                        for j in 0..phi {
                            if !dense_rows[0][j].is_zero() {
                                row[j] += &prev[i] * &dense_rows[0][j];
                            }
                        }
                    }
                }
            }
            dense_rows.push(row.clone());
            reduction.push(
                row.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            );
        }

        Ok(Field(Arc::new(FieldData {
            conductor,
            phi,
            min_poly,
            reduction,
            sqrt_candidates: OnceLock::new(),
            quad_surds: OnceLock::new(),
        })))
    }

    pub fn conductor(&self) -> u32 {
        self.0.conductor
    }

    pub fn phi(&self) -> usize {
        self.0.phi
    }

    pub fn same_field(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.conductor == other.0.conductor
    }

    pub fn zero(&self) -> Cyc {
        Cyc {
            field: self.clone(),
            coeffs: vec![Rat::zero(); self.0.phi],
        }
    }

    pub fn one(&self) -> Cyc {
        self.integer(1)
    }

    pub fn integer(&self, n: i64) -> Cyc {
        self.rational(rat_i64(n))
    }

    pub fn rational(&self, r: Rat) -> Cyc {
        let mut c = self.zero();
        c.coeffs[0] = r;
        c
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Cyc {
        self.rational(Rat::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ζ_order, the primitive `order`-th root e^(2πi/order); `order` must divide N.
    pub fn zeta(&self, order: u32) -> Result<Cyc, CycError> {
        self.zeta_pow(order, 1)
    }

    /// ζ_order^exp, with negative exponents allowed.
    pub fn zeta_pow(&self, order: u32, exp: i64) -> Result<Cyc, CycError> {
        if order == 0 || self.0.conductor % order != 0 {
            return Err(CycError::OrderNotDividing(order, self.0.conductor));
        }
        let step = (self.0.conductor / order) as i64;
        let n = self.0.conductor as i64;
        let e = ((exp * step) % n + n) % n;
        Ok(self.zeta_n_pow(e as usize))
    }

    /// ζ_N^e for 0 ≤ e < N, reduced to the power basis.
    fn zeta_n_pow(&self, e: usize) -> Cyc {
        let phi = self.0.phi;
        let mut c = self.zero();
        if e < phi {
            c.coeffs[e] = Rat::one();
            return c;
        }
        // Reduce by repeated use of the precomputed rows.
        let mut acc = vec![Rat::zero(); e + 1];
        acc[e] = Rat::one();
        for d in (phi..=e).rev() {
            if acc[d].is_zero() {
                continue;
            }
            let c0 = std::mem::replace(&mut acc[d], Rat::zero());
            for (j, r) in &self.0.reduction[d - phi] {
                acc[*j] += &c0 * r;
            }
        }
        c.coeffs.clone_from_slice(&acc[..phi]);
        c
    }

    /// Galois map ζ ↦ ζ^k for k coprime to N.
    pub fn galois(&self, a: &Cyc, k: u32) -> Cyc {
        let n = self.0.conductor;
        assert_eq!(num_integer::gcd(n, k % n), 1, "galois exponent not coprime");
        let mut acc = self.zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((i as u64 * k as u64) % n as u64) as usize;
            let term = self.zeta_n_pow(e);
            for j in 0..self.0.phi {
                if !term.coeffs[j].is_zero() {
                    acc.coeffs[j] += c * &term.coeffs[j];
                }
            }
        }
        acc
    }

    /// Numeric embedding at ζ ↦ e^(2πi·k/N). Diagnostics only; never feeds
    /// back into an exact decision.
    pub fn embed(&self, a: &Cyc, root_choice: u32) -> (f64, f64) {
        let n = self.0.conductor as f64;
        let theta = 2.0 * std::f64::consts::PI * (root_choice as f64) / n;
        let (mut re, mut im) = (0.0_f64, 0.0_f64);
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = rat_to_f64(c);
            let ang = theta * i as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// √m for a squarefree integer m whose square root lies in the field
    /// (built from ζ₄, ζ₈+ζ₈⁻¹, ζ₁₂+ζ₁₂⁻¹ and 1+2(ζ₅+ζ₅⁴)).
    pub fn sqrt_int(&self, m: i64) -> Option<Cyc> {
        if m == 0 {
            return Some(self.zero());
        }
        let mut acc = self.one();
        let n = self.0.conductor;
        if m < 0 {
            if n % 4 != 0 {
                return None;
            }
            acc = self.zeta(4).unwrap();
        }
        let mut m = m.unsigned_abs();
        // Squarefree part only: the caller extracts square factors.
        for (p, need, build) in [
            (2u64, 8u32, SqrtBuild::Cos8),
            (3, 12, SqrtBuild::Cos12),
            (5, 5, SqrtBuild::Five),
        ] {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return None; // not squarefree
                }
                if n % need != 0 {
                    return None;
                }
                let s = match build {
                    // ζ₈ + ζ₈⁻¹ = 2cos(π/4) = √2
                    SqrtBuild::Cos8 => {
                        &self.zeta(8).unwrap() + &self.zeta_pow(8, -1).unwrap()
                    }
                    // ζ₁₂ + ζ₁₂⁻¹ = 2cos(π/6) = √3
                    SqrtBuild::Cos12 => {
                        &self.zeta(12).unwrap() + &self.zeta_pow(12, -1).unwrap()
                    }
                    // 1 + 2(ζ₅ + ζ₅⁴) = √5
                    SqrtBuild::Five => {
                        let t = &self.zeta(5).unwrap() + &self.zeta_pow(5, -1).unwrap();
                        &self.one() + &(&t + &t)
                    }
                };
                acc = &acc * &s;
            }
        }
        if m != 1 {
            return None;
        }
        Some(acc)
    }

    /// √r for rational r, when it exists in the field.
    pub fn sqrt_rational(&self, r: &Rat) -> Option<Cyc> {
        if r.is_zero() {
            return Some(self.zero());
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let n = r.numer() * r.denom();
        let (sign, mag) = (n.sign(), n.magnitude().clone());
        let (square, squarefree) = split_square(&mag)?;
        let m = squarefree.to_i64()?;
        let m = if sign == Sign::Minus { -m } else { m };
        let surd = self.sqrt_int(m)?;
        let scale = Rat::new(BigInt::from_biguint(Sign::Plus, square), r.denom().clone());
        Some(&self.rational(scale) * &surd)
    }

    fn quad_surd_list(&self) -> &Vec<(i64, Cyc)> {
        self.0.quad_surds.get_or_init(|| {
            let mut v = Vec::new();
            for m in [-1, 2, -2, 3, -3, 5, -5, 6, -6, 10, -10, 15, -15, 30, -30] {
                if let Some(s) = self.sqrt_int(m) {
                    v.push((m, s));
                }
            }
            v
        })
    }

    fn sqrt_candidate_list(&self) -> &Vec<(Cyc, Cyc)> {
        self.0.sqrt_candidates.get_or_init(|| {
            let n = self.0.conductor;
            let mut units: Vec<Cyc> = Vec::new();
            // Surd products (includes 1).
            let mut surds = vec![self.one()];
            for m in [2i64, 3, 5, 6, 10, 15, 30] {
                if let Some(s) = self.sqrt_int(m) {
                    surds.push(s);
                }
            }
            // 2cos(2π/j) units capture roots like √((5±√5)/2).
            let mut cos_units = vec![self.one()];
            for j in (5..=n).filter(|j| n % j == 0) {
                let c = &self.zeta(j).unwrap() + &self.zeta_pow(j, -1).unwrap();
                if !c.is_zero() {
                    cos_units.push(c);
                }
            }
            for k in 0..(n / 2).max(1) {
                let z = self.zeta_n_pow(k as usize);
                for s in &surds {
                    let zs = &z * s;
                    for c in &cos_units {
                        units.push(&zs * c);
                    }
                }
            }
            units
                .into_iter()
                .map(|u| {
                    let sq = &u * &u;
                    (u, sq)
                })
                .collect()
        })
    }

    /// Exact square root of `d` in the field, when the search finds one.
    ///
    /// Routes, in order: rational elements; d = r·u² against a candidate
    /// list of roots of unity × surds × 2cos(2π/j) units; a quadratic
    /// subfield solve y = a + b√m; a numeric reconstruction backstop whose
    /// answer is verified exactly. `None` means the search failed, not a
    /// proof of non-existence — callers report such roots as outside the
    /// field with their minimal-polynomial data.
    pub fn sqrt(&self, d: &Cyc) -> Option<Cyc> {
        if d.is_zero() {
            return Some(self.zero());
        }
        if let Some(r) = d.as_rational() {
            if let Some(s) = self.sqrt_rational(&r) {
                return Some(s);
            }
        }
        // d = r·u² for a candidate unit u.
        for (u, usq) in self.sqrt_candidate_list() {
            if let Some(r) = proportional_rational(d, usq) {
                if let Some(s) = self.sqrt_rational(&r) {
                    return Some(&s * u);
                }
            }
        }
        // d = (α + β√m)·ζ^k: solve y = a + b√m exactly.
        let n = self.0.conductor;
        for k in 0..(n / 2).max(1) {
            let z = self.zeta_n_pow(k as usize);
            let zsq = &z * &z;
            for (m, w) in self.quad_surd_list().clone() {
                let wz = &w * &zsq;
                if let Some((alpha, beta)) = in_plane(d, &zsq, &wz) {
                    if beta.is_zero() {
                        continue; // rational case already tried
                    }
                    // y = a + b√m with a² + b²m = α, 2ab = β
                    // ⇒ 4a⁴ − 4αa² + β²m = 0.
                    let disc = &alpha * &alpha - &beta * &beta * rat_i64(m);
                    if let Some(s) = rat_sqrt(&disc) {
                        for sg in [Rat::one(), -Rat::one()] {
                            let a2 = (&alpha + &sg * &s) / rat_i64(2);
                            if a2.is_negative() || a2.is_zero() {
                                continue;
                            }
                            if let Some(a) = rat_sqrt(&a2) {
                                let b = &beta / (rat_i64(2) * &a);
                                let y = &(&self.rational(a) + &(&self.rational(b) * &w)) * &z;
                                if &(&y * &y) == d {
                                    return Some(y);
                                }
                            }
                        }
                    }
                }
            }
        }
        // Numeric backstop with exact verification.
        if let Some(y) = self.sqrt_numeric(d) {
            return Some(y);
        }
        None
    }

    /// Numeric square-root reconstruction in low-degree cyclotomic subfields,
    /// verified exactly before being returned.
    fn sqrt_numeric(&self, d: &Cyc) -> Option<Cyc> {
        let n = self.0.conductor;
        let mut subconductors: Vec<u32> = (1..=n)
            .filter(|f| n % f == 0 && euler_phi(*f) <= 8)
            .collect();
        subconductors.sort_by_key(|f| euler_phi(*f));
        for f in subconductors {
            let phi_f = euler_phi(f) as usize;
            let embeds = embedding_reps(f, phi_f.div_ceil(2));
            if embeds.len() * 2 < phi_f {
                continue;
            }
            // Values: ±√(σ_k(d)) per embedding; try all sign matchings.
            let vals: Vec<(f64, f64)> = embeds
                .iter()
                .map(|k| {
                    let dk = self.embed(d, k * (n / f));
                    complex_sqrt(dk)
                })
                .collect();
            let m = embeds.len();
            for mask in 0..(1u32 << m) {
                let chosen: Vec<(f64, f64)> = vals
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        if mask & (1 << i) != 0 {
                            (-v.0, -v.1)
                        } else {
                            *v
                        }
                    })
                    .collect();
                if let Some(coeffs) = reconstruct_subfield(f, phi_f, &embeds, &chosen) {
                    let mut y = self.zero();
                    let mut ok = true;
                    for (j, c) in coeffs.iter().enumerate() {
                        match self.zeta_pow(f, j as i64) {
                            Ok(zj) => y = &y + &(&self.rational(c.clone()) * &zj),
                            Err(_) => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok && &(&y * &y) == d {
                        return Some(y);
                    }
                }
            }
        }
        None
    }

    /// Parse a cyclotomic literal (grammar: rationals, z<k>, + - * / ^, parens).
    pub fn parse(&self, text: &str) -> Result<Cyc, CycError> {
        let mut p = Parser::new(text);
        let v = p.expr(self)?;
        p.skip_ws();
        if p.pos < p.bytes.len() {
            return Err(CycError::Parse {
                pos: p.pos,
                msg: "trailing input".into(),
            });
        }
        Ok(v)
    }
}

enum SqrtBuild {
    Cos8,
    Cos12,
    Five,
}

/// Representatives k of (ℤ/f)^× with one per complex-conjugate pair, up to `count`.
fn embedding_reps(f: u32, count: usize) -> Vec<u32> {
    let mut reps = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for k in 1..f.max(2) {
        if num_integer::gcd(k, f) != 1 {
            continue;
        }
        let conj = (f - k) % f;
        if seen.contains(&k) || seen.contains(&conj) {
            continue;
        }
        seen.insert(k);
        reps.push(k);
        if reps.len() == count {
            break;
        }
    }
    if reps.is_empty() {
        reps.push(1);
    }
    reps
}

fn complex_sqrt((re, im): (f64, f64)) -> (f64, f64) {
    let r = (re * re + im * im).sqrt();
    let a = ((r + re) / 2.0).max(0.0).sqrt();
    let mut b = ((r - re) / 2.0).max(0.0).sqrt();
    if im < 0.0 {
        b = -b;
    }
    (a, b)
}

/// Solve Σ c_j ζ_f^{jk} = z_k for rational c_j from float data, or None.
fn reconstruct_subfield(
    f: u32,
    phi_f: usize,
    embeds: &[u32],
    values: &[(f64, f64)],
) -> Option<Vec<Rat>> {
    let rows = embeds.len() * 2;
    if rows < phi_f {
        return None;
    }
    let mut a = vec![vec![0.0_f64; phi_f]; rows];
    let mut b = vec![0.0_f64; rows];
    for (i, (&k, &(re, im))) in embeds.iter().zip(values.iter()).enumerate() {
        for j in 0..phi_f {
            let ang = 2.0 * std::f64::consts::PI * (j as u32 * k % f) as f64 / f as f64;
            a[2 * i][j] = ang.cos();
            a[2 * i + 1][j] = ang.sin();
        }
        b[2 * i] = re;
        b[2 * i + 1] = im;
    }
    let sol = solve_f64(&mut a, &mut b, phi_f)?;
    sol.iter().map(|x| rat_from_f64(*x, 1_000_000)).collect()
}

fn solve_f64(a: &mut [Vec<f64>], b: &mut [f64], cols: usize) -> Option<Vec<f64>> {
    let rows = a.len();
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let mut best = row;
        for r in row..rows {
            if a[r][col].abs() > a[best][col].abs() {
                best = r;
            }
        }
        if row >= rows || a[best][col].abs() < 1e-9 {
            return None;
        }
        a.swap(row, best);
        b.swap(row, best);
        let p = a[row][col];
        for r in 0..rows {
            if r != row && a[r][col].abs() > 0.0 {
                let fac = a[r][col] / p;
                for c in col..cols {
                    a[r][c] -= fac * a[row][c];
                }
                b[r] -= fac * b[row];
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let mut x = vec![0.0; cols];
    for (r, c) in pivots {
        x[c] = b[r] / a[r][c];
    }
    Some(x)
}

/// Continued-fraction rational reconstruction with exactness left to the caller.
pub fn rat_from_f64(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let mut x0 = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = x0.floor();
        if a > 1e17 {
            return None;
        }
        let ai = a as i128;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x0 - a;
        if frac < 1e-12 {
            break;
        }
        x0 = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let cand = p1 as f64 / q1 as f64;
    if (cand - x.abs()).abs() > 1e-7 * x.abs().max(1.0) {
        return None;
    }
    let mut r = Rat::new(BigInt::from(p1), BigInt::from(q1));
    if neg {
        r = -r;
    }
    Some(r)
}

/// Exact rational square root, if the rational is a perfect square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let ns = r.numer().magnitude().sqrt();
    let ds = r.denom().magnitude().sqrt();
    if &(&ns * &ns) == r.numer().magnitude() && &(&ds * &ds) == r.denom().magnitude() {
        Some(Rat::new(
            BigInt::from_biguint(Sign::Plus, ns),
            BigInt::from_biguint(Sign::Plus, ds),
        ))
    } else {
        None
    }
}

/// n = s²·m with m squarefree; None if a large unfactored part remains.
fn split_square(n: &num_bigint::BigUint) -> Option<(num_bigint::BigUint, num_bigint::BigUint)> {
    use num_bigint::BigUint;
    let mut n = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = BigUint::from(2u32);
    let limit = BigUint::from(1_000_000u64);
    while &p * &p <= n && p <= limit {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n = &n / &p;
            e += 1;
        }
        if e > 0 {
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= &p;
            }
        }
        p += 1u32;
    }
    if n > BigUint::one() {
        // Residual: maybe a perfect square, maybe a big prime.
        let s = n.sqrt();
        if &s * &s == n {
            square *= s;
        } else if n <= limit {
            free *= &n;
        } else {
            return None;
        }
    }
    Some((square, free))
}

/// If d = r·w for a rational r, return r.
pub fn proportional_rational(d: &Cyc, w: &Cyc) -> Option<Rat> {
    let mut r: Option<Rat> = None;
    for (a, b) in d.coeffs.iter().zip(w.coeffs.iter()) {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => continue,
            (false, true) | (true, false) => return None,
            (false, false) => {
                let q = a / b;
                match &r {
                    None => r = Some(q),
                    Some(r0) => {
                        if *r0 != q {
                            return None;
                        }
                    }
                }
            }
        }
    }
    r
}

/// If d = α·u + β·v for rationals α, β, return them.
fn in_plane(d: &Cyc, u: &Cyc, v: &Cyc) -> Option<(Rat, Rat)> {
    let n = d.coeffs.len();
    // Find two coordinate positions giving an invertible 2×2 system.
    for i in 0..n {
        for j in (i + 1)..n {
            let det = &u.coeffs[i] * &v.coeffs[j] - &u.coeffs[j] * &v.coeffs[i];
            if det.is_zero() {
                continue;
            }
            let alpha = (&d.coeffs[i] * &v.coeffs[j] - &d.coeffs[j] * &v.coeffs[i]) / &det;
            let beta = (&u.coeffs[i] * &d.coeffs[j] - &u.coeffs[j] * &d.coeffs[i]) / &det;
            for k in 0..n {
                let lhs = &alpha * &u.coeffs[k] + &beta * &v.coeffs[k];
                if lhs != d.coeffs[k] {
                    return None;
                }
            }
            return Some((alpha, beta));
        }
    }
    None
}

fn rat_to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

impl Cyc {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn inv(&self) -> Result<Cyc, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        // Fast path: rational elements.
        if let Some(r) = self.as_rational() {
            return Ok(self.field.rational(r.recip()));
        }
        // Dense elements: a⁻¹ = (∏_{σ≠id} σ(a)) / N(a) avoids the coefficient
        // blowup of the rational Euclid.
        if self.coeffs.iter().filter(|c| !c.is_zero()).count() > 10 {
            let n = self.field.0.conductor;
            let mut prod = self.field.one();
            for k in 2..n {
                if num_integer::gcd(k, n) == 1 {
                    prod = &prod * &self.field.galois(self, k);
                }
            }
            let norm = (self * &prod).as_rational().expect("norm must be rational");
            return Ok(&prod * &self.field.rational(norm.recip()));
        }
        // Extended Euclid in ℚ[z] against Φ_N.
        let phi = self.field.0.phi;
        let modulus: Vec<Rat> = self
            .field
            .0
            .min_poly
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        let a: Vec<Rat> = self.coeffs.clone();
        let (g, _, t) = poly_ext_gcd(&modulus, &a);
        // g must be a nonzero constant.
        assert!(
            g.len() == 1 && !g[0].is_zero(),
            "element not invertible mod Φ_N"
        );
        let ginv = g[0].recip();
        let mut out = self.field.zero();
        for (i, c) in t.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // t may have degree ≥ φ in principle; fold just in case.
            if i < phi {
                out.coeffs[i] += c * &ginv;
            } else {
                let z = self.field.zeta_n_pow(i);
                for j in 0..phi {
                    out.coeffs[j] += c * &ginv * &z.coeffs[j];
                }
            }
        }
        Ok(out)
    }

    pub fn try_div(&self, rhs: &Cyc) -> Result<Cyc, CycError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Cyc {
        if e < 0 {
            return self.inv().expect("inverse of zero in pow").pow(-e);
        }
        let mut base = self.clone();
        let mut e = e as u64;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Render a minimal canonical literal; parse(render(x)) == x.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let n = self.field.0.conductor;
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            let coeff = if mag.is_one() && i != 0 {
                String::new()
            } else if mag.denom().is_one() {
                format!("{}", mag.numer())
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            let base = if i == 0 {
                String::new()
            } else {
                let g = num_integer::gcd(i as u32, n);
                let (ord, exp) = (n / g, i as u32 / g);
                if exp == 1 {
                    format!("z{ord}")
                } else {
                    format!("z{ord}^{exp}")
                }
            };
            let body = match (coeff.is_empty(), base.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => base,
                (false, true) => coeff,
                (false, false) => format!("{coeff}*{base}"),
            };
            parts.push((neg, body));
        }
        let mut out = String::new();
        for (i, (neg, body)) in parts.iter().enumerate() {
            if i == 0 {
                if *neg {
                    out.push('-');
                }
            } else {
                out.push_str(if *neg { " - " } else { " + " });
            }
            out.push_str(body);
        }
        out
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        self.field.0.conductor == other.field.0.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for Cyc {}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait<&Cyc> for &Cyc {
            type Output = Cyc;
            fn $method(self, rhs: &Cyc) -> Cyc {
                debug_assert!(self.field.same_field(&rhs.field));
                let mut out = self.clone();
                for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
                    *a = &*a $op b;
                }
                out
            }
        }
        impl std::ops::$trait<Cyc> for Cyc {
            type Output = Cyc;
            fn $method(self, rhs: Cyc) -> Cyc {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);

impl std::ops::Mul<&Cyc> for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        debug_assert!(self.field.same_field(&rhs.field));
        let phi = self.field.0.phi;
        let mut acc = vec![Rat::zero(); phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let e = i + j;
                if e < phi {
                    acc[e] += prod;
                } else {
                    for (k, c) in &self.field.0.reduction[e - phi] {
                        acc[*k] += &prod * c;
                    }
                }
            }
        }
        Cyc {
            field: self.field.clone(),
            coeffs: acc,
        }
    }
}

impl std::ops::Mul<Cyc> for Cyc {
    type Output = Cyc;
    fn mul(self, rhs: Cyc) -> Cyc {
        (&self) * (&rhs)
    }
}

impl std::ops::Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -&*c;
        }
        out
    }
}

impl std::ops::Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl std::ops::Div<&Cyc> for &Cyc {
    type Output = Cyc;
    fn div(self, rhs: &Cyc) -> Cyc {
        self.try_div(rhs).expect("division by zero")
    }
}

/// Extended gcd for rational univariate polynomials: returns (g, s, t) with
/// s·a + t·b = g.
fn poly_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let trim = |mut v: Vec<Rat>| -> Vec<Rat> {
        while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![Rat::one()];
    let mut s1 = vec![Rat::zero()];
    let mut t0 = vec![Rat::zero()];
    let mut t1 = vec![Rat::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = trim(r);
        s0 = s1;
        s1 = trim(s2);
        t0 = t1;
        t1 = trim(t2);
    }
    (r0, s0, t0)
}

pub(crate) fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let dd = den.len() - 1;
    assert!(!den[dd].is_zero());
    if num.len() < den.len() {
        return (vec![Rat::zero()], num.to_vec());
    }
    let mut rem = num.to_vec();
    let qd = num.len() - den.len();
    let mut quot = vec![Rat::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = &rem[k + dd] / &den[dd];
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, d) in den.iter().enumerate() {
                let v = &rem[k + i] - &c * d;
                rem[k + i] = v;
            }
        }
    }
    rem.truncate(dd.max(1));
    (quot, rem)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

// ---------------------------------------------------------------------------
// Literal parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T, CycError> {
        Err(CycError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expr(&mut self, f: &Field) -> Result<Cyc, CycError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term(f)?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term(f)?
            }
            _ => self.term(f)?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term(f)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term(f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, f: &Field) -> Result<Cyc, CycError> {
        let mut acc = self.factor(f)?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor(f)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.try_div(&self.factor(f)?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self, f: &Field) -> Result<Cyc, CycError> {
        let base = self.atom(f)?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            if base.is_zero() && e < 0 {
                return Err(CycError::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self, f: &Field) -> Result<Cyc, CycError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr(f)?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.atom(f)?)
            }
            Some(b'z') => {
                self.pos += 1;
                let k = self.integer()?;
                if k <= 0 {
                    return self.err("root order must be positive");
                }
                f.zeta(k as u32)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.bigint()?;
                Ok(f.rational(Rat::from_integer(n)))
            }
            _ => self.err("expected a rational, z<k>, or '('"),
        }
    }

    fn integer(&mut self) -> Result<i64, CycError> {
        self.skip_ws();
        let neg = if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let v: i64 = s
            .parse()
            .map_err(|_| CycError::Parse {
                pos: start,
                msg: "integer overflow".into(),
            })?;
        Ok(if neg { -v } else { v })
    }

    fn bigint(&mut self) -> Result<BigInt, CycError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f120() -> Field {
        Field::new(120).unwrap()
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(120), 32);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(5), 4);
    }

    #[test]
    fn parse_examples() {
        let f = f120();
        let a = f.parse("z5^3 + z5^2 + 2").unwrap();
        let b = &(&f.zeta_pow(5, 3).unwrap() + &f.zeta_pow(5, 2).unwrap()) + &f.integer(2);
        assert_eq!(a, b);
        assert_eq!(f.parse("0").unwrap(), f.zero());
        assert_eq!(f.parse("z4*z4").unwrap(), f.integer(-1));
    }

    #[test]
    fn fifth_roots_sum() {
        let f = f120();
        let mut s = f.zero();
        for e in 1..=4 {
            s = &s + &f.zeta_pow(5, e).unwrap();
        }
        assert_eq!(s, f.integer(-1));
    }

    #[test]
    fn gaussian_norm() {
        let f = f120();
        let i = f.zeta(4).unwrap();
        let a = &f.integer(4) + &(&f.integer(3) * &i);
        let b = &f.integer(4) - &(&f.integer(3) * &i);
        assert_eq!(&a * &b, f.integer(25));
    }

    #[test]
    fn product_matches_numeric_embedding() {
        let f = f120();
        let z6 = f.zeta(6).unwrap();
        let lhs = &(&z6 - &f.one()) * &(-&z6);
        let (re, im) = f.embed(&lhs, 1);
        // (ζ6 − 1)(−ζ6) numerically
        let t = std::f64::consts::PI / 3.0;
        let (zr, zi) = (t.cos(), t.sin());
        let (er, ei) = ((zr - 1.0) * -zr - zi * -zi, (zr - 1.0) * -zi + zi * -zr);
        assert!((re - er).abs() < 1e-10 && (im - ei).abs() < 1e-10);
    }

    #[test]
    fn embed_basics() {
        let f = f120();
        let (re, im) = f.embed(&f.one(), 1);
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        let (re, im) = f.embed(&f.zeta(4).unwrap(), 1);
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sqrt6_from_oracle() {
        let f = f120();
        let s6 = f.sqrt_int(6).unwrap();
        assert_eq!(&s6 * &s6, f.integer(6));
        let (re, im) = f.embed(&s6, 1);
        assert!((re - 6.0_f64.sqrt()).abs() < 1e-9, "got {re}");
        assert!(im.abs() < 1e-9);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = f120();
        let a = f.parse("z5^3 + 2*z4 - 3/7").unwrap();
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, f.one());
        assert!(f.zero().inv().is_err());
    }

    #[test]
    fn render_roundtrip() {
        let f = f120();
        for lit in [
            "z5^3 + z5^2 + 2",
            "-z4",
            "1/2*z6 - 3",
            "z8 + z8^-1",
            "z24^5",
            "7/3",
            "0",
            "z120 - z120^31",
        ] {
            let a = f.parse(lit).unwrap();
            let b = f.parse(&a.render()).unwrap();
            assert_eq!(a, b, "round trip failed for {lit}: rendered {}", a.render());
        }
    }

    #[test]
    fn sqrt_search_rational_and_scaled() {
        let f = f120();
        // -3/2: occurs when solving 3 + 2t² = 0.
        let d = f.from_ratio(-3, 2);
        let s = f.sqrt(&d).unwrap();
        assert_eq!(&s * &s, d);
        // 24
        let d = f.integer(24);
        let s = f.sqrt(&d).unwrap();
        assert_eq!(&s * &s, d);
        // ζ6·6
        let d = &f.integer(6) * &f.zeta(6).unwrap();
        let s = f.sqrt(&d).unwrap();
        assert_eq!(&s * &s, d);
        // (1+√5)² = 6+2√5 — a square not of the form r·u².
        let r5 = f.sqrt_int(5).unwrap();
        let y = &f.one() + &r5;
        let d = &y * &y;
        let s = f.sqrt(&d).unwrap();
        assert_eq!(&s * &s, d);
        // 10+2√5 = (2cos(π/10))²·4-ish: square of an element of ℚ(ζ20)⁺.
        let d = &f.integer(10) + &(&f.integer(2) * &r5);
        let s = f.sqrt(&d).unwrap();
        assert_eq!(&s * &s, d);
    }

    #[test]
    fn other_conductors_work() {
        let f = Field::new(240).unwrap();
        assert_eq!(f.phi(), 64);
        let a = f.parse("z16 + z5^2").unwrap();
        assert_eq!(f.parse(&a.render()).unwrap(), a);
        assert_eq!(&a * &a.inv().unwrap(), f.one());
        let f1 = Field::new(1).unwrap();
        assert_eq!(f1.phi(), 1);
        assert_eq!(f1.parse("3/4 - 1").unwrap(), f1.from_ratio(-1, 4));
        assert!(Field::new(0).is_err());
    }

    #[test]
    fn parse_error_paths() {
        let f = f120();
        assert!(matches!(
            f.parse("z7"),
            Err(CycError::OrderNotDividing(7, 120))
        ));
        assert!(matches!(f.parse("1/0"), Err(CycError::DivisionByZero)));
        assert!(f.parse("z5 +").is_err());
        assert!(f.parse("(z5").is_err());
    }

    #[test]
    fn embedding_is_ring_homomorphism() {
        let f = f120();
        let mut rng = crate::rng::XorShift::new(0xe3bed);
        for _ in 0..50 {
            let mut a = f.zero();
            let mut b = f.zero();
            for _ in 0..3 {
                let e = (rng.next_u64() % 120) as i64;
                let c = (rng.next_u64() % 9) as i64 - 4;
                a = &a + &(&f.integer(c) * &f.zeta_pow(120, e).unwrap());
                let e = (rng.next_u64() % 120) as i64;
                b = &b + &(&f.integer(c) * &f.zeta_pow(120, e).unwrap());
            }
            let (pr, pi) = f.embed(&(&a * &b), 1);
            let (ar, ai) = f.embed(&a, 1);
            let (br, bi) = f.embed(&b, 1);
            let (er, ei) = (ar * br - ai * bi, ar * bi + ai * br);
            assert!((pr - er).abs() < 1e-9 && (pi - ei).abs() < 1e-9);
            let (sr, si) = f.embed(&(&a + &b), 1);
            assert!((sr - (ar + br)).abs() < 1e-9 && (si - (ai + bi)).abs() < 1e-9);
        }
    }

    #[test]
    fn galois_is_automorphism() {
        let f = f120();
        let a = f.parse("z5 + 3*z8 - 1/2").unwrap();
        let b = f.parse("z6 - 2*z4").unwrap();
        let ab = &a * &b;
        for k in [7u32, 11, 13, 49] {
            let ga = f.galois(&a, k);
            let gb = f.galois(&b, k);
            assert_eq!(f.galois(&ab, k), &ga * &gb);
        }
    }

    #[test]
    fn field_axioms_randomized() {
        let f = f120();
        let mut rng = crate::rng::XorShift::new(0xfeed);
        for _ in 0..200 {
            let a = random_elem(&f, &mut rng);
            let b = random_elem(&f, &mut rng);
            let c = random_elem(&f, &mut rng);
            assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                assert_eq!(&a * &a.inv().unwrap(), f.one());
            }
        }
    }

    fn random_elem(f: &Field, rng: &mut crate::rng::XorShift) -> Cyc {
        let mut v = f.zero();
        for _ in 0..3 {
            let e = (rng.next_u64() % 120) as i64;
            let c = (rng.next_u64() % 11) as i64 - 5;
            v = &v + &(&f.integer(c) * &f.zeta_pow(120, e).unwrap());
        }
        v
    }
}
