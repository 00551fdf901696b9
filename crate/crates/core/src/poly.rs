//! Multivariate polynomials in the 5 homogeneous coordinates of ℙ⁴ over the
//! cyclotomic field, with graded-lex canonical term order.
//!
//! Binary forms (restrictions to parametrized lines and curves) reuse the
//! same type in the first two variables, by convention named s = x1, t = x2.
//! Exact root extraction for binary forms lives here as well: endpoint
//! factors, square parts via univariate gcd, the quadratic formula backed by
//! the field's square-root search, and a numeric-reconstruction fallback
//! whose every answer is verified exactly before use.

use crate::cyclo::{Cyc, CycError, Field};
use std::collections::BTreeMap;
use std::fmt;

pub const N_VARS: usize = 5;

/// Exponent 5-tuple with graded-lexicographic order (total degree first,
/// then lex with x1 most significant).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Expo(pub [u8; N_VARS]);

impl Expo {
    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn divides(&self, other: &Expo) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn sub(&self, other: &Expo) -> Expo {
        let mut out = [0u8; N_VARS];
        for i in 0..N_VARS {
            out[i] = self.0[i] - other.0[i];
        }
        Expo(out)
    }

    fn add(&self, other: &Expo) -> Expo {
        let mut out = [0u8; N_VARS];
        for i in 0..N_VARS {
            out[i] = self.0[i] + other.0[i];
        }
        Expo(out)
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate polynomial in canonical form: no zero coefficients stored.
#[derive(Clone)]
pub struct MultiPoly {
    field: Field,
    terms: BTreeMap<Expo, Cyc>,
}

impl MultiPoly {
    pub fn zero(field: &Field) -> MultiPoly {
        MultiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, c: Cyc) -> MultiPoly {
        let mut p = MultiPoly::zero(field);
        if !c.is_zero() {
            p.terms.insert(Expo([0; N_VARS]), c);
        }
        p
    }

    pub fn variable(field: &Field, i: usize) -> MultiPoly {
        assert!(i < N_VARS);
        let mut e = [0u8; N_VARS];
        e[i] = 1;
        let mut p = MultiPoly::zero(field);
        p.terms.insert(Expo(e), field.one());
        p
    }

    pub fn monomial(field: &Field, e: Expo, c: Cyc) -> MultiPoly {
        let mut p = MultiPoly::zero(field);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// Linear form Σ coeffs[i]·x_i.
    pub fn linear_form(field: &Field, coeffs: &[Cyc]) -> MultiPoly {
        assert_eq!(coeffs.len(), N_VARS);
        let mut p = MultiPoly::zero(field);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = [0u8; N_VARS];
                e[i] = 1;
                p.terms.insert(Expo(e), c.clone());
            }
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Cyc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Expo) -> Cyc {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree (None for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total()).max()
    }

    /// Common total degree if homogeneous (zero counts as homogeneous of any
    /// degree and returns None).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.total();
        for e in it {
            if e.total() != d {
                return None;
            }
        }
        Some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Expo, &Cyc)> {
        self.terms.last_key_value()
    }

    fn insert_add(&mut self, e: Expo, c: Cyc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, s: &Cyc) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field);
        if s.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(*e, c * s);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(&self.field, self.field.one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable i.
    pub fn partial(&self, i: usize) -> MultiPoly {
        assert!(i < N_VARS);
        let mut out = MultiPoly::zero(&self.field);
        for (e, c) in &self.terms {
            if e.0[i] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2.0[i] -= 1;
            out.insert_add(e2, c * &self.field.integer(e.0[i] as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..N_VARS).map(|i| self.partial(i)).collect()
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, point: &[Cyc]) -> Cyc {
        assert_eq!(point.len(), N_VARS);
        let f = &self.field;
        // Cache powers per variable.
        let maxdeg: u32 = self.degree().unwrap_or(0);
        let mut powers: Vec<Vec<Cyc>> = Vec::with_capacity(N_VARS);
        for v in point {
            let mut ps = Vec::with_capacity(maxdeg as usize + 1);
            ps.push(f.one());
            for k in 1..=maxdeg as usize {
                let prev = &ps[k - 1];
                ps.push(prev * v);
            }
            powers.push(ps);
        }
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..N_VARS {
                if e.0[i] > 0 {
                    t = &t * &powers[i][e.0[i] as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Composition p(images(x)); images must be one polynomial per variable.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), N_VARS);
        let f = &self.field;
        let mut maxes = [0u8; N_VARS];
        for e in self.terms.keys() {
            for i in 0..N_VARS {
                maxes[i] = maxes[i].max(e.0[i]);
            }
        }
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(N_VARS);
        for i in 0..N_VARS {
            let mut ps = vec![MultiPoly::constant(f, f.one())];
            for k in 1..=maxes[i] as usize {
                let next = &ps[k - 1] * &images[i];
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut acc = MultiPoly::zero(f);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(f, c.clone());
            for i in 0..N_VARS {
                if e.0[i] > 0 {
                    t = &t * &powers[i][e.0[i] as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Composition with a linear map: p(M·x).
    pub fn substitute_matrix(&self, m: &crate::linalg::Matrix) -> MultiPoly {
        assert_eq!((m.rows, m.cols), (N_VARS, N_VARS));
        let images: Vec<MultiPoly> = (0..N_VARS)
            .map(|i| MultiPoly::linear_form(&self.field, m.row(i)))
            .collect();
        self.substitute(&images)
    }

    /// Remainder of division by a single polynomial: no term of the result is
    /// divisible by the leading term of `d`. A zero remainder certifies
    /// membership in the principal ideal (d).
    pub fn reduce_by(&self, d: &MultiPoly) -> MultiPoly {
        let (lt_e, lt_c) = d.leading().expect("division by zero polynomial");
        let lt_inv = lt_c.inv().expect("leading coefficient nonzero");
        let mut rem = self.clone();
        loop {
            // Largest term divisible by LT(d).
            let target = rem
                .terms
                .iter()
                .rev()
                .find(|(e, _)| lt_e.divides(e))
                .map(|(e, c)| (*e, c.clone()));
            let Some((e, c)) = target else {
                return rem;
            };
            let q = &c * &lt_inv;
            let shift = e.sub(lt_e);
            for (de, dc) in &d.terms {
                rem.insert_add(de.add(&shift), -&(&q * dc));
            }
        }
    }

    /// Render as a literal: graded-lex descending terms.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = (0..N_VARS)
                .filter(|&v| e.0[v] > 0)
                .map(|v| {
                    if e.0[v] == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, e.0[v])
                    }
                })
                .collect();
            let lit = c.render();
            let simple = !lit.contains('+') && !lit[1..].contains('-');
            let (neg, mag) = if simple && lit.starts_with('-') {
                (true, lit[1..].to_string())
            } else {
                (false, lit)
            };
            let coeff_part = if mag == "1" && !mono.is_empty() {
                String::new()
            } else if simple {
                mag
            } else {
                format!("({mag})")
            };
            let body = match (coeff_part.is_empty(), mono.is_empty()) {
                (true, true) => "1".into(),
                (true, false) => mono.join("*"),
                (false, true) => coeff_part,
                (false, false) => format!("{}*{}", coeff_part, mono.join("*")),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// Parse a polynomial literal: cyclotomic constants, x1..x5, + - * / ^.
    pub fn parse(field: &Field, text: &str) -> Result<MultiPoly, CycError> {
        let mut p = PolyParser {
            bytes: text.as_bytes().to_vec(),
            pos: 0,
            field: field.clone(),
        };
        let v = p.expr()?;
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

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl std::ops::Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }
}

impl std::ops::Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(*e, -c);
        }
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field);
        for (e, c) in &self.terms {
            out.terms.insert(*e, -c);
        }
        out
    }
}

impl std::ops::Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.insert_add(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

struct PolyParser {
    bytes: Vec<u8>,
    pos: usize,
    field: Field,
}

impl PolyParser {
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

    fn expr(&mut self) -> Result<MultiPoly, CycError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, CycError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let Some((e, c)) = rhs.leading() else {
                        return Err(CycError::DivisionByZero);
                    };
                    if e.total() != 0 || rhs.num_terms() != 1 {
                        return self.err("division only by constants");
                    }
                    acc = acc.scale(&c.inv()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, CycError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let neg = if self.bytes.get(self.pos) == Some(&b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.number()? as u32;
            if neg {
                // Negative exponents only make sense for constants.
                let Some((ex, c)) = base.leading() else {
                    return Err(CycError::DivisionByZero);
                };
                if ex.total() != 0 || base.num_terms() != 1 {
                    return self.err("negative exponent on a non-constant");
                }
                return Ok(MultiPoly::constant(&self.field, c.pow(-(e as i64))));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, CycError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.atom()?)
            }
            Some(b'x') => {
                self.pos += 1;
                let k = self.number()?;
                if !(1..=N_VARS as u64).contains(&k) {
                    return self.err("variable index out of range");
                }
                Ok(MultiPoly::variable(&self.field, k as usize - 1))
            }
            Some(b'z') => {
                self.pos += 1;
                let k = self.number()?;
                let z = self.field.zeta(k as u32)?;
                Ok(MultiPoly::constant(&self.field, z))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let n: num_bigint::BigInt = s.parse().unwrap();
                Ok(MultiPoly::constant(
                    &self.field,
                    self.field.rational(crate::cyclo::Rat::from_integer(n)),
                ))
            }
            _ => self.err("expected a constant, x<i>, z<k>, or '('"),
        }
    }

    fn number(&mut self) -> Result<u64, CycError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| CycError::Parse {
                pos: start,
                msg: "number overflow".into(),
            })
    }
}

// ---------------------------------------------------------------------------
// Binary forms and exact root extraction
// ---------------------------------------------------------------------------

/// Restrict a form to the line {s·u + t·w}: the result is a binary form in
/// the variables (x1, x2) = (s, t).
pub fn restrict_to_line(p: &MultiPoly, u: &[Cyc], w: &[Cyc]) -> MultiPoly {
    let f = p.field();
    let images: Vec<MultiPoly> = (0..N_VARS)
        .map(|i| {
            let s_part = MultiPoly::variable(f, 0).scale(&u[i]);
            let t_part = MultiPoly::variable(f, 1).scale(&w[i]);
            &s_part + &t_part
        })
        .collect();
    p.substitute(&images)
}

/// Coefficients c_k of t^k in b(1, t) together with the degree of b, for a
/// binary form in (x1, x2).
pub fn binary_coeffs(b: &MultiPoly) -> (Vec<Cyc>, u32) {
    let f = b.field();
    let d = b.degree().unwrap_or(0);
    let mut coeffs = vec![f.zero(); d as usize + 1];
    for (e, c) in b.terms() {
        assert!(e.0[2] == 0 && e.0[3] == 0 && e.0[4] == 0, "not a binary form");
        coeffs[e.0[1] as usize] = c.clone();
    }
    (coeffs, d)
}

/// A projective root [s:t] of a binary form with its multiplicity.
#[derive(Clone, Debug)]
pub struct BinaryRoot {
    pub s: Cyc,
    pub t: Cyc,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Default)]
pub struct BinaryRoots {
    pub roots: Vec<BinaryRoot>,
    /// Rendered literal of a factor whose roots were not expressible in the
    /// field (or not found by the search), with its degree.
    pub unresolved: Vec<String>,
}

/// All roots of a binary form in ℙ¹ over the field, exactly. Roots the
/// search cannot express in the field are reported in `unresolved` with
/// their minimal-polynomial data.
pub fn binary_roots(b: &MultiPoly) -> BinaryRoots {
    let f = b.field().clone();
    let mut out = BinaryRoots::default();
    if b.is_zero() {
        return out;
    }
    let (coeffs, _) = binary_coeffs(b);
    // Root at [0:1] when the t^d coefficient block vanishes at the top.
    let top_zeros = coeffs
        .iter()
        .rev()
        .take_while(|c| c.is_zero())
        .count();
    if top_zeros > 0 {
        out.roots.push(BinaryRoot {
            s: f.zero(),
            t: f.one(),
            multiplicity: top_zeros,
        });
    }
    // Univariate part: f(t) = b(1, t).
    let uni = UniPoly::new(&f, coeffs);
    for (r, m) in uni.roots_in_field(&mut out.unresolved) {
        out.roots.push(BinaryRoot {
            s: f.one(),
            t: r,
            multiplicity: m,
        });
    }
    out
}

/// Univariate polynomial over the field, dense coefficients (c0 + c1 t + …).
#[derive(Clone, Debug)]
pub struct UniPoly {
    field: Field,
    pub coeffs: Vec<Cyc>,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Cyc>) -> UniPoly {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(field.zero());
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &Cyc) -> Cyc {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.deg() == 0 {
            return UniPoly::new(&self.field, vec![self.field.zero()]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.integer(i as i64))
            .collect();
        UniPoly::new(&self.field, coeffs)
    }

    pub fn divmod(&self, den: &UniPoly) -> (UniPoly, UniPoly) {
        let f = &self.field;
        let dd = den.deg();
        let lead_inv = den.coeffs[dd].inv().expect("nonzero divisor");
        if self.deg() < dd || self.is_zero() {
            return (UniPoly::new(f, vec![f.zero()]), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let qd = self.deg() - dd;
        let mut quot = vec![f.zero(); qd + 1];
        for k in (0..=qd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                quot[k] = c.clone();
                for (i, dcoef) in den.coeffs.iter().enumerate() {
                    let v = &rem[k + i] - &(&c * dcoef);
                    rem[k + i] = v;
                }
            }
        }
        rem.truncate(dd.max(1));
        (UniPoly::new(f, quot), UniPoly::new(f, rem))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        // Monic normalization.
        let lead = a.coeffs[a.deg()].clone();
        if !lead.is_zero() && !lead.is_one() {
            let inv = lead.inv().unwrap();
            for c in a.coeffs.iter_mut() {
                *c = &*c * &inv;
            }
        }
        a
    }

    /// Roots in the field with multiplicities; unexpressible factors are
    /// appended to `unresolved` as literals.
    pub fn roots_in_field(&self, unresolved: &mut Vec<String>) -> Vec<(Cyc, usize)> {
        let f = &self.field;
        if self.is_zero() || self.deg() == 0 {
            return vec![];
        }
        // Squarefree part.
        let sqfree = {
            let g = self.gcd(&self.derivative());
            if g.deg() == 0 {
                self.clone()
            } else {
                self.divmod(&g).0
            }
        };
        let mut simple_roots: Vec<Cyc> = Vec::new();
        let mut rem = sqfree.clone();
        loop {
            match rem.deg() {
                0 => break,
                1 => {
                    let r = -&rem.coeffs[0].try_div(&rem.coeffs[1]).unwrap();
                    simple_roots.push(r);
                    break;
                }
                2 => {
                    let (c, b, a) = (&rem.coeffs[0], &rem.coeffs[1], &rem.coeffs[2]);
                    let disc = &(b * b) - &(&(&f.integer(4) * a) * c);
                    match f.sqrt(&disc) {
                        Some(s) => {
                            let two_a_inv = (&f.integer(2) * a).inv().unwrap();
                            let r1 = &(&s - b) * &two_a_inv;
                            let r2 = &(&(-&s) - b) * &two_a_inv;
                            simple_roots.push(r1.clone());
                            if r2 != r1 {
                                simple_roots.push(r2);
                            }
                            break;
                        }
                        None => {
                            // Numeric fallback before declaring it outside the field.
                            if let Some(r) = rem.one_numeric_root() {
                                simple_roots.push(r.clone());
                                let lin = UniPoly::new(f, vec![-&r, f.one()]);
                                rem = rem.divmod(&lin).0;
                                continue;
                            }
                            unresolved.push(rem.render("t"));
                            break;
                        }
                    }
                }
                _ => {
                    if let Some(r) = rem.one_numeric_root() {
                        simple_roots.push(r.clone());
                        let lin = UniPoly::new(f, vec![-&r, f.one()]);
                        rem = rem.divmod(&lin).0;
                    } else {
                        unresolved.push(rem.render("t"));
                        break;
                    }
                }
            }
        }
        // Multiplicities against the original polynomial.
        let mut out = Vec::new();
        for r in simple_roots {
            let lin = UniPoly::new(f, vec![-&r, f.one()]);
            let mut m = 0;
            let mut cur = self.clone();
            loop {
                let (q, rr) = cur.divmod(&lin);
                if rr.is_zero() || (rr.deg() == 0 && rr.coeffs[0].is_zero()) {
                    m += 1;
                    cur = q;
                } else {
                    break;
                }
            }
            if m > 0 {
                out.push((r, m));
            }
        }
        out
    }

    /// Numeric root search with exact verification: Durand–Kerner at several
    /// Galois embeddings, reconstruction in low-degree cyclotomic subfields,
    /// and an exact f(r) == 0 check before returning anything.
    fn one_numeric_root(&self) -> Option<Cyc> {
        let f = &self.field;
        let n = f.conductor();
        let mut subconductors: Vec<u32> = (1..=n)
            .filter(|&fc| n % fc == 0 && crate::cyclo::euler_phi(fc) <= 4)
            .collect();
        subconductors.sort_by_key(|&fc| crate::cyclo::euler_phi(fc));
        let deg = self.deg();
        let roots_at = |k: u32| -> Vec<(f64, f64)> {
            let cs: Vec<(f64, f64)> = self.coeffs.iter().map(|c| f.embed(c, k)).collect();
            durand_kerner(&cs)
        };
        let base_roots = roots_at(1);
        for fc in subconductors {
            let phi_f = crate::cyclo::euler_phi(fc) as usize;
            let embeds = subfield_embeddings(n, fc, phi_f.div_ceil(2));
            if embeds.len() * 2 < phi_f {
                continue;
            }
            let extra: Vec<Vec<(f64, f64)>> =
                embeds[1..].iter().map(|&k| roots_at(k)).collect();
            for z0 in &base_roots {
                // Match each further embedding to one of its numeric roots.
                let mut matchings: Vec<Vec<(f64, f64)>> = vec![vec![*z0]];
                for layer in &extra {
                    let mut next = Vec::new();
                    for m in &matchings {
                        for cand in layer.iter().take(deg) {
                            let mut m2 = m.clone();
                            m2.push(*cand);
                            next.push(m2);
                        }
                    }
                    matchings = next;
                    if matchings.len() > 128 {
                        matchings.truncate(128);
                    }
                }
                for m in &matchings {
                    if let Some(r) = reconstruct_root(f, fc, phi_f, &embeds, m) {
                        let v = self.eval(&r);
                        if v.is_zero() {
                            return Some(r);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn render(&self, var: &str) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({})", c.render()),
                1 => format!("({})*{var}", c.render()),
                _ => format!("({})*{var}^{i}", c.render()),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Embedding exponents k (coprime to n, k ≡ distinct units mod fc, one per
/// conjugate pair mod fc).
fn subfield_embeddings(n: u32, fc: u32, count: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    // Always start with the identity embedding.
    out.push(1u32);
    seen.insert(1 % fc.max(1));
    if fc > 2 {
        seen.insert((fc - 1) % fc);
    }
    let mut k = 2;
    while out.len() < count && k < n + fc {
        if num_integer::gcd(k, n) == 1 {
            let km = k % fc;
            let conj = (fc - km) % fc;
            if !seen.contains(&km) && !seen.contains(&conj) {
                seen.insert(km);
                seen.insert(conj);
                out.push(k);
            }
        }
        k += 1;
    }
    out
}

/// Reconstruct Σ c_j ζ_fc^j from its values under the chosen embeddings.
fn reconstruct_root(
    f: &Field,
    fc: u32,
    phi_f: usize,
    embeds: &[u32],
    values: &[(f64, f64)],
) -> Option<Cyc> {
    let rows = embeds.len() * 2;
    if rows < phi_f {
        return None;
    }
    let mut a = vec![vec![0.0f64; phi_f]; rows];
    let mut b = vec![0.0f64; rows];
    for (i, (&k, &(re, im))) in embeds.iter().zip(values.iter()).enumerate() {
        for j in 0..phi_f {
            let ang = 2.0 * std::f64::consts::PI * ((j as u64 * k as u64) % fc as u64) as f64
                / fc as f64;
            a[2 * i][j] = ang.cos();
            a[2 * i + 1][j] = ang.sin();
        }
        b[2 * i] = re;
        b[2 * i + 1] = im;
    }
    let x = solve_f64_ls(&mut a, &mut b, phi_f)?;
    let mut r = f.zero();
    for (j, v) in x.iter().enumerate() {
        let q = crate::cyclo::rat_from_f64(*v, 1_000_000)?;
        if q.numer().bits() > 60 {
            return None;
        }
        let term = f.zeta_pow(fc, j as i64).ok()?;
        r = &r + &(&f.rational(q) * &term);
    }
    Some(r)
}

fn solve_f64_ls(a: &mut [Vec<f64>], b: &mut [f64], cols: usize) -> Option<Vec<f64>> {
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
            if r != row {
                let fac = a[r][col] / p;
                if fac != 0.0 {
                    for c in col..cols {
                        a[r][c] -= fac * a[row][c];
                    }
                    b[r] -= fac * b[row];
                }
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

/// Durand–Kerner iteration for all complex roots of a dense polynomial.
fn durand_kerner(coeffs: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return vec![];
    }
    let lead = coeffs[d];
    let norm: Vec<(f64, f64)> = coeffs.iter().map(|c| c_div(*c, lead)).collect();
    let mut roots: Vec<(f64, f64)> = (0..d)
        .map(|i| {
            let ang = 2.0 * std::f64::consts::PI * i as f64 / d as f64 + 0.4;
            (1.2 * ang.cos(), 1.2 * ang.sin())
        })
        .collect();
    for _ in 0..200 {
        let mut delta: f64 = 0.0;
        for i in 0..d {
            let mut denom = (1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom = c_mul(denom, c_sub(roots[i], roots[j]));
                }
            }
            let val = c_polyval(&norm, roots[i]);
            let step = c_div(val, denom);
            roots[i] = c_sub(roots[i], step);
            delta = delta.max(step.0.abs() + step.1.abs());
        }
        if delta < 1e-13 {
            break;
        }
    }
    roots
}

fn c_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn c_sub(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 - b.0, a.1 - b.1)
}

fn c_div(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

fn c_polyval(coeffs: &[(f64, f64)], x: (f64, f64)) -> (f64, f64) {
    let mut acc = (0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = c_mul(acc, x);
        acc = (acc.0 + c.0, acc.1 + c.1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Field;

    fn f() -> Field {
        Field::new(120).unwrap()
    }

    fn sum_vars(f: &Field) -> MultiPoly {
        let mut p = MultiPoly::zero(f);
        for i in 0..N_VARS {
            p = &p + &MultiPoly::variable(f, i);
        }
        p
    }

    #[test]
    fn binomial_square() {
        let f = f();
        let p = sum_vars(&f);
        let sq = &p * &p;
        // Σxᵢ² + 2Σ_{i<j} xᵢxⱼ: 5 + 10 = 15 terms.
        assert_eq!(sq.num_terms(), 15);
        let mut e = [0u8; 5];
        e[0] = 2;
        assert_eq!(sq.coeff(&Expo(e)), f.one());
        let e2 = Expo([1, 1, 0, 0, 0]);
        assert_eq!(sq.coeff(&e2), f.integer(2));
    }

    #[test]
    fn mul_by_zero() {
        let f = f();
        let p = MultiPoly::parse(&f, "x1^2*x2 + 3*x3").unwrap();
        let z = MultiPoly::zero(&f);
        assert!((&p * &z).is_zero());
    }

    #[test]
    fn parse_render_roundtrip() {
        let f = f();
        for lit in [
            "x1^2*x2 + x1*x2^2 + 2*x1*x2*x3",
            "(z6 - 1)*x1 + x5^3",
            "x1 + x2 + x3 + x4 + x5",
            "0",
            "7/3*x4^2 - x5*x1",
        ] {
            let p = MultiPoly::parse(&f, lit).unwrap();
            let q = MultiPoly::parse(&f, &p.render()).unwrap();
            assert_eq!(p, q, "roundtrip failed for {lit} (rendered {})", p.render());
        }
    }

    #[test]
    fn substitute_identity_and_monomials() {
        let f = f();
        let q1 = MultiPoly::parse(&f, "x1^2+x2^2+x3^2+x4^2+x5^2").unwrap();
        let id: Vec<MultiPoly> = (0..5).map(|i| MultiPoly::variable(&f, i)).collect();
        assert_eq!(q1.substitute(&id), q1);

        // xᵢ ↦ ∏_{j≠i} xⱼ turns Σxᵢ² into Σᵢ ∏_{j≠i} xⱼ².
        let images: Vec<MultiPoly> = (0..5)
            .map(|i| {
                let mut e = [1u8; 5];
                e[i] = 0;
                MultiPoly::monomial(&f, Expo(e), f.one())
            })
            .collect();
        let got = q1.substitute(&images);
        let mut want = MultiPoly::zero(&f);
        for i in 0..5 {
            let mut e = [2u8; 5];
            e[i] = 0;
            want = &want + &MultiPoly::monomial(&f, Expo(e), f.one());
        }
        assert_eq!(got, want);
        assert_eq!(got.homogeneous_degree(), Some(8));
    }

    #[test]
    fn euler_identity() {
        let f = f();
        let p = MultiPoly::parse(&f, "x1^2*x2 + x1*x2^2 + 2*x1*x2*x3 + x3^3").unwrap();
        let mut acc = MultiPoly::zero(&f);
        for i in 0..5 {
            acc = &acc + &(&MultiPoly::variable(&f, i) * &p.partial(i));
        }
        assert_eq!(acc, p.scale(&f.integer(3)));
    }

    #[test]
    fn partial_example() {
        let f = f();
        let q = MultiPoly::parse(&f, "x1^2+x2^2+x3^2+x4^2+x5^2").unwrap();
        assert_eq!(q.partial(0), MultiPoly::parse(&f, "2*x1").unwrap());
    }

    #[test]
    fn reduce_examples() {
        let f = f();
        let q = MultiPoly::parse(&f, "x1^2+x2^2+x3^2+x4^2+x5^2").unwrap();
        let m = MultiPoly::parse(&f, "x1*x3^2*x5").unwrap();
        assert!((&q * &m).reduce_by(&q).is_zero());
        let p = MultiPoly::parse(&f, "x1^2").unwrap();
        let d = MultiPoly::parse(&f, "x2").unwrap();
        assert_eq!(p.reduce_by(&d), p);
    }

    #[test]
    fn eval_examples() {
        let f = f();
        let q = MultiPoly::parse(&f, "x1^2+x2^2+x3^2+x4^2+x5^2").unwrap();
        let two_i = &f.integer(2) * &f.zeta(4).unwrap();
        let pt = [f.one(), f.one(), f.one(), two_i, f.one()];
        assert!(q.eval(&pt).is_zero());
        // Sum of coefficients at the all-ones point.
        let p = MultiPoly::parse(&f, "3*x1*x2 - x3^2 + (z4)*x5^2").unwrap();
        let ones = [f.one(), f.one(), f.one(), f.one(), f.one()];
        assert_eq!(p.eval(&ones), &f.integer(2) + &f.zeta(4).unwrap());
    }

    #[test]
    fn homogeneous_scaling() {
        let f = f();
        let p = MultiPoly::parse(&f, "x1^3 + x2*x3*x4 + x5^3").unwrap();
        let t = f.parse("z5 + 2").unwrap();
        let v = [
            f.integer(1),
            f.integer(-2),
            f.zeta(6).unwrap(),
            f.integer(3),
            f.one(),
        ];
        let tv: Vec<Cyc> = v.iter().map(|c| c * &t).collect();
        assert_eq!(p.eval(&tv), &t.pow(3) * &p.eval(&v));
    }

    #[test]
    fn substitution_functoriality() {
        let f = f();
        let p = MultiPoly::parse(&f, "x1*x2 + x3^2 - x5*x4").unwrap();
        let a = crate::linalg::Matrix::from_rows(
            &f,
            (0..5)
                .map(|i| (0..5).map(|j| f.integer(((i * j + 1) % 3) as i64 - 1)).collect())
                .collect(),
        );
        let b = crate::linalg::Matrix::from_rows(
            &f,
            (0..5)
                .map(|i| {
                    (0..5)
                        .map(|j| if (i + 2 * j) % 4 == 0 { f.one() } else { f.zero() })
                        .collect()
                })
                .collect(),
        );
        let lhs = p.substitute_matrix(&a).substitute_matrix(&b);
        let rhs = p.substitute_matrix(&a.mul(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn zero_remainder_certifies_vanishing_on_slice_points() {
        // reduce_by(p, d) = 0 forces p to vanish at points of V(d), checked
        // at 50 points constructed on the quadric by the line trick.
        let f = f();
        let d = MultiPoly::parse(&f, "x1^2+x2^2+x3^2+x4^2+x5^2").unwrap();
        let m = MultiPoly::parse(&f, "x2*x4^2 - 3*x1*x3*x5 + x5^3").unwrap();
        let p = &d * &m;
        assert!(p.reduce_by(&d).is_zero());
        let grad = d.gradient();
        let two_i = &f.integer(2) * &f.zeta(4).unwrap();
        let p0 = [f.one(), f.one(), f.one(), two_i, f.one()];
        let gp: Vec<Cyc> = grad.iter().map(|g| g.eval(&p0)).collect();
        let mut rng = crate::rng::XorShift::new(0x51ce);
        let mut found = 0;
        while found < 50 {
            let v: Vec<Cyc> = (0..5).map(|_| f.integer(rng.small_int(9))).collect();
            let fv = d.eval(&v);
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
            assert!(d.eval(&pt).is_zero());
            assert!(p.eval(&pt).is_zero());
            found += 1;
        }
    }

    #[test]
    fn binary_root_extraction() {
        let f = f();
        // s²t(3s + 2t)(t − ζ4 s)
        let s = MultiPoly::variable(&f, 0);
        let t = MultiPoly::variable(&f, 1);
        let p1 = &s.scale(&f.integer(3)) + &t.scale(&f.integer(2));
        let p2 = &t - &s.scale(&f.zeta(4).unwrap());
        let b = &(&(&(&s * &s) * &t) * &p1) * &p2;
        let roots = binary_roots(&b);
        assert!(roots.unresolved.is_empty());
        // Expect [0:1] (from t), [1:0] (mult 2), [1:-3/2], [1:ζ4].
        assert_eq!(roots.roots.iter().map(|r| r.multiplicity).sum::<usize>(), 5);
        let has = |sv: &Cyc, tv: &Cyc, m: usize| {
            roots.roots.iter().any(|r| {
                // compare projectively
                (&(&r.s * tv) - &(&r.t * sv)).is_zero() && r.multiplicity == m
            })
        };
        assert!(has(&f.zero(), &f.one(), 2));
        assert!(has(&f.one(), &f.zero(), 1));
        assert!(has(&f.integer(2), &f.integer(-3), 1));
        assert!(has(&f.one(), &f.zeta(4).unwrap(), 1));
    }

    #[test]
    fn cubic_roots_via_reconstruction() {
        let f = f();
        // (t − ζ6)(t − (ζ6−1))(t − 2) over ℚ(ζ6): all roots in conductor 6.
        let z6 = f.zeta(6).unwrap();
        let r1 = z6.clone();
        let r2 = &z6 - &f.one();
        let r3 = f.integer(2);
        let poly = UniPoly::new(
            &f,
            vec![
                -&(&(&r1 * &r2) * &r3),
                &(&(&r1 * &r2) + &(&r1 * &r3)) + &(&r2 * &r3),
                -&(&(&r1 + &r2) + &r3),
                f.one(),
            ],
        );
        let mut unres = Vec::new();
        let roots = poly.roots_in_field(&mut unres);
        assert!(unres.is_empty());
        assert_eq!(roots.len(), 3);
        for (r, m) in &roots {
            assert_eq!(*m, 1);
            assert!(poly.eval(r).is_zero());
        }
        assert!(roots.iter().any(|(r, _)| r == &r1));
        assert!(roots.iter().any(|(r, _)| r == &r2));
        assert!(roots.iter().any(|(r, _)| r == &r3));
    }

    #[test]
    fn unresolved_cubic_reported() {
        let f = f();
        // t³ − 2 has no roots in any cyclotomic field.
        let poly = UniPoly::new(&f, vec![f.integer(-2), f.zero(), f.zero(), f.one()]);
        let mut unres = Vec::new();
        let roots = poly.roots_in_field(&mut unres);
        assert!(roots.is_empty());
        assert_eq!(unres.len(), 1);
    }
}
