//! Exact dense linear algebra over the cyclotomic field: Gaussian
//! elimination for rank, kernel, inverse, and subspace operations.
//!
//! Pivots are chosen to minimize the number of nonzero power-basis
//! coefficients, which keeps intermediate entries in the smallest subfield
//! the data allows.

use crate::cyclo::{Cyc, CycError, Field};
use num_traits::Zero;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Cyc>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].render()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Cyc;
    fn index(&self, (r, c): (usize, usize)) -> &Cyc {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Cyc {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Cyc>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        let _ = field;
        Matrix { rows: r, cols: c, data }
    }

    pub fn field(&self) -> &Field {
        self.data[0].field()
    }

    pub fn row(&self, r: usize) -> &[Cyc] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let f = self.field();
        let mut out = Matrix::zero(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(r, c)] = &out[(r, c)] + &(a * b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Cyc]) -> Vec<Cyc> {
        assert_eq!(self.cols, v.len());
        let f = self.field();
        let mut out = vec![f.zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = &self[(r, c)];
                if !a.is_zero() && !v[c].is_zero() {
                    out[r] = &out[r] + &(a * &v[c]);
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &Cyc) -> Matrix {
        let mut out = self.clone();
        for e in out.data.iter_mut() {
            *e = &*e * s;
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = &*a - b;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// True if `rhs` equals a nonzero scalar multiple of `self`; returns the scalar.
    pub fn proportional(&self, rhs: &Matrix) -> Option<Cyc> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let i = self.data.iter().position(|e| !e.is_zero())?;
        if rhs.data[i].is_zero() {
            return None;
        }
        let c = rhs.data[i].try_div(&self.data[i]).ok()?;
        for (a, b) in self.data.iter().zip(rhs.data.iter()) {
            if &(a * &c) != b {
                return None;
            }
        }
        Some(c)
    }

    /// Row echelon form in place; returns pivot columns. Destroys `self`.
    fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            // Sparsest nonzero pivot in this column.
            let mut best: Option<(usize, usize)> = None;
            for r in row..self.rows {
                let e = &self[(r, col)];
                if !e.is_zero() {
                    let w = e.coeffs().iter().filter(|c| !c.is_zero()).count();
                    if best.is_none() || w < best.unwrap().1 {
                        best = Some((r, w));
                    }
                    if w == 1 {
                        break;
                    }
                }
            }
            let Some((prow, _)) = best else { continue };
            self.swap_rows(row, prow);
            let pinv = self[(row, col)].inv().expect("pivot nonzero");
            for c in col..self.cols {
                self[(row, c)] = &self[(row, c)] * &pinv;
            }
            for r in 0..self.rows {
                if r != row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for c in col..self.cols {
                        let v = &self[(r, c)] - &(&factor * &self[(row, c)]);
                        self[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Basis of the right kernel {v : M v = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<Cyc>> {
        let f = self.field();
        let mut m = self.clone();
        let pivots = m.echelonize();
        let pivot_row: std::collections::BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, c)| (*c, r)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_row.contains_key(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (&pc, &pr) in pivot_row.iter() {
                v[pc] = -&m[(pr, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form (canonical for a given row space).
    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        let pivots = m.echelonize();
        let mut rows: Vec<Vec<Cyc>> = Vec::new();
        for r in 0..pivots.len() {
            rows.push(m.row(r).to_vec());
        }
        Matrix::from_rows(self.field(), rows)
    }

    pub fn inverse(&self) -> Result<Matrix, CycError> {
        assert_eq!(self.rows, self.cols);
        let f = self.field();
        let n = self.rows;
        let mut aug = Matrix::zero(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = f.one();
        }
        let pivots = aug.echelonize();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return Err(CycError::DivisionByZero);
        }
        let mut out = Matrix::zero(f, n, n);
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] = aug[(r, n + c)].clone();
            }
        }
        Ok(out)
    }

    pub fn det(&self) -> Cyc {
        assert_eq!(self.rows, self.cols);
        let f = self.field();
        let mut m = self.clone();
        let mut det = f.one();
        let n = self.rows;
        for col in 0..n {
            let Some(prow) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return f.zero();
            };
            if prow != col {
                m.swap_rows(col, prow);
                det = -&det;
            }
            let p = m[(col, col)].clone();
            det = &det * &p;
            let pinv = p.inv().expect("pivot nonzero");
            for r in (col + 1)..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &pinv;
                for c in col..n {
                    let v = &m[(r, c)] - &(&factor * &m[(col, c)]);
                    m[(r, c)] = v;
                }
            }
        }
        det
    }
}

/// A linear subspace of the 5-coordinate space, stored as a canonical
/// (reduced row echelon) basis matrix; rows span the subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub basis: Matrix,
}

impl Subspace {
    pub fn from_spanning(rows: Vec<Vec<Cyc>>, field: &Field) -> Option<Subspace> {
        if rows.is_empty() {
            return None;
        }
        let m = Matrix::from_rows(field, rows).rref();
        if m.rows == 0 {
            None
        } else {
            Some(Subspace { basis: m })
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    /// Intersection of two subspaces (None if zero).
    pub fn intersect(&self, other: &Subspace) -> Option<Subspace> {
        // v = Σ x_i a_i = Σ y_j b_j: kernel of the stacked transposed system.
        let f = self.basis.field();
        let a = &self.basis;
        let b = &other.basis;
        let n = a.cols;
        let mut m = Matrix::zero(f, n, a.rows + b.rows);
        for c in 0..a.rows {
            for r in 0..n {
                m[(r, c)] = a[(c, r)].clone();
            }
        }
        for c in 0..b.rows {
            for r in 0..n {
                m[(r, a.rows + c)] = -&b[(c, r)];
            }
        }
        let ker = m.kernel_basis();
        if ker.is_empty() {
            return None;
        }
        let rows: Vec<Vec<Cyc>> = ker
            .iter()
            .map(|k| {
                let mut v = vec![f.zero(); n];
                for (i, x) in k[..a.rows].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for c in 0..n {
                        v[c] = &v[c] + &(x * &a[(i, c)]);
                    }
                }
                v
            })
            .collect();
        Subspace::from_spanning(rows, f)
    }

    pub fn contains_vector(&self, v: &[Cyc]) -> bool {
        let f = self.basis.field();
        let mut rows: Vec<Vec<Cyc>> = (0..self.basis.rows)
            .map(|r| self.basis.row(r).to_vec())
            .collect();
        rows.push(v.to_vec());
        Matrix::from_rows(f, rows).rank() == self.basis.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Field;

    fn f() -> Field {
        Field::new(120).unwrap()
    }

    fn m_int(f: &Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.integer(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_kernel_inverse() {
        let f = f();
        let m = m_int(&f, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).iter().all(|c| c.is_zero()));

        let inv = m_int(&f, &[&[2, 1], &[1, 1]]).inverse().unwrap();
        assert_eq!(inv, m_int(&f, &[&[1, -1], &[-1, 2]]));
    }

    #[test]
    fn det_values() {
        let f = f();
        assert_eq!(
            m_int(&f, &[&[6, 8, 4], &[8, -2, 7], &[4, 7, 0]]).det(),
            f.integer(186)
        );
        assert_eq!(m_int(&f, &[&[1, 2], &[2, 4]]).det(), f.zero());
    }

    #[test]
    fn subspace_intersection() {
        let f = f();
        let a = Subspace::from_spanning(
            vec![
                vec![f.one(), f.zero(), f.zero()],
                vec![f.zero(), f.one(), f.zero()],
            ],
            &f,
        )
        .unwrap();
        let b = Subspace::from_spanning(
            vec![
                vec![f.zero(), f.one(), f.zero()],
                vec![f.zero(), f.zero(), f.one()],
            ],
            &f,
        )
        .unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains_vector(&[f.zero(), f.integer(5), f.zero()]));
        assert!(!i.contains_vector(&[f.one(), f.zero(), f.zero()]));
    }
}
