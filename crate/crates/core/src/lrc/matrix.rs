use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldContext, FieldElement};

/// Dense row-major matrix over some GF(q).
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// From raw integers, each checked against the field.
    pub fn from_values(field: &FieldContext, rows: usize, cols: usize, values: &[u64]) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                actual: values.len(),
            });
        }
        let data = values.iter().map(|&v| field.elem(v)).collect::<Result<_>>()?;
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.set(r, k, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().flat_map(|&r| self.row(r).iter().copied()).collect();
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn values(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.data.iter().copied()
    }

    /// `M v^T` for a vector of length `cols`.
    pub fn mul_vec(&self, field: &FieldContext, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| field.dot(self.row(r), v)).collect())
    }

    /// `u M` for a vector of length `rows`.
    pub fn vec_mul(&self, field: &FieldContext, u: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if u.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                actual: u.len(),
            });
        }
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (r, &coef) in u.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = field.add(*o, field.mul(coef, x));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, field: &FieldContext, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let row = other.vec_mul(field, self.row(r))?;
            out.data[r * other.cols..(r + 1) * other.cols].copy_from_slice(&row);
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Gauss-Jordan elimination. Pivots are taken column by column, each on
    /// the first row at or below the current one with a nonzero entry.
    pub fn rref(&self, field: &FieldContext) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = field.inv(m.get(row, col)).expect("pivot is nonzero");
            m.scale_row(field, row, inv);
            for r in 0..m.rows {
                if r != row {
                    let f = m.get(r, col);
                    if !f.is_zero() {
                        m.add_row_multiple(field, r, row, field.neg(f));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, field: &FieldContext, r: usize, s: FieldElement) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = field.mul(*x, s);
        }
    }

    /// row[dst] += s * row[src]
    fn add_row_multiple(&mut self, field: &FieldContext, dst: usize, src: usize, s: FieldElement) {
        for c in 0..self.cols {
            let v = field.add(self.get(dst, c), field.mul(s, self.get(src, c)));
            self.set(dst, c, v);
        }
    }
}

pub fn rank(field: &FieldContext, m: &Matrix) -> usize {
    m.rref(field).pivots.len()
}

/// Basis of `{x : M x^T = 0}` as the rows of a `(cols - rank) x cols`
/// matrix, together with the free columns. Row `i` has a 1 in free column
/// `free[i]` and 0 in the other free columns.
pub fn nullspace(field: &FieldContext, m: &Matrix) -> (Matrix, Vec<usize>) {
    let ech = m.rref(field);
    let free: Vec<usize> = (0..m.cols).filter(|c| !ech.pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(free.len(), m.cols);
    for (i, &f) in free.iter().enumerate() {
        basis.set(i, f, FieldElement::ONE);
        for (r, &p) in ech.pivots.iter().enumerate() {
            basis.set(i, p, field.neg(ech.matrix.get(r, f)));
        }
    }
    (basis, free)
}

/// Incrementally maintained echelon basis of a set of column vectors.
/// Each stored vector is zero at the pivots of the vectors before it and 1
/// at its own pivot.
#[derive(Clone, Debug)]
pub(crate) struct IncrementalBasis {
    vectors: Vec<(usize, Vec<FieldElement>)>,
}

impl IncrementalBasis {
    pub(crate) fn new() -> Self {
        IncrementalBasis { vectors: Vec::new() }
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.vectors.len()
    }

    /// Reduces `v` against the basis; `None` if it lies in the span.
    pub(crate) fn reduce(&self, field: &FieldContext, v: &[FieldElement]) -> Option<(usize, Vec<FieldElement>)> {
        let mut v = v.to_vec();
        for (p, b) in &self.vectors {
            let f = v[*p];
            if !f.is_zero() {
                let nf = field.neg(f);
                for (x, &y) in v.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x = field.add(*x, field.mul(nf, y));
                    }
                }
            }
        }
        let p = v.iter().position(|x| !x.is_zero())?;
        let inv = field.inv(v[p]).expect("nonzero");
        for x in &mut v {
            *x = field.mul(*x, inv);
        }
        Some((p, v))
    }

    pub(crate) fn push(&mut self, reduced: (usize, Vec<FieldElement>)) {
        self.vectors.push(reduced);
    }

    pub(crate) fn pop(&mut self) {
        self.vectors.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(field: &FieldContext, rows: &[&[u64]]) -> Matrix {
        let flat: Vec<u64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Matrix::from_values(field, rows.len(), rows[0].len(), &flat).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = FieldContext::new(13).unwrap();
        let id = m(&f, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(rank(&f, &id), 3);
        // repeated column leaves rank unchanged
        let rep = m(&f, &[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(rank(&f, &rep), 3);
        let low = m(&f, &[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&f, &low), 1);
        assert_eq!(rank(&f, &Matrix::zeros(3, 4)), 0);
    }

    #[test]
    fn vandermonde_on_distinct_nonzero_elements_has_full_rank() {
        for q in [13u64, 16, 25] {
            let f = FieldContext::new(q).unwrap();
            let d = 6;
            for s in 1..=d - 2 {
                let elems: Vec<FieldElement> = (1..=s as u64).map(|v| f.elem(v * 2 % q + 1).unwrap()).collect();
                let mut v = Matrix::zeros(d - 2, s);
                for (c, &a) in elems.iter().enumerate() {
                    for r in 0..d - 2 {
                        v.set(r, c, f.pow(a, r as u64 + 1));
                    }
                }
                assert_eq!(rank(&f, &v), s, "q={q} s={s}");
            }
        }
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = FieldContext::new(16).unwrap();
        let h = m(&f, &[&[1, 1, 1, 1, 0], &[0, 2, 3, 4, 5], &[0, 4, 5, 3, 15]]);
        let (basis, free) = nullspace(&f, &h);
        assert_eq!(basis.rows(), 5 - rank(&f, &h));
        assert_eq!(free.len(), basis.rows());
        let prod = h.mul(&f, &basis.transpose()).unwrap();
        assert!(prod.is_zero());
        assert_eq!(rank(&f, &basis), basis.rows());
    }

    #[test]
    fn incremental_basis_tracks_rank() {
        let f = FieldContext::new(7).unwrap();
        let h = m(&f, &[&[1, 0, 1, 2], &[0, 1, 1, 3], &[0, 0, 0, 0]]);
        let mut b = IncrementalBasis::new();
        let mut independent = 0;
        for c in 0..4 {
            if let Some(red) = b.reduce(&f, &h.column(c)) {
                b.push(red);
                independent += 1;
            }
        }
        assert_eq!(independent, rank(&f, &h));
        assert_eq!(b.len(), 2);
    }
}
