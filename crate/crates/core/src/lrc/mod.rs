//! Vandermonde-structured parity-check matrices and their exact analysis.
//!
//! For a family `A_1..A_m` of `(r+1)`-sets over GF(q) and a design distance
//! `d`, the parity-check matrix has `m + d - 2` rows and `n = m(r+1)` columns.
//! Column `(i, j)` is `(e_i, a, a^2, ..., a^(d-2))` where `a` is the `j`-th
//! smallest element of `A_i` and `e_i` is the `i`-th unit vector of length
//! `m`. The top `m` rows give each block an all-ones parity row, which makes
//! every block a repair group of locality `r`.

mod distance;
mod matrix;
mod params;

use std::sync::Arc;

pub use distance::{
    exact_min_distance, smallest_dependent_set, verify_distance_at_least, DistanceCheck, MinDistance, DEFAULT_BUDGET,
};
pub use matrix::{nullspace, rank, Echelon, Matrix};
pub use params::{
    code_params_from_family, optimality_check, singleton_bound, CodeParams, OptimalityKind, OptimalityVerdict,
};

pub(crate) use matrix::IncrementalBasis;

use crate::error::{Error, Result};
use crate::gf::{FieldContext, FieldElement};
use crate::setfam::SetFamily;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    field: Arc<FieldContext>,
    m: usize,
    r: usize,
    d: usize,
    /// Field element behind each column, block by block.
    elements: Vec<FieldElement>,
    matrix: Matrix,
}

impl ParityCheckMatrix {
    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    /// Block (repair group) containing column `c`.
    pub fn block_of(&self, c: usize) -> usize {
        c / (self.r + 1)
    }

    /// Columns of block `i`.
    pub fn block_columns(&self, i: usize) -> std::ops::Range<usize> {
        i * (self.r + 1)..(i + 1) * (self.r + 1)
    }

    pub fn rank(&self) -> usize {
        rank(&self.field, &self.matrix)
    }

    /// True iff the selected columns are linearly independent.
    pub fn columns_independent(&self, indices: &[usize]) -> bool {
        columns_independent(&self.field, &self.matrix, indices)
    }

    pub fn verify_distance_at_least(&self, d: usize) -> DistanceCheck {
        verify_distance_at_least(&self.field, &self.matrix, d)
    }

    pub fn exact_min_distance(&self, budget: u128) -> Result<MinDistance> {
        exact_min_distance(&self.field, &self.matrix, budget)
    }
}

/// Builds the block parity-check matrix for `family` and design distance
/// `d >= 5`. The family's depth `t` must be at least `floor((d-1)/2)`.
pub fn build_parity_check(field: Arc<FieldContext>, family: &SetFamily, d: usize) -> Result<ParityCheckMatrix> {
    if d < 5 {
        return Err(Error::params(format!("design distance d = {d} must be at least 5")));
    }
    let t = (d - 1) / 2;
    if family.t() < t {
        return Err(Error::params(format!(
            "family depth t = {} is below floor((d-1)/2) = {t}",
            family.t()
        )));
    }
    if family.q() != field.order() {
        return Err(Error::FieldMismatch {
            expected: field.order(),
            actual: family.q(),
        });
    }
    let (m, r) = (family.m(), family.r());
    let n = m * (r + 1);
    let rows = m + d - 2;
    let mut h = Matrix::zeros(rows, n);
    let mut elements = Vec::with_capacity(n);
    for (i, set) in family.sets().iter().enumerate() {
        for (j, &a) in set.iter().enumerate() {
            let col = i * (r + 1) + j;
            let a = field.elem(a as u64)?;
            elements.push(a);
            h.set(i, col, FieldElement::ONE);
            let mut power = a;
            for row in m..rows {
                h.set(row, col, power);
                power = field.mul(power, a);
            }
        }
    }
    Ok(ParityCheckMatrix {
        field,
        m,
        r,
        d,
        elements,
        matrix: h,
    })
}

pub fn columns_independent(field: &FieldContext, matrix: &Matrix, indices: &[usize]) -> bool {
    let mut basis = IncrementalBasis::new();
    for &c in indices {
        match basis.reduce(field, &matrix.column(c)) {
            Some(red) => basis.push(red),
            None => return false,
        }
    }
    true
}
