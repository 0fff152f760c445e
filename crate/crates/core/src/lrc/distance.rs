//! Exhaustive search for the smallest linearly dependent column set.
//!
//! Columns are visited depth first in lexicographic order while an echelon
//! basis of the chosen prefix is kept up to date, so every independent
//! prefix is reduced once and dependent sets are never extended. The first
//! column index splits the search across rayon workers; the reported witness
//! is the lexicographically least among dependent sets of minimum size, so
//! the answer does not depend on scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::matrix::{rank, IncrementalBasis, Matrix};
use crate::error::{Error, Result};
use crate::gf::{FieldContext, FieldElement};
use crate::setfam::binomial;

/// Subset-count budget for [`exact_min_distance`].
pub const DEFAULT_BUDGET: u128 = 2_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceCheck {
    /// Every set of `d - 1` columns is independent.
    Pass,
    /// Smallest dependent column set (sorted, 0-based), size `<= d - 1`.
    Dependent(Vec<usize>),
}

impl DistanceCheck {
    pub fn passed(&self) -> bool {
        matches!(self, DistanceCheck::Pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinDistance {
    pub distance: usize,
    /// Columns of a minimum dependent set; a codeword of weight `distance`
    /// is supported exactly here.
    pub witness: Vec<usize>,
}

/// Lexicographically least dependent column set of minimum size, searching
/// sizes up to `max_size`.
pub fn smallest_dependent_set(field: &FieldContext, matrix: &Matrix, max_size: usize) -> Option<Vec<usize>> {
    let n = matrix.cols();
    let max_size = max_size.min(n);
    if max_size == 0 {
        return None;
    }
    let cols: Vec<Vec<FieldElement>> = (0..n).map(|c| matrix.column(c)).collect();
    let best = AtomicUsize::new(max_size + 1);
    (0..n)
        .into_par_iter()
        .filter_map(|first| {
            let mut search = Dfs {
                field,
                cols: &cols,
                max_size,
                best: &best,
                chosen: Vec::with_capacity(max_size),
                basis: IncrementalBasis::new(),
                found: None,
            };
            search.start(first);
            search.found
        })
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
}

struct Dfs<'a> {
    field: &'a FieldContext,
    cols: &'a [Vec<FieldElement>],
    max_size: usize,
    best: &'a AtomicUsize,
    chosen: Vec<usize>,
    basis: IncrementalBasis,
    found: Option<Vec<usize>>,
}

impl Dfs<'_> {
    fn start(&mut self, first: usize) {
        match self.basis.reduce(self.field, &self.cols[first]) {
            None => self.record(vec![first]),
            Some(red) => {
                if self.max_size > 1 {
                    self.basis.push(red);
                    self.chosen.push(first);
                    self.extend(first + 1);
                }
            }
        }
    }

    fn extend(&mut self, from: usize) {
        let size = self.chosen.len() + 1;
        for c in from..self.cols.len() {
            if size > self.best.load(Ordering::Relaxed) {
                return;
            }
            match self.basis.reduce(self.field, &self.cols[c]) {
                None => {
                    let mut set = self.chosen.clone();
                    set.push(c);
                    self.record(set);
                }
                Some(red) => {
                    if size < self.max_size {
                        self.basis.push(red);
                        self.chosen.push(c);
                        self.extend(c + 1);
                        self.chosen.pop();
                        self.basis.pop();
                    }
                }
            }
        }
    }

    fn record(&mut self, set: Vec<usize>) {
        let better = match &self.found {
            None => true,
            // lexicographic DFS order: an equal-size set found later is larger
            Some(f) => set.len() < f.len(),
        };
        if better {
            self.best.fetch_min(set.len(), Ordering::Relaxed);
            self.found = Some(set);
        }
    }
}

/// Checks that every `d - 1` columns are independent, returning the
/// smallest dependent set otherwise.
pub fn verify_distance_at_least(field: &FieldContext, matrix: &Matrix, d: usize) -> DistanceCheck {
    match smallest_dependent_set(field, matrix, d.saturating_sub(1)) {
        None => DistanceCheck::Pass,
        Some(w) => DistanceCheck::Dependent(w),
    }
}

/// Minimum distance of the code with parity-check matrix `matrix`: the size
/// of the smallest dependent column set. Any `rank + 1` columns are
/// dependent, which caps the search.
pub fn exact_min_distance(field: &FieldContext, matrix: &Matrix, budget: u128) -> Result<MinDistance> {
    let n = matrix.cols();
    let rk = rank(field, matrix);
    if rk == n {
        return Err(Error::params("columns are independent: the code is trivial"));
    }
    let cap = (rk + 1).min(n);
    let required: u128 = (1..=cap).map(|w| binomial(n as u64, w as u64)).sum();
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let witness = smallest_dependent_set(field, matrix, cap).expect("rank + 1 columns are always dependent");
    Ok(MinDistance {
        distance: witness.len(),
        witness,
    })
}
