use std::fmt;
use std::sync::Arc;

use super::build_parity_check;
use crate::error::{Error, Result};
use crate::gf::FieldContext;
use crate::setfam::SetFamily;

/// Parameters of an `[n, k, d]` code with locality `r` over GF(q), split into
/// `m = n / (r+1)` repair groups; `t = floor((d-1)/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub m: usize,
    pub t: usize,
}

impl CodeParams {
    /// Requires `1 <= k <= n`, `r >= 1` and `(r+1) | n`.
    pub fn new(q: u32, n: usize, k: usize, d: usize, r: usize) -> Result<Self> {
        if r == 0 || !n.is_multiple_of(r + 1) {
            return Err(Error::params(format!("r + 1 = {} must divide n = {n}", r + 1)));
        }
        if k == 0 || k > n {
            return Err(Error::params(format!("dimension k = {k} must lie in [1, n = {n}]")));
        }
        Ok(CodeParams {
            q,
            n,
            k,
            d,
            r,
            m: n / (r + 1),
            t: d.saturating_sub(1) / 2,
        })
    }

    /// `n - k = n/(r+1) + d - 2 - floor((d-2)/(r+1))`, the dimension form of
    /// meeting the Singleton-type bound.
    pub fn meets_dimension_equation(&self) -> bool {
        let d2 = self.d as i64 - 2;
        let rhs = self.m as i64 + d2 - d2.div_euclid(self.r as i64 + 1);
        self.n as i64 - self.k as i64 == rhs
    }

    /// `d - 2 = r (mod r+1)`: the Singleton-type bound is unattainable and
    /// optimality means `d = n - k - ceil(k/r) + 1`.
    pub fn is_remark_case(&self) -> bool {
        (self.d as i64 - 2).rem_euclid(self.r as i64 + 1) == self.r as i64
    }
}

/// `n - k - ceil(k/r) + 2`.
pub fn singleton_bound(n: usize, k: usize, r: usize) -> i64 {
    n as i64 - k as i64 - k.div_ceil(r) as i64 + 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptimalityKind {
    OptimalSingleton,
    OptimalRemarkCase,
    NotOptimal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OptimalityVerdict {
    pub kind: OptimalityKind,
    /// The distance bound that applies to these parameters.
    pub bound_value: i64,
}

impl OptimalityVerdict {
    pub fn is_optimal(&self) -> bool {
        self.kind != OptimalityKind::NotOptimal
    }
}

impl fmt::Display for OptimalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OptimalityKind::OptimalSingleton => write!(f, "OPTIMAL (Singleton)"),
            OptimalityKind::OptimalRemarkCase => write!(f, "OPTIMAL (Remark case)"),
            OptimalityKind::NotOptimal => write!(f, "NOT OPTIMAL (bound {})", self.bound_value),
        }
    }
}

/// Classifies a code with parameters `params` and true minimum distance
/// `actual_d`.
pub fn optimality_check(params: &CodeParams, actual_d: usize) -> Result<OptimalityVerdict> {
    let CodeParams { n, k, r, .. } = *params;
    if r == 0 || n % (r + 1) != 0 {
        return Err(Error::params(format!("r + 1 = {} must divide n = {n}", r + 1)));
    }
    let singleton = singleton_bound(n, k, r);
    let verdict = if params.is_remark_case() {
        let bound = singleton - 1;
        OptimalityVerdict {
            kind: if actual_d as i64 == bound {
                OptimalityKind::OptimalRemarkCase
            } else {
                OptimalityKind::NotOptimal
            },
            bound_value: bound,
        }
    } else {
        OptimalityVerdict {
            kind: if params.meets_dimension_equation() && actual_d as i64 == singleton {
                OptimalityKind::OptimalSingleton
            } else {
                OptimalityKind::NotOptimal
            },
            bound_value: singleton,
        }
    };
    Ok(verdict)
}

/// Parameters of the code built from `family` with design distance `d`:
/// `n = m(r+1)` and `k = n - m - (d-2)`. Requires `r >= d - 2`, a family
/// passing the union condition at `t = floor((d-1)/2)`, and a parity-check
/// matrix of full row rank `m + d - 2` so that the dimension is exactly `k`.
pub fn code_params_from_family(field: Arc<FieldContext>, family: &SetFamily, d: usize) -> Result<CodeParams> {
    if d < 5 {
        return Err(Error::params(format!("design distance d = {d} must be at least 5")));
    }
    let r = family.r();
    if r + 2 < d {
        return Err(Error::params(format!(
            "locality r = {r} must be at least d - 2 = {}",
            d - 2
        )));
    }
    let t = (d - 1) / 2;
    if let Some(v) = family.with_t(t)?.verify_union_condition().first() {
        return Err(Error::family(format!("union condition fails at depth {t}: {v}")));
    }
    let m = family.m();
    let n = m * (r + 1);
    let redundancy = m + d - 2;
    if n <= redundancy {
        return Err(Error::params(format!(
            "n = {n} leaves no message symbols after {redundancy} checks"
        )));
    }
    let h = build_parity_check(field.clone(), &family.with_t(family.t().max(t))?, d)?;
    let rk = h.rank();
    if rk != redundancy {
        return Err(Error::RankDeficient {
            expected: redundancy,
            actual: rk,
        });
    }
    CodeParams::new(field.order(), n, n - redundancy, d, r)
}
