//! Deterministic construction by the method of conditional probabilities.
//!
//! Model: `2m` independent uniform `(r+1)`-subsets `X_1..X_{2m}` of `[q]`,
//! each revealed element by element as a uniformly random sequence of
//! distinct values. For an index set `S` let `Y_S = 1` when
//! `|union_{i in S} X_i| <= r|S|`. The estimator
//!
//! ```text
//! Phi = sum_{S, 2 <= |S| <= t} Pr[Y_S = 1 | elements fixed so far]
//! ```
//!
//! is the expected number of violations. The next element of the current
//! set is uniform over the values not yet in that set, so `Phi` is the
//! average of its values over those choices and taking the minimizer never
//! increases it. Ties go to the smallest value.
//!
//! `Pr[Y_S = 1 | ...]` is computed exactly (up to `f64` rounding) by a
//! dynamic program over membership patterns: elements of `[q]` are grouped by
//! which fixed prefixes of `S` contain them, and each random remainder draws
//! a multivariate hypergeometric sample from the groups it may use.

use std::collections::{BTreeMap, HashMap};

use super::generate::remove_violations;
use super::{binomial, for_each_combination, target_m_formula, SetFamily};
use crate::error::{Error, Result};

/// Largest field order accepted by the derandomized construction.
pub const MAX_Q: u32 = 4096;
/// Cap on (element steps) x (index sets scored per step).
pub const MAX_WORK: u128 = 200_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct DerandReport {
    /// Target size `m`; `2m` sets are fixed before removal.
    pub target: usize,
    /// Estimator before any element is fixed (expected violations).
    pub initial_estimate: f64,
    /// Estimator once every element is fixed, i.e. the violation count.
    pub final_estimate: f64,
    /// Minimal violations found among the `2m` fixed sets.
    pub violations: usize,
    pub survivors: usize,
}

/// Default target size of the derandomized construction: the
/// probabilistic target formula, also evaluated at `t = 2`.
pub fn derandomized_target(q: u32, r: usize, t: usize) -> Result<usize> {
    if !(2..=3).contains(&t) || r == 0 || q == 0 {
        return Err(Error::params(format!(
            "no derandomized target for q = {q}, r = {r}, t = {t}"
        )));
    }
    Ok(target_m_formula(q as u64, r as u64, t as u64) as usize)
}

/// Deterministic family of the default target size for `t` in {2, 3}.
pub fn derandomized_family(q: u32, r: usize, t: usize) -> Result<SetFamily> {
    let m = derandomized_target(q, r, t)?;
    derandomized_family_with_target(q, r, t, m).map(|(f, _)| f)
}

pub fn derandomized_family_with_target(q: u32, r: usize, t: usize, m: usize) -> Result<(SetFamily, DerandReport)> {
    if !(2..=3).contains(&t) {
        return Err(Error::params(format!(
            "derandomized construction supports t in {{2, 3}}, got {t}"
        )));
    }
    if r == 0 || r + 1 > q as usize {
        return Err(Error::params(format!(
            "need 1 <= r and r + 1 <= q, got q = {q}, r = {r}"
        )));
    }
    if q > MAX_Q {
        return Err(Error::params(format!("q = {q} exceeds the supported limit {MAX_Q}")));
    }
    if m == 0 {
        return Err(Error::params("target m must be positive"));
    }
    let n_sets = 2 * m;
    let per_step: u128 = (1..t as u64).map(|k| binomial(n_sets as u64 - 1, k)).sum();
    let work = per_step * (n_sets * (r + 1)) as u128;
    if work > MAX_WORK {
        return Err(Error::BudgetExceeded {
            required: work,
            budget: MAX_WORK,
        });
    }

    let mut est = Estimator::new(q, r, t);
    let initial_estimate = est.total(&vec![Vec::new(); n_sets]);
    let mut sets: Vec<Vec<u32>> = Vec::with_capacity(n_sets);
    for i in 0..n_sets {
        let mut current: Vec<u32> = Vec::with_capacity(r + 1);
        for _ in 0..=r {
            let scores = est.candidate_scores(&sets, &current, n_sets - 1 - i);
            let best = scores
                .iter()
                .enumerate()
                .filter(|(_, s)| s.is_finite())
                .fold(None::<(usize, f64)>, |acc, (v, &s)| match acc {
                    Some((_, b)) if b <= s => acc,
                    _ => Some((v, s)),
                })
                .map(|(v, _)| v as u32)
                .expect("some value is always free");
            current.push(best);
        }
        current.sort_unstable();
        sets.push(current);
    }
    let final_estimate = est.total(&sets);

    let all = SetFamily::new(q, r, t, sets)?;
    let violations = all.verify_union_condition().len();
    let survivors = remove_violations(&all);
    let report = DerandReport {
        target: m,
        initial_estimate,
        final_estimate,
        violations,
        survivors: survivors.len(),
    };
    if survivors.len() < m {
        return Err(Error::GenerationFailed {
            attempts: 1,
            reason: format!(
                "{} of {} sets survived violation removal, target {m} (estimate {initial_estimate:.3})",
                survivors.len(),
                n_sets
            ),
        });
    }
    let family = all.subfamily(&survivors[..m]);
    debug_assert!(family.passes());
    Ok((family, report))
}

type Key = (Vec<u8>, Vec<u32>);

pub(crate) struct Estimator {
    q: u32,
    r: usize,
    t: usize,
    memo: HashMap<Key, f64>,
}

impl Estimator {
    pub(crate) fn new(q: u32, r: usize, t: usize) -> Self {
        Estimator {
            q,
            r,
            t,
            memo: HashMap::new(),
        }
    }

    /// `Pr[|union X_j| <= r s]` where member `j` has fixed prefix
    /// `prefixes[j]` and the rest of its `r + 1` elements uniform among the
    /// values not in the prefix. Prefix entries `>= q` stand for distinct
    /// placeholder values that no other member holds.
    pub(crate) fn group_prob(&mut self, prefixes: &[&[u32]]) -> f64 {
        let s = prefixes.len();
        let mut owners: Vec<(u32, u32)> = Vec::new();
        for (j, p) in prefixes.iter().enumerate() {
            for &x in p.iter() {
                match owners.iter_mut().find(|(v, _)| *v == x && x < self.q) {
                    Some((_, mask)) => *mask |= 1 << j,
                    None => owners.push((x, 1 << j)),
                }
            }
        }
        let mut counts = vec![0u32; 1 << s];
        counts[0] = self.q - owners.len() as u32;
        for &(_, mask) in &owners {
            counts[mask as usize] += 1;
        }
        let remaining: Vec<u8> = prefixes.iter().map(|p| (self.r + 1 - p.len()) as u8).collect();
        let key = (remaining, counts);
        if let Some(&p) = self.memo.get(&key) {
            return p;
        }
        let p = self.solve(&key.0, &key.1);
        self.memo.insert(key, p);
        p
    }

    fn solve(&self, remaining: &[u8], counts: &[u32]) -> f64 {
        let s = remaining.len();
        let mut states: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        states.insert(counts.to_vec(), 1.0);
        for (j, &need) in remaining.iter().enumerate() {
            let bit = 1usize << j;
            let eligible: Vec<usize> = (0..counts.len()).filter(|c| c & bit == 0).collect();
            let mut next: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
            for (state, p) in &states {
                let pool: u32 = eligible.iter().map(|&c| state[c]).sum();
                let total = binomial(pool as u64, need as u64) as f64;
                let mut take = vec![0u32; eligible.len()];
                compositions(&eligible, state, need as u32, 0, &mut take, &mut |take| {
                    let mut w = 1.0;
                    let mut ns = state.clone();
                    for (k, &c) in eligible.iter().enumerate() {
                        if take[k] > 0 {
                            w *= binomial(state[c] as u64, take[k] as u64) as f64;
                            ns[c] -= take[k];
                            ns[c | bit] += take[k];
                        }
                    }
                    *next.entry(ns).or_insert(0.0) += p * w / total;
                });
            }
            states = next;
        }
        let limit = (self.r * s) as u32;
        states
            .iter()
            .filter(|(st, _)| self.q - st[0] <= limit)
            .map(|(_, p)| p)
            .sum()
    }

    /// Full estimator for the given prefixes (sets indexed by position).
    pub(crate) fn total(&mut self, prefixes: &[Vec<u32>]) -> f64 {
        let n = prefixes.len();
        let mut sum = 0.0;
        for size in 2..=self.t.min(n) {
            for_each_combination(n, size, |c| {
                let ps: Vec<&[u32]> = c.iter().map(|&i| prefixes[i].as_slice()).collect();
                sum += self.group_prob(&ps);
            });
        }
        sum
    }

    /// Estimator contribution of every index set containing the current set,
    /// for each choice `v` of its next element (`+inf` where `v` is already
    /// in the current prefix). `done` are the completed earlier sets and
    /// `fresh` counts later sets with nothing fixed yet. Index sets not
    /// containing the current set do not depend on `v` and are left out.
    pub(crate) fn candidate_scores(&mut self, done: &[Vec<u32>], current: &[u32], fresh: usize) -> Vec<f64> {
        let q = self.q as usize;
        let placeholder = self.q;
        let mut base = 0.0;
        let mut delta = vec![0.0f64; q];
        let mut with_v: Vec<u32> = current.to_vec();
        with_v.push(placeholder);
        let empty: &[u32] = &[];
        for a_size in 0..self.t {
            for_each_combination(done.len(), a_size, |a| {
                for c in 0..self.t - a_size {
                    if a_size + c == 0 {
                        continue;
                    }
                    let mult = binomial(fresh as u64, c as u64) as f64;
                    if mult == 0.0 {
                        continue;
                    }
                    let mut members: Vec<&[u32]> = Vec::with_capacity(1 + a_size + c);
                    *with_v.last_mut().unwrap() = placeholder;
                    members.push(&with_v);
                    members.extend(a.iter().map(|&k| done[k].as_slice()));
                    members.extend(std::iter::repeat_n(empty, c));
                    let f0 = self.group_prob(&members);
                    base += mult * f0;
                    let mut touched: Vec<u32> = a.iter().flat_map(|&k| done[k].iter().copied()).collect();
                    touched.sort_unstable();
                    touched.dedup();
                    for v in touched {
                        if current.contains(&v) {
                            continue;
                        }
                        let mut own: Vec<u32> = current.to_vec();
                        own.push(v);
                        let mut members: Vec<&[u32]> = Vec::with_capacity(1 + a_size + c);
                        members.push(&own);
                        members.extend(a.iter().map(|&k| done[k].as_slice()));
                        members.extend(std::iter::repeat_n(empty, c));
                        delta[v as usize] += mult * (self.group_prob(&members) - f0);
                    }
                }
            });
        }
        let mut scores: Vec<f64> = delta.into_iter().map(|d| base + d).collect();
        for &v in current {
            scores[v as usize] = f64::INFINITY;
        }
        scores
    }
}

fn compositions(
    eligible: &[usize],
    state: &[u32],
    need: u32,
    k: usize,
    take: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if k == eligible.len() {
        if need == 0 {
            f(take);
        }
        return;
    }
    let cap = state[eligible[k]].min(need);
    for x in 0..=cap {
        take[k] = x;
        compositions(eligible, state, need - x, k + 1, take, f);
    }
    take[k] = 0;
}
