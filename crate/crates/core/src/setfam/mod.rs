//! Set families `A_1, ..., A_m` of `(r+1)`-subsets of `[q]` and the union
//! condition `|union_{i in S} A_i| >= r|S| + 1` for every index set `S` with
//! `|S| <= t`.
//!
//! A family satisfying the condition yields, through [`crate::lrc`], a
//! parity-check matrix whose every `d - 1` columns are independent when
//! `t = floor((d-1)/2)`.

mod bounds;
mod derand;
mod generate;
mod graph;
mod hypergraph;

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

pub use bounds::{family_size_upper_bound, target_family_size};
pub use derand::{derandomized_family, derandomized_family_with_target, derandomized_target, DerandReport};
pub use generate::{greedy_family, random_family, random_family_with_target, remove_violations};
pub use graph::{has_cycle, intersection_graph, SimpleGraph};
pub use hypergraph::{equivalence_check, find_berge_cycle, to_hypergraph, BergeCycle, Hypergraph};

pub(crate) use bounds::target_m_formula;
pub use generate::{rng_for, sample_subset};

/// An ordered family of `m` sets over `[0, q)`, each of size `r + 1`, checked
/// against the union condition up to depth `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    q: u32,
    r: usize,
    t: usize,
    sets: Vec<Vec<u32>>,
}

/// An index set `S` (0-based, ascending) on which the union condition fails.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub indices: Vec<usize>,
    pub union_size: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.indices.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "S={{{}}} union_size={}", s.join(","), self.union_size)
    }
}

impl SetFamily {
    /// Builds a family, sorting each set. Fails on wrong set sizes, repeated
    /// elements within a set, elements outside `[0, q)`, `r = 0` or `t < 2`.
    pub fn new(q: u32, r: usize, t: usize, sets: Vec<Vec<u32>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::family("locality r must be at least 1"));
        }
        if t < 2 {
            return Err(Error::family(format!("depth t = {t} must be at least 2")));
        }
        if r + 1 > q as usize {
            return Err(Error::family(format!("sets of size {} do not fit in [{q}]", r + 1)));
        }
        let mut sorted = Vec::with_capacity(sets.len());
        for (i, mut set) in sets.into_iter().enumerate() {
            if set.len() != r + 1 {
                return Err(Error::family(format!(
                    "set {} has {} elements, expected {}",
                    i + 1,
                    set.len(),
                    r + 1
                )));
            }
            set.sort_unstable();
            if let Some(&x) = set.iter().find(|&&x| x >= q) {
                return Err(Error::family(format!("set {} contains {x} >= q = {q}", i + 1)));
            }
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::family(format!("set {} repeats an element", i + 1)));
            }
            sorted.push(set);
        }
        Ok(SetFamily { q, r, t, sets: sorted })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<u32>] {
        &self.sets
    }

    /// Same sets, different condition depth.
    pub fn with_t(&self, t: usize) -> Result<Self> {
        SetFamily::new(self.q, self.r, t, self.sets.clone())
    }

    /// The family restricted to `indices`, in the given order.
    pub fn subfamily(&self, indices: &[usize]) -> Self {
        SetFamily {
            q: self.q,
            r: self.r,
            t: self.t,
            sets: indices.iter().map(|&i| self.sets[i].clone()).collect(),
        }
    }

    pub fn union_size(&self, indices: &[usize]) -> usize {
        let mut buf: Vec<u32> = indices.iter().flat_map(|&i| self.sets[i].iter().copied()).collect();
        buf.sort_unstable();
        buf.dedup();
        buf.len()
    }

    fn fails(&self, indices: &[usize]) -> Option<usize> {
        let u = self.union_size(indices);
        (u <= self.r * indices.len()).then_some(u)
    }

    /// Every minimal index set `S` with `2 <= |S| <= t` violating the union
    /// condition, sizes ascending and lexicographic within a size. A failing
    /// `S` is minimal when no proper subset of size at least 2 fails. An
    /// empty result certifies the condition.
    pub fn verify_union_condition(&self) -> Vec<Violation> {
        let m = self.m();
        let pair_overlap = self.pairwise_intersections();
        let mut failing: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for size in 2..=self.t.min(m) {
            for_each_combination(m, size, |s| {
                // |union| >= sum |A_i| - sum_{i<j} |A_i & A_j|, so a failing S
                // needs total pairwise overlap at least |S|.
                let mut overlap = 0;
                for (a, &i) in s.iter().enumerate() {
                    for &j in &s[a + 1..] {
                        overlap += pair_overlap[i * m + j];
                    }
                }
                if overlap < size {
                    return;
                }
                if let Some(union_size) = self.fails(s) {
                    let minimal = size == 2 || !has_failing_proper_subset(s, &failing);
                    failing.insert(s.to_vec());
                    if minimal {
                        out.push(Violation {
                            indices: s.to_vec(),
                            union_size,
                        });
                    }
                }
            });
        }
        out
    }

    pub fn passes(&self) -> bool {
        self.verify_union_condition().is_empty()
    }

    /// First (lexicographic, sizes ascending) failing `S` that contains
    /// `index`, not necessarily minimal.
    pub fn violation_containing(&self, index: usize) -> Option<Violation> {
        let m = self.m();
        let others: Vec<usize> = (0..m).filter(|&i| i != index).collect();
        let mut found = None;
        for size in 2..=self.t.min(m) {
            for_each_combination(others.len(), size - 1, |c| {
                if found.is_some() {
                    return;
                }
                let mut s: Vec<usize> = c.iter().map(|&k| others[k]).collect();
                s.push(index);
                s.sort_unstable();
                if let Some(union_size) = self.fails(&s) {
                    found = Some(Violation { indices: s, union_size });
                }
            });
            if found.is_some() {
                break;
            }
        }
        found
    }

    /// Row-major `m x m` table of `|A_i & A_j|`.
    pub fn pairwise_intersections(&self) -> Vec<usize> {
        let m = self.m();
        let mut out = vec![0; m * m];
        for i in 0..m {
            for j in i + 1..m {
                let c = sorted_intersection_len(&self.sets[i], &self.sets[j]);
                out[i * m + j] = c;
                out[j * m + i] = c;
            }
        }
        out
    }
}

fn has_failing_proper_subset(s: &[usize], failing: &HashSet<Vec<usize>>) -> bool {
    let mut hit = false;
    for size in 2..s.len() {
        for_each_combination(s.len(), size, |c| {
            if !hit {
                let sub: Vec<usize> = c.iter().map(|&k| s[k]).collect();
                hit = failing.contains(&sub);
            }
        });
        if hit {
            break;
        }
    }
    hit
}

pub(crate) fn sorted_intersection_len(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Calls `f` on every `k`-subset of `[0, n)` in lexicographic order.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        f(&c);
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
