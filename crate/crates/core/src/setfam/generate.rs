//! Randomized generators.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`; retry attempt
//! `a` uses stream `a` of the same key, so outputs depend only on the seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{binomial, target_m_formula, SetFamily};
use crate::error::{Error, Result};

/// The crate's only random source: ChaCha8 seeded with `seed` via
/// `seed_from_u64`, on stream `stream`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform `size`-subset of `[0, q)` by Floyd's algorithm, sorted.
pub fn sample_subset(rng: &mut impl Rng, q: u32, size: usize) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::with_capacity(size);
    for j in (q - size as u32)..q {
        let v = rng.gen_range(0..=j);
        if out.contains(&v) {
            out.push(j);
        } else {
            out.push(v);
        }
    }
    out.sort_unstable();
    out
}

/// Indices that survive one removal per violation: violations are visited in
/// canonical order and, when none of their sets is gone yet, the lowest
/// index among them is removed.
///
/// Every failing index set contains a minimal failing one, so clearing the
/// minimal violations clears them all.
pub fn remove_violations(family: &SetFamily) -> Vec<usize> {
    let mut removed = vec![false; family.m()];
    for v in family.verify_union_condition() {
        if v.indices.iter().all(|&i| !removed[i]) {
            removed[v.indices[0]] = true;
        }
    }
    (0..family.m()).filter(|&i| !removed[i]).collect()
}

fn check_params(q: u32, r: usize, t: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::params(format!("t = {t} must be at least 2")));
    }
    if r == 0 || r + 1 > q as usize {
        return Err(Error::params(format!(
            "need 1 <= r and r + 1 <= q, got q = {q}, r = {r}"
        )));
    }
    Ok(())
}

/// Probabilistic construction with the default target size.
pub fn random_family(q: u32, r: usize, t: usize, seed: u64, max_attempts: u32) -> Result<SetFamily> {
    if t < 3 {
        return Err(Error::params(format!("random construction needs t >= 3, got t = {t}")));
    }
    let m = target_m_formula(q as u64, r as u64, t as u64) as usize;
    random_family_with_target(q, r, t, m, seed, max_attempts)
}

/// Samples `2m` uniform `(r+1)`-subsets, removes one set per violation and
/// returns the first `m` survivors once at least `m` survive. Retries with a
/// fresh stream up to `max_attempts` times.
pub fn random_family_with_target(
    q: u32,
    r: usize,
    t: usize,
    m: usize,
    seed: u64,
    max_attempts: u32,
) -> Result<SetFamily> {
    check_params(q, r, t)?;
    if m == 0 {
        return Err(Error::params("target m must be positive"));
    }
    let mut best = 0;
    for attempt in 0..max_attempts {
        let mut rng = rng_for(seed, attempt as u64);
        let sets: Vec<Vec<u32>> = (0..2 * m).map(|_| sample_subset(&mut rng, q, r + 1)).collect();
        let all = SetFamily::new(q, r, t, sets)?;
        let survivors = remove_violations(&all);
        best = best.max(survivors.len());
        if survivors.len() >= m {
            let family = all.subfamily(&survivors[..m]);
            if family.passes() {
                return Ok(family);
            }
        }
    }
    Err(Error::GenerationFailed {
        attempts: max_attempts,
        reason: format!("at most {best} of the required {m} sets survived violation removal"),
    })
}

/// Draws `candidate_budget` random `(r+1)`-subsets and keeps each one that
/// creates no violation with the sets already kept.
pub fn greedy_family(q: u32, r: usize, t: usize, candidate_budget: u64, seed: u64) -> Result<SetFamily> {
    check_params(q, r, t)?;
    let mut rng = rng_for(seed, 0);
    let mut family = SetFamily::new(q, r, t, Vec::new())?;
    let available = binomial(q as u64, r as u64 + 1);
    for _ in 0..candidate_budget {
        if family.m() as u128 >= available {
            break;
        }
        let cand = sample_subset(&mut rng, q, r + 1);
        family.sets.push(cand);
        let idx = family.m() - 1;
        if family.violation_containing(idx).is_some() {
            family.sets.pop();
        }
    }
    Ok(family)
}
