use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Family size guaranteed by the probabilistic construction,
/// `ceil(q^(1 + 1/(t-1)) / (2 t^2 (r+1)^(2 + 2/(t-1))))`, for `t >= 3`.
pub fn target_family_size(q: u64, r: u64, t: u64) -> Result<u64> {
    if t < 3 {
        return Err(Error::params(format!("target size needs t >= 3, got t = {t}")));
    }
    if r == 0 || q == 0 {
        return Err(Error::params("q and r must be positive"));
    }
    Ok(target_m_formula(q, r, t))
}

/// The same formula without the `t >= 3` restriction; `t = 2` evaluates to
/// `ceil(q^2 / (8 (r+1)^4))`.
///
/// With `k = t - 1` the target is the least integer `M` satisfying
/// `(2 t^2 M)^k (r+1)^(2k+2) >= q^(k+1)`, so the ceiling is decided in exact
/// integer arithmetic.
pub(crate) fn target_m_formula(q: u64, r: u64, t: u64) -> u64 {
    let k = (t - 1) as u32;
    let lhs_const = BigUint::from(r + 1).pow(2 * k + 2);
    let rhs = BigUint::from(q).pow(k + 1);
    let holds = |m: u64| BigUint::from(2 * t * t * m).pow(k) * &lhs_const >= rhs;
    let mut hi = 1u64;
    while !holds(hi) {
        hi *= 2;
    }
    let mut lo = 0u64; // holds(lo) is false, or lo = 0
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi.max(1)
}

/// Upper bound on the number of `(r+1)`-sets over `[q]` whose hypergraph has
/// no Berge cycle of length `<= t`:
/// `(q/r)(q/(r+1))^(2/(t-1)) + q/(r+1)` for odd `t`,
/// `(q/(r(r+1))) q^(2/t) + q/(r+1)` for even `t`, floored.
///
/// For `t = 2` and `t = 3` both expressions reduce to `q(q + r) / (r(r+1))`
/// and are computed exactly; other depths use `f64` with a fractional power.
pub fn family_size_upper_bound(q: u64, r: u64, t: u64) -> Result<u64> {
    if t < 2 {
        return Err(Error::params(format!("upper bound needs t >= 2, got t = {t}")));
    }
    if r == 0 {
        return Err(Error::params("r must be positive"));
    }
    if t == 2 || t == 3 {
        let num = BigUint::from(q) * BigUint::from(q + r);
        let den = BigUint::from(r * (r + 1));
        let v: BigUint = num / den;
        return Ok(u64::try_from(v).unwrap_or(u64::MAX));
    }
    let (qf, rf, tf) = (q as f64, r as f64, t as f64);
    let v = if t % 2 == 1 {
        (qf / rf) * (qf / (rf + 1.0)).powf(2.0 / (tf - 1.0)) + qf / (rf + 1.0)
    } else {
        qf / (rf * (rf + 1.0)) * qf.powf(2.0 / tf) + qf / (rf + 1.0)
    };
    Ok(v.floor() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: high-precision evaluation of the real-valued formula using
    /// 128-bit fixed point on the integer k-th root.
    fn formula_oracle(q: u64, r: u64, t: u64) -> u64 {
        // X = (q^(k+1) / (r+1)^(2k+2))^(1/k) / (2 t^2); scale by 2^40 before rooting
        let k = (t - 1) as u32;
        let scale_bits = 40u32;
        let num = BigUint::from(q).pow(k + 1) << (scale_bits as usize * k as usize);
        let den = BigUint::from(r + 1).pow(2 * k + 2);
        let inner = num / den; // floor((q^(k+1)/(r+1)^(2k+2)) * 2^(40k))
        let root = inner.nth_root(k); // ~ X * 2t^2 * 2^40
        let denom = BigUint::from(2 * t * t) << scale_bits as usize;
        let (qt, rem) = (&root / &denom, &root % &denom);
        let qt = u64::try_from(qt).unwrap();
        if rem == BigUint::from(0u32) {
            qt
        } else {
            qt + 1
        }
    }

    #[test]
    fn target_m_examples() {
        assert_eq!(formula_oracle(997, 5, 3), 9);
        assert_eq!(formula_oracle(4999, 5, 3), 91);
        assert_eq!(formula_oracle(997, 2, 3), 65);
        assert_eq!(formula_oracle(64, 2, 3), 2);

        assert_eq!(target_family_size(997, 5, 3).unwrap(), 9);
        assert_eq!(target_family_size(4999, 5, 3).unwrap(), 91);
        assert_eq!(target_family_size(997, 2, 3).unwrap(), 65);
        assert_eq!(target_family_size(64, 2, 3).unwrap(), 2);
        assert!(target_family_size(997, 5, 2).is_err());
    }

    #[test]
    fn target_m_matches_oracle_on_grid() {
        for q in [11u64, 64, 128, 500, 997, 2048, 4999, 65536] {
            for r in 1..=6 {
                for t in 3..=6 {
                    assert_eq!(
                        target_family_size(q, r, t).unwrap(),
                        formula_oracle(q, r, t),
                        "q={q} r={r} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn target_m_with_t2_uses_same_formula() {
        // 49^2 / (8 * 4^4) = 2401 / 2048
        assert_eq!(target_m_formula(49, 3, 2), 2);
        // (8M) 2^4 >= 64^2
        assert_eq!(target_m_formula(64, 1, 2), 32);
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(family_size_upper_bound(997, 5, 3).unwrap(), 33299);
        // 999.8 * 833.17 + 833.17
        assert_eq!(family_size_upper_bound(4999, 5, 3).unwrap(), 833833);
        // even case, t = 2: q^2/(r(r+1)) + q/(r+1)
        assert_eq!(family_size_upper_bound(13, 4, 2).unwrap(), 11);
        // t = 4: (q/(r(r+1))) q^(1/2) + q/(r+1) = 32 * 8 + 32
        assert_eq!(family_size_upper_bound(64, 1, 4).unwrap(), 288);
        // t = 5: (q/r)(q/(r+1))^(1/2) + q/(r+1) with q/(r+1) = 25
        assert_eq!(family_size_upper_bound(100, 3, 5).unwrap(), 191);
        assert!(family_size_upper_bound(10, 2, 1).is_err());
    }

    #[test]
    fn exact_path_agrees_with_float_formula() {
        for q in [7u64, 13, 64, 997, 4999] {
            for r in 1..=6 {
                let (qf, rf) = (q as f64, r as f64);
                let odd = (qf / rf) * (qf / (rf + 1.0)) + qf / (rf + 1.0);
                let even = qf / (rf * (rf + 1.0)) * qf + qf / (rf + 1.0);
                let b = family_size_upper_bound(q, r, 3).unwrap() as f64;
                assert!((odd - b) >= -1e-9 && odd - b < 1.0);
                assert_eq!(
                    family_size_upper_bound(q, r, 2).unwrap(),
                    family_size_upper_bound(q, r, 3).unwrap()
                );
                assert!((even - b) >= -1e-9 && even - b < 1.0);
            }
        }
    }
}
