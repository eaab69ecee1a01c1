use std::collections::HashSet;
use std::f64::consts::PI;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rmq1d::TreeShape;

/// Enumeration guard for [`count_distinct_cartesian`].
pub const MAX_ENUMERATED_ARRAYS: u64 = 1 << 24;

/// Growth constant `4 cos^2(pi / (sigma + 3))` of trees with left height
/// at most `sigma`.
pub fn r_const(sigma: u32) -> f64 {
    let c = (PI / (sigma as f64 + 3.0)).cos();
    4.0 * c * c
}

/// Binary trees on `n` nodes with left height at most `k`, by
/// `T_k(n) = sum_i T_{k-1}(i) * T_k(n-1-i)` and `T_k(0) = 1`.
pub fn count_trees(n: usize, k: usize) -> BigUint {
    count_trees_table(n, k).pop().unwrap().pop().unwrap()
}

/// Full table `t[h][s]` for `h <= k`, `s <= n`.
pub fn count_trees_table(n: usize, k: usize) -> Vec<Vec<BigUint>> {
    let mut t: Vec<Vec<BigUint>> = Vec::with_capacity(k + 1);
    for h in 0..=k {
        let mut row: Vec<BigUint> = Vec::with_capacity(n + 1);
        row.push(BigUint::one());
        for s in 1..=n {
            let mut acc = BigUint::default();
            for i in 0..s {
                // left subtree of size i has left height <= h-1
                let left = if h == 0 {
                    if i == 0 {
                        BigUint::one()
                    } else {
                        continue;
                    }
                } else {
                    t[h - 1][i].clone()
                };
                acc += left * &row[s - 1 - i];
            }
            row.push(acc);
        }
        t.push(row);
    }
    t
}

/// Catalan number `C(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..n {
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

/// Number of distinct Cartesian tree shapes over all `sigma^n` arrays.
pub fn count_distinct_cartesian(n: usize, sigma: u64) -> Result<u64> {
    if n == 0 || sigma == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and sigma >= 1".into()));
    }
    let total = (sigma as u128).checked_pow(n as u32);
    let total = match total {
        Some(t) if t <= MAX_ENUMERATED_ARRAYS as u128 => t as u64,
        _ => {
            return Err(Error::ExplosionGuard(format!(
                "{}^{} arrays exceeds 2^24",
                sigma, n
            )))
        }
    };
    let mut seen = HashSet::new();
    let mut vals = vec![0u64; n];
    for _ in 0..total {
        seen.insert(TreeShape::from_values(&vals));
        for v in vals.iter_mut() {
            *v += 1;
            if *v < sigma {
                break;
            }
            *v = 0;
        }
    }
    Ok(seen.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(count_trees(3, 0), BigUint::from(1u32));
        assert_eq!(count_trees(3, 1), BigUint::from(4u32));
        assert_eq!(count_trees(3, 2), BigUint::from(5u32));
        assert_eq!(count_trees(0, 0), BigUint::from(1u32));
        assert_eq!(count_distinct_cartesian(3, 2), Ok(4));
        assert_eq!(count_distinct_cartesian(1, 7), Ok(1));
        assert_eq!(count_distinct_cartesian(4, 2), Ok(8));
        assert!(matches!(count_distinct_cartesian(25, 2), Err(Error::ExplosionGuard(_))));
        assert!((r_const(1) - 2.0).abs() < 1e-12);
        assert!((r_const(2) - 2.618034).abs() < 1e-6);
        assert!((r_const(3) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn catalan_values() {
        let want = [1u32, 1, 2, 5, 14, 42, 132, 429];
        for (n, &w) in want.iter().enumerate() {
            assert_eq!(catalan(n), BigUint::from(w));
        }
    }

    #[test]
    fn left_height_bound_matches_enumeration() {
        for n in 1..=8 {
            for sigma in 2..=3u64 {
                assert_eq!(
                    BigUint::from(count_distinct_cartesian(n, sigma).unwrap()),
                    count_trees(n, sigma as usize - 1)
                );
            }
        }
    }
}
