//! Exact binomial coefficients.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// `C(n, r)`, zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> BigCount {
    if r > n {
        return BigCount::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigCount::one();
    // acc * (n - r + i) / i stays integral at every step.
    for i in 1..=r {
        acc *= n - r + i;
        acc /= i;
    }
    acc
}

/// `C(n, r)` with signed arguments; zero whenever either is negative or `r > n`.
pub fn binomial_i(n: i64, r: i64) -> BigCount {
    if n < 0 || r < 0 {
        BigCount::zero()
    } else {
        binomial(n as u64, r as u64)
    }
}

/// `C(n, r)` as a machine integer, for sizes that are known to be small.
pub fn binomial_u64(n: u64, r: u64) -> Option<u64> {
    u64::try_from(binomial(n, r)).ok()
}
