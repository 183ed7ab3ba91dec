//! Closed-form counts as exact big integers.
//!
//! Every division below is checked: a nonzero remainder means the formula
//! was mistyped, so it aborts with an internal error instead of truncating.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `binomial(n, k)` by the multiplicative row method, exact at every step.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = binomial(n, i) here, and binomial(n, i) * (n - i) is divisible by i + 1
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn exact_div(num: BigUint, den: u64, what: &str) -> Result<BigUint> {
    let (q, r) = num.div_rem(&BigUint::from(den));
    if !r.is_zero() {
        return Err(Error::internal(format!("{what}: division by {den} left remainder {r}")));
    }
    Ok(q)
}

/// E/N paths from `(0,0)` to `(m, l*m)` weakly below `y = l*x`:
/// `binomial((l+1)m, m) / (l*m + 1)`.
pub fn fuss_count(l: u64, m: u64) -> Result<BigUint> {
    exact_div(binomial((l + 1) * m, m), l * m + 1, "fuss")
}

/// E/N/diagonal paths from `(0,0)` to `(m, l*m)` weakly below `y = l*x`:
/// `sum_v binomial(l*m+1, m-v) binomial(l*m+v, v) / (l*m + 1)`.
pub fn schroder_count(l: u64, m: u64) -> Result<BigUint> {
    let lm = l * m;
    let sum: BigUint = (0..=m).map(|v| binomial(lm + 1, m - v) * binomial(lm + v, v)).sum();
    exact_div(sum, lm + 1, "schroder")
}

/// E/N paths of length `5n` from the origin to the line `y = 2x/3` that stay
/// weakly below it:
/// `sum_i binomial(5n+1, n-i) binomial(5n+2i, i) / (5n+i+1)`.
pub fn duchon_count(n: u64) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for i in 0..=n {
        let num = binomial(5 * n + 1, n - i) * binomial(5 * n + 2 * i, i);
        total += exact_div(num, 5 * n + i + 1, "duchon summand")?;
    }
    Ok(total)
}

/// Unrestricted forests of `n` shrubs of the given arity: `((k+1)n)! / (k+1)^n`,
/// since each block of `k+1` labels admits `k!` of its `(k+1)!` orders.
pub fn unrestricted_count(arity: u64, n: u64) -> BigUint {
    let w = arity + 1;
    let mut acc = BigUint::one();
    for i in 1..=w * n {
        acc *= i;
    }
    let per_block = BigUint::from(w).pow(n as u32);
    acc / per_block
}
