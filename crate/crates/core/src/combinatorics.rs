//! Counting functions behind the growth certificates: graded dimensions of
//! free Lie algebras (the Witt/necklace formula), integer partitions via the
//! pentagonal-number recurrence, and independent brute-force oracles for
//! both (Lyndon-word enumeration, direct partition enumeration).
//!
//! Everything except [`hardy_ramanujan`] is exact integer arithmetic.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Hard bounds for the Lyndon-word oracle: the enumeration is O(mⁿ·n).
pub const LYNDON_MAX_ALPHABET: u64 = 4;
pub const LYNDON_MAX_LENGTH: u64 = 12;

/// Hard bound for the brute-force partition oracle.
pub const PARTITION_BRUTEFORCE_MAX: u64 = 60;

/// Cap for the exponential-threshold search.
const THRESHOLD_SEARCH_CAP: u64 = 256;
/// Window width the threshold must certify.
const THRESHOLD_WINDOW: u64 = 32;

/// Möbius function by trial-division factorization.
pub fn mobius(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::PreconditionViolated("mobius requires n >= 1".into()));
    }
    let mut n = n;
    let mut primes = 0u32;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    Ok(if primes % 2 == 0 { 1 } else { -1 })
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Dimension of the degree-n component of the free Lie algebra on m
/// generators: (1/n)·Σ_{d|n} μ(d)·m^{n/d}. The division is exact; a remainder
/// would indicate a bug and is reported as such.
pub fn witt_dim(m: &BigInt, n: u64) -> Result<BigInt> {
    if !m.is_positive() || n == 0 {
        return Err(Error::PreconditionViolated(format!(
            "witt_dim requires m >= 1, n >= 1 (got m={m}, n={n})"
        )));
    }
    let mut acc = BigInt::zero();
    for d in divisors(n) {
        let term = m.pow((n / d) as u32);
        match mobius(d)? {
            1 => acc += term,
            -1 => acc -= term,
            _ => {}
        }
    }
    let (quot, rem) = num_integer::Integer::div_rem(&acc, &BigInt::from(n));
    if !rem.is_zero() {
        return Err(Error::NonIntegerMultiplicity {
            vector: vec![],
            value: format!("witt sum {acc} not divisible by {n}"),
        });
    }
    Ok(quot)
}

/// Convenience wrapper for machine-integer generator counts.
pub fn witt_dim_u64(m: u64, n: u64) -> Result<BigInt> {
    witt_dim(&BigInt::from(m), n)
}

/// Brute-force oracle: the number of Lyndon words of length n over an
/// m-letter alphabet, by enumerating all mⁿ words and keeping those strictly
/// smaller than every proper rotation.
pub fn lyndon_count(m: u64, n: u64) -> Result<BigInt> {
    if m == 0 || n == 0 {
        return Err(Error::PreconditionViolated(
            "lyndon_count requires m >= 1, n >= 1".into(),
        ));
    }
    if m > LYNDON_MAX_ALPHABET || n > LYNDON_MAX_LENGTH {
        return Err(Error::OracleBoundExceeded(format!(
            "lyndon_count bounded to m <= {LYNDON_MAX_ALPHABET}, n <= {LYNDON_MAX_LENGTH} (got m={m}, n={n})"
        )));
    }
    let m = m as usize;
    let n = n as usize;
    let mut word = vec![0u8; n];
    let mut count = 0u64;
    loop {
        if strictly_smallest_rotation(&word) {
            count += 1;
        }
        // odometer increment, most significant digit first
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(BigInt::from(count));
            }
            i -= 1;
            word[i] += 1;
            if (word[i] as usize) < m {
                break;
            }
            word[i] = 0;
        }
    }
}

/// True iff w is strictly smaller than each of its proper rotations
/// (equality with a rotation means the word is periodic, hence not Lyndon).
fn strictly_smallest_rotation(w: &[u8]) -> bool {
    let n = w.len();
    'rotation: for r in 1..n {
        for k in 0..n {
            let a = w[k];
            let b = w[(k + r) % n];
            if a < b {
                continue 'rotation;
            }
            if a > b {
                return false;
            }
        }
        return false;
    }
    true
}

/// Smallest N such that witt_dim(m,n) > m^((1-ε)n) for every n in
/// (N, N+32], decided by exact integer comparison of q-th powers
/// (ε = p/q). Searches N ≤ 256 and reports if the window never certifies.
pub fn witt_exponential_threshold(m: u64, eps_num: u64, eps_den: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::PreconditionViolated(
            "exponential threshold requires m >= 2".into(),
        ));
    }
    if eps_num == 0 || eps_num >= eps_den {
        return Err(Error::PreconditionViolated(
            "epsilon must lie strictly between 0 and 1".into(),
        ));
    }
    let holds = |n: u64| -> Result<bool> {
        // witt(m,n)^q > m^((q-p)·n), both sides exact integers
        let lhs = witt_dim_u64(m, n)?.pow(eps_den as u32);
        let rhs = BigInt::from(m).pow(((eps_den - eps_num) * n) as u32);
        Ok(lhs > rhs)
    };
    // The predicate is monotone once true (it settles), so scan upward for
    // the first failure-free window.
    let mut n_checked: Vec<bool> = Vec::new();
    let check = |n: u64, cache: &mut Vec<bool>| -> Result<bool> {
        while cache.len() <= n as usize {
            let k = cache.len() as u64;
            let v = if k == 0 { false } else { holds(k)? };
            cache.push(v);
        }
        Ok(cache[n as usize])
    };
    'outer: for cap in 0..=THRESHOLD_SEARCH_CAP {
        for n in cap + 1..=cap + THRESHOLD_WINDOW {
            if !check(n, &mut n_checked)? {
                continue 'outer;
            }
        }
        return Ok(cap);
    }
    Err(Error::SearchBoundExceeded(format!(
        "no exponential threshold below {THRESHOLD_SEARCH_CAP} for m={m}, eps={eps_num}/{eps_den}"
    )))
}

/// p(n) via the pentagonal-number recurrence, memoized process-wide.
pub fn partition(n: u64) -> BigInt {
    static TABLE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![BigInt::one()]));
    let mut t = table.lock().unwrap();
    while t.len() <= n as usize {
        let target = t.len() as i64;
        let mut acc = BigInt::zero();
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > target {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let positive = k % 2 == 1;
            if positive {
                acc += &t[(target - g1) as usize];
                if g2 <= target {
                    acc += &t[(target - g2) as usize];
                }
            } else {
                acc -= &t[(target - g1) as usize];
                if g2 <= target {
                    acc -= &t[(target - g2) as usize];
                }
            }
            k += 1;
        }
        t.push(acc);
    }
    t[n as usize].clone()
}

/// Brute-force oracle: counts partitions of n by enumerating non-increasing
/// summand sequences directly. Exponential; bounded to n ≤ 60.
pub fn partition_bruteforce(n: u64) -> Result<BigInt> {
    if n > PARTITION_BRUTEFORCE_MAX {
        return Err(Error::OracleBoundExceeded(format!(
            "partition_bruteforce bounded to n <= {PARTITION_BRUTEFORCE_MAX} (got {n})"
        )));
    }
    fn count(n: u64, max: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| count(n - k, k)).sum()
    }
    Ok(BigInt::from(count(n, n)))
}

/// The leading Hardy–Ramanujan asymptotic exp(π√(2n/3))/(4n√3). Advisory
/// only: the sole floating-point computation in the crate.
pub fn hardy_ramanujan(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::PreconditionViolated(
            "hardy_ramanujan requires n >= 1".into(),
        ));
    }
    let nf = n as f64;
    Ok((std::f64::consts::PI * (2.0 * nf / 3.0).sqrt()).exp() / (4.0 * nf * 3.0f64.sqrt()))
}
