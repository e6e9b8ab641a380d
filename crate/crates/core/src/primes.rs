//! Primality and small modular helpers.
//!
//! Candidates below 10⁶ are decided by trial division. Larger candidates go
//! through Miller–Rabin with the first thirteen primes as witnesses, which is
//! deterministic for every n < 3.317·10²⁴. Above that range the witness set
//! is widened to the first 64 primes.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;

const WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn trial_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

pub fn is_prime(n: u64) -> bool {
    if n < TRIAL_LIMIT {
        return trial_division(n);
    }
    is_prime_big(&BigUint::from(n))
}

fn small_primes(count: usize) -> Vec<u64> {
    (2u64..).filter(|&v| trial_division(v)).take(count).collect()
}

fn miller_rabin(n: &BigUint, witnesses: &[u64]) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in witnesses {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < TRIAL_LIMIT {
            return trial_division(small);
        }
    }
    if n.is_even() {
        return false;
    }
    for &w in &WITNESSES {
        if (n % w).is_zero() {
            return false;
        }
    }
    let bound: BigUint = "3317044064679887385961981".parse().unwrap();
    if n < &bound {
        miller_rabin(n, &WITNESSES)
    } else {
        miller_rabin(n, &small_primes(64))
    }
}

/// Smallest prime strictly greater than `x`.
pub fn next_prime_above(x: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if x < &two {
        return two;
    }
    let mut candidate = x + 1u32;
    if candidate.is_even() && candidate != two {
        candidate += 1u32;
    }
    while !is_prime_big(&candidate) {
        candidate += 2u32;
    }
    candidate
}

/// Primes in the closed interval `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&v| is_prime(v)).collect()
}

pub(crate) fn check_prime(p: u64) -> crate::Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(crate::Error::NotPrime(p))
    }
}

pub(crate) fn mod_reduce(v: i64, p: u64) -> i64 {
    (v as i128).rem_euclid(p as i128) as i64
}

pub(crate) fn mod_mul(a: i64, b: i64, p: u64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(p as i128)) as i64
}

pub(crate) fn mod_inv(a: i64, p: u64) -> Option<i64> {
    let a = mod_reduce(a, p);
    if a == 0 {
        return None;
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as i64)
}
