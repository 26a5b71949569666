//! Exact integer helpers shared by every analysis module.
//!
//! Residues are `u64` values in `[0, m)`; products go through `u128` so any
//! `u64` modulus is safe.

use crate::error::{Error, Result};

/// Trial division runs over divisors up to this bound. A cofactor left over
/// after that is accepted as prime only when it is below the square of the
/// bound; anything larger is reported as [`Error::FactorizationLimit`].
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

#[inline]
pub fn reduce(x: i64, m: u64) -> u64 {
    (x as i128).rem_euclid(m as i128) as u64
}

#[inline]
pub fn reduce_i128(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
/// `factorize(1)` is empty; zero is rejected.
pub fn factorize(n: u128) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::InvalidModulus {
            modulus: 0,
            reason: "zero has no factorization",
        });
    }
    let mut rest = n;
    let mut out = Vec::new();
    let mut push = |p: u64, rest: &mut u128| {
        let mut e = 0;
        while (*rest).is_multiple_of(p as u128) {
            *rest /= p as u128;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut d = 3u64;
    while d <= TRIAL_DIVISION_LIMIT && (d as u128) * (d as u128) <= rest {
        push(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        let limit = TRIAL_DIVISION_LIMIT as u128;
        if rest <= u64::MAX as u128 && (rest < limit * limit || (d as u128) * (d as u128) > rest) {
            out.push((rest as u64, 1));
        } else {
            return Err(Error::FactorizationLimit { value: n });
        }
    }
    Ok(out)
}

pub fn prime_divisors(n: u128) -> Result<Vec<u64>> {
    Ok(factorize(n)?.into_iter().map(|(p, _)| p).collect())
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    result
}

/// All primes `<= n`, by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Sorted positive divisors of `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Modular inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Legendre symbol of `a` modulo an odd prime `p` by Euler's criterion:
/// `0` if `p | a`, `1` for a nonzero square, `-1` otherwise.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    match pow_mod(a, (p - 1) / 2, p) {
        1 => 1,
        x if x == p - 1 => -1,
        other => unreachable!("Euler's criterion produced {other} for prime {p}"),
    }
}

/// `n = p^e` for a prime `p`: returns `(p, e)`.
pub fn as_prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n as u128).ok()?.as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}
