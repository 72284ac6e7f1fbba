//! Small exact integer helpers shared by the constructions.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Returns `(p, r)` with `q = p^r` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    match factors.as_slice() {
        [p] => {
            let mut r = 0;
            let mut rest = q;
            while rest.is_multiple_of(*p) {
                rest /= p;
                r += 1;
            }
            Some((*p, r))
        }
        _ => None,
    }
}

/// Distinct prime factors in increasing order, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

pub fn prime_powers_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| prime_power(n).is_some()).collect()
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1;
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

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Multiplicative order of `a` modulo the prime `p`.
pub fn order_mod_prime(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let mut order = p - 1;
    for f in prime_factors(p - 1) {
        while order.is_multiple_of(f) && pow_mod(a, order / f, p) == 1 {
            order /= f;
        }
    }
    Some(order)
}

pub fn is_primitive_root(a: u64, p: u64) -> bool {
    order_mod_prime(a, p) == Some(p - 1)
}

/// `⌊(1 + √(4N − 3)) / 2⌋`, the counting bound on a Sidon set in a group of
/// order `N`. Exact: `⌊(1 + s)/2⌋ = ⌊(1 + ⌊s⌋)/2⌋` for real `s ≥ 0`.
pub fn max_sidon_bound(order: u64) -> u64 {
    assert!(order >= 1, "group order must be positive");
    let disc = 4 * order as u128 - 3;
    (disc.isqrt() as u64).div_ceil(2)
}
