//! Brute-force oracles shared by the integration tests. Deliberately naive
//! and independent of the library's code paths.

#![allow(dead_code)]

/// First `(h, i, j)` (1-based, lexicographic) violating distinct differences,
/// comparing every pair directly. `modulus = None` compares over the integers.
pub fn first_violation(values: &[u64], modulus: Option<u64>) -> Option<(usize, usize, usize)> {
    let n = values.len();
    let diff = |a: u64, b: u64| -> i64 {
        let d = a as i64 - b as i64;
        match modulus {
            Some(m) => d.rem_euclid(m as i64),
            None => d,
        }
    };
    for h in 1..n {
        for i in 1..=n - h {
            for j in i + 1..=n - h {
                if diff(values[i + h - 1], values[i - 1]) == diff(values[j + h - 1], values[j - 1])
                {
                    return Some((h, i, j));
                }
            }
        }
    }
    None
}

/// Sidon test through differences: all `a − b (mod n)`, `a ≠ b`, distinct.
pub fn sidon_by_differences(elements: &[u64], n: u64) -> bool {
    let mut seen = vec![false; n as usize];
    for &a in elements {
        for &b in elements {
            if a == b {
                continue;
            }
            let d = ((a + n - b) % n) as usize;
            if seen[d] {
                return false;
            }
            seen[d] = true;
        }
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// Every Sidon subset of Z_n, by depth-first extension.
pub fn all_sidon_subsets(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, start: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(cur.clone());
        for x in start..n {
            cur.push(x);
            if sidon_by_differences(cur, n) {
                go(n, x + 1, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out
}

/// Longest `m × n` modular (or plain, values in `[1, m]`) sonar sequence
/// length, by enumerating all `m^n` candidates for increasing `n`.
pub fn brute_max_length(m: u64, modular: bool) -> usize {
    let lo = if modular { 0 } else { 1 };
    let mut n = 1;
    loop {
        let total = (m as u128).pow(n as u32 + 1);
        let mut found = false;
        let mut values = vec![lo; n + 1];
        for code in 0..total {
            let mut c = code;
            for v in values.iter_mut() {
                *v = lo + (c % m as u128) as u64;
                c /= m as u128;
            }
            if first_violation(&values, modular.then_some(m)).is_none() {
                found = true;
                break;
            }
        }
        if !found {
            return n;
        }
        n += 1;
    }
}
