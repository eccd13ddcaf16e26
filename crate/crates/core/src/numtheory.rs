//! Small integer number theory helpers.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
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
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, &p| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1;
    for p in prime_factors(n) {
        m /= p;
        if m.is_multiple_of(p) {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// The `p`-part of `n`: the largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// `n` with its `p`-part removed.
pub fn p_prime_part(n: u64, p: u64) -> u64 {
    n / p_part(n, p)
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Multiplicative order of `a` modulo `n` (requires `gcd(a, n) = 1`).
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    assert_eq!(gcd(a % n, n), 1, "element not invertible");
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    k
}

/// An element of exact order `e` in `(Z/l)^*`, for a prime `l ≡ 1 mod e`.
pub fn root_of_unity_mod(l: u64, e: u64) -> u64 {
    assert_eq!((l - 1) % e, 0);
    let factors = prime_factors(e);
    for g in 2..l {
        let z = mod_pow(g, (l - 1) / e, l);
        if factors.iter().all(|&r| mod_pow(z, e / r, l) != 1) {
            return z;
        }
    }
    1
}

/// The exponent `a` with `a ≡ 0 mod n_p` and `a ≡ 1 mod n_{p'}` where `n = n_p n_{p'}`.
pub fn p_prime_projector(n: u64, p: u64) -> u64 {
    let np = p_part(n, p);
    let nq = n / np;
    // a = np * (np^{-1} mod nq)
    if nq == 1 {
        return 0;
    }
    let inv = crate::field::mod_inverse(np % nq, nq).unwrap();
    (np * inv) % n
}

/// Integer square root.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}
