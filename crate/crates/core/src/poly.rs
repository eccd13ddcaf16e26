//! Dense univariate polynomials over a prime field, low degree first.

use crate::field::{Field, PrimeField};

/// Drops trailing zero coefficients. The zero polynomial is the empty vector.
pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(f: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            f.add(&x, &y)
        })
        .collect();
    trim(out)
}

pub fn sub(f: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            f.sub(&x, &y)
        })
        .collect();
    trim(out)
}

pub fn mul(f: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            f.mul_add_assign(&mut out[i + j], x, y);
        }
    }
    trim(out)
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem(f: &PrimeField, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let b = trim(b.to_vec());
    let db = degree(&b).expect("division by zero polynomial");
    let lead_inv = f.inv(&b[db]).unwrap();
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        q[dr - db] = c;
        for (k, bk) in b.iter().enumerate() {
            let t = f.mul(&c, bk);
            r[dr - db + k] = f.sub(&r[dr - db + k], &t);
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    divrem(f, a, b).1
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g`.
pub fn ext_gcd(f: &PrimeField, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u32], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u32]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

pub fn gcd(f: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let g = ext_gcd(f, a, b).0;
    make_monic(f, g)
}

pub fn make_monic(f: &PrimeField, a: Vec<u32>) -> Vec<u32> {
    match degree(&a) {
        None => a,
        Some(d) => {
            let inv = f.inv(&a[d]).unwrap();
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// `a^e mod m`.
pub fn powmod(f: &PrimeField, a: &[u32], mut e: u128, m: &[u32]) -> Vec<u32> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
        base = rem(f, &mul(f, &base, &base), m);
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial of degree >= 1.
pub fn is_irreducible(f: &PrimeField, poly: &[u32]) -> bool {
    let n = match degree(poly) {
        Some(0) | None => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let p = f.p() as u128;
    let x = vec![0u32, 1];
    // Ben-Or: no irreducible factor of degree k <= n/2 divides poly
    let mut frob = rem(f, &x, poly);
    for _ in 1..=n / 2 {
        frob = powmod(f, &frob, p, poly);
        let g = gcd(f, poly, &sub(f, &frob, &x));
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_roundtrip() {
        let f = PrimeField::new(5);
        let a = vec![1, 2, 3, 4, 1];
        let b = vec![2, 0, 1];
        let (q, r) = divrem(&f, &a, &b);
        let back = add(&f, &mul(&f, &q, &b), &r);
        assert_eq!(back, trim(a));
    }

    #[test]
    fn irreducibility() {
        let f2 = PrimeField::new(2);
        assert!(is_irreducible(&f2, &[1, 1, 1]));
        assert!(!is_irreducible(&f2, &[1, 0, 1]));
        assert!(is_irreducible(&f2, &[1, 1, 0, 1]));
        assert!(!is_irreducible(&f2, &[1, 1, 1, 1]));
        let f3 = PrimeField::new(3);
        assert!(is_irreducible(&f3, &[1, 0, 1]));
        assert!(!is_irreducible(&f3, &[2, 0, 1]));
    }

    #[test]
    fn irreducible_count_degree_four_over_f2() {
        // There are exactly three monic irreducible quartics over F_2.
        let f2 = PrimeField::new(2);
        let count = (0..16u32)
            .filter(|bits| {
                let poly: Vec<u32> = (0..4).map(|i| (bits >> i) & 1).chain([1]).collect();
                is_irreducible(&f2, &poly)
            })
            .count();
        assert_eq!(count, 3);
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        for (p, max_deg) in [(2u32, 8u32), (3, 5), (5, 3), (7, 2)] {
            let f = PrimeField::new(p);
            for n in 1..=max_deg {
                let count = (0..(p as u64).pow(n))
                    .filter(|&idx| {
                        let poly: Vec<u32> =
                            (0..n).map(|i| ((idx / (p as u64).pow(i)) % p as u64) as u32).chain([1]).collect();
                        is_irreducible(&f, &poly)
                    })
                    .count() as i64;
                // (1/n) Σ_{d | n} μ(d) p^{n/d}
                let expected: i64 = (1..=n)
                    .filter(|d| n % d == 0)
                    .map(|d| crate::numtheory::moebius(d as u64) * (p as i64).pow(n / d))
                    .sum::<i64>()
                    / n as i64;
                assert_eq!(count, expected, "p={p} n={n}");
            }
        }
    }
}
