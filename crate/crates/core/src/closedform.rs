//! Closed-form invariants for symmetric, dihedral and abelian groups, used as
//! independent oracles for the linear algebra.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::p_part;

/// Largest `n` for which partitions of `n` are enumerated.
pub const MAX_PARTITION_N: u32 = 30;

/// A partition, parts weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    /// Cycle type of a permutation.
    pub fn cycle_type(perm: &crate::permgroup::Perm) -> Self {
        let mut parts: Vec<u32> = perm.cycles().iter().map(|c| c.len() as u32).collect();
        let fixed = perm.degree() as u32 - parts.iter().sum::<u32>();
        parts.extend(std::iter::repeat_n(1, fixed as usize));
        Self::new(parts).expect("cycle lengths are positive")
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `r_i`: the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&x| x == i).count() as u32
    }

    /// Nonzero multiplicities keyed by part.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &x in &self.parts {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    /// All parts prime to `p`.
    pub fn is_p_prime(&self, p: u32) -> bool {
        self.parts.iter().all(|x| x % p != 0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions(n: u32) -> Result<Vec<Partition>> {
    if n > MAX_PARTITION_N {
        return Err(Error::resource(format!("partitions of {n} exceed the limit {MAX_PARTITION_N}")));
    }
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for k in (1..=rem.min(max)).rev() {
            cur.push(k);
            rec(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// `π_p(λ) = Σ_i [r_i(λ)/p]`.
pub fn pi_p(lambda: &Partition, p: u32) -> u32 {
    lambda.multiplicities().values().map(|r| r / p).sum()
}

/// Replaces each part `a` by `a_p` copies of `a_{p'}`.
pub fn tau_p_prime(lambda: &Partition, p: u32) -> Partition {
    let mut parts = Vec::with_capacity(lambda.n() as usize);
    for &a in &lambda.parts {
        let ap = p_part(a as u64, p as u64) as u32;
        parts.extend(std::iter::repeat_n(a / ap, ap as usize));
    }
    Partition::new(parts).expect("parts stay positive")
}

/// `|τ_{p'}^{-1}(μ) ∩ {λ : π_p(λ) ≥ i}|`.
pub fn sym_block_radical_dims(n: u32, p: u32, mu: &Partition, i: u32) -> Result<usize> {
    if mu.n() != n {
        return Err(Error::domain(format!("{mu} is not a partition of {n}")));
    }
    if !mu.is_p_prime(p) {
        return Err(Error::domain(format!("{mu} has a part divisible by {p}")));
    }
    Ok(partitions(n)?
        .iter()
        .filter(|l| tau_p_prime(l, p) == *mu && pi_p(l, p) >= i)
        .count())
}

/// The whole sequence `d_0, d_1, …` of the block of `μ`, up to the last nonzero term.
pub fn sym_block_d_sequence(p: u32, mu: &Partition) -> Result<Vec<usize>> {
    let n = mu.n();
    let mut out = Vec::new();
    for i in 0.. {
        let d = sym_block_radical_dims(n, p, mu, i)?;
        if d == 0 {
            break;
        }
        out.push(d);
    }
    Ok(out)
}

/// `[log_p r]` for `r ≥ 1`.
fn floor_log(r: u32, p: u32) -> u32 {
    let mut k = 0;
    let mut pk = p as u64;
    while pk <= r as u64 {
        k += 1;
        pk *= p as u64;
    }
    k
}

/// Loewy length and `ext¹` of the block of `S_n` attached to the p'-partition `μ`:
/// `(π_p(μ) + 1, Σ_i [log_p r_i(μ)])`.
pub fn sym_invariants(p: u32, mu: &Partition) -> Result<(usize, usize)> {
    if !mu.is_p_prime(p) {
        return Err(Error::domain(format!("{mu} has a part divisible by {p}")));
    }
    let ext1 = mu.multiplicities().values().map(|&r| floor_log(r, p)).sum::<u32>();
    Ok((pi_p(mu, p) as usize + 1, ext1 as usize))
}

/// `ℓ_p(S_n) = [n/p] + 1`, the largest `π_p + 1`.
pub fn sym_loewy(n: u32, p: u32) -> usize {
    (n / p) as usize + 1
}

/// Principal 2-block `(ℓ, ext¹)` of the dihedral group of order `2^n (2m+1)`.
pub fn dihedral_invariants(n: u32, _m: u32) -> Result<(usize, usize)> {
    match n {
        0 => Err(Error::domain("the 2-part exponent must be at least 1")),
        1 => Ok((2, 1)),
        2 => Ok((3, 2)),
        _ => Ok(((1usize << (n - 2)) + 1, 3)),
    }
}

/// `(Σ |G_i|_p − n + 1, #{i : p | |G_i|})` for a product of cyclic groups.
pub fn abelian_product_invariants(orders: &[u64], p: u64) -> Result<(usize, usize)> {
    if orders.contains(&0) {
        return Err(Error::domain("cyclic factors must have positive order"));
    }
    let sum: u64 = orders.iter().map(|&o| p_part(o, p)).sum();
    let loewy = (sum + 1 - orders.len() as u64) as usize;
    let ext1 = orders.iter().filter(|&&o| o % p == 0).count();
    Ok((loewy, ext1))
}

/// Loewy length and `ext¹` of a block of a direct product from those of the factors.
pub fn direct_product_invariants(a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    (a.0 + b.0 - 1, a.1 + b.1)
}
