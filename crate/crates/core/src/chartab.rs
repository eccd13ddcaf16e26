//! Ordinary character tables: Dixon–Schneider construction, validation,
//! JSON ingestion, structure constants of `R(G)` and class idempotents.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclonum::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{charpoly, mat_vec, null_space, EchelonBasis};
use crate::numtheory::{euler_phi, gcd, is_prime, isqrt, lcm, mod_pow, prime_factors, root_of_unity_mod};
use crate::permgroup::{Perm, PermutationGroup};
use crate::{Cyclotomic, CyclotomicInteger, Rational};

/// Class data carried by a character table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub size: u64,
    pub element_order: u64,
    /// `powers[t]` is the class of `g^t` for `g` in this class, `0 <= t < element_order`.
    pub powers: Vec<usize>,
    /// A representative, when the table was computed from a permutation group.
    pub representative: Option<Perm>,
}

impl ClassInfo {
    pub fn power(&self, t: i64) -> usize {
        self.powers[t.rem_euclid(self.element_order as i64) as usize]
    }
}

/// The ordinary character table of a finite group.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    pub name: String,
    pub order: u64,
    pub exponent: u64,
    pub classes: Vec<ClassInfo>,
    /// Index of the class of inverses.
    pub inverse: Vec<usize>,
    /// `values[i][c]` is `χ_i` on class `c`.
    pub values: Vec<Vec<CyclotomicInteger>>,
}

/// Integer structure constants `χ_i χ_j = Σ_k n[i][j][k] χ_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    r: usize,
    data: Vec<u32>,
}

impl StructureConstants {
    pub fn rank(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.data[(i * self.r + j) * self.r + k]
    }

    /// The row `k ↦ n[i][j][k]`.
    pub fn product_row(&self, i: usize, j: usize) -> &[u32] {
        let start = (i * self.r + j) * self.r;
        &self.data[start..start + self.r]
    }

    /// Product of two integer combinations of irreducible characters.
    pub fn multiply(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.r];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                for (o, &n) in out.iter_mut().zip(self.product_row(i, j)) {
                    *o += x * y * n as i64;
                }
            }
        }
        out
    }
}

/// Exact sums of the form `Σ_C w_C Tr(t_C)/φ(n_C)` as a rational number.
struct RationalAccumulator {
    num: BigInt,
    den: BigInt,
}

impl RationalAccumulator {
    fn new() -> Self {
        Self {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    /// Adds `weight * x` where `x` is the rational `Tr(t)/φ(conductor)`.
    fn add_trace(&mut self, weight: i128, t: &CyclotomicInteger) {
        let tr = t.trace() as i128 * weight;
        if tr == 0 {
            return;
        }
        let phi = euler_phi(t.conductor()) as i128;
        self.add(BigInt::from(tr), BigInt::from(phi));
    }

    fn add(&mut self, n: BigInt, d: BigInt) {
        self.num = &self.num * &d + n * &self.den;
        self.den *= d;
        let g = self.num.gcd(&self.den);
        if !g.is_one() && !g.is_zero() {
            self.num /= &g;
            self.den /= &g;
        }
    }

    fn finish(self, divisor: u64) -> Rational {
        BigRational::new(self.num, self.den * BigInt::from(divisor))
    }
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.values[i][0].as_rational().unwrap()
    }

    pub fn degrees(&self) -> Vec<i64> {
        (0..self.values.len()).map(|i| self.degree(i)).collect()
    }

    /// `⟨a, b⟩_G = (1/|G|) Σ_C |C| a(C) conj(b(C))` for class functions given by values.
    pub fn inner_product(&self, a: &[CyclotomicInteger], b: &[CyclotomicInteger]) -> Rational {
        let mut acc = RationalAccumulator::new();
        for (c, cls) in self.classes.iter().enumerate() {
            acc.add_trace(cls.size as i128, &a[c].mul(&b[c].conj()));
        }
        acc.finish(self.order)
    }

    /// Coefficients of a virtual character on `Irr G`; fails if not integral.
    pub fn decompose(&self, values: &[CyclotomicInteger]) -> Result<Vec<i64>> {
        self.values
            .iter()
            .map(|chi| {
                let ip = self.inner_product(values, chi);
                if !ip.is_integer() {
                    return Err(Error::consistency(format!(
                        "class function has non-integral multiplicity {ip}"
                    )));
                }
                ip.to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::consistency("multiplicity overflow"))
            })
            .collect()
    }

    /// Values of an integer combination of irreducible characters.
    pub fn values_of(&self, coeffs: &[i64]) -> Vec<CyclotomicInteger> {
        (0..self.num_classes())
            .map(|c| {
                let mut acc = CyclotomicInteger::zero(1);
                for (i, &x) in coeffs.iter().enumerate() {
                    if x != 0 {
                        acc = acc.add(&self.values[i][c].scale(&x));
                    }
                }
                acc.normalized()
            })
            .collect()
    }

    /// Index of the irreducible character `χ*` (complex conjugate).
    pub fn dual(&self, i: usize) -> usize {
        let target: Vec<CyclotomicInteger> = self.values[i].iter().map(|v| v.conj()).collect();
        (0..self.values.len())
            .find(|&j| self.values[j].iter().zip(&target).all(|(a, b)| a.equals(b)))
            .expect("complex conjugate of an irreducible character is irreducible")
    }

    /// Checks every table invariant, failing with a consistency error.
    pub fn validate(&self) -> Result<()> {
        let r = self.classes.len();
        let fail = |msg: String| Err(Error::consistency(msg));
        if r == 0 || self.values.len() != r {
            return fail(format!("{} characters for {r} classes", self.values.len()));
        }
        if self.values.iter().any(|row| row.len() != r) || self.inverse.len() != r {
            return Err(Error::schema("ragged character table"));
        }
        let c0 = &self.classes[0];
        if c0.size != 1 || c0.element_order != 1 {
            return fail("first class must be the identity".into());
        }
        let total: u64 = self.classes.iter().map(|c| c.size).sum();
        if total != self.order {
            return fail(format!("class sizes sum to {total}, not {}", self.order));
        }
        let mut exp = 1;
        for (k, c) in self.classes.iter().enumerate() {
            if c.size == 0 || !self.order.is_multiple_of(c.size) {
                return fail(format!("class {k} size {} does not divide |G|", c.size));
            }
            exp = lcm(exp, c.element_order);
            if c.powers.len() as u64 != c.element_order || c.powers[1 % c.powers.len()] != k {
                return fail(format!("class {k} has an inconsistent power table"));
            }
            for (t, &d) in c.powers.iter().enumerate() {
                let expected = c.element_order / gcd(t as u64, c.element_order);
                if d >= r || self.classes[d].element_order != expected {
                    return fail(format!("power map of class {k} at {t} is inconsistent"));
                }
            }
            if self.inverse[k] != c.power(-1) {
                return fail(format!("inverse map of class {k} disagrees with its power map"));
            }
        }
        if exp != self.exponent {
            return fail(format!("exponent {} should be {exp}", self.exponent));
        }
        // values live in the field of the class's element order
        for (i, row) in self.values.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if !self.classes[k].element_order.is_multiple_of(v.conductor()) {
                    return fail(format!("χ_{i} on class {k} has conductor {}", v.conductor()));
                }
            }
        }
        if !self.values[0].iter().all(|v| v.equals(&CyclotomicInteger::one())) {
            return fail("first character must be trivial".into());
        }
        let mut sum_sq: i128 = 0;
        for (i, row) in self.values.iter().enumerate() {
            match row[0].as_rational() {
                Some(d) if d > 0 => sum_sq += (d as i128) * (d as i128),
                _ => return fail(format!("degree of χ_{i} is not a positive integer")),
            }
        }
        if sum_sq != self.order as i128 {
            return fail(format!("sum of squared degrees {sum_sq} differs from |G|"));
        }
        // Galois action on power maps and inverses
        for (k, c) in self.classes.iter().enumerate() {
            for t in 1..c.element_order {
                if gcd(t, c.element_order) != 1 {
                    continue;
                }
                let d = c.powers[t as usize];
                for row in &self.values {
                    if !row[d].equals(&row[k].galois(t as i64)) {
                        return fail(format!("power map of class {k} at {t} contradicts the values"));
                    }
                }
            }
        }
        // column orthogonality
        for a in 0..r {
            for b in a..r {
                let mut acc = CyclotomicInteger::zero(1);
                for row in &self.values {
                    acc = acc.add(&row[a].mul(&row[b].conj()));
                }
                let expected = if a == b {
                    (self.order / self.classes[a].size) as i64
                } else {
                    0
                };
                if !acc.equals(&CyclotomicInteger::from_i64(expected)) {
                    return fail(format!("column orthogonality fails for classes {a}, {b}"));
                }
            }
        }
        // row orthogonality
        for i in 0..r {
            for j in i..r {
                let ip = self.inner_product(&self.values[i], &self.values[j]);
                let expected = if i == j { Rational::one() } else { Rational::zero() };
                if ip != expected {
                    return fail(format!("row orthogonality fails for χ_{i}, χ_{j}: {ip}"));
                }
            }
        }
        Ok(())
    }

    /// Structure constants of the character ring.
    ///
    /// Candidates are computed modulo a prime `ℓ ≡ 1 (mod e)` with `ℓ > |G|`,
    /// which determines them since `0 <= n_ijk <= χ_i(1) χ_j(1) < ℓ`, and are
    /// certified by the exact pointwise identity `χ_i χ_j = Σ_k n_ijk χ_k`. If
    /// certification fails, the constants are recomputed over `Q(ζ_e)`.
    pub fn structure_constants(&self) -> Result<StructureConstants> {
        if let Some(sc) = self.modular_structure_constants() {
            if self.check_decomposition(&sc).is_ok() {
                return Ok(sc);
            }
        }
        let sc = self.exact_structure_constants()?;
        self.check_decomposition(&sc)?;
        Ok(sc)
    }

    fn modular_structure_constants(&self) -> Option<StructureConstants> {
        let r = self.num_classes();
        let e = self.value_exponent();
        let mut ell = (self.order / e + 1).checked_mul(e)? + 1;
        while !is_prime(ell) {
            ell = ell.checked_add(e)?;
        }
        if ell >= 1 << 62 {
            return None;
        }
        let m = ell as u128;
        let z = root_of_unity_mod(ell, e) as u128;
        let reduced: Vec<Vec<u128>> = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        let zn = mod_pow(z as u64, e / v.conductor(), ell) as u128;
                        let mut acc = 0u128;
                        let mut pow = 1u128;
                        for &c in v.coefficients() {
                            acc = (acc + c.rem_euclid(ell as i64) as u128 * pow) % m;
                            pow = pow * zn % m;
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let inv_order = mod_pow(self.order % ell, ell - 2, ell) as u128;
        let weight: Vec<u128> = self
            .classes
            .iter()
            .map(|c| c.size as u128 % m * inv_order % m)
            .collect();
        let mut data = vec![0u32; r * r * r];
        for i in 0..r {
            for j in i..r {
                let prod: Vec<u128> = (0..r)
                    .map(|c| weight[c] * reduced[i][c] % m * reduced[j][c] % m)
                    .collect();
                for k in 0..r {
                    // terms are below ℓ² < 2^124; reduce only when the sum nears overflow
                    let mut n = 0u128;
                    for c in 0..r {
                        n += prod[c] * reduced[k][self.inverse[c]];
                        if n >= 1 << 125 {
                            n %= m;
                        }
                    }
                    let n = n % m;
                    let n = u32::try_from(n).ok()?;
                    data[(i * r + j) * r + k] = n;
                    data[(j * r + i) * r + k] = n;
                }
            }
        }
        Some(StructureConstants { r, data })
    }

    /// The exact identity `χ_i χ_j = Σ_k n_ijk χ_k` on every class.
    fn check_decomposition(&self, sc: &StructureConstants) -> Result<()> {
        let r = self.num_classes();
        for i in 0..r {
            for j in i..r {
                for c in 0..r {
                    let lhs = self.values[i][c].mul(&self.values[j][c]);
                    let mut rhs = CyclotomicInteger::zero(1);
                    for (k, &n) in sc.product_row(i, j).iter().enumerate() {
                        if n != 0 {
                            rhs = rhs.add(&self.values[k][c].scale(&(n as i64)));
                        }
                    }
                    if !lhs.equals(&rhs) {
                        return Err(Error::consistency(format!(
                            "χ_{i}χ_{j} does not decompose on class {c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }


    /// `n_ijk = ⟨χ_i χ_j, χ_k⟩_G` in exact arithmetic, checked for integrality and
    /// non-negativity.
    fn exact_structure_constants(&self) -> Result<StructureConstants> {
        let r = self.num_classes();
        let sizes: Vec<i128> = self.classes.iter().map(|c| c.size as i128).collect();
        // Tr(ζ_n^m) for every class conductor n = o_C, 0 <= m < n
        let traces: Vec<Vec<i128>> = self
            .classes
            .iter()
            .map(|c| {
                let n = c.element_order;
                (0..n)
                    .map(|m| CyclotomicInteger::root_of_unity(n, m as i64).trace() as i128)
                    .collect()
            })
            .collect();
        // forms[k][c][s] = Σ_t conj(χ_k(C))_t Tr(ζ^{s+t}), so that
        // Tr(x · conj χ_k(C)) = Σ_s x_s forms[k][c][s] in the power basis
        let forms: Vec<Vec<Vec<i128>>> = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(c, v)| {
                        let n = self.classes[c].element_order as usize;
                        let y = v.conj().embed(n as u64);
                        let y = y.coefficients();
                        (0..y.len())
                            .map(|s| {
                                y.iter()
                                    .enumerate()
                                    .map(|(t, &yt)| yt as i128 * traces[c][(s + t) % n])
                                    .sum()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        // common denominator L = lcm of φ(n_C) over classes, times |G|
        let l = self
            .classes
            .iter()
            .fold(1u64, |acc, c| lcm(acc, euler_phi(c.element_order)));
        let scale: Vec<i128> = self
            .classes
            .iter()
            .map(|c| (l / euler_phi(c.element_order)) as i128)
            .collect();
        let weight: Vec<i128> = sizes.iter().zip(&scale).map(|(a, b)| a * b).collect();
        let denom = self.order as i128 * l as i128;
        let rows: Vec<Result<Vec<u32>>> = (0..r)
            .into_par_iter()
            .map(|i| {
                let mut out = vec![0u32; r * r];
                for j in 0..r {
                    let prod: Vec<CyclotomicInteger> = (0..r)
                        .map(|c| self.values[i][c].mul(&self.values[j][c]).embed(self.classes[c].element_order))
                        .collect();
                    for k in 0..r {
                        let mut s: i128 = 0;
                        for c in 0..r {
                            let t: i128 = prod[c]
                                .coefficients()
                                .iter()
                                .zip(&forms[k][c])
                                .map(|(&x, &f)| x as i128 * f)
                                .sum();
                            s += weight[c] * t;
                        }
                        if s % denom != 0 || s < 0 {
                            return Err(Error::consistency(format!(
                                "⟨χ_{i}χ_{j}, χ_{k}⟩ = {s}/{denom} is not a non-negative integer"
                            )));
                        }
                        out[j * r + k] = u32::try_from(s / denom)
                            .map_err(|_| Error::consistency("structure constant overflow"))?;
                    }
                }
                Ok(out)
            })
            .collect();
        let mut data = Vec::with_capacity(r * r * r);
        for row in rows {
            data.extend(row?);
        }
        Ok(StructureConstants { r, data })
    }

    /// Coefficients of `1_C = (|C|/|G|) Σ_χ χ(C^{-1}) χ` on `Irr G`.
    pub fn class_idempotent(&self, c: usize) -> Vec<Cyclotomic> {
        let weight = BigRational::new(
            BigInt::from(self.classes[c].size),
            BigInt::from(self.order),
        );
        let inv = self.inverse[c];
        self.values
            .iter()
            .map(|row| {
                let v: Cyclotomic = row[inv].map_coefficients().expect("integers are rationals");
                v.scale(&weight)
            })
            .collect()
    }

    /// `τ_G(f)`: the coefficient of the trivial character.
    pub fn symmetrizing_form(&self, coeffs: &[Rational]) -> Rational {
        coeffs[0].clone()
    }

    /// Schur element `|G|/|C|` of the evaluation at `C`.
    pub fn schur_element(&self, c: usize) -> Rational {
        BigRational::new(BigInt::from(self.order), BigInt::from(self.classes[c].size))
    }

    /// Scalars `ω_χ(z) = χ(z)/χ(1)` of the central translation by `z`.
    pub fn central_translation(&self, z: usize) -> Result<Vec<CyclotomicInteger>> {
        if self.classes[z].size != 1 {
            return Err(Error::domain(format!("class {z} is not central")));
        }
        Ok((0..self.values.len())
            .map(|i| {
                let d = self.degree(i);
                let v = &self.values[i][z];
                // χ(z) = d ω with ω a root of unity, so division is exact
                let coeffs: Vec<i64> = v.coefficients().iter().map(|c| c / d).collect();
                CyclotomicInteger::from_coefficients(v.conductor(), coeffs)
                    .unwrap()
                    .normalized()
            })
            .collect())
    }

    /// The central class `zz'` for central classes `z`, `z'`.
    pub fn central_product(&self, z: usize, w: usize) -> Result<usize> {
        let a = self.central_translation(z)?;
        let b = self.central_translation(w)?;
        let target: Vec<CyclotomicInteger> = a.iter().zip(&b).map(|(x, y)| x.mul(y)).collect();
        (0..self.num_classes())
            .find(|&c| {
                self.classes[c].size == 1
                    && self.central_translation(c).unwrap().iter().zip(&target).all(|(x, y)| x.equals(y))
            })
            .ok_or_else(|| Error::consistency("central classes are not closed under products"))
    }

    /// The class `z^{-1} C` for a central class `z`.
    pub fn central_shift(&self, z: usize, c: usize) -> Result<usize> {
        let w = self.central_translation(self.inverse[z])?;
        let target: Vec<CyclotomicInteger> = self
            .values
            .iter()
            .zip(&w)
            .map(|(row, s)| row[c].mul(s))
            .collect();
        self.find_column(&target)
    }

    fn find_column(&self, target: &[CyclotomicInteger]) -> Result<usize> {
        (0..self.num_classes())
            .find(|&d| self.values.iter().zip(target).all(|(row, t)| row[d].equals(t)))
            .ok_or_else(|| Error::consistency("no class has the requested column"))
    }

    /// The Adams operation `θ_n f (g) = f(g^n)` on an integer combination of characters.
    pub fn adams_operation(&self, f: &[i64], n: i64) -> Result<Vec<i64>> {
        let vals = self.values_of(f);
        let shifted: Vec<CyclotomicInteger> = self
            .classes
            .iter()
            .map(|c| vals[c.power(n)].clone())
            .collect();
        self.decompose(&shifted)
    }

    /// Least common multiple of the conductors of all character values.
    pub fn value_exponent(&self) -> u64 {
        self.values
            .iter()
            .flatten()
            .fold(1, |acc, v| lcm(acc, v.conductor()))
    }

    /// Classes whose elements have order prime to `p`.
    pub fn p_regular_classes(&self, p: u64) -> Vec<usize> {
        (0..self.num_classes())
            .filter(|&c| !self.classes[c].element_order.is_multiple_of(p))
            .collect()
    }
}

/// Smallest prime `ℓ ≡ 1 (mod e)` with `ℓ > 2⌈√|G|⌉`.
pub fn dixon_prime(order: u64, exponent: u64) -> u64 {
    let s = isqrt(order as u128) as u64;
    let ceil = if s * s == order { s } else { s + 1 };
    let bound = 2 * ceil;
    let mut l = exponent + 1;
    while l <= bound || !is_prime(l) {
        l += exponent;
    }
    l
}

/// Class matrices `a[i][j][k] = #{x ∈ C_i : x^{-1} g_k ∈ C_j}`, flattened as `[i][j][k]`.
pub fn class_matrices(group: &PermutationGroup) -> Result<Vec<u64>> {
    let cs = group.conjugacy_classes()?;
    let n = group.check_caps()?;
    let r = cs.classes.len();
    let chain = group.chain();
    let columns: Vec<Vec<u64>> = cs
        .classes
        .par_iter()
        .map(|cls| {
            let gk = &cls.representative;
            let mut col = vec![0u64; r * r];
            for idx in 0..n {
                let x = chain.element_at(idx);
                let i = cs.class_of[idx as usize] as usize;
                let y = x.inverse().mul(gk);
                let j = cs.class_of[chain.element_index(&y).unwrap() as usize] as usize;
                col[i * r + j] += 1;
            }
            col
        })
        .collect();
    let mut out = vec![0u64; r * r * r];
    for (k, col) in columns.iter().enumerate() {
        for ij in 0..r * r {
            out[ij * r + k] = col[ij];
        }
    }
    Ok(out)
}

/// Common eigenvectors of the class matrices over `F_ℓ`, each normalised to 1 at the identity class.
fn split_eigenspaces(f: &PrimeField, r: usize, mats: &[Vec<Vec<u32>>]) -> Result<Vec<Vec<u32>>> {
    let full: Vec<Vec<u32>> = (0..r)
        .map(|i| {
            let mut v = vec![0u32; r];
            v[i] = 1;
            v
        })
        .collect();
    let mut spaces = vec![full];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let d = space.len();
            let mut basis = EchelonBasis::new(*f, r);
            for v in &space {
                basis.insert(v.clone());
            }
            let rows = basis.rows().to_vec();
            // restricted operator, column c = coordinates of M b_c
            let mut a = vec![vec![0u32; d]; d];
            for (c, b) in rows.iter().enumerate() {
                let image = mat_vec(f, m, b);
                let coords = basis
                    .coordinates(&image)
                    .ok_or_else(|| Error::consistency("class matrix does not preserve an eigenspace"))?;
                for (t, x) in coords.into_iter().enumerate() {
                    a[t][c] = x;
                }
            }
            let cp = charpoly(f, &a);
            let mut found = 0;
            for lambda in 0..f.p() {
                let mut val = 0u32;
                for c in cp.iter().rev() {
                    val = f.add(&f.mul(&val, &lambda), c);
                }
                if val != 0 {
                    continue;
                }
                let shifted: Vec<Vec<u32>> = (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| if i == j { f.sub(&a[i][j], &lambda) } else { a[i][j] })
                            .collect()
                    })
                    .collect();
                let ns = null_space(f, &shifted, d);
                found += ns.len();
                let vecs: Vec<Vec<u32>> = ns
                    .iter()
                    .map(|y| {
                        let mut v = vec![0u32; r];
                        for (coef, b) in y.iter().zip(&rows) {
                            for (o, x) in v.iter_mut().zip(b) {
                                f.mul_add_assign(o, coef, x);
                            }
                        }
                        v
                    })
                    .collect();
                next.push(vecs);
            }
            if found != d {
                return Err(Error::consistency("class matrix is not diagonalisable over F_ℓ"));
            }
        }
        spaces = next;
    }
    spaces
        .into_iter()
        .map(|s| {
            if s.len() != 1 {
                return Err(Error::consistency("common eigenspaces did not separate"));
            }
            let v = &s[0];
            let inv = f.inv(&v[0]).ok_or_else(|| Error::consistency("eigenvector vanishes at 1"))?;
            Ok(v.iter().map(|x| f.mul(x, &inv)).collect())
        })
        .collect()
}

/// Computes the character table of a permutation group by the Dixon–Schneider method.
pub fn dixon_table(group: &PermutationGroup, name: &str) -> Result<CharacterTable> {
    let order = group.check_caps()?;
    let cs = group.conjugacy_classes()?;
    let r = cs.classes.len();
    let exponent = cs.classes.iter().fold(1, |acc, c| lcm(acc, c.element_order));
    let ell = dixon_prime(order, exponent);
    let f = PrimeField::new(ell as u32);
    let a = class_matrices(group)?;
    let mats: Vec<Vec<Vec<u32>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..r).map(|k| (a[(i * r + j) * r + k] % ell) as u32).collect())
                .collect()
        })
        .collect();
    let omegas = split_eigenspaces(&f, r, &mats)?;
    let sizes: Vec<u64> = cs.classes.iter().map(|c| c.size).collect();
    let inverse: Vec<usize> = cs.classes.iter().map(|c| c.power(-1)).collect();
    let z = root_of_unity_mod(ell, exponent);
    let mut rows: Vec<Vec<CyclotomicInteger>> = Vec::with_capacity(r);
    for w in &omegas {
        // Σ_k ω_k ω_{k*} / h_k = |G| / χ(1)^2
        let mut s = 0u32;
        for k in 0..r {
            let hk_inv = f.inv(&((sizes[k] % ell) as u32)).unwrap();
            f.mul_add_assign(&mut s, &f.mul(&w[k], &w[inverse[k]]), &hk_inv);
        }
        let s_inv = f.inv(&s).ok_or_else(|| Error::consistency("degenerate central character"))?;
        let deg_sq = f.mul(&((order % ell) as u32), &s_inv);
        let limit = isqrt(order as u128) as u64;
        let degree = (1..=limit)
            .find(|&d| (d * d) % ell == deg_sq as u64 && order % d == 0)
            .ok_or_else(|| Error::consistency("no admissible character degree"))?;
        let deg_f = (degree % ell) as u32;
        let values_mod: Vec<u32> = (0..r)
            .map(|k| {
                let hk_inv = f.inv(&((sizes[k] % ell) as u32)).unwrap();
                f.mul(&f.mul(&w[k], &deg_f), &hk_inv)
            })
            .collect();
        let mut row = Vec::with_capacity(r);
        for (k, cls) in cs.classes.iter().enumerate() {
            let o = cls.element_order;
            let zo = mod_pow(z, exponent / o, ell) as u32;
            let zo_inv = f.inv(&zo).unwrap();
            let o_inv = f.inv(&((o % ell) as u32)).unwrap();
            let mut mult = Vec::with_capacity(o as usize);
            for j in 0..o {
                let step = f.pow(&zo_inv, j);
                let mut acc = 0u32;
                let mut twist = 1u32;
                for t in 0..o {
                    f.mul_add_assign(&mut acc, &values_mod[cls.powers[t as usize]], &twist);
                    twist = f.mul(&twist, &step);
                }
                let m = f.mul(&acc, &o_inv) as u64;
                if m > degree {
                    return Err(Error::consistency(format!(
                        "eigenvalue multiplicity {m} exceeds degree {degree} on class {k}"
                    )));
                }
                mult.push(m as i64);
            }
            if mult.iter().sum::<i64>() != degree as i64 {
                return Err(Error::consistency("eigenvalue multiplicities do not sum to the degree"));
            }
            row.push(CyclotomicNumber::from_power_sum(o, &mult).normalized());
        }
        rows.push(row);
    }
    sort_rows(&mut rows);
    let classes = cs
        .classes
        .iter()
        .map(|c| ClassInfo {
            size: c.size,
            element_order: c.element_order,
            powers: c.powers.clone(),
            representative: Some(c.representative.clone()),
        })
        .collect();
    let table = CharacterTable {
        name: name.to_string(),
        order,
        exponent,
        classes,
        inverse,
        values: rows,
    };
    table.validate()?;
    Ok(table)
}

/// Canonical row order: degree, then the trivial character first, then values.
fn sort_rows(rows: &mut [Vec<CyclotomicInteger>]) {
    let key = |row: &Vec<CyclotomicInteger>| {
        let deg = row[0].as_rational().unwrap_or(0);
        let trivial = row.iter().all(|v| v.equals(&CyclotomicInteger::one()));
        let vals: Vec<(u64, Vec<i64>)> = row
            .iter()
            .map(|v| (v.conductor(), v.coefficients().to_vec()))
            .collect();
        (deg, !trivial, vals)
    };
    rows.sort_by_cached_key(key);
}

/// Table file schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFile {
    pub name: String,
    pub order: u64,
    pub exponent: u64,
    pub classes: Vec<ClassEntry>,
    pub inverse_map: Vec<usize>,
    pub irreducibles: Vec<Vec<CyclotomicInteger>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassEntry {
    pub size: u64,
    pub element_order: u64,
    /// Prime `r` (as a decimal string) to the class index of `g^r`.
    pub power_maps: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representative: Option<String>,
}

impl CharacterTable {
    pub fn to_file(&self) -> TableFile {
        let primes = prime_factors(self.exponent);
        TableFile {
            name: self.name.clone(),
            order: self.order,
            exponent: self.exponent,
            classes: self
                .classes
                .iter()
                .map(|c| ClassEntry {
                    size: c.size,
                    element_order: c.element_order,
                    power_maps: primes
                        .iter()
                        .map(|&p| (p.to_string(), c.power(p as i64)))
                        .collect(),
                    representative: c.representative.as_ref().map(|g| g.to_string()),
                })
                .collect(),
            inverse_map: self.inverse.clone(),
            irreducibles: self.values.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("table serialises")
    }

    /// Loads and fully re-validates a table file.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| Error::schema(format!("table file: {e}")))?;
        Self::from_file(file, None)
    }

    /// Builds a table from its file form. The representative strings are parsed
    /// when `degree` is given.
    pub fn from_file(file: TableFile, degree: Option<usize>) -> Result<Self> {
        let r = file.classes.len();
        if r == 0 || file.irreducibles.len() != r || file.inverse_map.len() != r {
            return Err(Error::schema("class, character and inverse map counts differ"));
        }
        if file.irreducibles.iter().any(|row| row.len() != r) {
            return Err(Error::schema("ragged irreducibles"));
        }
        if file.inverse_map.iter().any(|&i| i >= r) {
            return Err(Error::schema("inverse map index out of range"));
        }
        let primes = prime_factors(file.exponent);
        let mut prime_maps: Vec<BTreeMap<u64, usize>> = Vec::with_capacity(r);
        for (k, c) in file.classes.iter().enumerate() {
            if c.element_order == 0 || !file.exponent.is_multiple_of(c.element_order) {
                return Err(Error::schema(format!("class {k} has invalid element order")));
            }
            let mut m = BTreeMap::new();
            for (key, &idx) in &c.power_maps {
                let p: u64 = key
                    .parse()
                    .map_err(|_| Error::schema(format!("power map key {key:?} is not a prime")))?;
                if idx >= r {
                    return Err(Error::schema(format!("power map index {idx} out of range")));
                }
                m.insert(p, idx);
            }
            for &p in &primes {
                if !m.contains_key(&p) {
                    return Err(Error::schema(format!("class {k} lacks the {p}-power map")));
                }
            }
            prime_maps.push(m);
        }
        let values: Vec<Vec<CyclotomicInteger>> = file
            .irreducibles
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.normalized()).collect())
            .collect();
        let powers = derive_power_tables(&file.classes, &prime_maps, &values)?;
        let classes = file
            .classes
            .iter()
            .zip(powers)
            .map(|(c, powers)| {
                let representative = match (degree, &c.representative) {
                    (Some(n), Some(s)) => Some(Perm::parse(n, s)?),
                    _ => None,
                };
                Ok(ClassInfo {
                    size: c.size,
                    element_order: c.element_order,
                    powers,
                    representative,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let table = CharacterTable {
            name: file.name,
            order: file.order,
            exponent: file.exponent,
            classes,
            inverse: file.inverse_map,
            values,
        };
        table.validate()?;
        Ok(table)
    }
}

/// Full power tables from prime power maps: `g^t = (g^d)^{t/d}` with
/// `d = gcd(t, o)`, the first factor from prime maps and the second from the
/// Galois action on columns.
fn derive_power_tables(
    classes: &[ClassEntry],
    prime_maps: &[BTreeMap<u64, usize>],
    values: &[Vec<CyclotomicInteger>],
) -> Result<Vec<Vec<usize>>> {
    let r = classes.len();
    let galois_image = |k: usize, u: u64| -> Result<usize> {
        if u == 1 {
            return Ok(k);
        }
        (0..r)
            .find(|&d| {
                values
                    .iter()
                    .all(|row| row[d].equals(&row[k].galois(u as i64)))
            })
            .ok_or_else(|| Error::consistency(format!("no Galois image of class {k} under {u}")))
    };
    let power_by_divisor = |k: usize, mut d: u64| -> Result<usize> {
        let mut c = k;
        for p in prime_factors(d) {
            while d.is_multiple_of(p) {
                c = *prime_maps[c]
                    .get(&p)
                    .ok_or_else(|| Error::schema(format!("missing {p}-power map")))?;
                d /= p;
            }
        }
        Ok(c)
    };
    (0..r)
        .map(|k| {
            let o = classes[k].element_order;
            (0..o)
                .map(|t| {
                    if t == 0 {
                        return Ok(0);
                    }
                    let d = gcd(t, o);
                    let base = power_by_divisor(k, d)?;
                    let od = o / d;
                    galois_image(base, (t / d) % od.max(1))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    #[test]
    fn s3_table() {
        let t = dixon_table(&groups::symmetric(3).unwrap(), "S3").unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        let std: Vec<i64> = t.values[2].iter().map(|v| v.as_rational().unwrap()).collect();
        // classes: identity, transpositions, 3-cycles
        assert_eq!(std, vec![2, 0, -1]);
    }

    #[test]
    fn trivial_table() {
        let t = dixon_table(&groups::trivial(), "1").unwrap();
        assert_eq!(t.values.len(), 1);
        assert!(t.values[0][0].equals(&CyclotomicInteger::one()));
    }

    #[test]
    fn a5_degrees_and_golden_ratio() {
        let t = dixon_table(&groups::alternating(5).unwrap(), "A5").unwrap();
        assert_eq!(t.degrees(), vec![1, 3, 3, 4, 5]);
        // the degree 3 characters take the values -(ζ^2 + ζ^3) and -(ζ + ζ^4) on 5-elements
        let z = |k| CyclotomicInteger::root_of_unity(5, k);
        let a = z(1).add(&z(4)).neg();
        let b = z(2).add(&z(3)).neg();
        let five: Vec<usize> = (0..5).filter(|&c| t.classes[c].element_order == 5).collect();
        for i in 1..3 {
            let vals: Vec<&CyclotomicInteger> = five.iter().map(|&c| &t.values[i][c]).collect();
            assert!(
                (vals[0].equals(&a) && vals[1].equals(&b)) || (vals[0].equals(&b) && vals[1].equals(&a))
            );
        }
    }

    #[test]
    fn structure_constants_s3() {
        let t = dixon_table(&groups::symmetric(3).unwrap(), "S3").unwrap();
        let sc = t.structure_constants().unwrap();
        assert_eq!(sc.product_row(2, 2), &[1, 1, 1]);
        assert_eq!(sc.product_row(0, 2), &[0, 0, 1]);
    }

    #[test]
    fn json_roundtrip() {
        let t = dixon_table(&groups::symmetric(4).unwrap(), "S4").unwrap();
        let back = CharacterTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back.values, t.values);
        assert_eq!(back.classes.iter().map(|c| &c.powers).collect::<Vec<_>>(),
                   t.classes.iter().map(|c| &c.powers).collect::<Vec<_>>());
    }

    #[test]
    fn modular_and_exact_structure_constants_agree() {
        for name in ["S4", "A5", "Q8", "C7", "SL(2,3)", "W(H3)"] {
            let t = dixon_table(&groups::builtin(name).unwrap(), name).unwrap();
            let exact = t.exact_structure_constants().unwrap();
            let modular = t.modular_structure_constants().unwrap();
            assert_eq!(exact.data, modular.data, "{name}");
            t.check_decomposition(&exact).unwrap();
        }
    }
}
