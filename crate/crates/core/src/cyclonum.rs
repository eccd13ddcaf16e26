//! Exact arithmetic in cyclotomic fields `Q(ζ_n)` and reduction to finite fields.
//!
//! Elements are stored in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}` modulo the
//! cyclotomic polynomial `Φ_n`, so equal elements of the same conductor have
//! identical coefficient vectors. Elements of different conductors are compared
//! through their common embedding.

use std::collections::HashMap;
use std::fmt::{self, Debug, Display};
use std::ops::Neg;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField, Field, PrimeField};
use crate::numtheory::{euler_phi, gcd, lcm, moebius, multiplicative_order, p_part};
use crate::poly;

/// Scalar types usable as cyclotomic coefficients.
pub trait Coefficient:
    Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    /// Numerator and denominator, denominator positive.
    fn to_num_den(&self) -> (BigInt, BigInt);
    /// `None` when the fraction is not representable in this type.
    fn from_num_den(num: &BigInt, den: &BigInt) -> Option<Self>;

    /// Image in `F_p`, or `None` when `p` divides the denominator.
    fn reduce_mod(&self, p: u32) -> Option<u32> {
        let (n, d) = self.to_num_den();
        let pb = BigInt::from(p);
        let dm = d.mod_floor(&pb).to_u32().unwrap();
        if dm == 0 {
            return None;
        }
        let nm = n.mod_floor(&pb).to_u32().unwrap();
        let f = PrimeField::new(p);
        Some(f.mul(&nm, &f.inv(&dm).unwrap()))
    }
}

impl Coefficient for i64 {
    fn to_num_den(&self) -> (BigInt, BigInt) {
        (BigInt::from(*self), BigInt::one())
    }
    fn from_num_den(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_one() {
            num.to_i64()
        } else {
            None
        }
    }
    fn reduce_mod(&self, p: u32) -> Option<u32> {
        Some(self.rem_euclid(p as i64) as u32)
    }
}

impl Coefficient for BigInt {
    fn to_num_den(&self) -> (BigInt, BigInt) {
        (self.clone(), BigInt::one())
    }
    fn from_num_den(num: &BigInt, den: &BigInt) -> Option<Self> {
        den.is_one().then(|| num.clone())
    }
}

impl Coefficient for Ratio<i64> {
    fn to_num_den(&self) -> (BigInt, BigInt) {
        (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
    fn from_num_den(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Ratio::new(num.to_i64()?, den.to_i64()?))
    }
}

impl Coefficient for BigRational {
    fn to_num_den(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }
    fn from_num_den(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num.clone(), den.clone()))
    }
}

/// Per-conductor data: `Φ_n` and the power-basis images of `ζ_n^k`, `0 <= k < n`.
#[derive(Debug)]
pub struct ConductorData {
    pub n: u64,
    pub phi: usize,
    /// `Φ_n`, low degree first, monic.
    pub cyclotomic_poly: Vec<i64>,
    /// `reduce[k]` is `ζ_n^k` in the power basis.
    reduce: Vec<Vec<i64>>,
    /// `Tr(ζ_n^k)` for `0 <= k < n`.
    traces: Vec<i64>,
}

fn integer_poly_divexact(a: &[i64], b: &[i64]) -> Vec<i64> {
    // b monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for d in (db..a.len()).rev() {
        let c = r[d];
        q[d - db] = c;
        for (k, bk) in b.iter().enumerate() {
            r[d - db + k] -= c * bk;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for all proper divisors d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = integer_poly_divexact(&num, &conductor_data(d).cyclotomic_poly);
        }
    }
    num
}

fn build_conductor_data(n: u64) -> ConductorData {
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    let mut reduce = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        reduce.push(cur.clone());
        // multiply by ζ: shift, then eliminate ζ^phi
        let top = cur[phi - 1];
        for k in (1..phi).rev() {
            cur[k] = cur[k - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for k in 0..phi {
                cur[k] -= top * phi_poly[k];
            }
        }
    }
    let phi_n = euler_phi(n) as i64;
    let traces = (0..n)
        .map(|k| {
            let g = gcd(k, n);
            let m = n / g;
            moebius(m) * phi_n / euler_phi(m) as i64
        })
        .collect();
    ConductorData {
        n,
        phi,
        cyclotomic_poly: phi_poly,
        reduce,
        traces,
    }
}

/// Shared, lazily built data for conductor `n`.
pub fn conductor_data(n: u64) -> Arc<ConductorData> {
    assert!(n >= 1, "conductor must be positive");
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<ConductorData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(d) = cache.read().unwrap().get(&n) {
        return d.clone();
    }
    let data = Arc::new(build_conductor_data(n));
    cache.write().unwrap().entry(n).or_insert(data).clone()
}

/// An element of `Q(ζ_n)` (or `Z[ζ_n]` for integer coefficient types).
#[derive(Clone, PartialEq)]
pub struct CyclotomicNumber<T> {
    conductor: u64,
    coeffs: Vec<T>,
}

impl<T: Coefficient> CyclotomicNumber<T> {
    pub fn zero(conductor: u64) -> Self {
        let phi = euler_phi(conductor) as usize;
        Self {
            conductor,
            coeffs: vec![T::zero(); phi],
        }
    }

    pub fn from_scalar(c: T) -> Self {
        Self {
            conductor: 1,
            coeffs: vec![c],
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_scalar(T::from_i64(n).unwrap())
    }

    pub fn one() -> Self {
        Self::from_scalar(T::one())
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let data = conductor_data(n);
        Self {
            conductor: n,
            coeffs: data.reduce[k].iter().map(|&c| T::from_i64(c).unwrap()).collect(),
        }
    }

    /// Builds `Σ_j c_j ζ_n^j` from coefficients on all `n` powers (not necessarily reduced).
    pub fn from_power_sum(n: u64, coeffs: &[T]) -> Self {
        let data = conductor_data(n);
        let mut out = vec![T::zero(); data.phi];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&data.reduce[k % n as usize]) {
                if r != 0 {
                    *o = o.clone() + c.clone() * T::from_i64(r).unwrap();
                }
            }
        }
        Self {
            conductor: n,
            coeffs: out,
        }
    }

    /// Builds an element from power-basis coefficients; the vector must have length `φ(n)`.
    pub fn from_coefficients(n: u64, coeffs: Vec<T>) -> Result<Self> {
        if n == 0 || coeffs.len() as u64 != euler_phi(n) {
            return Err(Error::input(format!(
                "conductor {n} needs {} coefficients, got {}",
                if n == 0 { 0 } else { euler_phi(n) },
                coeffs.len()
            )));
        }
        Ok(Self {
            conductor: n,
            coeffs,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<T> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the element with conductor `m`, a multiple of the current conductor.
    pub fn embed(&self, m: u64) -> Self {
        assert_eq!(m % self.conductor, 0, "target conductor must be a multiple");
        if m == self.conductor {
            return self.clone();
        }
        let step = m / self.conductor;
        let mut buf = vec![T::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            buf[j * step as usize] = c.clone();
        }
        Self::from_power_sum(m, &buf)
    }

    /// Drops to conductor 1 when the element is rational.
    pub fn normalized(self) -> Self {
        match self.as_rational() {
            Some(c) if self.conductor != 1 => Self::from_scalar(c),
            _ => self,
        }
    }

    fn coerce(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.conductor, b.conductor);
        (a.embed(m), b.embed(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = Self::coerce(self, other);
            return a.add(&b);
        }
        Self {
            conductor: self.conductor,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.conductor != other.conductor {
            let (a, b) = Self::coerce(self, other);
            return a.mul(&b);
        }
        let n = self.conductor as usize;
        if n == 1 {
            return Self::from_scalar(self.coeffs[0].clone() * other.coeffs[0].clone());
        }
        let mut buf = vec![T::zero(); n];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = (i + j) % n;
                buf[k] = buf[k].clone() + x.clone() * y.clone();
            }
        }
        Self::from_power_sum(self.conductor, &buf)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one().embed(self.conductor);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The Galois automorphism `ζ_n ↦ ζ_n^k` (`k` prime to the conductor).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor;
        let k = k.rem_euclid(n as i64) as u64;
        assert_eq!(gcd(k, n), 1, "Galois exponent must be prime to the conductor");
        let mut buf = vec![T::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            buf[((j as u64 * k) % n) as usize] = c.clone();
        }
        Self::from_power_sum(n, &buf)
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The trace from `Q(ζ_n)` down to `Q`.
    pub fn trace(&self) -> T {
        let data = conductor_data(self.conductor);
        self.coeffs
            .iter()
            .zip(&data.traces)
            .fold(T::zero(), |acc, (c, &t)| acc + c.clone() * T::from_i64(t).unwrap())
    }

    /// Multiplicative inverse, computed as the product of the other Galois
    /// conjugates divided by the norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.conductor;
        let mut others = Self::one().embed(n);
        for k in 2..n.max(2) {
            if gcd(k, n) == 1 {
                others = others.mul(&self.galois(k as i64));
            }
        }
        let norm = self
            .mul(&others)
            .as_rational()
            .ok_or_else(|| Error::consistency("norm is not rational"))?;
        let inv_norm = T::one() / norm;
        Ok(others.scale(&inv_norm))
    }

    /// Semantic equality across conductors.
    pub fn equals(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::coerce(self, other);
        a.coeffs == b.coeffs
    }

    /// Converts the coefficient type.
    pub fn map_coefficients<U: Coefficient>(&self) -> Result<CyclotomicNumber<U>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let (n, d) = c.to_num_den();
                U::from_num_den(&n, &d)
                    .ok_or_else(|| Error::Integrality(format!("coefficient {n}/{d} not representable")))
            })
            .collect::<Result<Vec<U>>>()?;
        Ok(CyclotomicNumber {
            conductor: self.conductor,
            coeffs,
        })
    }

    /// Image under the reduction map attached to `spec`.
    pub fn reduce_mod_p(&self, spec: &FiniteFieldSpec) -> Result<ExtElem> {
        let n = self.conductor;
        if !spec.exponent.is_multiple_of(n) {
            return Err(Error::domain(format!(
                "conductor {n} does not divide the field exponent {}",
                spec.exponent
            )));
        }
        let step = spec.exponent / n;
        let mut acc = spec.field.zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            let r = c.reduce_mod(spec.p).ok_or_else(|| {
                let (num, den) = c.to_num_den();
                Error::Integrality(format!("coefficient {num}/{den} has {} in its denominator", spec.p))
            })?;
            if r != 0 {
                let root = spec.root_power(step * j as u64);
                spec.field.scale_add_assign(&mut acc, root, r);
            }
        }
        Ok(acc)
    }
}

impl<T: Coefficient> Debug for CyclotomicNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Coefficient> Display for CyclotomicNumber<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (num, den) = c.to_num_den();
            let neg = num.is_negative();
            let abs = num.abs();
            let mag = if den.is_one() {
                abs.to_string()
            } else {
                format!("{abs}/{den}")
            };
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let term = match j {
                0 => mag,
                _ => {
                    let root = if j == 1 {
                        format!("z{}", self.conductor)
                    } else {
                        format!("z{}^{j}", self.conductor)
                    };
                    if abs.is_one() && den.is_one() {
                        root
                    } else {
                        format!("{mag}*{root}")
                    }
                }
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    conductor: u64,
    coefficients: Vec<String>,
}

impl<T: Coefficient> Serialize for CyclotomicNumber<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coefficients = self
            .coeffs
            .iter()
            .map(|c| {
                let (n, d) = c.to_num_den();
                format!("{n}/{d}")
            })
            .collect();
        CyclotomicRepr {
            conductor: self.conductor,
            coefficients,
        }
        .serialize(s)
    }
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_rational(s: &str) -> Result<(BigInt, BigInt)> {
    let bad = || Error::schema(format!("malformed rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (
            BigInt::from_str(n.trim()).map_err(|_| bad())?,
            BigInt::from_str(d.trim()).map_err(|_| bad())?,
        ),
        None => (BigInt::from_str(s.trim()).map_err(|_| bad())?, BigInt::one()),
    };
    if d.is_zero() {
        return Err(bad());
    }
    let g = n.gcd(&d);
    let sign = if d.is_negative() { -BigInt::one() } else { BigInt::one() };
    Ok((&n / &g * &sign, &d / &g * &sign))
}

impl<'de, T: Coefficient> Deserialize<'de> for CyclotomicNumber<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CyclotomicRepr::deserialize(d)?;
        let coeffs = repr
            .coefficients
            .iter()
            .map(|s| {
                let (n, d) = parse_rational(s).map_err(D::Error::custom)?;
                T::from_num_den(&n, &d)
                    .ok_or_else(|| D::Error::custom(format!("coefficient {s} not representable")))
            })
            .collect::<std::result::Result<Vec<T>, _>>()?;
        CyclotomicNumber::from_coefficients(repr.conductor, coeffs).map_err(D::Error::custom)
    }
}

/// Largest extension degree `m` of a residue field `F_{p^m}`.
pub const MAX_EXTENSION_DEGREE: usize = 64;

/// The residue field `F_q` together with the image of `ζ_e`.
#[derive(Clone, Debug)]
pub struct FiniteFieldSpec {
    pub p: u32,
    /// Exponent `e` whose roots of unity are mapped.
    pub exponent: u64,
    /// `p'`-part of the exponent.
    pub exponent_p_prime: u64,
    /// Extension degree `m` with `q = p^m`.
    pub degree: usize,
    /// Monic modulus, low degree first.
    pub modulus: Vec<u32>,
    pub field: ExtField,
    /// Powers `w^k`, `0 <= k < e_{p'}`, of the distinguished root `w`.
    root_powers: Vec<ExtElem>,
}

impl FiniteFieldSpec {
    /// `w^k` where `w` is the image of `ζ_e`.
    pub fn root_power(&self, k: u64) -> &ExtElem {
        &self.root_powers[(k % self.exponent_p_prime) as usize]
    }

    pub fn root(&self) -> &ExtElem {
        self.root_power(1)
    }

    /// `q = p^m`, when it fits.
    pub fn q(&self) -> Option<u128> {
        self.field.order()
    }

    /// `q` as a decimal string (may exceed 128 bits in principle).
    pub fn q_string(&self) -> String {
        num_bigint::BigUint::from(self.p).pow(self.degree as u32).to_string()
    }

    fn with_root(p: u32, exponent: u64, field: ExtField, root: ExtElem) -> Self {
        let e_pp = exponent / p_part(exponent, p as u64);
        let mut root_powers = Vec::with_capacity(e_pp as usize);
        let mut cur = field.one();
        for _ in 0..e_pp {
            root_powers.push(cur.clone());
            cur = field.mul(&cur, &root);
        }
        debug_assert!(field.is_one(&cur));
        Self {
            p,
            exponent,
            exponent_p_prime: e_pp,
            degree: field.degree(),
            modulus: field.modulus().to_vec(),
            field,
            root_powers,
        }
    }
}

/// The admissible moduli for `(p, e)`: the distinct irreducible factors of
/// `Φ_{e_{p'}}` over `F_p`, sorted by their coefficient vectors `(c_0, …, c_{m-1})`.
pub fn admissible_moduli(p: u32, e: u64) -> Vec<Vec<u32>> {
    let fp = PrimeField::new(p);
    let e_pp = e / p_part(e, p as u64);
    let m = multiplicative_order(p as u64 % e_pp.max(1), e_pp) as usize;
    // any irreducible polynomial of degree m
    let mut base = None;
    for idx in 0..u128::MAX {
        let mut poly: Vec<u32> = Vec::with_capacity(m + 1);
        let mut t = idx;
        for _ in 0..m {
            poly.push((t % p as u128) as u32);
            t /= p as u128;
        }
        poly.push(1);
        if poly::is_irreducible(&fp, &poly) {
            base = Some(poly);
            break;
        }
    }
    let field = ExtField::new(p, base.expect("irreducible polynomials exist in every degree"));
    let q_minus_1 = num_bigint::BigUint::from(p).pow(m as u32) - 1u32;
    let limbs = (q_minus_1 / e_pp).to_u64_digits();
    let primes = crate::numtheory::prime_factors(e_pp);
    let mut b = None;
    // the search stops long before the index range is exhausted
    for idx in 1..u128::MAX {
        let a = field.element_from_index(idx);
        let c = field.pow_big(&a, &limbs);
        if primes.iter().all(|&r| !field.is_one(&field.pow(&c, e_pp / r))) {
            b = Some(c);
            break;
        }
    }
    let b = b.expect("cyclic multiplicative group has elements of every dividing order");
    let mut moduli: Vec<Vec<u32>> = Vec::new();
    let mut seen = vec![false; e_pp.max(2) as usize];
    for k in 1..e_pp.max(2) {
        if (gcd(k, e_pp) != 1 && e_pp > 1) || seen[k as usize] {
            continue;
        }
        // k p^j gives a conjugate root with the same minimal polynomial
        let mut c = k;
        loop {
            seen[c as usize] = true;
            c = (c * p as u64) % e_pp.max(2);
            if c == k || e_pp == 1 {
                break;
            }
        }
        let r = field.pow(&b, k);
        let mp = minimal_polynomial(&field, &r, m);
        if !moduli.contains(&mp) {
            moduli.push(mp);
        }
    }
    moduli.sort_by(|x, y| x[..m].cmp(&y[..m]));
    moduli
}

/// Minimal polynomial of `a` over `F_p`, given that it has degree `m`.
fn minimal_polynomial(field: &ExtField, a: &ExtElem, m: usize) -> Vec<u32> {
    // Π_{j<m} (x - a^{p^j}) computed with coefficients in F_q
    let mut coeffs: Vec<ExtElem> = vec![field.one()];
    let mut conj = a.clone();
    for _ in 0..m {
        let mut next = vec![field.zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], c);
            let t = field.mul(c, &conj);
            next[i] = field.sub(&next[i], &t);
        }
        coeffs = next;
        conj = field.frobenius(&conj);
    }
    coeffs
        .iter()
        .map(|c| field.to_prime(c).expect("minimal polynomial has prime-field coefficients"))
        .collect()
}

/// The canonical residue field for prime `p` and exponent `e`.
pub fn field_spec_for(p: u32, e: u64) -> Result<FiniteFieldSpec> {
    field_spec_variant(p, e, 0)
}

/// An alternative choice of residue field and prime ideal.
///
/// Variant `v` uses the `v`-th admissible modulus (cyclically). When there is
/// only one admissible modulus, variant `v` instead maps `ζ_e` to `x^k` for the
/// `v`-th exponent `k` prime to `e_{p'}`, which selects a different prime ideal.
pub fn field_spec_variant(p: u32, e: u64, variant: usize) -> Result<FiniteFieldSpec> {
    if !crate::numtheory::is_prime(p as u64) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if e == 0 {
        return Err(Error::domain("exponent must be positive"));
    }
    let e_pp = e / p_part(e, p as u64);
    let m = multiplicative_order(p as u64 % e_pp.max(1), e_pp) as usize;
    if m > MAX_EXTENSION_DEGREE {
        return Err(Error::resource(format!(
            "residue field of degree {m} over F_{p} exceeds the limit {MAX_EXTENSION_DEGREE}"
        )));
    }
    let moduli = admissible_moduli(p, e);
    if moduli.len() > 1 || variant == 0 {
        let f = ExtField::new(p, moduli[variant % moduli.len()].clone());
        let root = f.generator();
        return Ok(FiniteFieldSpec::with_root(p, e, f, root));
    }
    let units: Vec<u64> = (1..e_pp.max(2)).filter(|&k| gcd(k, e_pp) == 1).collect();
    let k = units[variant % units.len()];
    let f = ExtField::new(p, moduli[0].clone());
    let root = f.pow(&f.generator(), k);
    Ok(FiniteFieldSpec::with_root(p, e, f, root))
}
