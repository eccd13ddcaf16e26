//! Scalar fields used by the linear algebra layer.
//!
//! Fields carry runtime parameters (the characteristic, the modulus of an
//! extension), so arithmetic goes through a field context value rather than
//! through operator overloading on the elements themselves.

use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;

use num_traits::{Num, Signed};
use smallvec::SmallVec;

use crate::poly;

/// A commutative field with a runtime context.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Characteristic of the field, `0` for fields of characteristic zero.
    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        *acc = self.add(acc, &prod);
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The prime field `F_p`, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Self {
        assert!(p >= 2, "prime field needs p >= 2");
        Self { p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn reduce_i128(&self, n: i128) -> u32 {
        n.rem_euclid(self.p as i128) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.reduce_i64(n)
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        Some(mod_inverse(*a as u64, self.p as u64)? as u32)
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    #[inline]
    fn mul_add_assign(&self, acc: &mut u32, a: &u32, b: &u32) {
        *acc = ((*acc as u64 + *a as u64 * *b as u64) % self.p as u64) as u32;
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Element of an extension field `F_p[x]/(f)`: coefficients of `1, x, ..., x^{m-1}`.
pub type ExtElem = SmallVec<[u32; 8]>;

/// The finite field `F_{p^m}` realised as `F_p[x]/(f)` for a monic irreducible `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    p: u32,
    /// Monic modulus, low degree first, length `m + 1`.
    modulus: Vec<u32>,
}

impl ExtField {
    /// Builds the field; `modulus` must be monic and irreducible over `F_p`.
    pub fn new(p: u32, modulus: Vec<u32>) -> Self {
        assert!(modulus.len() >= 2, "modulus must have degree >= 1");
        assert_eq!(*modulus.last().unwrap(), 1, "modulus must be monic");
        Self { p, modulus }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn prime_field(&self) -> PrimeField {
        PrimeField::new(self.p)
    }

    /// The class of `x`.
    pub fn generator(&self) -> ExtElem {
        let m = self.degree();
        let mut v: ExtElem = SmallVec::from_elem(0, m);
        if m == 1 {
            v[0] = (self.p - self.modulus[0] % self.p) % self.p;
        } else {
            v[1] = 1;
        }
        v
    }

    pub fn from_prime(&self, a: u32) -> ExtElem {
        let mut v: ExtElem = SmallVec::from_elem(0, self.degree());
        v[0] = a % self.p;
        v
    }

    /// The prime-field value of `a`, if `a` lies in `F_p`.
    pub fn to_prime(&self, a: &ExtElem) -> Option<u32> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    /// `a * s` for a prime-field scalar `s`.
    pub fn scale(&self, a: &ExtElem, s: u32) -> ExtElem {
        let p = self.p as u64;
        a.iter().map(|&c| ((c as u64 * s as u64) % p) as u32).collect()
    }

    /// `acc += a * s` for a prime-field scalar `s`.
    pub fn scale_add_assign(&self, acc: &mut ExtElem, a: &ExtElem, s: u32) {
        if s == 0 {
            return;
        }
        let p = self.p as u64;
        for (x, &c) in acc.iter_mut().zip(a.iter()) {
            *x = ((*x as u64 + c as u64 * s as u64) % p) as u32;
        }
    }

    /// The Frobenius map `a ↦ a^p`.
    pub fn frobenius(&self, a: &ExtElem) -> ExtElem {
        self.pow(a, self.p as u64)
    }

    /// `a^e` for an exponent given as little-endian `u64` limbs.
    pub fn pow_big(&self, a: &ExtElem, limbs: &[u64]) -> ExtElem {
        let mut acc = self.one();
        for limb in limbs.iter().rev() {
            for bit in (0..64).rev() {
                acc = self.mul(&acc, &acc);
                if (limb >> bit) & 1 == 1 {
                    acc = self.mul(&acc, a);
                }
            }
        }
        acc
    }

    /// Element from its index in the base-`p` enumeration of coefficient vectors.
    pub fn element_from_index(&self, mut idx: u128) -> ExtElem {
        let m = self.degree();
        let mut v: ExtElem = SmallVec::from_elem(0, m);
        for c in v.iter_mut() {
            *c = (idx % self.p as u128) as u32;
            idx /= self.p as u128;
        }
        v
    }

    /// Number of elements, if it fits in `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.degree() as u32)
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        SmallVec::from_elem(0, self.degree())
    }
    fn one(&self) -> ExtElem {
        self.from_prime(1)
    }
    fn from_i64(&self, n: i64) -> ExtElem {
        self.from_prime(n.rem_euclid(self.p as i64) as u32)
    }
    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let p = self.p;
        a.iter()
            .zip(b.iter())
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect()
    }
    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let p = self.p;
        a.iter()
            .zip(b.iter())
            .map(|(&x, &y)| if x >= y { x - y } else { x + p - y })
            .collect()
    }
    fn neg(&self, a: &ExtElem) -> ExtElem {
        let p = self.p;
        a.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect()
    }
    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let m = self.degree();
        let p = self.p as u64;
        if m == 1 {
            let mut v = ExtElem::new();
            v.push(((a[0] as u64 * b[0] as u64) % p) as u32);
            return v;
        }
        let mut buf: SmallVec<[u64; 16]> = SmallVec::from_elem(0, 2 * m - 1);
        // each slot receives at most 2m products below p², so reduction can be
        // deferred while 2m p² fits in a u64
        let lazy = (2 * m as u128) * (p as u128) * (p as u128) < u64::MAX as u128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            if lazy {
                for (slot, &y) in buf[i..i + m].iter_mut().zip(b.iter()) {
                    *slot += x * y as u64;
                }
            } else {
                for (slot, &y) in buf[i..i + m].iter_mut().zip(b.iter()) {
                    *slot = (*slot + x * y as u64) % p;
                }
            }
        }
        for d in (m..2 * m - 1).rev() {
            let c = buf[d] % p;
            if c == 0 {
                continue;
            }
            buf[d] = 0;
            // x^m = -(f_0 + ... + f_{m-1} x^{m-1})
            for k in 0..m {
                let f = self.modulus[k] as u64;
                if f != 0 {
                    let slot = &mut buf[d - m + k];
                    *slot += (p - f) * c;
                    if !lazy {
                        *slot %= p;
                    }
                }
            }
        }
        buf[..m].iter().map(|&c| (c % p) as u32).collect()
    }
    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        let fp = self.prime_field();
        let a_poly = poly::trim(a.to_vec());
        let (g, s, _) = poly::ext_gcd(&fp, &a_poly, &self.modulus);
        // g is a nonzero constant since the modulus is irreducible
        if g.len() != 1 {
            return None;
        }
        let ginv = fp.inv(&g[0])?;
        let mut out: ExtElem = SmallVec::from_elem(0, self.degree());
        for (i, c) in s.iter().enumerate() {
            out[i] = fp.mul(c, &ginv);
        }
        Some(out)
    }
    fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
}

/// The rational numbers, with elements of any exact `num-traits` rational type
/// (`Ratio<i64>`, `BigRational`, ...).
#[derive(Debug)]
pub struct RationalField<T>(PhantomData<T>);

impl<T> RationalField<T> {
    pub fn new() -> Self {
        Self(PhantomData)
    }
}

impl<T> Default for RationalField<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for RationalField<T> {
    fn clone(&self) -> Self {
        Self(PhantomData)
    }
}

impl<T> Field for RationalField<T>
where
    T: Num + Signed + Clone + Eq + Hash + Debug + Send + Sync + num_traits::FromPrimitive,
{
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn from_i64(&self, n: i64) -> T {
        T::from_i64(n).expect("integer representable in rational type")
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn inv(&self, a: &T) -> Option<T> {
        if a.is_zero() {
            None
        } else {
            Some(T::one() / a.clone())
        }
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7);
        for a in 1..7u32 {
            let b = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &b), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn f4_arithmetic() {
        // F_4 = F_2[x]/(x^2 + x + 1)
        let f = ExtField::new(2, vec![1, 1, 1]);
        let x = f.generator();
        let x2 = f.mul(&x, &x);
        assert_eq!(x2.as_slice(), &[1, 1]);
        let x3 = f.mul(&x2, &x);
        assert!(f.is_one(&x3));
        let xi = f.inv(&x).unwrap();
        assert_eq!(xi, x2);
    }

    #[test]
    fn extension_inverse_roundtrip() {
        // F_27 = F_3[x]/(x^3 + 2x + 1)
        let f = ExtField::new(3, vec![1, 2, 0, 1]);
        for idx in 1..27u128 {
            let a = f.element_from_index(idx);
            let b = f.inv(&a).unwrap();
            assert!(f.is_one(&f.mul(&a, &b)), "{a:?}");
        }
    }

    #[test]
    fn rational_field_generic() {
        let q = RationalField::<Ratio<i64>>::new();
        let a = Ratio::new(3, 4);
        assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
    }

    proptest::proptest! {
        #[test]
        fn extension_product_matches_polynomial_remainder(
            p in proptest::sample::select(vec![2u32, 3, 7, 65521, 4294967291]),
            m in 2usize..70,
            seed in proptest::prelude::any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut modulus: Vec<u32> = (0..m).map(|_| rng.random_range(0..p)).collect();
            modulus.push(1);
            let f = ExtField::new(p, modulus.clone());
            let a: ExtElem = (0..m).map(|_| rng.random_range(0..p)).collect();
            let b: ExtElem = (0..m).map(|_| rng.random_range(0..p)).collect();
            let fp = PrimeField::new(p);
            let mut expected = crate::poly::rem(&fp, &crate::poly::mul(&fp, &a, &b), &modulus);
            expected.resize(m, 0);
            proptest::prop_assert_eq!(f.mul(&a, &b).to_vec(), expected);
        }
    }
}
