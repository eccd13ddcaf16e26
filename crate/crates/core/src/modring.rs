//! The algebra `k ⊗ R(G)` for a prime `p`: radical, Loewy series, blocks,
//! Cartan multiplicities, Ext dimensions and the associated invariants.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chartab::{CharacterTable, StructureConstants};
use crate::cyclonum::{field_spec_for, FiniteFieldSpec};
use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField, Field, PrimeField};
use crate::linalg::{null_space, rank, EchelonBasis};
use crate::numtheory::{is_prime, multiplicative_order, p_part, p_prime_projector};
use crate::permgroup::seeded_rng;
use crate::Cyclotomic;

/// Largest degree accepted by [`ModularCharacterRing::ext_dimensions`].
pub const MAX_EXT_DEGREE: usize = 20;
/// Largest `p^r` for which nilpotent elements are enumerated one by one.
pub const NILPOTENT_ENUMERATION_LIMIT: u64 = 1 << 16;
/// Cap on the dimension of a syzygy module in the minimal resolution.
const SYZYGY_DIMENSION_CAP: usize = 4096;

/// A commutative algebra with basis `0..r` given by sparse structure constants.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    field: F,
    r: usize,
    /// `products[i * r + j]` lists the nonzero `(k, n_ijk)`.
    products: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> Algebra<F> {
    pub fn from_constants(field: F, sc: &StructureConstants) -> Self {
        let r = sc.rank();
        let products = (0..r * r)
            .map(|ij| {
                sc.product_row(ij / r, ij % r)
                    .iter()
                    .enumerate()
                    .filter(|(_, &n)| n != 0)
                    .map(|(k, &n)| (k, field.from_i64(n as i64)))
                    .filter(|(_, c)| !field.is_zero(c))
                    .collect()
            })
            .collect();
        Self { field, r, products }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.r];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.r];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, n) in &self.products[i * self.r + j] {
                    f.mul_add_assign(&mut out[*k], &c, n);
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[F::Elem], mut e: u64) -> Vec<F::Elem> {
        let mut result = self.basis_vector(0);
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn is_zero_vec(&self, x: &[F::Elem]) -> bool {
        x.iter().all(|c| self.field.is_zero(c))
    }

    /// Bases of `I, I^2, I^3, …` for an ideal `I`, stopping before the zero ideal.
    ///
    /// `I^{i+1}` is spanned by the products of a basis of `I^i` with a basis of `I`.
    pub fn ideal_powers(&self, ideal: &[Vec<F::Elem>]) -> Vec<Vec<Vec<F::Elem>>> {
        let mut out = Vec::new();
        if ideal.is_empty() {
            return out;
        }
        out.push(ideal.to_vec());
        loop {
            let last = out.last().unwrap();
            let products: Vec<Vec<F::Elem>> = last
                .par_iter()
                .flat_map_iter(|x| ideal.iter().map(move |y| self.mul(x, y)))
                .collect();
            let mut basis = EchelonBasis::new(self.field.clone(), self.r);
            for v in products {
                basis.insert(v);
                if basis.len() == last.len() {
                    break;
                }
            }
            if basis.is_empty() {
                return out;
            }
            let (rows, _) = basis.into_rref();
            out.push(rows);
        }
    }
}

/// `k ⊗ R(G)` for a prime `p`, with `k = F_q` large enough to contain the
/// character values modulo a prime above `p`.
pub struct ModularCharacterRing<'a> {
    pub table: &'a CharacterTable,
    pub p: u64,
    pub spec: FiniteFieldSpec,
    pub constants: StructureConstants,
    pub p_regular: Vec<usize>,
    /// `eval[c][i]` is the reduction of `χ_i` on the `c`-th p-regular class.
    pub eval: Vec<Vec<ExtElem>>,
    /// Class `D` to the p-regular class of `(D)_{p'}`.
    pub section: Vec<usize>,
    prime_algebra: Algebra<PrimeField>,
    ext_algebra: Algebra<ExtField>,
}

/// Bases of the powers of the radical.
#[derive(Clone, Debug)]
pub struct LoewyData {
    /// `d_0, d_1, …, d_{ℓ-1}`, all nonzero.
    pub d: Vec<usize>,
    /// `powers[i]` is a basis of `Rad^{i+1}` over `F_p`.
    pub powers: Vec<Vec<Vec<u32>>>,
}

impl LoewyData {
    pub fn loewy_length(&self) -> usize {
        self.d.len()
    }
}

/// Invariants of the block attached to a p-regular class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockInvariants {
    pub class: usize,
    pub dimension: usize,
    pub d_sequence: Vec<usize>,
    pub loewy: usize,
    pub ext1: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ext: Option<Vec<usize>>,
    #[serde(skip)]
    pub section_classes: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub name: String,
    pub status: Status,
    pub details: String,
}

impl Verification {
    pub fn new(name: impl Into<String>, status: Status, details: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status,
            details: details.into(),
        }
    }

    pub fn check(name: impl Into<String>, ok: bool, details: impl Into<String>) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, details)
    }
}

/// The JSON invariant report.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub group: String,
    pub p: u64,
    pub q: String,
    pub classes: usize,
    pub p_regular_classes: usize,
    pub d_sequence: Vec<usize>,
    pub loewy: usize,
    pub s_p: usize,
    pub blocks: Vec<BlockInvariants>,
    pub verifications: Vec<Verification>,
}

impl InvariantReport {
    /// The principal block.
    pub fn principal(&self) -> &BlockInvariants {
        self.blocks.iter().find(|b| b.class == 0).expect("identity class is p-regular")
    }

    /// `ℓ=3 S=3 d=5,2,1 ℓ(1)=3 ext¹=1`
    pub fn summary_line(&self) -> String {
        let b = self.principal();
        format!(
            "ℓ={} S={} d={} ℓ(1)={} ext¹={}",
            self.loewy,
            self.s_p,
            join(&self.d_sequence),
            b.loewy,
            b.ext1
        )
    }
}

pub fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Builds `k ⊗ R(G)`; computes structure constants from the table.
pub fn build_mod_ring(table: &CharacterTable, p: u64) -> Result<ModularCharacterRing<'_>> {
    let sc = table.structure_constants()?;
    build_mod_ring_with(table, p, sc)
}

/// Builds `k ⊗ R(G)` from precomputed structure constants.
pub fn build_mod_ring_with(
    table: &CharacterTable,
    p: u64,
    constants: StructureConstants,
) -> Result<ModularCharacterRing<'_>> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::domain(format!("{p} is not a supported prime")));
    }
    // the residue field only has to contain the reduced character values
    let spec = field_spec_for(p as u32, table.value_exponent())?;
    build_mod_ring_over(table, constants, spec)
}

/// Builds `k ⊗ R(G)` over a given residue field, e.g. one from
/// [`field_spec_variant`](crate::cyclonum::field_spec_variant).
pub fn build_mod_ring_over(
    table: &CharacterTable,
    constants: StructureConstants,
    spec: FiniteFieldSpec,
) -> Result<ModularCharacterRing<'_>> {
    let p = spec.p as u64;
    if !spec.exponent.is_multiple_of(table.value_exponent()) {
        return Err(Error::domain("residue field does not contain the character values"));
    }
    let p_regular = table.p_regular_classes(p);
    let eval = p_regular
        .iter()
        .map(|&c| {
            table
                .values
                .iter()
                .map(|row| row[c].reduce_mod_p(&spec))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let section: Vec<usize> = table
        .classes
        .iter()
        .map(|c| c.power(p_prime_projector(c.element_order, p) as i64))
        .collect();
    for &c in &p_regular {
        if section[c] != c {
            return Err(Error::consistency(format!("section map moves p-regular class {c}")));
        }
    }
    if section.iter().any(|&c| table.classes[c].element_order.is_multiple_of(p)) {
        return Err(Error::consistency("section map lands outside the p-regular classes"));
    }
    if rank(&spec.field, &eval) != p_regular.len() {
        return Err(Error::consistency("reduced evaluations are not linearly independent"));
    }
    let prime_algebra = Algebra::from_constants(PrimeField::new(p as u32), &constants);
    let ext_algebra = Algebra::from_constants(spec.field.clone(), &constants);
    Ok(ModularCharacterRing {
        table,
        p,
        spec,
        constants,
        p_regular,
        eval,
        section,
        prime_algebra,
        ext_algebra,
    })
}

impl<'a> ModularCharacterRing<'a> {
    pub fn num_classes(&self) -> usize {
        self.table.num_classes()
    }

    pub fn prime_field(&self) -> PrimeField {
        PrimeField::new(self.p as u32)
    }

    pub fn prime_algebra(&self) -> &Algebra<PrimeField> {
        &self.prime_algebra
    }

    pub fn ext_algebra(&self) -> &Algebra<ExtField> {
        &self.ext_algebra
    }

    pub fn is_semisimple(&self) -> bool {
        self.p_regular.len() == self.num_classes()
    }

    /// Kernel of the evaluation map over `F_q`, in reduced echelon form.
    pub fn radical_basis_ext(&self) -> Vec<Vec<ExtElem>> {
        null_space(&self.spec.field, &self.eval, self.num_classes())
    }

    /// Basis of the radical. The kernel is computed over `F_q`; it is defined
    /// over `F_p`, so its reduced echelon basis has prime-field entries.
    pub fn radical_basis(&self) -> Result<Vec<Vec<u32>>> {
        let field = &self.spec.field;
        self.radical_basis_ext()
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| field.to_prime(x))
                    .collect::<Option<Vec<u32>>>()
                    .ok_or_else(|| Error::consistency("radical is not defined over the prime field"))
            })
            .collect()
    }

    pub fn loewy_series(&self) -> Result<LoewyData> {
        let rad = self.radical_basis()?;
        let powers = self.prime_algebra.ideal_powers(&rad);
        let mut d = vec![self.num_classes()];
        d.extend(powers.iter().map(|b| b.len()));
        Ok(LoewyData { d, powers })
    }

    /// The d-sequence computed entirely over `F_q`.
    pub fn loewy_sequence_over_extension(&self) -> Vec<usize> {
        let powers = self.ext_algebra.ideal_powers(&self.radical_basis_ext());
        let mut d = vec![self.num_classes()];
        d.extend(powers.iter().map(|b| b.len()));
        d
    }

    /// Classes of the p'-section of the p-regular class `c`.
    pub fn section_classes(&self, c: usize) -> Vec<usize> {
        (0..self.num_classes()).filter(|&d| self.section[d] == c).collect()
    }

    fn check_p_regular(&self, c: usize) -> Result<()> {
        if c >= self.num_classes() || self.section[c] != c {
            return Err(Error::domain(format!("class {c} is not p-regular")));
        }
        Ok(())
    }

    /// `e_C = Σ_{D ⊂ S_{p'}(C)} 1_D` in characteristic zero.
    pub fn block_idempotent_exact(&self, c: usize) -> Result<Vec<Cyclotomic>> {
        self.check_p_regular(c)?;
        let r = self.num_classes();
        let mut acc: Vec<Cyclotomic> = vec![Cyclotomic::zero(1); r];
        for d in self.section_classes(c) {
            for (a, x) in acc.iter_mut().zip(self.table.class_idempotent(d)) {
                *a = a.add(&x);
            }
        }
        Ok(acc.into_iter().map(|x| x.normalized()).collect())
    }

    /// The reduction `ē_C`; fails if `e_C` is not p-integral.
    pub fn block_idempotent(&self, c: usize) -> Result<Vec<ExtElem>> {
        self.block_idempotent_exact(c)?
            .iter()
            .map(|x| x.reduce_mod_p(&self.spec))
            .collect()
    }

    pub fn block_idempotents(&self) -> Result<Vec<(usize, Vec<ExtElem>)>> {
        self.p_regular
            .par_iter()
            .map(|&c| Ok((c, self.block_idempotent(c)?)))
            .collect()
    }

    /// Spanning set `{χ_j ē_C}` of the block.
    fn block_rows(&self, e: &[ExtElem]) -> Vec<Vec<ExtElem>> {
        (0..self.num_classes())
            .map(|j| self.ext_algebra.mul(&self.ext_algebra.basis_vector(j), e))
            .collect()
    }

    fn project(&self, rows: &[Vec<ExtElem>], x: &[u32]) -> Vec<ExtElem> {
        let f = &self.spec.field;
        let mut out = vec![f.zero(); self.num_classes()];
        for (xj, row) in x.iter().zip(rows) {
            if *xj == 0 {
                continue;
            }
            for (o, v) in out.iter_mut().zip(row) {
                f.scale_add_assign(o, v, *xj);
            }
        }
        out
    }

    /// Block invariants for the p-regular class `c`, with `ext^i` up to `ext_degree` if given.
    pub fn block_invariants(
        &self,
        c: usize,
        loewy: &LoewyData,
        ext_degree: Option<usize>,
    ) -> Result<BlockInvariants> {
        let e = self.block_idempotent(c)?;
        let rows = self.block_rows(&e);
        let f = &self.spec.field;
        let mut d_sequence = vec![rank(f, &rows)];
        for basis in &loewy.powers {
            let images: Vec<Vec<ExtElem>> = basis.iter().map(|x| self.project(&rows, x)).collect();
            let d = rank(f, &images);
            if d == 0 {
                break;
            }
            d_sequence.push(d);
        }
        let ext1 = d_sequence.get(1).copied().unwrap_or(0) - d_sequence.get(2).copied().unwrap_or(0);
        let ext = match ext_degree {
            Some(n) => Some(self.ext_dimensions_with(c, &rows, n)?),
            None => None,
        };
        Ok(BlockInvariants {
            class: c,
            dimension: d_sequence[0],
            loewy: d_sequence.len(),
            ext1,
            ext,
            section_classes: self.section_classes(c).len(),
            d_sequence,
        })
    }

    pub fn all_block_invariants(&self, loewy: &LoewyData) -> Result<Vec<BlockInvariants>> {
        self.p_regular
            .par_iter()
            .map(|&c| self.block_invariants(c, loewy, None))
            .collect()
    }

    /// `S_p(G)`: the largest p'-section, counted in classes.
    pub fn s_p_invariant(&self) -> usize {
        self.p_regular
            .iter()
            .map(|&c| self.section_classes(c).len())
            .max()
            .unwrap_or(0)
    }

    /// The local algebra of the block of `c` in coordinates of an `F_q` basis,
    /// together with a basis of its radical.
    fn local_block(&self, rows: &[Vec<ExtElem>]) -> Result<LocalAlgebra<ExtField>> {
        let f = self.spec.field.clone();
        let mut basis = EchelonBasis::new(f.clone(), self.num_classes());
        for v in rows {
            basis.insert(v.clone());
        }
        let b = basis.rows().to_vec();
        let d = b.len();
        let coords = |v: &[ExtElem]| {
            basis
                .coordinates(v)
                .ok_or_else(|| Error::consistency("block is not closed under multiplication"))
        };
        let mut mult = vec![vec![Vec::new(); d]; d];
        for s in 0..d {
            for t in s..d {
                let c = coords(&self.ext_algebra.mul(&b[s], &b[t]))?;
                mult[t][s] = c.clone();
                mult[s][t] = c;
            }
        }
        let rad_rows: Vec<Vec<ExtElem>> = self
            .radical_basis()?
            .iter()
            .map(|x| self.project(rows, x))
            .collect();
        let mut rad = EchelonBasis::new(f.clone(), d);
        for v in &rad_rows {
            rad.insert(coords(v)?);
        }
        Ok(LocalAlgebra {
            field: f,
            mult,
            radical: rad.into_rref().0,
        })
    }

    /// `ext^0, …, ext^n` of the simple module of the block of `c`.
    pub fn ext_dimensions(&self, c: usize, n: usize) -> Result<Vec<usize>> {
        let e = self.block_idempotent(c)?;
        let rows = self.block_rows(&e);
        self.ext_dimensions_with(c, &rows, n)
    }

    fn ext_dimensions_with(&self, c: usize, rows: &[Vec<ExtElem>], n: usize) -> Result<Vec<usize>> {
        self.check_p_regular(c)?;
        if n > MAX_EXT_DEGREE {
            return Err(Error::resource(format!(
                "Ext degree {n} exceeds the limit {MAX_EXT_DEGREE}"
            )));
        }
        self.local_block(rows)?.betti_numbers(n)
    }

    /// Multiplicity of the simple module of `c2` in the projective cover of the
    /// simple module of `c1`, as the dimension of the joint generalised
    /// eigenspace of `ēv_{c2}` on the block of `c1`.
    pub fn cartan_multiplicity(&self, c1: usize, c2: usize) -> Result<usize> {
        self.check_p_regular(c1)?;
        self.check_p_regular(c2)?;
        let f = self.spec.field.clone();
        let e = self.block_idempotent(c1)?;
        let rows = self.block_rows(&e);
        let mut basis = EchelonBasis::new(f.clone(), self.num_classes());
        for v in &rows {
            basis.insert(v.clone());
        }
        let b = basis.rows().to_vec();
        let d = b.len();
        let weight_row = self.p_regular.iter().position(|&x| x == c2).unwrap();
        let mut stacked: Vec<Vec<ExtElem>> = Vec::new();
        for j in 0..self.num_classes() {
            let chi = self.ext_algebra.basis_vector(j);
            let lambda = &self.eval[weight_row][j];
            // matrix of (χ_j - λ) on the block, column t = coordinates of image of b_t
            let mut m = vec![vec![f.zero(); d]; d];
            for (t, bt) in b.iter().enumerate() {
                let img = self.ext_algebra.mul(&chi, bt);
                let co = basis
                    .coordinates(&img)
                    .ok_or_else(|| Error::consistency("block is not an ideal"))?;
                for (s, x) in co.into_iter().enumerate() {
                    m[s][t] = x;
                }
                m[t][t] = f.sub(&m[t][t], lambda);
            }
            let mut power = identity(&f, d);
            for _ in 0..d {
                power = mat_mul(&f, &power, &m);
            }
            stacked.extend(power);
        }
        Ok(d - rank(&f, &stacked))
    }

    /// Radical as the kernel of the `F_p`-linear map `x ↦ x^{p^N}` with `p^N ≥ r`.
    pub fn radical_by_frobenius(&self) -> Vec<Vec<u32>> {
        let r = self.num_classes();
        let alg = &self.prime_algebra;
        let mut big = 1u64;
        while big < r as u64 {
            big *= self.p;
        }
        let images: Vec<Vec<u32>> = (0..r)
            .into_par_iter()
            .map(|i| alg.pow(&alg.basis_vector(i), big))
            .collect();
        // kernel of a ↦ Σ a_i images[i]: null space of the transpose
        let transpose: Vec<Vec<u32>> = (0..r).map(|k| images.iter().map(|v| v[k]).collect()).collect();
        null_space(alg.field(), &transpose, r)
    }

    /// Number of nilpotent elements of `F_p ⊗ R(G)`, by enumeration, when `p^r` is small.
    pub fn count_nilpotents(&self) -> Option<u64> {
        let r = self.num_classes() as u32;
        let total = self.p.checked_pow(r).filter(|&t| t <= NILPOTENT_ENUMERATION_LIMIT)?;
        let alg = &self.prime_algebra;
        let mut big = 1u64;
        while big < r as u64 {
            big *= self.p;
        }
        let p = self.p;
        let count = (0..total)
            .into_par_iter()
            .filter(|&idx| {
                let mut t = idx;
                let x: Vec<u32> = (0..r)
                    .map(|_| {
                        let c = (t % p) as u32;
                        t /= p;
                        c
                    })
                    .collect();
                alg.is_zero_vec(&alg.pow(&x, big))
            })
            .count();
        Some(count as u64)
    }

    /// Checks `f^{p^e} = 0` on the radical basis, where `p^e` is the largest
    /// p-part of an element order, and `θ_p(f) ≡ f^p` on random integral elements.
    pub fn nilpotency_exponent_check(&self, samples: usize, seed: u64) -> Result<Vec<Verification>> {
        let p_e = self
            .table
            .classes
            .iter()
            .map(|c| p_part(c.element_order, self.p))
            .max()
            .unwrap_or(1);
        let alg = &self.prime_algebra;
        let rad = self.radical_basis()?;
        let failures = rad
            .iter()
            .filter(|f| !alg.is_zero_vec(&alg.pow(f, p_e)))
            .count();
        let mut out = vec![Verification::check(
            "nilpotency exponent",
            failures == 0,
            format!("f^{p_e} = 0 on {} radical basis vectors, {failures} failures", rad.len()),
        )];
        let mut rng = seeded_rng(seed);
        let fp = self.prime_field();
        let mut bad = 0;
        for _ in 0..samples {
            let f: Vec<i64> = (0..self.num_classes()).map(|_| rng.random_range(-2..=2)).collect();
            let theta = self.table.adams_operation(&f, self.p as i64)?;
            let lhs: Vec<u32> = theta.iter().map(|&x| fp.reduce_i64(x)).collect();
            let fr: Vec<u32> = f.iter().map(|&x| fp.reduce_i64(x)).collect();
            if lhs != alg.pow(&fr, self.p) {
                bad += 1;
            }
        }
        out.push(Verification::check(
            "adams operation reduces to p-th power",
            bad == 0,
            format!("{samples} samples, {bad} failures"),
        ));
        Ok(out)
    }

    /// Checks on the block idempotents: orthogonality, sum, primitivity.
    pub fn idempotent_checks(&self, idem: &[(usize, Vec<ExtElem>)]) -> Verification {
        let alg = &self.ext_algebra;
        let f = &self.spec.field;
        let mut problems = Vec::new();
        let mut sum = vec![f.zero(); self.num_classes()];
        for (a, (ca, ea)) in idem.iter().enumerate() {
            for (x, y) in sum.iter_mut().zip(ea) {
                *x = f.add(x, y);
            }
            for (cb, eb) in idem.iter().skip(a) {
                let prod = alg.mul(ea, eb);
                let expected = if ca == cb { ea.clone() } else { vec![f.zero(); self.num_classes()] };
                if prod != expected {
                    problems.push(format!("ē_{ca} ē_{cb}"));
                }
            }
        }
        if sum != alg.basis_vector(0) {
            problems.push("Σ ē_C ≠ 1".into());
        }
        Verification::check(
            "block idempotents",
            problems.is_empty(),
            if problems.is_empty() {
                format!("{} orthogonal idempotents summing to 1", idem.len())
            } else {
                problems.join("; ")
            },
        )
    }

    /// The full invariant report with the standard verifications.
    pub fn report(&self, seed: u64) -> Result<InvariantReport> {
        let loewy = self.loewy_series()?;
        let blocks = self.all_block_invariants(&loewy)?;
        let s_p = self.s_p_invariant();
        let mut verifications = Vec::new();
        let r = self.num_classes();
        verifications.push(Verification::check(
            "radical dimension",
            loewy.d.get(1).copied().unwrap_or(0) == r - self.p_regular.len(),
            format!("dim Rad = {} - {}", r, self.p_regular.len()),
        ));
        let mut blockwise = Vec::new();
        for i in 0..loewy.d.len() {
            blockwise.push(blocks.iter().map(|b| b.d_sequence.get(i).copied().unwrap_or(0)).sum::<usize>());
        }
        verifications.push(Verification::check(
            "blockwise Loewy sum",
            blockwise == loewy.d,
            format!("Σ_C d_i(C) = {}", join(&blockwise)),
        ));
        let dims_ok = blocks.iter().all(|b| b.dimension == b.section_classes);
        verifications.push(Verification::check(
            "block dimensions",
            dims_ok,
            "block dimension equals section class count",
        ));
        let local = blocks.iter().all(|b| b.d_sequence.get(1).copied().unwrap_or(0) + 1 == b.dimension);
        verifications.push(Verification::check(
            "primitive idempotents",
            local,
            "every block radical has codimension 1",
        ));
        let max_block = blocks.iter().map(|b| b.loewy).max().unwrap_or(0);
        verifications.push(Verification::check(
            "loewy bound",
            max_block == loewy.loewy_length() && loewy.loewy_length() <= s_p,
            format!("ℓ = max ℓ(C) = {max_block}, S = {s_p}"),
        ));
        let idem = self.block_idempotents()?;
        verifications.push(self.idempotent_checks(&idem));
        verifications.extend(self.nilpotency_exponent_check(100, seed)?);
        Ok(InvariantReport {
            group: self.table.name.clone(),
            p: self.p,
            q: self.spec.q_string(),
            classes: r,
            p_regular_classes: self.p_regular.len(),
            d_sequence: loewy.d.clone(),
            loewy: loewy.loewy_length(),
            s_p,
            blocks,
            verifications,
        })
    }
}

/// Iterated `p`-power maps: the class of `g^{p^j}` for the least multiple `j`
/// of the order of `p` modulo `o_{p'}` with `p^j ≥ o_p`.
pub fn section_by_power_maps(table: &CharacterTable, p: u64) -> Vec<usize> {
    table
        .classes
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let o = c.element_order;
            let op = p_part(o, p);
            let opp = o / op;
            let t = multiplicative_order(p % opp.max(1), opp).max(1);
            let mut m = 0u64;
            let mut pm = 1u64;
            while pm < op {
                pm *= p;
                m += 1;
            }
            let j = m.div_ceil(t) * t;
            let mut cls = k;
            for _ in 0..j {
                cls = table.classes[cls].power(p as i64);
            }
            cls
        })
        .collect()
}

struct LocalAlgebra<F: Field> {
    field: F,
    /// `mult[s][t]` are the coordinates of `b_s b_t`.
    mult: Vec<Vec<Vec<F::Elem>>>,
    radical: Vec<Vec<F::Elem>>,
}

impl<F: Field> LocalAlgebra<F> {
    fn dim(&self) -> usize {
        self.mult.len()
    }

    fn mul(&self, a: &[F::Elem], x: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let d = self.dim();
        let mut out = vec![f.zero(); d];
        for (s, a_s) in a.iter().enumerate() {
            if f.is_zero(a_s) {
                continue;
            }
            for (t, x_t) in x.iter().enumerate() {
                if f.is_zero(x_t) {
                    continue;
                }
                let c = f.mul(a_s, x_t);
                for (o, m) in out.iter_mut().zip(&self.mult[s][t]) {
                    f.mul_add_assign(o, &c, m);
                }
            }
        }
        out
    }

    /// Slotwise product of `a` with an element of the free module `B^b`.
    fn act(&self, a: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        v.chunks(self.dim()).flat_map(|slot| self.mul(a, slot)).collect()
    }

    /// Ranks `b_0, …, b_n` of a minimal free resolution of the residue field.
    fn betti_numbers(&self, n: usize) -> Result<Vec<usize>> {
        let f = &self.field;
        let d = self.dim();
        let mut betti = vec![1];
        // syzygy module inside B^{b}, b = last Betti number
        let mut omega: Vec<Vec<F::Elem>> = self.radical.clone();
        let mut b = 1;
        for _ in 1..=n {
            let mut span = EchelonBasis::new(f.clone(), b * d);
            for rho in &self.radical {
                for w in &omega {
                    span.insert(self.act(rho, w));
                }
            }
            let mut gens = Vec::new();
            for w in &omega {
                if span.insert(w.clone()) {
                    gens.push(w.clone());
                }
            }
            let nb = gens.len();
            betti.push(nb);
            if betti.len() > n || nb == 0 {
                break;
            }
            if nb * d > SYZYGY_DIMENSION_CAP {
                return Err(Error::resource(format!(
                    "syzygy module of rank {nb} over a {d}-dimensional block is too large"
                )));
            }
            // images of the basis e_{j,s} of B^{nb} under e_{j,s} ↦ b_s g_j
            let mut images = Vec::with_capacity(nb * d);
            for g in &gens {
                for s in 0..d {
                    let mut unit = vec![f.zero(); d];
                    unit[s] = f.one();
                    images.push(self.act(&unit, g));
                }
            }
            let transpose: Vec<Vec<F::Elem>> = (0..b * d)
                .map(|k| images.iter().map(|v| v[k].clone()).collect())
                .collect();
            omega = null_space(f, &transpose, nb * d);
            b = nb;
        }
        while betti.len() <= n {
            betti.push(0);
        }
        Ok(betti)
    }
}

fn identity<F: Field>(f: &F, d: usize) -> Vec<Vec<F::Elem>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect()
}

fn mat_mul<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![f.zero(); n];
            for (x, brow) in row.iter().zip(b) {
                if f.is_zero(x) {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(brow) {
                    f.mul_add_assign(o, x, y);
                }
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::dixon_table;
    use crate::groups;

    fn table(name: &str) -> CharacterTable {
        dixon_table(&groups::builtin(name).unwrap(), name).unwrap()
    }

    #[test]
    fn s3_mod_3() {
        let t = table("S3");
        let r = build_mod_ring(&t, 3).unwrap();
        assert_eq!(r.p_regular, vec![0, 1]);
        let rad = r.radical_basis().unwrap();
        // 2(1 + sgn + 2 std), scaled to 1 on the free column
        assert_eq!(rad, vec![vec![2, 2, 1]]);
        let e0 = r.block_idempotent(0).unwrap();
        let e1 = r.block_idempotent(1).unwrap();
        let f = &r.spec.field;
        assert_eq!(e0, vec![f.from_prime(2), f.from_prime(2), f.zero()]);
        assert_eq!(e1, vec![f.from_prime(2), f.from_prime(1), f.zero()]);
    }

    #[test]
    fn a5_mod_5() {
        let t = table("A5");
        let r = build_mod_ring(&t, 5).unwrap();
        let l = r.loewy_series().unwrap();
        assert_eq!(l.d, vec![5, 2, 1]);
        assert_eq!(r.s_p_invariant(), 3);
        let b = r.block_invariants(0, &l, Some(3)).unwrap();
        assert_eq!((b.dimension, b.loewy, b.ext1), (3, 3, 1));
        assert_eq!(b.ext.as_ref().unwrap()[..2], [1, 1]);
    }

    #[test]
    fn klein_four() {
        let t = table("C2xC2");
        let r = build_mod_ring(&t, 2).unwrap();
        assert_eq!(r.radical_basis().unwrap().len(), 3);
        assert_eq!(r.loewy_series().unwrap().loewy_length(), 3);
        assert_eq!(r.s_p_invariant(), 4);
    }

    #[test]
    fn cyclic_two_ext_is_periodic() {
        let t = table("C2");
        let r = build_mod_ring(&t, 2).unwrap();
        assert_eq!(r.ext_dimensions(0, 6).unwrap(), vec![1; 7]);
        assert!(r.ext_dimensions(0, 21).is_err());
    }

    #[test]
    fn cartan_s4() {
        let t = table("S4");
        let r = build_mod_ring(&t, 2).unwrap();
        assert_eq!(r.cartan_multiplicity(0, 0).unwrap(), 4);
        let c3 = r.p_regular[1];
        assert_eq!(r.cartan_multiplicity(0, c3).unwrap(), 0);
        assert_eq!(r.cartan_multiplicity(c3, c3).unwrap(), 1);
    }

    #[test]
    fn cyclic_four_nilpotency() {
        let t = table("C4");
        let r = build_mod_ring(&t, 2).unwrap();
        let alg = r.prime_algebra();
        // a faithful linear character minus the trivial one
        let faithful = (0..4)
            .find(|&i| t.values[i].iter().filter(|v| v.equals(&crate::CyclotomicInteger::one())).count() == 1)
            .unwrap();
        let mut f = vec![0u32; 4];
        f[faithful] = 1;
        f[0] = 1; // -1 = 1 mod 2
        assert!(!alg.is_zero_vec(&alg.pow(&f, 2)));
        assert!(alg.is_zero_vec(&alg.pow(&f, 4)));
        assert!(r.nilpotency_exponent_check(10, 1).unwrap().iter().all(|v| v.status == Status::Pass));
    }

    #[test]
    fn radical_routes_agree() {
        let t = table("S4");
        for p in [2, 3] {
            let r = build_mod_ring(&t, p).unwrap();
            let dim = r.radical_basis().unwrap().len();
            assert_eq!(r.radical_by_frobenius().len(), dim);
            assert_eq!(r.count_nilpotents().unwrap(), p.pow(dim as u32));
            assert_eq!(section_by_power_maps(&t, p), r.section);
        }
    }
}
