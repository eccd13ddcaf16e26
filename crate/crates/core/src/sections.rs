//! p'-sections, class fusion, restriction and induction, and the checks
//! relating blocks of `G` to blocks of centralizers and subgroups.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::chartab::{dixon_table, CharacterTable};
use crate::error::{Error, Result};
use crate::field::{ExtElem, Field};
use crate::linalg::rank;
use crate::modring::{build_mod_ring, BlockInvariants, ModularCharacterRing, Status, Verification};
use crate::modring::section_by_power_maps;
use crate::numtheory::{euler_phi, p_part};
use crate::permgroup::{p_part_decomposition, PermutationGroup};
use crate::{Cyclotomic, Rational};

/// The partition of the classes of `G` into p'-sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionDecomposition {
    pub p: u64,
    /// Class `D` to the p-regular class `(D)_{p'}`.
    pub map: Vec<usize>,
    /// p-regular class to the classes of its section, ascending.
    pub fibers: BTreeMap<usize, Vec<usize>>,
}

impl SectionDecomposition {
    fn from_map(p: u64, map: Vec<usize>) -> Self {
        let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (d, &c) in map.iter().enumerate() {
            fibers.entry(c).or_default().push(d);
        }
        Self { p, map, fibers }
    }
}

/// Sections from the power tables: `(g)_{p'} = g^a` with `a ≡ 0 mod o_p`, `a ≡ 1 mod o_{p'}`.
pub fn section_decomposition(table: &CharacterTable, p: u64) -> SectionDecomposition {
    let map = table
        .classes
        .iter()
        .map(|c| c.power(crate::numtheory::p_prime_projector(c.element_order, p) as i64))
        .collect();
    SectionDecomposition::from_map(p, map)
}

/// Sections by iterating the `p`-power map only.
pub fn section_decomposition_by_power_maps(table: &CharacterTable, p: u64) -> SectionDecomposition {
    SectionDecomposition::from_map(p, section_by_power_maps(table, p))
}

/// Sections from class representatives, for a table computed from `group`.
pub fn section_decomposition_from_group(
    group: &PermutationGroup,
    table: &CharacterTable,
    p: u64,
) -> Result<SectionDecomposition> {
    let map = table
        .classes
        .iter()
        .map(|c| {
            let g = c
                .representative
                .as_ref()
                .ok_or_else(|| Error::schema("table has no class representatives"))?;
            let (_, gpp) = p_part_decomposition(g, p)?;
            table_class_of(group, table, &gpp)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SectionDecomposition::from_map(p, map))
}

/// Index in `table` of the class of `g`, assuming the table was computed from `group`.
fn table_class_of(group: &PermutationGroup, table: &CharacterTable, g: &crate::permgroup::Perm) -> Result<usize> {
    let k = group.class_index(g)?;
    match &table.classes[k].representative {
        Some(rep) if group.class_index(rep)? == k => Ok(k),
        _ => Err(Error::consistency("table classes are not in group order")),
    }
}

/// Compares the available routes to the section map.
pub fn verify_section_routes(
    group: Option<&PermutationGroup>,
    table: &CharacterTable,
    p: u64,
) -> Result<Verification> {
    let crt = section_decomposition(table, p);
    let iterated = section_decomposition_by_power_maps(table, p);
    let mut ok = crt == iterated;
    let mut routes = "power tables, iterated p-power map".to_string();
    if let Some(g) = group {
        if table.classes.iter().all(|c| c.representative.is_some()) {
            ok &= section_decomposition_from_group(g, table, p)? == crt;
            routes.push_str(", representatives");
        }
    }
    Ok(Verification::check("section routes", ok, routes))
}

/// Checks `|S_{p'}(C)| = #{classes of p-elements of C_G(g)}` for every p-regular `C`.
pub fn verify_section_cardinality(
    group: &PermutationGroup,
    table: &CharacterTable,
    p: u64,
) -> Result<Verification> {
    let sd = section_decomposition(table, p);
    let mut bad = Vec::new();
    for (&c, fiber) in &sd.fibers {
        let g = table.classes[c]
            .representative
            .as_ref()
            .ok_or_else(|| Error::schema("table has no class representatives"))?;
        let cent = group.centralizer(g)?;
        let count = cent
            .conjugacy_classes()?
            .classes
            .iter()
            .filter(|k| p_part(k.element_order, p) == k.element_order)
            .count();
        if count != fiber.len() {
            bad.push(format!("class {c}: {} vs {count}", fiber.len()));
        }
    }
    Ok(Verification::check(
        "section cardinality",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} sections", sd.fibers.len())
        } else {
            bad.join("; ")
        },
    ))
}

/// Fusion of the classes of a subgroup `H` into those of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFusion {
    pub map: Vec<usize>,
}

/// Computes the fusion from tables computed from `subgroup` and `group`.
pub fn class_fusion(
    group: &PermutationGroup,
    table_g: &CharacterTable,
    subgroup: &PermutationGroup,
    table_h: &CharacterTable,
) -> Result<ClassFusion> {
    if !group.contains_group(subgroup) {
        return Err(Error::domain("not a subgroup"));
    }
    let map = table_h
        .classes
        .iter()
        .map(|c| {
            let h = c
                .representative
                .as_ref()
                .ok_or_else(|| Error::schema("table has no class representatives"))?;
            table_class_of(group, table_g, h)
        })
        .collect::<Result<Vec<_>>>()?;
    let fusion = ClassFusion { map };
    validate_fusion(table_g, table_h, &fusion)?;
    Ok(fusion)
}

/// Element orders are preserved and `H`-class sizes over a `G`-class sum to at most its size.
pub fn validate_fusion(table_g: &CharacterTable, table_h: &CharacterTable, fusion: &ClassFusion) -> Result<()> {
    if fusion.map.len() != table_h.num_classes() {
        return Err(Error::domain("fusion has the wrong length"));
    }
    if !table_g.order.is_multiple_of(table_h.order) {
        return Err(Error::domain("subgroup order does not divide the group order"));
    }
    let mut weight = vec![0u64; table_g.num_classes()];
    for (d, &c) in fusion.map.iter().enumerate() {
        if c >= table_g.num_classes() || table_g.classes[c].element_order != table_h.classes[d].element_order {
            return Err(Error::domain(format!("fusion of class {d} does not preserve element order")));
        }
        weight[c] += table_h.classes[d].size;
    }
    if weight.iter().zip(&table_g.classes).any(|(&w, c)| w > c.size) || fusion.map[0] != 0 {
        return Err(Error::domain("fusion class sizes are inconsistent"));
    }
    Ok(())
}

/// `(1/|H|) Σ_D |D| a(D) conj b(D)` for rational cyclotomic class functions.
fn inner_product_rational(table: &CharacterTable, a: &[Cyclotomic], b: &[Cyclotomic]) -> Rational {
    let mut acc = Rational::zero();
    for (c, cls) in table.classes.iter().enumerate() {
        let t = a[c].mul(&b[c].conj());
        let phi = euler_phi(t.conductor());
        acc += t.trace() * BigRational::new(BigInt::from(cls.size), BigInt::from(phi));
    }
    acc / BigRational::from_integer(BigInt::from(table.order))
}

fn irreducible_values(table: &CharacterTable) -> Vec<Vec<Cyclotomic>> {
    table
        .values
        .iter()
        .map(|row| row.iter().map(|v| v.map_coefficients().unwrap()).collect())
        .collect()
}

/// Values of a rational cyclotomic combination of irreducible characters.
pub fn values_of_rational(table: &CharacterTable, coeffs: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let irr = irreducible_values(table);
    (0..table.num_classes())
        .map(|c| {
            let mut acc = Cyclotomic::zero(1);
            for (x, row) in coeffs.iter().zip(&irr) {
                if !x.is_zero() {
                    acc = acc.add(&x.mul(&row[c]));
                }
            }
            acc.normalized()
        })
        .collect()
}

/// Coefficients `⟨f, χ⟩` of a class function with cyclotomic values whose
/// coefficients on `Irr` are rational.
pub fn decompose_rational(table: &CharacterTable, values: &[Cyclotomic]) -> Vec<Rational> {
    irreducible_values(table)
        .iter()
        .map(|chi| inner_product_rational(table, values, chi))
        .collect()
}

/// `Res^G_H` on integer combinations of irreducible characters.
pub fn restrict_class_function(
    table_g: &CharacterTable,
    table_h: &CharacterTable,
    fusion: &ClassFusion,
    f: &[i64],
) -> Result<Vec<i64>> {
    let vals = table_g.values_of(f);
    let res: Vec<_> = fusion.map.iter().map(|&c| vals[c].clone()).collect();
    table_h.decompose(&res)
}

/// `Ind_H^G` via `Ind f(g) = |C_G(g)|/|H| Σ_{D ⊂ g^G ∩ H} |D| f(D)`.
pub fn induce_class_function(
    table_g: &CharacterTable,
    table_h: &CharacterTable,
    fusion: &ClassFusion,
    f: &[i64],
) -> Result<Vec<i64>> {
    let vals = table_h.values_of(f);
    let mut ind = Vec::with_capacity(table_g.num_classes());
    for (c, cls) in table_g.classes.iter().enumerate() {
        let mut acc = crate::CyclotomicInteger::zero(1);
        for (d, &fc) in fusion.map.iter().enumerate() {
            if fc == c {
                acc = acc.add(&vals[d].scale(&(table_h.classes[d].size as i64)));
            }
        }
        let cent = table_g.order / cls.size;
        let num = acc.scale(&(cent as i64));
        let h = table_h.order as i64;
        if num.coefficients().iter().any(|x| x % h != 0) {
            return Err(Error::consistency("induced class function is not integral"));
        }
        let coeffs: Vec<i64> = num.coefficients().iter().map(|x| x / h).collect();
        ind.push(crate::CyclotomicInteger::from_coefficients(num.conductor(), coeffs)?.normalized());
    }
    table_g.decompose(&ind)
}

/// Restriction of `e_C^G` compared with `Σ_{D} e_D^H` over p-regular `H`-classes
/// `D` fusing into `C`, coefficient by coefficient in characteristic zero.
pub fn verify_idempotent_restriction(
    table_g: &CharacterTable,
    table_h: &CharacterTable,
    fusion: &ClassFusion,
    p: u64,
) -> Result<Verification> {
    let ring_g = build_mod_ring(table_g, p)?;
    let ring_h = build_mod_ring(table_h, p)?;
    let mut bad = Vec::new();
    for &c in &ring_g.p_regular {
        let e = ring_g.block_idempotent_exact(c)?;
        let vals = values_of_rational(table_g, &e);
        let res: Vec<Cyclotomic> = fusion.map.iter().map(|&k| vals[k].clone()).collect();
        let lhs = decompose_rational(table_h, &res);
        // single summands may be irrational when G fuses Galois-conjugate H-classes
        let mut sum = vec![Cyclotomic::zero(1); table_h.num_classes()];
        for &d in &ring_h.p_regular {
            if fusion.map[d] == c {
                for (acc, x) in sum.iter_mut().zip(ring_h.block_idempotent_exact(d)?) {
                    *acc = acc.add(&x);
                }
            }
        }
        let rhs: Option<Vec<Rational>> = sum.into_iter().map(|x| x.normalized().as_rational()).collect();
        if rhs.as_deref() != Some(lhs.as_slice()) {
            bad.push(c);
        }
    }
    Ok(Verification::check(
        "restriction of block idempotents",
        bad.is_empty(),
        format!("{} p-regular classes, mismatches {:?}", ring_g.p_regular.len(), bad),
    ))
}

/// Invariants of the principal block of `group` (full Loewy data included).
pub fn principal_block(group: &PermutationGroup, name: &str, p: u64) -> Result<BlockInvariants> {
    let table = dixon_table(group, name)?;
    let ring = build_mod_ring(&table, p)?;
    let loewy = ring.loewy_series()?;
    ring.block_invariants(0, &loewy, None)
}

fn same_block(a: &BlockInvariants, b: &BlockInvariants) -> bool {
    a.dimension == b.dimension && a.d_sequence == b.d_sequence && a.ext1 == b.ext1
}

/// Compares the block of `(G, C)` with the principal block of `C_G(g)` for the
/// stored representative `g` of `C`.
pub fn verify_block_isomorphism(
    group: &PermutationGroup,
    ring: &ModularCharacterRing<'_>,
    block: &BlockInvariants,
) -> Result<Verification> {
    let c = block.class;
    let name = format!("block isomorphism C{c}");
    let g = match &ring.table.classes[c].representative {
        Some(g) => g,
        None => return Ok(Verification::new(name, Status::Skip, "no class representative")),
    };
    let cent = match group.centralizer(g) {
        Ok(h) => h,
        Err(Error::Resource(msg)) => return Ok(Verification::new(name, Status::Skip, msg)),
        Err(e) => return Err(e),
    };
    let local = match principal_block(&cent, "centralizer", ring.p) {
        Ok(b) => b,
        Err(Error::Resource(msg)) => return Ok(Verification::new(name, Status::Skip, msg)),
        Err(e) => return Err(e),
    };
    Ok(Verification::check(
        name,
        same_block(block, &local),
        format!(
            "|C_G(g)| = {}, d = {:?} vs {:?}, ext¹ {} vs {}",
            cent.order(),
            block.d_sequence,
            local.d_sequence,
            block.ext1,
            local.ext1
        ),
    ))
}

/// Restriction `Irr G → Z Irr H` as an integer matrix, row per character of `G`.
fn restriction_matrix(table_g: &CharacterTable, table_h: &CharacterTable, fusion: &ClassFusion) -> Result<Vec<Vec<i64>>> {
    (0..table_g.num_classes())
        .map(|i| {
            let mut e = vec![0i64; table_g.num_classes()];
            e[i] = 1;
            restrict_class_function(table_g, table_h, fusion, &e)
        })
        .collect()
}

/// For a subgroup of index prime to `p`: restriction is injective on the principal
/// block, and the principal blocks agree when `H` controls the fusion of p-elements.
pub fn verify_fusion_control(
    group: &PermutationGroup,
    subgroup: &PermutationGroup,
    p: u64,
) -> Result<Vec<Verification>> {
    let order_g = group.check_caps()?;
    let order_h = subgroup.check_caps()?;
    if (order_g / order_h) % p == 0 {
        return Err(Error::domain(format!("index {} is divisible by {p}", order_g / order_h)));
    }
    let table_g = dixon_table(group, "G")?;
    let table_h = dixon_table(subgroup, "H")?;
    let fusion = class_fusion(group, &table_g, subgroup, &table_h)?;
    let ring_g = build_mod_ring(&table_g, p)?;
    let ring_h = build_mod_ring(&table_h, p)?;
    let loewy_g = ring_g.loewy_series()?;
    let loewy_h = ring_h.loewy_series()?;
    let block_g = ring_g.block_invariants(0, &loewy_g, None)?;
    let block_h = ring_h.block_invariants(0, &loewy_h, None)?;

    // injectivity of Res on the principal block over F_q
    let f = &ring_g.spec.field;
    let m = restriction_matrix(&table_g, &table_h, &fusion)?;
    let e = ring_g.block_idempotent(0)?;
    let images: Vec<Vec<ExtElem>> = (0..table_g.num_classes())
        .map(|j| {
            let alg = ring_g.ext_algebra();
            let x = alg.mul(&alg.basis_vector(j), &e);
            (0..table_h.num_classes())
                .map(|k| {
                    let mut acc = f.zero();
                    for (xi, row) in x.iter().zip(&m) {
                        f.mul_add_assign(&mut acc, xi, &f.from_i64(row[k]));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let res_rank = rank(f, &images);
    let mut out = vec![Verification::check(
        "restriction injective on principal block",
        res_rank == block_g.dimension,
        format!("rank {res_rank}, block dimension {}", block_g.dimension),
    )];

    let p_classes: Vec<usize> = (0..table_h.num_classes())
        .filter(|&d| p_part(table_h.classes[d].element_order, p) == table_h.classes[d].element_order)
        .collect();
    let mut controls = true;
    for (i, &a) in p_classes.iter().enumerate() {
        for &b in &p_classes[i + 1..] {
            if fusion.map[a] == fusion.map[b] {
                controls = false;
            }
        }
    }
    if controls {
        out.push(Verification::check(
            "fusion control",
            same_block(&block_g, &block_h),
            format!(
                "principal blocks d = {:?} vs {:?}, ext¹ {} vs {}",
                block_g.d_sequence, block_h.d_sequence, block_g.ext1, block_h.ext1
            ),
        ));
    } else {
        out.push(Verification::new(
            "fusion control",
            Status::Skip,
            "subgroup does not control fusion of p-elements",
        ));
    }
    Ok(out)
}

/// `ℓ_p(G,1)` and `ℓ_p(N_G(P),1)` for a Sylow p-subgroup `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerExperiment {
    pub p: u64,
    pub sylow_order: u64,
    pub normalizer_order: u64,
    pub loewy_group: usize,
    pub loewy_normalizer: usize,
}

impl NormalizerExperiment {
    pub fn equal(&self) -> bool {
        self.loewy_group == self.loewy_normalizer
    }

    pub fn to_verification(&self) -> Verification {
        // an open question: reported, never failed
        Verification::new(
            "sylow normalizer question",
            Status::Pass,
            format!(
                "ℓ(G,1) = {}, ℓ(N_G(P),1) = {} (|P| = {}, |N| = {}), {}",
                self.loewy_group,
                self.loewy_normalizer,
                self.sylow_order,
                self.normalizer_order,
                if self.equal() { "equal" } else { "different" }
            ),
        )
    }
}

pub fn sylow_normalizer_experiment(
    group: &PermutationGroup,
    principal: &BlockInvariants,
    p: u64,
    seed: u64,
) -> Result<NormalizerExperiment> {
    let sylow = group.sylow_subgroup(p, seed)?;
    let normalizer = group.normalizer(&sylow)?;
    let local = principal_block(&normalizer, "normalizer", p)?;
    Ok(NormalizerExperiment {
        p,
        sylow_order: sylow.order_u64().unwrap_or(0),
        normalizer_order: normalizer.order_u64().unwrap_or(0),
        loewy_group: principal.loewy,
        loewy_normalizer: local.loewy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;
    use crate::permgroup::Perm;

    #[test]
    fn s4_sections() {
        let g = groups::symmetric(4).unwrap();
        let t = dixon_table(&g, "S4").unwrap();
        let sd = section_decomposition(&t, 2);
        // classes ordered by element order: 1, (2,2)?, (2), (3), (4)
        assert_eq!(sd.fibers.len(), 2);
        let three = (0..5).find(|&c| t.classes[c].element_order == 3).unwrap();
        assert_eq!(sd.fibers[&three], vec![three]);
        assert_eq!(sd.fibers[&0].len(), 4);
        assert_eq!(section_decomposition_from_group(&g, &t, 2).unwrap(), sd);
        assert_eq!(verify_section_routes(Some(&g), &t, 2).unwrap().status, Status::Pass);
        assert_eq!(verify_section_cardinality(&g, &t, 2).unwrap().status, Status::Pass);
    }

    #[test]
    fn s3_restriction_induction() {
        let g = groups::symmetric(3).unwrap();
        let h = g.subgroup(vec![Perm::parse(3, "(1,2,3)").unwrap()]).unwrap();
        let tg = dixon_table(&g, "S3").unwrap();
        let th = dixon_table(&h, "C3").unwrap();
        let fusion = class_fusion(&g, &tg, &h, &th).unwrap();
        assert_eq!(restrict_class_function(&tg, &th, &fusion, &[0, 0, 1]).unwrap(), vec![0, 1, 1]);
        assert_eq!(restrict_class_function(&tg, &th, &fusion, &[1, 0, 0]).unwrap(), vec![1, 0, 0]);
        assert_eq!(induce_class_function(&tg, &th, &fusion, &[1, 0, 0]).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn s4_block_isomorphism() {
        let g = groups::symmetric(4).unwrap();
        let t = dixon_table(&g, "S4").unwrap();
        let ring = build_mod_ring(&t, 2).unwrap();
        let loewy = ring.loewy_series().unwrap();
        for &c in &ring.p_regular {
            let b = ring.block_invariants(c, &loewy, None).unwrap();
            assert_eq!(verify_block_isomorphism(&g, &ring, &b).unwrap().status, Status::Pass);
        }
    }

    #[test]
    fn a4_fusion_control() {
        let g = groups::alternating(4).unwrap();
        let h = g.subgroup(vec![Perm::parse(4, "(1,2,3)").unwrap()]).unwrap();
        let checks = verify_fusion_control(&g, &h, 3).unwrap();
        assert!(checks.iter().all(|v| v.status == Status::Pass), "{checks:?}");
        let p2 = g.subgroup(vec![Perm::parse(4, "(1,2)(3,4)").unwrap()]).unwrap();
        assert!(verify_fusion_control(&g, &p2, 2).is_err());
    }

    #[test]
    fn normalizer_experiment_s4() {
        let g = groups::symmetric(4).unwrap();
        let b = principal_block(&g, "S4", 2).unwrap();
        let ex = sylow_normalizer_experiment(&g, &b, 2, 7).unwrap();
        assert_eq!((ex.loewy_group, ex.loewy_normalizer), (3, 3));
    }
}
