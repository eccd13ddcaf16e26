//! Property sweeps over the builtin groups of order at most 200.

use charring::chartab::dixon_table;
use charring::closedform::{abelian_product_invariants, partitions};
use charring::cyclonum::{field_spec_for, field_spec_variant, CyclotomicNumber};
use charring::field::Field;
use charring::groups;
use charring::modring::{build_mod_ring, build_mod_ring_over};
use charring::numtheory::{p_part, prime_factors};
use charring::permgroup::p_part_decomposition;
use charring::sections::{principal_block, section_decomposition};
use charring::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn class_structure_sweep() {
    for (name, g) in groups::small_catalog() {
        let order = g.order_u64().unwrap();
        let cs = g.conjugacy_classes().unwrap();
        assert_eq!(cs.classes.iter().map(|c| c.size).sum::<u64>(), order, "{name}");
        for (k, c) in cs.classes.iter().enumerate() {
            let cent = g.centralizer(&c.representative).unwrap();
            assert_eq!(cent.order_u64().unwrap() * c.size, order, "{name} class {k}");
            for n in -(c.element_order as i64)..=2 * c.element_order as i64 {
                let direct = g.class_index(&c.representative.pow(n)).unwrap();
                assert_eq!(direct, c.power(n), "{name} class {k}, n={n}");
                assert_eq!(cs.classes[direct].size, cs.classes[c.power(n)].size);
            }
        }
        let t = dixon_table(&g, name).unwrap();
        assert_eq!(t.values.len(), cs.classes.len(), "{name}");
    }
}

#[test]
fn p_part_decomposition_is_idempotent() {
    for (name, g) in groups::small_catalog() {
        let order = g.order_u64().unwrap();
        for p in prime_factors(order) {
            for x in g.elements().unwrap() {
                let (xp, xpp) = p_part_decomposition(&x, p).unwrap();
                assert_eq!(xp.mul(&xpp), x, "{name}");
                assert_eq!(xp.mul(&xpp), xpp.mul(&xp));
                assert_eq!(p_part(xp.order(), p), xp.order());
                assert_ne!(xpp.order() % p, 0, "{name}: p'-part has order divisible by p");
                assert_eq!(p_part_decomposition(&xp, p).unwrap().0, xp);
                assert_eq!(p_part_decomposition(&xpp, p).unwrap().1, xpp);
            }
        }
    }
}

#[test]
fn character_values_agree_on_sections() {
    for (name, g) in groups::small_catalog() {
        let t = dixon_table(&g, name).unwrap();
        for p in prime_factors(t.order) {
            let spec = field_spec_for(p as u32, t.value_exponent()).unwrap();
            let sd = section_decomposition(&t, p);
            for row in &t.values {
                for (c, &s) in sd.map.iter().enumerate() {
                    assert_eq!(
                        row[c].reduce_mod_p(&spec).unwrap(),
                        row[s].reduce_mod_p(&spec).unwrap(),
                        "{name} p={p} class {c}"
                    );
                }
            }
        }
    }
}

fn random_integral(rng: &mut ChaCha8Rng, n: u64, p: i64) -> CyclotomicNumber<Rational> {
    let coeffs: Vec<Rational> = (0..n)
        .map(|_| {
            let mut den = rng.random_range(1..6i64);
            while den % p == 0 {
                den += 1;
            }
            Rational::new(rng.random_range(-9..=9i64).into(), den.into())
        })
        .collect();
    CyclotomicNumber::from_power_sum(n, &coeffs)
}

#[test]
fn reduction_is_a_ring_morphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, p) in [(3u64, 2u32), (4, 3), (5, 2), (8, 3), (12, 5), (15, 2), (20, 3), (24, 7), (9, 3), (10, 5)] {
        let spec = field_spec_for(p, n).unwrap();
        let f = &spec.field;
        for _ in 0..10_000 {
            let a = random_integral(&mut rng, n, p as i64);
            let b = random_integral(&mut rng, n, p as i64);
            let (ra, rb) = (a.reduce_mod_p(&spec).unwrap(), b.reduce_mod_p(&spec).unwrap());
            assert_eq!(a.add(&b).reduce_mod_p(&spec).unwrap(), f.add(&ra, &rb), "n={n} p={p}");
            assert_eq!(a.mul(&b).reduce_mod_p(&spec).unwrap(), f.mul(&ra, &rb), "n={n} p={p}");
        }
    }
}

#[test]
fn invariants_do_not_depend_on_the_modulus() {
    for (name, g) in groups::small_catalog() {
        let t = dixon_table(&g, name).unwrap();
        let sc = t.structure_constants().unwrap();
        for p in prime_factors(t.order) {
            let base = build_mod_ring(&t, p).unwrap();
            let loewy = base.loewy_series().unwrap();
            let blocks = base.all_block_invariants(&loewy).unwrap();
            for variant in 1..3 {
                let spec = field_spec_variant(p as u32, t.value_exponent(), variant).unwrap();
                let other = build_mod_ring_over(&t, sc.clone(), spec).unwrap();
                assert_eq!(other.radical_basis_ext().len(), base.radical_basis_ext().len());
                assert_eq!(other.loewy_sequence_over_extension(), loewy.d, "{name} p={p}");
                let other_loewy = other.loewy_series().unwrap();
                let other_blocks = other.all_block_invariants(&other_loewy).unwrap();
                for (a, b) in blocks.iter().zip(&other_blocks) {
                    assert_eq!((a.class, &a.d_sequence, a.ext1), (b.class, &b.d_sequence, b.ext1), "{name} p={p}");
                }
            }
        }
    }
}

/// Every abelian group of order `n` as a list of cyclic prime-power factors.
fn abelian_groups(n: u64) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for q in prime_factors(n) {
        let mut a = 0;
        let mut m = n;
        while m.is_multiple_of(q) {
            m /= q;
            a += 1;
        }
        let mut next = Vec::new();
        for lambda in partitions(a).unwrap() {
            for prefix in &out {
                let mut v: Vec<usize> = prefix.clone();
                v.extend(lambda.parts().iter().map(|&k| (q as usize).pow(k)));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[test]
fn abelian_closed_form() {
    let mut count = 0;
    for n in 1..=64u64 {
        for orders in abelian_groups(n) {
            let g = groups::abelian(&orders).unwrap();
            assert_eq!(g.order_u64(), Some(n));
            for p in [2u64, 3, 5, 7] {
                let b = principal_block(&g, "A", p).unwrap();
                let o: Vec<u64> = orders.iter().map(|&x| x as u64).collect();
                assert_eq!((b.loewy, b.ext1), abelian_product_invariants(&o, p).unwrap(), "{orders:?} p={p}");
            }
            count += 1;
        }
    }
    // number of abelian groups of order at most 64
    assert_eq!(count, 117);
}
