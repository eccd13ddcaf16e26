use charring::chartab::{dixon_table, CharacterTable, TableFile};
use charring::groups;
use charring::{CyclotomicInteger, Error, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn table(name: &str) -> CharacterTable {
    dixon_table(&groups::builtin(name).unwrap(), name).unwrap()
}

fn unit(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

fn row(sc: &charring::chartab::StructureConstants, i: usize, j: usize) -> Vec<i64> {
    sc.product_row(i, j).iter().map(|&x| x as i64).collect()
}

fn class_of_order(t: &CharacterTable, order: u64) -> usize {
    t.classes.iter().position(|c| c.element_order == order).unwrap()
}

#[test]
fn cyclic_four_central_translation() {
    let t = table("C4");
    let z = class_of_order(&t, 4);
    let w = t.central_translation(z).unwrap();
    for (i, s) in w.iter().enumerate() {
        assert!(s.equals(&t.values[i][z]));
    }
    let mut expected: Vec<CyclotomicInteger> = (0..4).map(|k| CyclotomicInteger::root_of_unity(4, k)).collect();
    for s in &w {
        let pos = expected.iter().position(|e| e.equals(s)).expect("scalar is a fourth root of unity");
        expected.remove(pos);
    }
    assert!(expected.is_empty());

    // t_{z z} = t_z ∘ t_z
    let zz = t.central_product(z, z).unwrap();
    assert_eq!(t.classes[zz].element_order, 2);
    let w2 = t.central_translation(zz).unwrap();
    for (a, b) in w.iter().zip(&w2) {
        assert!(a.mul(a).equals(b));
    }
    let one = t.central_translation(0).unwrap();
    assert!(one.iter().all(|s| s.equals(&CyclotomicInteger::one())));
}

#[test]
fn quaternion_central_involution() {
    let t = table("Q8");
    let z = class_of_order(&t, 2);
    assert_eq!(t.classes[z].size, 1);
    let w = t.central_translation(z).unwrap();
    let one = CyclotomicInteger::one();
    assert!(w.iter().all(|s| s.equals(&one) || s.equals(&one.neg())));
    assert!(w.iter().all(|s| s.mul(s).equals(&one)));
    assert_eq!(t.central_product(z, z).unwrap(), 0);
    // the degree-2 character is the only one moved by the sign
    let minus: Vec<usize> = (0..5).filter(|&i| !w[i].equals(&one)).collect();
    assert_eq!(minus.len(), 1);
    assert_eq!(t.degree(minus[0]), 2);
    let noncentral = class_of_order(&t, 4);
    assert!(matches!(t.central_translation(noncentral), Err(Error::Domain(_))));
}

#[test]
fn central_shift_moves_sections() {
    let t = table("Q8");
    let z = class_of_order(&t, 2);
    for c in 0..t.num_classes() {
        let d = t.central_shift(z, c).unwrap();
        assert_eq!(t.classes[d].size, t.classes[c].size);
        assert_eq!(t.central_shift(z, d).unwrap(), c);
    }
    assert_eq!(t.central_shift(z, 0).unwrap(), z);
}

#[test]
fn s3_adams_square_of_standard() {
    let t = table("S3");
    let std = t.degrees().iter().position(|&d| d == 2).unwrap();
    let theta = t.adams_operation(&unit(3, std), 2).unwrap();
    let sgn = (0..3).find(|&i| i != 0 && t.degree(i) == 1).unwrap();
    let mut expected = vec![0; 3];
    expected[0] = 1;
    expected[sgn] = -1;
    expected[std] = 1;
    assert_eq!(theta, expected);
}

#[test]
fn s3_class_idempotents() {
    let t = table("S3");
    let trans = class_of_order(&t, 2);
    let sgn = (1..3).find(|&i| t.degree(i) == 1).unwrap();
    let e = t.class_idempotent(trans);
    let half = Rational::new(1.into(), 2.into());
    assert_eq!(e[0].as_rational(), Some(half.clone()));
    assert_eq!(e[sgn].as_rational(), Some(-half));
    let std = 3 - sgn;
    assert!(e[std].is_zero());
    assert_eq!(t.schur_element(trans), Rational::from_integer(2.into()));

    // τ(std · std) = 1
    let sc = t.structure_constants().unwrap();
    let prod: Vec<Rational> = sc
        .product_row(std, std)
        .iter()
        .map(|&x| Rational::from_integer(x.into()))
        .collect();
    assert!(t.symmetrizing_form(&prod).is_one());
}

#[test]
fn idempotents_sum_to_one_and_multiply() {
    for name in ["S4", "Q8", "D10", "A5"] {
        let t = table(name);
        let r = t.num_classes();
        let sc = t.structure_constants().unwrap();
        let idem: Vec<Vec<charring::Cyclotomic>> = (0..r).map(|c| t.class_idempotent(c)).collect();
        for i in 0..r {
            let total = idem
                .iter()
                .fold(charring::Cyclotomic::zero(1), |acc, e| acc.add(&e[i]));
            assert!(total.equals(&if i == 0 { charring::Cyclotomic::one() } else { charring::Cyclotomic::zero(1) }));
        }
        // 1_C · 1_C = 1_C through the structure constants
        for c in 0..r {
            let e = &idem[c];
            let mut sq = vec![charring::Cyclotomic::zero(1); r];
            for i in 0..r {
                for j in 0..r {
                    if e[i].is_zero() || e[j].is_zero() {
                        continue;
                    }
                    let eij = e[i].mul(&e[j]);
                    for (k, x) in sc.product_row(i, j).iter().enumerate() {
                        if *x != 0 {
                            sq[k] = sq[k].add(&eij.scale(&Rational::from_integer((*x).into())));
                        }
                    }
                }
            }
            for k in 0..r {
                assert!(sq[k].equals(&e[k]), "{name} class {c}");
            }
        }
    }
}

#[test]
fn structure_constants_associative_and_evaluate() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["S4", "SL(2,3)", "A5", "D12"] {
        let t = table(name);
        let r = t.num_classes();
        let sc = t.structure_constants().unwrap();
        for _ in 0..100 {
            let (i, j, k) = (rng.random_range(0..r), rng.random_range(0..r), rng.random_range(0..r));
            let left = sc.multiply(&row(&sc, i, j), &unit(r, k));
            let right = sc.multiply(&unit(r, i), &row(&sc, j, k));
            assert_eq!(left, right, "{name}");
        }
        for i in 0..r {
            for j in 0..r {
                let vals = t.values_of(&row(&sc, i, j));
                for (c, v) in vals.iter().enumerate() {
                    assert!(v.equals(&t.values[i][c].mul(&t.values[j][c])));
                }
            }
        }
        // τ from the evaluation characters
        for i in 0..r {
            let mut acc = Rational::zero();
            for (c, cls) in t.classes.iter().enumerate() {
                let v = t.values[i][c].map_coefficients::<Rational>().unwrap();
                acc += v.trace() * Rational::new(cls.size.into(), (t.order * charring::numtheory::euler_phi(v.conductor())).into());
            }
            let expected = if i == 0 { Rational::one() } else { Rational::zero() };
            assert_eq!(acc, expected, "{name} χ_{i}");
        }
    }
}

#[test]
fn cyclic_four_linear_characters_multiply() {
    let t = table("C4");
    let sc = t.structure_constants().unwrap();
    let g = class_of_order(&t, 4);
    let zeta = CyclotomicInteger::root_of_unity(4, 1);
    let chi1 = (0..4).find(|&i| t.values[i][g].equals(&zeta)).unwrap();
    let chi2 = (0..4).find(|&i| t.values[i][g].equals(&CyclotomicInteger::from_i64(-1))).unwrap();
    assert_eq!(row(&sc, chi1, chi1), unit(4, chi2));
    for i in 0..4 {
        assert_eq!(row(&sc, 0, i), unit(4, i));
    }
}

#[test]
fn dixon_and_ingest_agree() {
    for name in ["S3", "S4", "A5", "Q8", "D10", "W(H3)"] {
        let g = groups::builtin(name).unwrap();
        let t = dixon_table(&g, name).unwrap();
        // without a degree the representatives are dropped
        let back = CharacterTable::from_json(&t.to_json()).unwrap();
        let mut bare = t.to_file();
        bare.classes.iter_mut().for_each(|c| c.representative = None);
        assert_eq!(serde_json::to_string(&back.to_file()).unwrap(), serde_json::to_string(&bare).unwrap());
        let full = CharacterTable::from_file(t.to_file(), Some(g.degree())).unwrap();
        assert_eq!(full.to_json(), t.to_json(), "{name}");
        assert_eq!(full.classes, t.classes);
    }
}

fn s3_file() -> TableFile {
    table("S3").to_file()
}

#[test]
fn corrupted_value_is_rejected() {
    let mut f = s3_file();
    let last = f.irreducibles.len() - 1;
    f.irreducibles[last][1] = CyclotomicInteger::from_i64(1);
    assert!(matches!(CharacterTable::from_file(f, None), Err(Error::Consistency(_))));
}

#[test]
fn missing_power_map_is_rejected() {
    let mut f = s3_file();
    for c in &mut f.classes {
        c.power_maps.remove("3");
    }
    assert!(matches!(CharacterTable::from_file(f, None), Err(Error::Schema(_))));
}

#[test]
fn inconsistent_sizes_are_rejected() {
    let mut f = s3_file();
    f.classes[1].size += 1;
    assert!(CharacterTable::from_file(f, None).is_err());
    assert!(matches!(CharacterTable::from_json("{\"name\": 3}"), Err(Error::Schema(_))));
}

#[test]
fn d10_generators_table() {
    let g = charring::permgroup::PermutationGroup::from_text("5\n(1,2,3,4,5)\n(2,5)(3,4)\n").unwrap();
    let t = dixon_table(&g, "D10").unwrap();
    let mut sizes: Vec<u64> = t.classes.iter().map(|c| c.size).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 2, 2, 5]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn adams_is_a_ring_morphism(
        name in prop::sample::select(vec!["S4", "A5", "Q8", "D12", "C6"]),
        seed in any::<u64>(),
        m in 1i64..7,
        n in 1i64..7,
    ) {
        let t = table(name);
        let r = t.num_classes();
        let sc = t.structure_constants().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f: Vec<i64> = (0..r).map(|_| rng.random_range(-3..=3)).collect();
        let g: Vec<i64> = (0..r).map(|_| rng.random_range(-3..=3)).collect();
        let tf = t.adams_operation(&f, n).unwrap();
        let tg = t.adams_operation(&g, n).unwrap();
        prop_assert_eq!(t.adams_operation(&sc.multiply(&f, &g), n).unwrap(), sc.multiply(&tf, &tg));
        let sum: Vec<i64> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        let tsum: Vec<i64> = tf.iter().zip(&tg).map(|(a, b)| a + b).collect();
        prop_assert_eq!(t.adams_operation(&sum, n).unwrap(), tsum);
        prop_assert_eq!(t.adams_operation(&tf, m).unwrap(), t.adams_operation(&f, m * n).unwrap());
        prop_assert_eq!(t.adams_operation(&f, 1).unwrap(), f);
        prop_assert_eq!(t.adams_operation(&unit(r, 0), n).unwrap(), unit(r, 0));
    }
}
