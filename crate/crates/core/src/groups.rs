//! Builtin permutation groups.

use crate::error::{Error, Result};
use crate::field::{ExtElem, ExtField, Field, PrimeField};
use crate::numtheory::{is_prime, prime_factors};
use crate::permgroup::{Perm, PermutationGroup};
use crate::poly;

fn perm(n: usize, cycles: &[Vec<usize>]) -> Perm {
    Perm::from_cycles(n, cycles).expect("builtin generators are valid")
}

fn from_images(images: Vec<usize>) -> Perm {
    Perm::from_images(images.into_iter().map(|x| x as u8).collect()).expect("valid images")
}

pub fn trivial() -> PermutationGroup {
    PermutationGroup::new(1, vec![]).unwrap()
}

pub fn symmetric(n: usize) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::input("S_0 is not supported"));
    }
    if n == 1 {
        return Ok(trivial());
    }
    let gens = vec![perm(n, &[vec![1, 2]]), perm(n, &[(1..=n).collect()])];
    PermutationGroup::new(n, gens)
}

pub fn alternating(n: usize) -> Result<PermutationGroup> {
    if n == 0 {
        return Err(Error::input("A_0 is not supported"));
    }
    if n < 3 {
        return Ok(PermutationGroup::new(n, vec![]).unwrap());
    }
    // 3-cycles (1,2,k) generate A_n
    let gens = (3..=n).map(|k| perm(n, &[vec![1, 2, k]])).collect();
    PermutationGroup::new(n, gens)
}

pub fn cyclic(n: usize) -> Result<PermutationGroup> {
    abelian(&[n])
}

/// Direct product of cyclic groups acting on disjoint cycles.
pub fn abelian(orders: &[usize]) -> Result<PermutationGroup> {
    if orders.contains(&0) {
        return Err(Error::input("cyclic factors must have positive order"));
    }
    let degree: usize = orders.iter().sum::<usize>().max(1);
    let mut gens = Vec::new();
    let mut offset = 0;
    for &o in orders {
        if o > 1 {
            gens.push(perm(degree, &[(offset + 1..=offset + o).collect()]));
        }
        offset += o;
    }
    PermutationGroup::new(degree, gens)
}

/// The dihedral group of order `order`.
pub fn dihedral(order: usize) -> Result<PermutationGroup> {
    if order == 0 || order % 2 == 1 {
        return Err(Error::input(format!("dihedral order {order} must be even")));
    }
    let n = order / 2;
    match n {
        1 => cyclic(2),
        2 => abelian(&[2, 2]),
        _ => {
            let rotation = perm(n, &[(1..=n).collect()]);
            let reflection_cycles: Vec<Vec<usize>> = (2..=n)
                .filter_map(|i| {
                    let j = n + 2 - i;
                    (i < j).then(|| vec![i, j])
                })
                .collect();
            PermutationGroup::new(n, vec![rotation, perm(n, &reflection_cycles)])
        }
    }
}

/// The quaternion group in its regular representation.
pub fn quaternion() -> PermutationGroup {
    // elements ±1, ±i, ±j, ±k encoded as (sign, unit) with units 1,i,j,k = 0..4
    let mul = |(s1, a): (usize, usize), (s2, b): (usize, usize)| -> (usize, usize) {
        // unit multiplication table for 1,i,j,k: (sign, unit)
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let (s, u) = T[a][b];
        ((s1 + s2 + s) % 2, u)
    };
    let idx = |(s, u): (usize, usize)| s * 4 + u;
    let right = |g: (usize, usize)| {
        from_images((0..8).map(|x| idx(mul((x / 4, x % 4), g))).collect())
    };
    PermutationGroup::new(8, vec![right((0, 1)), right((0, 2))]).unwrap()
}

/// `SL(2,3)` acting on the 8 nonzero vectors of `F_3^2`.
pub fn sl23() -> PermutationGroup {
    let vecs: Vec<(usize, usize)> = (0..9).map(|i| (i % 3, i / 3)).filter(|&v| v != (0, 0)).collect();
    let act = |m: [[usize; 2]; 2]| {
        from_images(
            vecs.iter()
                .map(|&(x, y)| {
                    let v = ((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3);
                    vecs.iter().position(|&w| w == v).unwrap()
                })
                .collect(),
        )
    };
    PermutationGroup::new(8, vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])]).unwrap()
}

/// `PSL(3,p)` for a prime `p`, acting on the points of the projective plane.
pub fn psl3(p: usize) -> Result<PermutationGroup> {
    if !is_prime(p as u64) {
        return Err(Error::input(format!("PSL(3,{p}) needs a prime field")));
    }
    // normalised representatives: first nonzero coordinate equal to 1
    let mut points: Vec<[usize; 3]> = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    points.push(v);
                }
            }
        }
    }
    let f = PrimeField::new(p as u32);
    let normalise = |v: [usize; 3]| {
        let lead = *v.iter().find(|&&x| x != 0).unwrap();
        let inv = f.inv(&(lead as u32)).unwrap() as usize;
        v.map(|x| x * inv % p)
    };
    let transvection = |i: usize, j: usize| {
        from_images(
            points
                .iter()
                .map(|v| {
                    let mut w = *v;
                    w[i] = (w[i] + w[j]) % p;
                    let w = normalise(w);
                    points.iter().position(|&u| u == w).unwrap()
                })
                .collect(),
        )
    };
    let gens = vec![transvection(0, 1), transvection(1, 2), transvection(2, 0)];
    PermutationGroup::new(points.len(), gens)
}

pub fn gl32() -> PermutationGroup {
    psl3(2).unwrap()
}

/// A concrete `F_q`: an extension field with a primitive element.
struct SmallField {
    field: ExtField,
    elements: Vec<ExtElem>,
    primitive: ExtElem,
}

impl SmallField {
    fn new(q: usize) -> Result<Self> {
        let ps = prime_factors(q as u64);
        if ps.len() != 1 {
            return Err(Error::input(format!("{q} is not a prime power")));
        }
        let p = ps[0] as u32;
        let mut m = 0;
        let mut t = q;
        while t > 1 {
            t /= p as usize;
            m += 1;
        }
        let fp = PrimeField::new(p);
        let modulus = (0..(p as usize).pow(m))
            .map(|idx| {
                let mut v: Vec<u32> = (0..m)
                    .scan(idx, |s, _| {
                        let c = (*s % p as usize) as u32;
                        *s /= p as usize;
                        Some(c)
                    })
                    .collect();
                v.push(1);
                v
            })
            .find(|v| poly::is_irreducible(&fp, v))
            .unwrap();
        let field = ExtField::new(p, modulus);
        let elements: Vec<ExtElem> = (0..q as u128).map(|i| field.element_from_index(i)).collect();
        let factors = prime_factors(q as u64 - 1);
        let primitive = elements[1..]
            .iter()
            .find(|a| factors.iter().all(|&r| !field.is_one(&field.pow(a, (q as u64 - 1) / r))))
            .unwrap()
            .clone();
        Ok(Self {
            field,
            elements,
            primitive,
        })
    }

    fn index(&self, a: &ExtElem) -> usize {
        self.elements.iter().position(|e| e == a).unwrap()
    }
}

/// `PSL(2,q)` acting on the projective line over `F_q`.
pub fn psl2(q: usize) -> Result<PermutationGroup> {
    let sf = SmallField::new(q)?;
    let f = &sf.field;
    let inf = q;
    let n = q + 1;
    let point = |a: Option<ExtElem>| a.map_or(inf, |x| sf.index(&x));
    let as_elem = |i: usize| (i < q).then(|| sf.elements[i].clone());
    let translate = from_images(
        (0..n)
            .map(|i| point(as_elem(i).map(|x| f.add(&x, &f.one()))))
            .collect(),
    );
    let w2 = f.mul(&sf.primitive, &sf.primitive);
    let scale = from_images((0..n).map(|i| point(as_elem(i).map(|x| f.mul(&x, &w2)))).collect());
    let invert = from_images(
        (0..n)
            .map(|i| match as_elem(i) {
                None => sf.index(&f.zero()),
                Some(x) if f.is_zero(&x) => inf,
                Some(x) => point(Some(f.neg(&f.inv(&x).unwrap()))),
            })
            .collect(),
    );
    PermutationGroup::new(n, vec![translate, scale, invert])
}

/// The Weyl group of a crystallographic root system given by its Cartan
/// matrix, acting on the orbit of the weight `start` (fundamental-weight
/// coordinates), or on all roots when `start` is `None`.
pub fn weyl_group(cartan: &[Vec<i64>], start: Option<Vec<i64>>) -> Result<PermutationGroup> {
    let r = cartan.len();
    // simple root i in fundamental-weight coordinates is row i of the Cartan matrix
    let reflect = |i: usize, v: &[i64]| -> Vec<i64> {
        let c = v[i];
        v.iter().zip(&cartan[i]).map(|(x, a)| x - c * a).collect()
    };
    let seeds: Vec<Vec<i64>> = match start {
        Some(w) => vec![w],
        None => cartan.to_vec(),
    };
    let mut orbit: Vec<Vec<i64>> = Vec::new();
    for s in seeds {
        if orbit.contains(&s) {
            continue;
        }
        orbit.push(s);
        let mut idx = orbit.len() - 1;
        while idx < orbit.len() {
            for i in 0..r {
                let w = reflect(i, &orbit[idx]);
                if !orbit.contains(&w) {
                    orbit.push(w);
                }
            }
            idx += 1;
        }
    }
    if orbit.len() > 255 {
        return Err(Error::resource(format!("orbit of size {} is too large", orbit.len())));
    }
    orbit.sort();
    let gens = (0..r)
        .map(|i| {
            from_images(
                orbit
                    .iter()
                    .map(|v| {
                        let w = reflect(i, v);
                        orbit.iter().position(|u| *u == w).unwrap()
                    })
                    .collect(),
            )
        })
        .collect();
    PermutationGroup::new(orbit.len(), gens)
}

fn cartan_f4() -> Vec<Vec<i64>> {
    vec![
        vec![2, -1, 0, 0],
        vec![-1, 2, -1, 0],
        vec![0, -2, 2, -1],
        vec![0, 0, -1, 2],
    ]
}

fn cartan_e6() -> Vec<Vec<i64>> {
    // Bourbaki labelling: 1-3-4-5-6 with 2 attached to 4
    vec![
        vec![2, 0, -1, 0, 0, 0],
        vec![0, 2, 0, -1, 0, 0],
        vec![-1, 0, 2, -1, 0, 0],
        vec![0, -1, -1, 2, -1, 0],
        vec![0, 0, 0, -1, 2, -1],
        vec![0, 0, 0, 0, -1, 2],
    ]
}

/// `W(F_4)` on its 48 roots.
pub fn weyl_f4() -> PermutationGroup {
    weyl_group(&cartan_f4(), None).unwrap()
}

/// `W(E_6)` on the 27 weights of a minuscule representation.
pub fn weyl_e6() -> PermutationGroup {
    weyl_group(&cartan_e6(), Some(vec![1, 0, 0, 0, 0, 0])).unwrap()
}

/// The simple group `PSp(4,3)`: the index-two rotation subgroup of `W(E_6)`.
pub fn psp43() -> PermutationGroup {
    let w = weyl_e6();
    let gens = w.generators();
    let rot = gens[1..].iter().map(|s| gens[0].mul(s)).collect();
    PermutationGroup::new(w.degree(), rot).unwrap()
}

/// `W(H_3) ≅ A_5 × C_2` on 7 points.
pub fn weyl_h3() -> PermutationGroup {
    let n = 7;
    PermutationGroup::new(
        n,
        vec![
            perm(n, &[vec![1, 2, 3]]),
            perm(n, &[vec![1, 2, 3, 4, 5]]),
            perm(n, &[vec![6, 7]]),
        ],
    )
    .unwrap()
}

/// `SU(3,3)` on the 28 isotropic points of the Hermitian form
/// `x_1 ȳ_3 + x_2 ȳ_2 + x_3 ȳ_1` over `F_9`, generated by its unitary
/// upper and lower unitriangular matrices.
pub fn su33() -> PermutationGroup {
    let sf = SmallField::new(9).unwrap();
    let f = &sf.field;
    let bar = |x: &ExtElem| f.pow(x, 3);
    let form = |x: &[ExtElem], y: &[ExtElem]| {
        let mut acc = f.mul(&x[0], &bar(&y[2]));
        acc = f.add(&acc, &f.mul(&x[1], &bar(&y[1])));
        f.add(&acc, &f.mul(&x[2], &bar(&y[0])))
    };
    // projective points normalised so the first nonzero coordinate is 1
    let mut points: Vec<Vec<ExtElem>> = Vec::new();
    for a in 0..9 {
        for b in 0..9 {
            for c in 0..9 {
                let v = vec![sf.elements[a].clone(), sf.elements[b].clone(), sf.elements[c].clone()];
                let lead = v.iter().find(|x| !f.is_zero(x));
                if lead.is_some_and(|x| f.is_one(x)) && f.is_zero(&form(&v, &v)) {
                    points.push(v);
                }
            }
        }
    }
    let normalise = |v: Vec<ExtElem>| -> Vec<ExtElem> {
        let lead = v.iter().find(|x| !f.is_zero(x)).unwrap().clone();
        let inv = f.inv(&lead).unwrap();
        v.iter().map(|x| f.mul(x, &inv)).collect()
    };
    let apply = |m: &[Vec<ExtElem>], v: &[ExtElem]| -> Vec<ExtElem> {
        m.iter()
            .map(|row| {
                let mut acc = f.zero();
                for (a, b) in row.iter().zip(v) {
                    acc = f.add(&acc, &f.mul(a, b));
                }
                acc
            })
            .collect()
    };
    let basis: Vec<Vec<ExtElem>> = (0..3)
        .map(|i| (0..3).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect();
    let is_unitary = |m: &[Vec<ExtElem>]| {
        let cols: Vec<Vec<ExtElem>> = basis.iter().map(|e| apply(m, e)).collect();
        (0..3).all(|i| (0..3).all(|j| form(&cols[i], &cols[j]) == form(&basis[i], &basis[j])))
    };
    let mut gens = Vec::new();
    for a in &sf.elements {
        for b in &sf.elements {
            for c in &sf.elements {
                let upper = vec![
                    vec![f.one(), a.clone(), b.clone()],
                    vec![f.zero(), f.one(), c.clone()],
                    vec![f.zero(), f.zero(), f.one()],
                ];
                let lower: Vec<Vec<ExtElem>> =
                    (0..3).map(|i| (0..3).map(|j| upper[j][i].clone()).collect()).collect();
                for m in [upper, lower] {
                    if m != basis && is_unitary(&m) {
                        let images = points
                            .iter()
                            .map(|v| {
                                let w = normalise(apply(&m, v));
                                points.iter().position(|u| *u == w).unwrap()
                            })
                            .collect();
                        gens.push(from_images(images));
                    }
                }
            }
        }
    }
    PermutationGroup::new(points.len(), gens).unwrap()
}

pub fn mathieu22() -> PermutationGroup {
    let n = 22;
    PermutationGroup::new(
        n,
        vec![
            perm(
                n,
                &[
                    vec![1, 13],
                    vec![2, 8],
                    vec![3, 16],
                    vec![4, 12],
                    vec![6, 22],
                    vec![7, 17],
                    vec![9, 10],
                    vec![11, 14],
                ],
            ),
            perm(
                n,
                &[
                    vec![1, 22, 3, 21],
                    vec![2, 18, 4, 13],
                    vec![5, 12],
                    vec![6, 11, 7, 15],
                    vec![8, 14, 20, 10],
                    vec![17, 19],
                ],
            ),
        ],
    )
    .unwrap()
}

pub fn mathieu11() -> PermutationGroup {
    let n = 11;
    PermutationGroup::new(
        n,
        vec![
            perm(n, &[(1..=11).collect()]),
            perm(n, &[vec![3, 7, 11, 8], vec![4, 10, 5, 6]]),
        ],
    )
    .unwrap()
}

pub fn mathieu12() -> PermutationGroup {
    let n = 12;
    PermutationGroup::new(
        n,
        vec![
            perm(n, &[(1..=11).collect()]),
            perm(n, &[vec![3, 7, 11, 8], vec![4, 10, 5, 6]]),
            perm(
                n,
                &[
                    vec![1, 12],
                    vec![2, 11],
                    vec![3, 6],
                    vec![4, 8],
                    vec![5, 9],
                    vec![7, 10],
                ],
            ),
        ],
    )
    .unwrap()
}

/// Parses names such as `S4`, `A5`, `C6`, `C2xC4`, `D10`, `Q8`, `SL(2,3)`,
/// `GL(3,2)`, `SL(3,3)`, `PSL(2,7)`, `SL(2,8)`, `PSp(4,3)`, `W(H3)`, `W(F4)`,
/// `W(E6)`, `SU(3,3)`, `M11`, `M12`, `M22`, `trivial`. A `x` separates
/// direct factors.
pub fn builtin(name: &str) -> Result<PermutationGroup> {
    let name = name.trim();
    let factors: Vec<&str> = name.split(['x', '×']).map(str::trim).collect();
    if factors.len() > 1 {
        // products of cyclic groups stay on disjoint cycles
        let cyclic_orders: Option<Vec<usize>> = factors
            .iter()
            .map(|f| f.strip_prefix(['C', 'Z']).and_then(|n| n.parse().ok()))
            .collect();
        if let Some(orders) = cyclic_orders {
            return abelian(&orders);
        }
        let mut g = builtin(factors[0])?;
        for f in &factors[1..] {
            g = g.direct_product(&builtin(f)?)?;
        }
        return Ok(g);
    }
    let unknown = || Error::input(format!("unknown builtin group {name:?}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    let pair = |s: &str| -> Result<(usize, usize)> {
        let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(unknown)?;
        let (a, b) = inner.split_once(',').ok_or_else(unknown)?;
        Ok((num(a.trim())?, num(b.trim())?))
    };
    match name {
        "trivial" | "1" => return Ok(trivial()),
        "Q8" => return Ok(quaternion()),
        "W(H3)" => return Ok(weyl_h3()),
        "W(F4)" => return Ok(weyl_f4()),
        "W(E6)" => return Ok(weyl_e6()),
        "M11" => return Ok(mathieu11()),
        "M12" => return Ok(mathieu12()),
        "M22" => return Ok(mathieu22()),
        "SU(3,3)" | "U3(3)" => return Ok(su33()),
        "PSp(4,3)" => return Ok(psp43()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("PSL") {
        let (n, q) = pair(rest)?;
        return match n {
            2 => psl2(q),
            3 if is_prime(q as u64) => psl3(q),
            _ => Err(unknown()),
        };
    }
    if let Some(rest) = name.strip_prefix("SL") {
        let (n, q) = pair(rest)?;
        return match (n, q) {
            (2, 3) => Ok(sl23()),
            // SL(2,2^k) = PSL(2,2^k)
            (2, q) if q.is_power_of_two() => psl2(q),
            (3, q) if is_prime(q as u64) && (q - 1) % 3 != 0 => psl3(q),
            _ => Err(unknown()),
        };
    }
    if let Some(rest) = name.strip_prefix("GL") {
        return match pair(rest)? {
            (3, 2) => Ok(gl32()),
            (2, 2) => psl2(2),
            _ => Err(unknown()),
        };
    }
    let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
    let n = num(tail)?;
    match head {
        "S" => symmetric(n),
        "A" => alternating(n),
        "C" | "Z" => cyclic(n),
        "D" => dihedral(n),
        _ => Err(unknown()),
    }
}

/// Builtin groups of order at most 200 used by the structural sweeps.
pub fn small_catalog() -> Vec<(&'static str, PermutationGroup)> {
    [
        "trivial", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C12", "C2xC2", "C2xC4",
        "C3xC3", "C2xC2xC2", "C2xC6", "C4xC4", "D6", "D8", "D10", "D12", "D16", "D18", "D20",
        "D24", "D48", "Q8", "A4", "S4", "SL(2,3)", "A5", "S5", "S3xS3", "S3xC3", "GL(3,2)",
        "W(H3)", "PSL(2,7)",
    ]
    .into_iter()
    .map(|n| (n, builtin(n).expect("catalog names are valid")))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(name: &str) -> u64 {
        builtin(name).unwrap().order_u64().unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(order("S4"), 24);
        assert_eq!(order("A5"), 60);
        assert_eq!(order("D10"), 10);
        assert_eq!(order("D4"), 4);
        assert_eq!(order("D2"), 2);
        assert_eq!(order("Q8"), 8);
        assert_eq!(order("SL(2,3)"), 24);
        assert_eq!(order("GL(3,2)"), 168);
        assert_eq!(order("SL(3,3)"), 5616);
        assert_eq!(order("PSL(2,7)"), 168);
        assert_eq!(order("PSL(2,4)"), 60);
        assert_eq!(order("PSL(2,9)"), 360);
        assert_eq!(order("SL(2,8)"), 504);
        assert_eq!(order("PSL(2,13)"), 1092);
        assert_eq!(order("W(H3)"), 120);
        assert_eq!(order("W(F4)"), 1152);
        assert_eq!(order("W(E6)"), 51840);
        assert_eq!(order("PSp(4,3)"), 25920);
        assert_eq!(order("M11"), 7920);
        assert_eq!(order("M12"), 95040);
        assert_eq!(order("M22"), 443520);
        assert_eq!(order("SU(3,3)"), 6048);
        assert_eq!(order("S3xS3"), 36);
        assert_eq!(order("C2xC4"), 8);
        assert_eq!(order("trivial"), 1);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion();
        let inv = q.elements().unwrap().filter(|g| g.order() == 2).count();
        assert_eq!(inv, 1);
    }

    #[test]
    fn weyl_f4_degree() {
        assert_eq!(weyl_f4().degree(), 48);
        assert_eq!(weyl_e6().degree(), 27);
    }

    #[test]
    fn unknown_names() {
        assert!(builtin("X7").is_err());
        assert!(builtin("D7").is_err());
        assert!(builtin("PSL(2,6)").is_err());
    }
}
