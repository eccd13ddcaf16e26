//! Permutation groups: Schreier–Sims stabilizer chains, element enumeration,
//! conjugacy classes, centralizers, normalizers and Sylow subgroups.
//!
//! Points are 0-based internally and 1-based in cycle notation. Products act on
//! the right: `a.mul(&b)` applies `a` first, then `b`.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, lcm, p_part, p_prime_projector};

/// Largest group order handled without an ingested table.
pub const MAX_ORDER: u64 = 1_000_000;
/// Largest degree handled without an ingested table.
pub const MAX_DEGREE: usize = 64;
/// Above this order, centralizers and normalizers use backtrack search.
pub const ENUMERATION_LIMIT: u64 = 10_000;

/// A permutation of `{0, …, n-1}` stored by its images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || seen[x as usize] {
                return Err(Error::input(format!("images {images:?} do not form a bijection")));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of degree `n` from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::input(format!("point {x} outside 1..{n}")));
                }
                if used[x - 1] {
                    return Err(Error::input(format!("point {x} repeated in cycles")));
                }
                used[x - 1] = true;
                let y = cycle[(i + 1) % cycle.len()];
                if y == 0 || y > n {
                    return Err(Error::input(format!("point {y} outside 1..{n}")));
                }
                images[x - 1] = (y - 1) as u8;
            }
        }
        Ok(Perm(images))
    }

    /// Parses cycle notation such as `"(1,2)(3,4)"` or `"()"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::input(format!("malformed cycle notation {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::input(format!("unclosed cycle in {s:?}")))?;
            let body = open[..close].trim();
            if !body.is_empty() {
                let cycle = body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| Error::input(format!("bad point {t:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Perm(out)
    }

    /// `other^{-1} self other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        let mut out = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[other.0[i] as usize] = other.0[x as usize];
        }
        Perm(out)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let n = self.0.len();
        let o = self.order() as i64;
        let e = e.rem_euclid(o) as usize;
        let mut out = vec![0u8; n];
        for start in 0..n {
            let mut y = start;
            for _ in 0..e {
                y = self.0[y] as usize;
            }
            out[start] = y as u8;
        }
        Perm(out)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Extends to a permutation of a larger degree, fixing the new points.
    pub fn extend(&self, n: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u8..n as u8);
        Perm(v)
    }

    /// Shifts the support by `offset` inside a permutation of degree `n`.
    pub fn shifted(&self, offset: usize, n: usize) -> Perm {
        let mut v: Vec<u8> = (0..n as u8).collect();
        for (i, &x) in self.0.iter().enumerate() {
            v[i + offset] = x + offset as u8;
        }
        Perm(v)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles() {
            if c.len() < 2 {
                continue;
            }
            any = true;
            let body: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    orbit: Vec<u8>,
    /// `transversal[x]` maps the base point to `x`.
    transversal: Vec<Option<Perm>>,
    inverse_transversal: Vec<Option<Perm>>,
    /// Position of each point in `orbit`.
    orbit_pos: Vec<u32>,
    gens: Vec<usize>,
    checked: Vec<Vec<bool>>,
}

impl Level {
    fn new(base: usize, n: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[base] = Some(Perm::identity(n));
        let mut inverse_transversal = vec![None; n];
        inverse_transversal[base] = Some(Perm::identity(n));
        let mut orbit_pos = vec![u32::MAX; n];
        orbit_pos[base] = 0;
        Self {
            base,
            orbit: vec![base as u8],
            transversal,
            inverse_transversal,
            orbit_pos,
            gens: Vec::new(),
            checked: Vec::new(),
        }
    }
}

/// A base and strong generating set with orbit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    strong_gens: Vec<Perm>,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, generators: &[Perm]) -> Self {
        let mut chain = StabChain {
            degree,
            strong_gens: Vec::new(),
            levels: Vec::new(),
        };
        for g in generators {
            if g.is_identity() || chain.contains(g) {
                continue;
            }
            let (r, j) = chain.sift(g, 0);
            chain.add_strong_generator(r, j);
            chain.complete(j);
        }
        chain
    }

    /// Sifts `g` starting at `level`, returning the residue and the level where it stopped.
    fn sift(&self, g: &Perm, level: usize) -> (Perm, usize) {
        let mut g = g.clone();
        for (l, lev) in self.levels.iter().enumerate().skip(level) {
            let x = g.image(lev.base);
            match &lev.inverse_transversal[x] {
                Some(ui) => g = g.mul(ui),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    fn add_strong_generator(&mut self, g: Perm, level: usize) {
        debug_assert!(!g.is_identity());
        if level == self.levels.len() {
            let moved = (0..self.degree).find(|&x| g.image(x) != x).unwrap();
            self.levels.push(Level::new(moved, self.degree));
        }
        self.strong_gens.push(g);
    }

    /// Refreshes the generators and orbit of level `l`.
    fn update_level(&mut self, l: usize) {
        let fixed: Vec<usize> = self.levels[..l].iter().map(|lev| lev.base).collect();
        let n = self.degree;
        let known = self.levels[l].gens.clone();
        for (i, g) in self.strong_gens.iter().enumerate() {
            if !known.contains(&i) && fixed.iter().all(|&b| g.image(b) == b) {
                self.levels[l].gens.push(i);
            }
        }
        let lev = &mut self.levels[l];
        let mut idx = 0;
        while idx < lev.orbit.len() {
            let y = lev.orbit[idx] as usize;
            for &gi in &lev.gens {
                let s = &self.strong_gens[gi];
                let z = s.image(y);
                if lev.transversal[z].is_none() {
                    let u = lev.transversal[y].as_ref().unwrap().mul(s);
                    lev.inverse_transversal[z] = Some(u.inverse());
                    lev.transversal[z] = Some(u);
                    lev.orbit_pos[z] = lev.orbit.len() as u32;
                    lev.orbit.push(z as u8);
                }
            }
            idx += 1;
        }
        let ngens = lev.gens.len();
        lev.checked.resize(n, Vec::new());
        for row in lev.checked.iter_mut() {
            row.resize(ngens, false);
        }
    }

    /// Schreier–Sims completion, working downward from level `top`.
    fn complete(&mut self, top: usize) {
        let mut l = top as isize;
        'outer: while l >= 0 {
            let li = l as usize;
            self.update_level(li);
            let orbit = self.levels[li].orbit.clone();
            let gens = self.levels[li].gens.clone();
            for &x in &orbit {
                let x = x as usize;
                for (si, &gi) in gens.iter().enumerate() {
                    if self.levels[li].checked[x][si] {
                        continue;
                    }
                    self.levels[li].checked[x][si] = true;
                    let s = &self.strong_gens[gi];
                    let lev = &self.levels[li];
                    let xs = s.image(x);
                    let h = lev.transversal[x]
                        .as_ref()
                        .unwrap()
                        .mul(s)
                        .mul(lev.inverse_transversal[xs].as_ref().unwrap());
                    if h.is_identity() {
                        continue;
                    }
                    let (r, j) = self.sift(&h, li + 1);
                    if !r.is_identity() {
                        // the pair must be revisited once the deeper levels grow
                        self.levels[li].checked[x][si] = false;
                        self.add_strong_generator(r, j);
                        l = j as isize;
                        continue 'outer;
                    }
                }
            }
            l -= 1;
        }
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, lev| acc * BigUint::from(lev.orbit.len()))
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong_gens
    }

    /// Mixed-radix index of a group element (level 0 is the least significant digit).
    pub fn element_index(&self, g: &Perm) -> Option<u64> {
        let mut g = g.clone();
        let mut idx = 0u64;
        let mut radix = 1u64;
        for lev in &self.levels {
            let x = g.image(lev.base);
            let ui = lev.inverse_transversal[x].as_ref()?;
            idx += radix * lev.orbit_pos[x] as u64;
            radix *= lev.orbit.len() as u64;
            g = g.mul(ui);
        }
        g.is_identity().then_some(idx)
    }

    /// Inverse of [`StabChain::element_index`].
    pub fn element_at(&self, mut idx: u64) -> Perm {
        let mut digits = Vec::with_capacity(self.levels.len());
        for lev in &self.levels {
            let len = lev.orbit.len() as u64;
            digits.push((idx % len) as usize);
            idx /= len;
        }
        let mut g = Perm::identity(self.degree);
        for (lev, &d) in self.levels.iter().zip(&digits).rev() {
            let x = lev.orbit[d] as usize;
            g = g.mul(lev.transversal[x].as_ref().unwrap());
        }
        g
    }
}

/// A finite group of permutations of `{1..degree}`.
#[derive(Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: OnceLock<StabChain>,
    classes: OnceLock<Result<ClassStructure>>,
}

impl Clone for PermutationGroup {
    fn clone(&self) -> Self {
        Self {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: self.chain.clone(),
            classes: self.classes.clone(),
        }
    }
}

/// One conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: Perm,
    pub size: u64,
    pub element_order: u64,
    /// `powers[t]` is the class of `representative^t`, for `0 <= t < element_order`.
    pub powers: Vec<usize>,
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Conjugacy classes of an enumerated group.
#[derive(Clone, Debug)]
pub struct ClassStructure {
    pub classes: Vec<ConjugacyClass>,
    /// Class of each element, indexed by [`StabChain::element_index`].
    pub class_of: Vec<u32>,
}

impl ConjugacyClass {
    /// Class index of `representative^t`.
    pub fn power(&self, t: i64) -> usize {
        self.powers[t.rem_euclid(self.element_order as i64) as usize]
    }
}

impl PermutationGroup {
    /// Builds the group generated by `generators` acting on `degree` points.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if degree == 0 || degree > 255 {
            return Err(Error::input(format!("degree {degree} outside 1..=255")));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator {g} has degree {} instead of {degree}",
                    g.degree()
                )));
            }
        }
        Ok(Self {
            degree,
            generators,
            chain: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    /// Parses generators in cycle notation.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Perm::parse(degree, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    /// Parses the text format: first line the degree, then one generator per line.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let degree: usize = lines
            .next()
            .ok_or_else(|| Error::input("empty group file"))?
            .parse()
            .map_err(|_| Error::input("first line must be the degree"))?;
        let gens = lines.map(|l| Perm::parse(degree, l)).collect::<Result<Vec<_>>>()?;
        Self::new(degree, gens)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.degree);
        for g in &self.generators {
            s.push_str(&format!("{g}\n"));
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// The order, if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain().contains(g)
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    /// Fails with a resource error when the group is beyond from-scratch limits.
    pub fn check_caps(&self) -> Result<u64> {
        if self.degree > MAX_DEGREE {
            return Err(Error::resource(format!(
                "degree {} exceeds {MAX_DEGREE}; ingest a character table instead",
                self.degree
            )));
        }
        match self.order_u64() {
            Some(n) if n <= MAX_ORDER => Ok(n),
            _ => Err(Error::resource(format!(
                "group order {} exceeds {MAX_ORDER}; ingest a character table instead",
                self.order()
            ))),
        }
    }

    /// Iterates over all elements in index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Perm> + '_> {
        let n = self.check_caps()?;
        let chain = self.chain();
        Ok((0..n).map(move |i| chain.element_at(i)))
    }

    /// Uniformly random element from a seeded generator.
    pub fn random_element(&self, rng: &mut impl Rng) -> Perm {
        let n = self.order_u64().expect("order fits in u64");
        self.chain().element_at(rng.random_range(0..n))
    }

    /// Conjugacy classes in canonical order: by element order, then size, then
    /// lexicographically smallest representative.
    pub fn conjugacy_classes(&self) -> Result<&ClassStructure> {
        self.classes
            .get_or_init(|| self.compute_classes())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_classes(&self) -> Result<ClassStructure> {
        let n = self.check_caps()? as usize;
        let chain = self.chain();
        let gens: Vec<Perm> = self.generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<(Perm, u64)> = Vec::new();
        let mut queue: Vec<Perm> = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            let g0 = chain.element_at(start as u64);
            class_of[start] = id;
            let mut min = g0.clone();
            let mut size = 1u64;
            queue.clear();
            queue.push(g0);
            while let Some(g) = queue.pop() {
                for s in &gens {
                    let h = g.conjugate_by(s);
                    let hi = chain.element_index(&h).expect("conjugate lies in the group") as usize;
                    if class_of[hi] == u32::MAX {
                        class_of[hi] = id;
                        size += 1;
                        if h < min {
                            min = h.clone();
                        }
                        queue.push(h);
                    }
                }
            }
            raw.push((min, size));
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        let keys: Vec<(u64, u64)> = raw.iter().map(|(r, s)| (r.order(), *s)).collect();
        order.sort_by(|&a, &b| {
            (keys[a].0, keys[a].1, &raw[a].0).cmp(&(keys[b].0, keys[b].1, &raw[b].0))
        });
        let mut rename = vec![0u32; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new as u32;
        }
        for c in class_of.iter_mut() {
            *c = rename[*c as usize];
        }
        let classes = order
            .iter()
            .map(|&old| {
                let rep = raw[old].0.clone();
                let o = rep.order();
                let mut powers = Vec::with_capacity(o as usize);
                let mut cur = Perm::identity(self.degree);
                for _ in 0..o {
                    let idx = chain.element_index(&cur).unwrap() as usize;
                    powers.push(class_of[idx] as usize);
                    cur = cur.mul(&rep);
                }
                ConjugacyClass {
                    representative: rep,
                    size: raw[old].1,
                    element_order: o,
                    powers,
                }
            })
            .collect();
        Ok(ClassStructure { classes, class_of })
    }

    /// Index of the class containing `g`.
    pub fn class_index(&self, g: &Perm) -> Result<usize> {
        let cs = self.conjugacy_classes()?;
        let idx = self
            .chain()
            .element_index(g)
            .ok_or_else(|| Error::domain(format!("{g} is not in the group")))?;
        Ok(cs.class_of[idx as usize] as usize)
    }

    /// The subgroup generated by `gens` (which must lie in this group).
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermutationGroup> {
        for g in &gens {
            if !self.contains(g) {
                return Err(Error::domain(format!("{g} is not in the group")));
            }
        }
        PermutationGroup::new(self.degree, gens)
    }

    /// Builds a subgroup from a stream of its elements, keeping only the
    /// elements that enlarge the subgroup generated so far.
    fn subgroup_from_elements(&self, elems: impl Iterator<Item = Perm>) -> PermutationGroup {
        let mut gens: Vec<Perm> = Vec::new();
        let mut chain = StabChain::new(self.degree, &gens);
        for g in elems {
            if !chain.contains(&g) {
                gens.push(g);
                chain = StabChain::new(self.degree, &gens);
            }
        }
        let group = PermutationGroup::new(self.degree, gens).unwrap();
        let _ = group.chain.set(chain);
        group
    }

    /// The centralizer of `g`, by enumeration or backtrack depending on the order.
    pub fn centralizer(&self, g: &Perm) -> Result<PermutationGroup> {
        if !self.contains(g) {
            return Err(Error::domain(format!("{g} is not in the group")));
        }
        let n = self.check_caps()?;
        if n <= ENUMERATION_LIMIT {
            self.centralizer_by_enumeration(g)
        } else {
            self.centralizer_by_backtrack(g)
        }
    }

    pub fn centralizer_by_enumeration(&self, g: &Perm) -> Result<PermutationGroup> {
        let elems: Vec<Perm> = self.elements()?.filter(|x| x.mul(g) == g.mul(x)).collect();
        Ok(self.subgroup_from_elements(elems.into_iter()))
    }

    pub fn centralizer_by_backtrack(&self, g: &Perm) -> Result<PermutationGroup> {
        self.check_caps()?;
        let cycle_len: Vec<usize> = {
            let mut v = vec![0; self.degree];
            for c in g.cycles() {
                for &x in &c {
                    v[x] = c.len();
                }
            }
            v
        };
        let found = self.backtrack(
            &|base_images: &[(usize, usize)]| {
                let (b, x) = *base_images.last().unwrap();
                if cycle_len[b] != cycle_len[x] {
                    return false;
                }
                // x must respect g-cycles among the points fixed so far
                base_images.iter().all(|&(b2, x2)| {
                    let mut y = b;
                    let mut z = x;
                    for _ in 0..cycle_len[b] {
                        if y == b2 {
                            return z == x2;
                        }
                        y = g.image(y);
                        z = g.image(z);
                    }
                    true
                })
            },
            &|h: &Perm| h.mul(g) == g.mul(h),
        );
        Ok(self.subgroup_from_elements(found.into_iter()))
    }

    /// Depth-first search over base images. `prune` sees the (base point, image)
    /// pairs chosen so far; `accept` tests complete elements.
    fn backtrack(
        &self,
        prune: &dyn Fn(&[(usize, usize)]) -> bool,
        accept: &dyn Fn(&Perm) -> bool,
    ) -> Vec<Perm> {
        // Every element factors uniquely as g = u_{k-1} … u_1 u_0 with u_l in the
        // transversal of level l, and the image of b_l under g only depends on
        // the partial product u_l … u_0. Choosing u_0 first therefore fixes the
        // base images one level at a time.
        fn rec(
            chain: &StabChain,
            level: usize,
            partial: &Perm,
            prune: &dyn Fn(&[(usize, usize)]) -> bool,
            accept: &dyn Fn(&Perm) -> bool,
            pairs: &mut Vec<(usize, usize)>,
            out: &mut Vec<Perm>,
        ) {
            if level == chain.levels.len() {
                if accept(partial) {
                    out.push(partial.clone());
                }
                return;
            }
            let lev = &chain.levels[level];
            for &x in &lev.orbit {
                let h = lev.transversal[x as usize].as_ref().unwrap().mul(partial);
                pairs.push((lev.base, h.image(lev.base)));
                if prune(pairs) {
                    rec(chain, level + 1, &h, prune, accept, pairs, out);
                }
                pairs.pop();
            }
        }
        let chain = self.chain();
        let mut out = Vec::new();
        rec(
            chain,
            0,
            &Perm::identity(chain.degree),
            prune,
            accept,
            &mut Vec::new(),
            &mut out,
        );
        out
    }

    /// The normalizer of a subgroup `h`.
    pub fn normalizer(&self, h: &PermutationGroup) -> Result<PermutationGroup> {
        for g in h.generators() {
            if !self.contains(g) {
                return Err(Error::domain("subgroup is not contained in the group"));
            }
        }
        let n = self.check_caps()?;
        if n <= ENUMERATION_LIMIT {
            self.normalizer_by_enumeration(h)
        } else {
            self.normalizer_by_backtrack(h)
        }
    }

    fn normalizes(x: &Perm, h: &PermutationGroup) -> bool {
        h.generators().iter().all(|s| h.contains(&s.conjugate_by(x)))
    }

    pub fn normalizer_by_enumeration(&self, h: &PermutationGroup) -> Result<PermutationGroup> {
        let elems: Vec<Perm> = self.elements()?.filter(|x| Self::normalizes(x, h)).collect();
        Ok(self.subgroup_from_elements(elems.into_iter()))
    }

    pub fn normalizer_by_backtrack(&self, h: &PermutationGroup) -> Result<PermutationGroup> {
        self.check_caps()?;
        let orbit_id = h.orbit_ids();
        let mut orbit_size = vec![0usize; self.degree];
        for &o in &orbit_id {
            orbit_size[o] += 1;
        }
        let size_of = |x: usize| orbit_size[orbit_id[x]];
        let found = self.backtrack(
            &|pairs: &[(usize, usize)]| {
                let (b, x) = *pairs.last().unwrap();
                if size_of(b) != size_of(x) {
                    return false;
                }
                pairs.iter().all(|&(b2, x2)| {
                    (orbit_id[b] == orbit_id[b2]) == (orbit_id[x] == orbit_id[x2])
                })
            },
            &|x: &Perm| Self::normalizes(x, h),
        );
        Ok(self.subgroup_from_elements(found.into_iter()))
    }

    /// Orbit identifier (smallest point of the orbit) for each point.
    pub fn orbit_ids(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.degree];
        for start in 0..self.degree {
            if id[start] != usize::MAX {
                continue;
            }
            id[start] = start;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for g in &self.generators {
                    let y = g.image(x);
                    if id[y] == usize::MAX {
                        id[y] = start;
                        stack.push(y);
                    }
                }
            }
        }
        id
    }

    /// A Sylow `p`-subgroup, found by growing a `p`-subgroup inside its normalizer
    /// using seeded random elements.
    pub fn sylow_subgroup(&self, p: u64, seed: u64) -> Result<PermutationGroup> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        let n = self.check_caps()?;
        let target = p_part(n, p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens: Vec<Perm> = Vec::new();
        let mut current = PermutationGroup::new(self.degree, gens.clone())?;
        while current.order_u64().unwrap() < target {
            let norm = if gens.is_empty() {
                self.clone()
            } else {
                self.normalizer(&current)?
            };
            // draw until the coset of some element has order divisible by p
            loop {
                let z = norm.random_element(&mut rng);
                let mut k = 1u64;
                let mut zk = z.clone();
                while !current.contains(&zk) {
                    zk = zk.mul(&z);
                    k += 1;
                }
                if k.is_multiple_of(p) {
                    gens.push(z.pow((k / p) as i64));
                    current = PermutationGroup::new(self.degree, gens.clone())?;
                    break;
                }
            }
        }
        Ok(current)
    }

    /// `true` when every element of `other` lies in this group.
    pub fn contains_group(&self, other: &PermutationGroup) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(&self, other: &PermutationGroup) -> Result<PermutationGroup> {
        let n = self.degree + other.degree;
        let mut gens: Vec<Perm> = self.generators.iter().map(|g| g.extend(n)).collect();
        gens.extend(other.generators.iter().map(|g| g.shifted(self.degree, n)));
        PermutationGroup::new(n, gens)
    }
}

/// Splits `g` into its `p`-part and `p'`-part, both powers of `g`.
pub fn p_part_decomposition(g: &Perm, p: u64) -> Result<(Perm, Perm)> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let o = g.order();
    let a = p_prime_projector(o, p);
    let g_pp = g.pow(a as i64);
    let g_p = g.pow(((1 + o - a) % o) as i64);
    Ok((g_p, g_pp))
}

/// A seeded random generator used throughout the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> PermutationGroup {
        PermutationGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn cycle_notation_roundtrip() {
        let g = Perm::parse(5, "(1,2,3)(4,5)").unwrap();
        assert_eq!(g.to_string(), "(1,2,3)(4,5)");
        assert_eq!(Perm::parse(3, "()").unwrap().to_string(), "()");
        assert_eq!(Perm::parse(4, "(1 2)(3 4)").unwrap().to_string(), "(1,2)(3,4)");
        assert!(Perm::parse(3, "(1,4)").is_err());
        assert!(Perm::parse(3, "(1,2,1)").is_err());
    }

    #[test]
    fn right_action_product() {
        let a = Perm::parse(3, "(1,2)").unwrap();
        let b = Perm::parse(3, "(2,3)").unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.mul(&b).to_string(), "(1,3,2)");
    }

    #[test]
    fn orders() {
        assert_eq!(group(4, &["(1,2)", "(1,2,3,4)"]).order_u64(), Some(24));
        assert_eq!(group(1, &[]).order_u64(), Some(1));
        assert_eq!(group(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]).order_u64(), Some(10));
    }

    #[test]
    fn element_index_roundtrip() {
        let g = group(5, &["(1,2,3,4,5)", "(1,2)"]);
        let chain = g.chain();
        for i in 0..120 {
            assert_eq!(chain.element_index(&chain.element_at(i)), Some(i));
        }
    }

    #[test]
    fn class_sizes() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let sizes: Vec<u64> = s4.conjugacy_classes().unwrap().classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 6, 8, 6]);
        let a5 = group(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let mut sizes: Vec<u64> = a5.conjugacy_classes().unwrap().classes.iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    }

    #[test]
    fn centralizer_orders() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let g = Perm::parse(4, "(1,2)(3,4)").unwrap();
        assert_eq!(s4.centralizer(&g).unwrap().order_u64(), Some(8));
        let g = Perm::parse(4, "(1,2,3)").unwrap();
        assert_eq!(s4.centralizer(&g).unwrap().order_u64(), Some(3));
        assert_eq!(s4.centralizer(&s4.identity()).unwrap().order_u64(), Some(24));
        assert!(s4.centralizer(&Perm::parse(4, "(1,2)").unwrap()).is_ok());
        let a4 = group(4, &["(1,2,3)", "(2,3,4)"]);
        assert!(matches!(a4.centralizer(&Perm::parse(4, "(1,2)").unwrap()), Err(Error::Domain(_))));
    }

    #[test]
    fn backtrack_matches_enumeration() {
        let s6 = group(6, &["(1,2)", "(1,2,3,4,5,6)"]);
        for c in &s6.conjugacy_classes().unwrap().classes {
            let a = s6.centralizer_by_enumeration(&c.representative).unwrap();
            let b = s6.centralizer_by_backtrack(&c.representative).unwrap();
            assert_eq!(a.order(), b.order());
            assert!(a.contains_group(&b) && b.contains_group(&a));
        }
    }

    #[test]
    fn sylow_and_normalizer() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        assert_eq!(s4.sylow_subgroup(2, 0).unwrap().order_u64(), Some(8));
        let s3 = group(3, &["(1,2)", "(1,2,3)"]);
        let p = s3.sylow_subgroup(3, 0).unwrap();
        assert_eq!(p.order_u64(), Some(3));
        assert_eq!(s3.normalizer(&p).unwrap().order_u64(), Some(6));
        let c8 = group(8, &["(1,2,3,4,5,6,7,8)"]);
        assert_eq!(c8.sylow_subgroup(2, 0).unwrap().order_u64(), Some(8));
    }

    #[test]
    fn p_parts_of_order_twelve() {
        // a (3,4)-cycle product has order 12
        let g = Perm::parse(7, "(1,2,3)(4,5,6,7)").unwrap();
        let (gp, gpp) = p_part_decomposition(&g, 2).unwrap();
        assert_eq!(gpp, g.pow(4));
        assert_eq!(gp, g.pow(9));
        assert_eq!(gp.mul(&gpp), g);
        assert!(p_part_decomposition(&g, 4).is_err());
    }
}
