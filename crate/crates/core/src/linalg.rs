//! Dense linear algebra over an arbitrary [`Field`].
//!
//! Vectors are plain `Vec<F::Elem>`; matrices are lists of rows. All
//! eliminations pivot on the leftmost nonzero entry, so results depend only on
//! the input and never on scheduling.

use crate::field::Field;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut basis = EchelonBasis::new(f.clone(), rows.first().map_or(0, |r| r.len()));
    for r in rows {
        basis.insert(r.clone());
    }
    basis.into_rref()
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut basis = EchelonBasis::new(f.clone(), rows.first().map_or(0, |r| r.len()));
    for r in rows {
        basis.insert(r.clone());
    }
    basis.len()
}

/// Basis of `{x : M x = 0}` for `M` given by rows of length `ncols`.
///
/// The basis is the standard one read off the reduced echelon form: one vector
/// per free column, with a 1 in that column.
pub fn null_space<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut basis = EchelonBasis::new(f.clone(), ncols);
    for r in rows {
        basis.insert(r.clone());
    }
    let (reduced, pivots) = basis.into_rref();
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (row, &pc) in reduced.iter().zip(&pivots) {
            v[pc] = f.neg(&row[free]);
        }
        out.push(v);
    }
    out
}

/// `M v` for a matrix given by rows.
pub fn mat_vec<F: Field>(f: &F, rows: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    rows.iter()
        .map(|r| {
            let mut acc = f.zero();
            for (a, b) in r.iter().zip(v) {
                f.mul_add_assign(&mut acc, a, b);
            }
            acc
        })
        .collect()
}

/// An incrementally built subspace kept in semi-echelon form.
///
/// Every stored row is normalised to have leading coefficient one at its pivot,
/// and new vectors are reduced against the existing rows before insertion.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis in place, returning the elimination coefficients.
    pub fn reduce(&self, v: &mut [F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc].clone();
            if !f.is_zero(&c) {
                for (x, r) in v.iter_mut().zip(row) {
                    if !f.is_zero(r) {
                        let t = f.mul(&c, r);
                        *x = f.sub(x, &t);
                    }
                }
            }
            coords.push(c);
        }
        coords
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Inserts `v` if it is independent of the current rows. Returns whether it was.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        let f = &self.field;
        let Some(pc) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pc]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    /// Coordinates of `v` with respect to the stored rows, if `v` lies in the span.
    ///
    /// Rows are in semi-echelon form, so the elimination coefficients are the
    /// coordinates.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let mut w = v.to_vec();
        let coords = self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x)).then_some(coords)
    }

    /// Converts to reduced row echelon form sorted by pivot column.
    pub fn into_rref(self) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
        let f = self.field;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<Vec<F::Elem>> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        for i in (0..rows.len()).rev() {
            let pc = pivots[i];
            for j in 0..i {
                let c = rows[j][pc].clone();
                if f.is_zero(&c) {
                    continue;
                }
                let (head, tail) = rows.split_at_mut(i);
                for (x, r) in head[j].iter_mut().zip(&tail[0]) {
                    let t = f.mul(&c, r);
                    *x = f.sub(x, &t);
                }
            }
        }
        (rows, pivots)
    }
}

/// Characteristic polynomial `det(xI - A)` of a square matrix, monic, low degree first.
///
/// Uses reduction to Hessenberg form followed by the standard recurrence.
pub fn charpoly<F: Field>(f: &F, a: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let n = a.len();
    let mut h: Vec<Vec<F::Elem>> = a.to_vec();
    // Hessenberg reduction by similarity transforms
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !f.is_zero(&h[i][m - 1])) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let pivot_inv = f.inv(&h[m][m - 1]).unwrap();
        for i in (m + 1)..n {
            let u = f.mul(&h[i][m - 1], &pivot_inv);
            if f.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let t = f.mul(&u, &h[m][j]);
                h[i][j] = f.sub(&h[i][j], &t);
            }
            for row in h.iter_mut() {
                let t = f.mul(&u, &row[i]);
                row[m] = f.add(&row[m], &t);
            }
        }
    }
    // p[k] is the characteristic polynomial of the leading k×k block
    let mut polys: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
    for m in 1..=n {
        // p_m = (x - h[m-1][m-1]) p_{m-1} - Σ_{i=1}^{m-1} h[i-1][m-1] Π_{j=i}^{m-1} h[j][j-1] p_{i-1}
        let prev = &polys[m - 1];
        let mut next = vec![f.zero(); m + 1];
        for (k, c) in prev.iter().enumerate() {
            next[k + 1] = f.add(&next[k + 1], c);
            let t = f.mul(c, &h[m - 1][m - 1]);
            next[k] = f.sub(&next[k], &t);
        }
        let mut t = f.one();
        for i in (1..m).rev() {
            t = f.mul(&t, &h[i][i - 1]);
            let coef = f.mul(&t, &h[i - 1][m - 1]);
            if f.is_zero(&coef) {
                continue;
            }
            for (k, c) in polys[i - 1].iter().enumerate() {
                let s = f.mul(&coef, c);
                next[k] = f.sub(&next[k], &s);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};
    use num_rational::Ratio;

    #[test]
    fn null_space_small() {
        let f = PrimeField::new(3);
        // rows of the 2×3 matrix [[1,1,2],[1,2,0]]
        let m = vec![vec![1, 1, 2], vec![1, 2, 0]];
        let ns = null_space(&f, &m, 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(mat_vec(&f, &m, &ns[0]), vec![0, 0]);
    }

    #[test]
    fn charpoly_companion() {
        // companion matrix of x^3 - 2x^2 + 3x - 5 over Q
        let q = RationalField::<Ratio<i64>>::new();
        let r = |n: i64| Ratio::from_integer(n);
        let a = vec![
            vec![r(0), r(0), r(5)],
            vec![r(1), r(0), r(-3)],
            vec![r(0), r(1), r(2)],
        ];
        assert_eq!(charpoly(&q, &a), vec![r(-5), r(3), r(-2), r(1)]);
    }

    #[test]
    fn charpoly_dense_mod_p() {
        let f = PrimeField::new(101);
        let a = vec![vec![2, 7, 1], vec![3, 5, 9], vec![4, 4, 8]];
        let cp = charpoly(&f, &a);
        // trace term and determinant term
        assert_eq!(cp[2], f.neg(&15));
        let det = 2 * (5 * 8 - 9 * 4) - 7 * (3 * 8 - 9 * 4) + (3 * 4 - 5 * 4);
        assert_eq!(cp[0], f.neg(&f.from_i64(det)));
    }
}
