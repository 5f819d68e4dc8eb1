//! Minimal sparse matrix algebra over an arbitrary scalar ring.
//!
//! Everything the engine multiplies lives on small tensor-power spaces
//! (dimension at most `8^3`), but the matrices themselves are sparse —
//! an R-matrix on the tensor square has `O(N^2)` nonzero entries — so
//! products are computed row-by-row over explicit nonzero maps.

use std::collections::BTreeMap;

use crate::ring::Scalar;

/// Sparse square matrix with 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat<S: Scalar> {
    dim: usize,
    rows: Vec<BTreeMap<usize, S>>,
}

impl<S: Scalar> SparseMat<S> {
    pub fn zero(dim: usize) -> Self {
        SparseMat {
            dim,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SparseMat::zero(dim);
        for i in 0..dim {
            m.rows[i].insert(i, S::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.rows[i].get(&j).cloned().unwrap_or_else(S::zero)
    }

    /// Set an entry, dropping explicit zeros.
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    /// Add into an entry.
    pub fn add_at(&mut self, i: usize, j: usize, v: &S) {
        let cur = self.get(i, j);
        self.set(i, j, cur.add(v));
    }

    /// Iterate nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn mul(&self, rhs: &SparseMat<S>) -> SparseMat<S> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let mut out = SparseMat::zero(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, S> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &rhs.rows[*k] {
                    let term = a.mul(b);
                    match acc.get_mut(j) {
                        Some(cur) => *cur = cur.add(&term),
                        None => {
                            acc.insert(*j, term);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        out
    }

    pub fn add(&self, rhs: &SparseMat<S>) -> SparseMat<S> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        let mut out = self.clone();
        for (i, j, v) in rhs.iter() {
            out.add_at(i, j, v);
        }
        out
    }

    pub fn sub(&self, rhs: &SparseMat<S>) -> SparseMat<S> {
        self.add(&rhs.scale(&S::one().neg()))
    }

    pub fn scale(&self, c: &S) -> SparseMat<S> {
        let mut out = SparseMat::zero(self.dim);
        if c.is_zero() {
            return out;
        }
        for (i, j, v) in self.iter() {
            out.set(i, j, v.mul(c));
        }
        out
    }

    /// Kronecker product: acts on the tensor product space, with `self` on
    /// the first factor.  Index layout: `(i1, i2) -> i1 * rhs.dim + i2`.
    pub fn kron(&self, rhs: &SparseMat<S>) -> SparseMat<S> {
        let mut out = SparseMat::zero(self.dim * rhs.dim);
        for (i1, j1, a) in self.iter() {
            for (i2, j2, b) in rhs.iter() {
                out.set(i1 * rhs.dim + i2, j1 * rhs.dim + j2, a.mul(b));
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMat<S> {
        let mut out = SparseMat::zero(self.dim);
        for (i, j, v) in self.iter() {
            out.set(j, i, v.clone());
        }
        out
    }

    /// Entrywise transformation into another scalar ring; entries mapping to
    /// zero are dropped.
    pub fn map<T: Scalar, E>(
        &self,
        mut f: impl FnMut(usize, usize, &S) -> Result<T, E>,
    ) -> Result<SparseMat<T>, E> {
        let mut out = SparseMat::zero(self.dim);
        for (i, j, v) in self.iter() {
            out.set(i, j, f(i, j, v)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RatFunc;

    fn konst(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn product_and_kron_agree_with_dense_reasoning() {
        // [[1,2],[0,3]] * [[0,1],[1,0]] = [[2,1],[3,0]]
        let mut a = SparseMat::zero(2);
        a.set(0, 0, konst(1));
        a.set(0, 1, konst(2));
        a.set(1, 1, konst(3));
        let mut b = SparseMat::zero(2);
        b.set(0, 1, konst(1));
        b.set(1, 0, konst(1));
        let p = a.mul(&b);
        assert_eq!(p.get(0, 0), konst(2));
        assert_eq!(p.get(0, 1), konst(1));
        assert_eq!(p.get(1, 0), konst(3));
        assert_eq!(p.get(1, 1), konst(0));

        let k = a.kron(&b);
        assert_eq!(k.dim(), 4);
        // (a kron b)[(i1,i2),(j1,j2)] = a[i1,j1] * b[i2,j2], flat i1*2+i2.
        assert_eq!(k.get(0, 3), konst(2)); // a[0,1] * b[0,1]
        assert_eq!(k.get(1, 2), konst(2)); // a[0,1] * b[1,0]
        assert_eq!(k.get(2, 3), konst(3)); // a[1,1] * b[0,1]
        assert_eq!(k.get(3, 2), konst(3)); // a[1,1] * b[1,0]
        assert_eq!(k.get(0, 0), konst(0)); // a[0,0] * b[0,0] = 0

        let i2 = SparseMat::<RatFunc>::identity(2);
        assert_eq!(a.mul(&i2), a);
        assert_eq!(i2.kron(&i2), SparseMat::identity(4));
        assert!(a.sub(&a).is_zero());
    }
}
