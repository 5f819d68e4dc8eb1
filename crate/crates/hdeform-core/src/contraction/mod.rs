//! Singular changes of basis and the exact `q -> 1` contraction.
//!
//! A contraction map is an upper-triangular matrix `g` with unit diagonal
//! over `Q(v, h)` whose strict upper entries may carry a simple pole at
//! `q = 1`, canonically the singular parameter `h/(q - 1)`.  Conjugating a
//! q-deformed R-matrix by `g (x) g` and taking the exact limit at `q = 1`
//! yields the h-deformed R-matrix — an operation that only succeeds when
//! every pole cancels, which is precisely what distinguishes the families
//! that admit an h-deformation by this route from those that do not.
//!
//! The same transport applies to invariant bilinear forms: `C' -> g^t C' g`
//! followed by the entrywise limit.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ring::{HPoly, RatFunc, RingError, Scalar};
use crate::rmatrix::{RMatrix, SparseMat};

/// The canonical singular parameter `h / (q - 1)`.
pub fn singular_parameter() -> RatFunc {
    RatFunc::h()
        .div(&RatFunc::q().sub(&RatFunc::one()))
        .expect("q - 1 is nonzero")
}

/// Errors raised while constructing contraction maps.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("dimension {0} outside supported bounds")]
    BadDimension(usize),
    #[error("entry at ({0}, {1}) must be zero below the diagonal")]
    NotUpperTriangular(usize, usize),
    #[error("diagonal entry at ({0}, {0}) must be one")]
    NotUnitDiagonal(usize),
    #[error("entry index ({0}, {1}) out of range for dimension {2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error(transparent)]
    Scalar(#[from] RingError),
}

/// One entry of a contraction that failed to converge at `q = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularEntry {
    pub row: [usize; 2],
    pub col: [usize; 2],
    /// Net vanishing order at `q = 1` (negative: pole).
    pub order: i64,
    /// Canonical rendering of the pre-limit value.
    pub value: String,
}

/// The contraction failed: the conjugated matrix keeps genuine poles at
/// `q = 1`.  Carries every offending entry, sorted by index.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("contraction is singular at q = 1 in {} entries", .entries.len())]
pub struct ContractionSingular {
    pub entries: Vec<SingularEntry>,
}

/// Upper-triangular change of basis with unit diagonal over `Q(v, h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    dim: usize,
    rows: Vec<Vec<RatFunc>>,
}

impl ContractionMap {
    pub fn identity(dim: usize) -> Self {
        let mut rows = vec![vec![RatFunc::zero(); dim]; dim];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = RatFunc::one();
        }
        ContractionMap { dim, rows }
    }

    /// Build from strict upper-triangular entries `(row, col, value)`,
    /// 1-based.
    pub fn from_upper_entries(
        dim: usize,
        entries: &[(usize, usize, RatFunc)],
    ) -> Result<Self, MapError> {
        if dim < 2 {
            return Err(MapError::BadDimension(dim));
        }
        let mut map = ContractionMap::identity(dim);
        for (i, j, value) in entries {
            if *i < 1 || *j < 1 || *i > dim || *j > dim {
                return Err(MapError::IndexOutOfRange(*i, *j, dim));
            }
            if i >= j {
                return Err(MapError::NotUpperTriangular(*i, *j));
            }
            map.rows[i - 1][j - 1] = value.clone();
        }
        Ok(map)
    }

    /// `I + p e_12 + beta e_13` in dimension 3 (the slot at `(2,3)` is
    /// structurally zero for this family).
    pub fn gl3_g1(p: &RatFunc, beta: &RatFunc) -> Self {
        ContractionMap::from_upper_entries(3, &[(1, 2, p.clone()), (1, 3, beta.clone())])
            .expect("static shape")
    }

    /// `I + alpha e_12 + beta e_13 + p e_23` in dimension 3.
    pub fn gl3_g2(p: &RatFunc, alpha: &RatFunc, beta: &RatFunc) -> Self {
        ContractionMap::from_upper_entries(
            3,
            &[
                (1, 2, alpha.clone()),
                (1, 3, beta.clone()),
                (2, 3, p.clone()),
            ],
        )
        .expect("static shape")
    }

    /// `I + alpha e_12 + p e_13 + gamma e_23` in dimension 3.
    pub fn gl3_g3(p: &RatFunc, alpha: &RatFunc, gamma: &RatFunc) -> Self {
        ContractionMap::from_upper_entries(
            3,
            &[
                (1, 2, alpha.clone()),
                (1, 3, p.clone()),
                (2, 3, gamma.clone()),
            ],
        )
        .expect("static shape")
    }

    /// `I + (h/(q-1)) e_1N`: the corner map that generalizes to every
    /// dimension and series.
    pub fn standard(dim: usize) -> Result<Self, MapError> {
        ContractionMap::from_upper_entries(dim, &[(1, dim, singular_parameter())])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.rows[i - 1][j - 1]
    }

    /// Matrix product (the result is again unit upper-triangular).
    pub fn mul(&self, rhs: &ContractionMap) -> ContractionMap {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut rows = vec![vec![RatFunc::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate().skip(i) {
                let mut acc = RatFunc::zero();
                for k in i..=j {
                    acc = acc.add(&self.rows[i][k].mul(&rhs.rows[k][j]));
                }
                *cell = acc;
            }
        }
        ContractionMap { dim: n, rows }
    }

    /// Exact inverse; unipotent triangular matrices invert by the finite
    /// Neumann series `I - U + U^2 - ...` where `U = g - I` is nilpotent.
    pub fn inverse(&self) -> ContractionMap {
        let n = self.dim;
        let mut strict = self.clone();
        for i in 0..n {
            strict.rows[i][i] = RatFunc::zero();
        }
        let mut inv = ContractionMap::identity(n);
        let mut power = ContractionMap::identity(n);
        let mut sign = -1i64;
        for _ in 1..n {
            power = power.mul(&strict);
            let factor = RatFunc::from_int(sign);
            for i in 0..n {
                for j in 0..n {
                    let term = power.rows[i][j].mul(&factor);
                    inv.rows[i][j] = inv.rows[i][j].add(&term);
                }
            }
            sign = -sign;
        }
        inv
    }

    fn to_sparse(&self) -> SparseMat<RatFunc> {
        let mut m = SparseMat::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m.set(i, j, self.rows[i][j].clone());
            }
        }
        m
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            n: self.dim,
            entries: matrix_entries(&self.rows),
        }
    }

    pub fn from_json(json: &FormJson) -> Result<Self, MapError> {
        let dim = json.n;
        if dim < 2 {
            return Err(MapError::BadDimension(dim));
        }
        let mut rows = vec![vec![RatFunc::zero(); dim]; dim];
        for e in &json.entries {
            if e.row < 1 || e.col < 1 || e.row > dim || e.col > dim {
                return Err(MapError::IndexOutOfRange(e.row, e.col, dim));
            }
            rows[e.row - 1][e.col - 1] = RatFunc::parse(&e.value)?;
        }
        for (i, row) in rows.iter().enumerate() {
            if !row[i].is_one() {
                return Err(MapError::NotUnitDiagonal(i + 1));
            }
            for (j, value) in row.iter().enumerate() {
                if j < i && !value.is_zero() {
                    return Err(MapError::NotUpperTriangular(i + 1, j + 1));
                }
            }
        }
        Ok(ContractionMap { dim, rows })
    }

    /// Text listing `g_ij = value` of the nonzero entries.
    pub fn text_dump(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                let v = self.get(i, j);
                if !v.is_zero() {
                    writeln!(out, "g_{i}{j} = {v}").expect("string write");
                }
            }
        }
        out
    }
}

/// Conjugate on the tensor square without taking the limit:
/// `(g (x) g)^{-1} R (g (x) g)`, using `(g (x) g)^{-1} = g^{-1} (x) g^{-1}`.
pub fn conjugate_tensor_square(r: &RMatrix<RatFunc>, g: &ContractionMap) -> RMatrix<RatFunc> {
    assert_eq!(r.dim(), g.dim(), "matrix and map dimensions differ");
    let gs = g.to_sparse();
    let ginv = g.inverse().to_sparse();
    let gg = gs.kron(&gs);
    let gginv = ginv.kron(&ginv);
    let conj = gginv.mul(&r.to_sparse()).mul(&gg);
    RMatrix::from_sparse(r.dim(), &conj)
}

/// Entrywise exact limit `q -> 1` of a matrix on the tensor square;
/// reports every non-convergent entry.
pub fn limit_tensor_square(r: &RMatrix<RatFunc>) -> Result<RMatrix<HPoly>, ContractionSingular> {
    let mut singular = Vec::new();
    let limited = r.try_map(|key, value| match value.limit_q1() {
        Ok(p) => Ok(p),
        Err(_) => {
            let (row, col) = *key;
            singular.push(SingularEntry {
                row: [row.0, row.1],
                col: [col.0, col.1],
                order: value.order_at_q1().unwrap_or(0),
                value: value.to_string(),
            });
            Ok(HPoly::zero())
        }
    });
    let limited: RMatrix<HPoly> = limited.unwrap_or_else(|e: std::convert::Infallible| match e {});
    if singular.is_empty() {
        Ok(limited)
    } else {
        singular.sort_by_key(|e| (e.row, e.col));
        Err(ContractionSingular { entries: singular })
    }
}

/// The contraction `lim_{q -> 1} (g (x) g)^{-1} R (g (x) g)`.
pub fn contract_r(
    r: &RMatrix<RatFunc>,
    g: &ContractionMap,
) -> Result<RMatrix<HPoly>, ContractionSingular> {
    limit_tensor_square(&conjugate_tensor_square(r, g))
}

/// Dense square matrix of scalars: invariant bilinear forms and their
/// serialized shape (also reused for contraction maps).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm<S: Scalar> {
    dim: usize,
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> BilinearForm<S> {
    pub fn zero(dim: usize) -> Self {
        BilinearForm {
            dim,
            rows: vec![vec![S::zero(); dim]; dim],
        }
    }

    pub fn from_entries(dim: usize, entries: &[(usize, usize, S)]) -> Self {
        let mut f = BilinearForm::zero(dim);
        for (i, j, v) in entries {
            f.rows[i - 1][j - 1] = v.clone();
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.rows[i - 1][j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.rows[i - 1][j - 1] = v;
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            n: self.dim,
            entries: matrix_entries(&self.rows),
        }
    }

    pub fn from_json(json: &FormJson) -> Result<Self, MapError> {
        let dim = json.n;
        let mut f = BilinearForm::zero(dim);
        for e in &json.entries {
            if e.row < 1 || e.col < 1 || e.row > dim || e.col > dim {
                return Err(MapError::IndexOutOfRange(e.row, e.col, dim));
            }
            f.rows[e.row - 1][e.col - 1] = S::parse(&e.value)?;
        }
        Ok(f)
    }

    /// Text listing `C_ij = value` of the nonzero entries.
    pub fn text_dump(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                let v = self.get(i, j);
                if !v.is_zero() {
                    writeln!(out, "C_{i}{j} = {v}").expect("string write");
                }
            }
        }
        out
    }
}

fn matrix_entries<S: Scalar>(rows: &[Vec<S>]) -> Vec<FormEntryJson> {
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                out.push(FormEntryJson {
                    row: i + 1,
                    col: j + 1,
                    value: v.to_string(),
                });
            }
        }
    }
    out
}

/// Serialized square matrix (contraction maps and bilinear forms).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub entries: Vec<FormEntryJson>,
}

/// One nonzero entry of a serialized square matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormEntryJson {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

/// The invariant bilinear form of an orthogonal/symplectic series matrix:
/// antidiagonal weights `eps_i q^{-rho_i}` on the conjugate pairs `(i, i')`.
pub fn series_q_form(spec: &crate::rmatrix::SeriesSpec) -> BilinearForm<RatFunc> {
    let n = spec.dim();
    let mut c = BilinearForm::zero(n);
    for i in 1..=n {
        let weight =
            RatFunc::v_pow(-spec.two_rho()[i - 1]).scale(&crate::ring::rat_int(spec.eps()[i - 1]));
        c.set(i, spec.conjugate(i), weight);
    }
    c
}

/// Transport of a bilinear form along a change of basis: `g^t C g`.
pub fn transform_form(c: &BilinearForm<RatFunc>, g: &ContractionMap) -> BilinearForm<RatFunc> {
    assert_eq!(c.dim(), g.dim(), "form and map dimensions differ");
    let n = c.dim();
    let mut out = BilinearForm::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            let mut acc = RatFunc::zero();
            for a in 1..=n {
                for b in 1..=n {
                    // (g^t C g)_{ij} = sum_{a,b} g_{ai} C_{ab} g_{bj}
                    let term = g.get(a, i).mul(c.get(a, b)).mul(g.get(b, j));
                    acc = acc.add(&term);
                }
            }
            out.set(i, j, acc);
        }
    }
    out
}

/// Entrywise exact limit of a form at `q = 1`.
pub fn limit_form(c: &BilinearForm<RatFunc>) -> Result<BilinearForm<HPoly>, ContractionSingular> {
    let mut out = BilinearForm::zero(c.dim());
    let mut singular = Vec::new();
    for i in 1..=c.dim() {
        for j in 1..=c.dim() {
            let value = c.get(i, j);
            match value.limit_q1() {
                Ok(p) => out.set(i, j, p),
                Err(_) => singular.push(SingularEntry {
                    row: [i, 0],
                    col: [j, 0],
                    order: value.order_at_q1().unwrap_or(0),
                    value: value.to_string(),
                }),
            }
        }
    }
    if singular.is_empty() {
        Ok(out)
    } else {
        Err(ContractionSingular { entries: singular })
    }
}
