//! Construction of the standard trigonometric R-matrices for the classical
//! series, and the sparse container they live in.
//!
//! An R-matrix acts on the tensor square of an `N`-dimensional space.  Its
//! entries are keyed by a composite row pair and column pair: the entry at
//! `((i,j),(k,l))` is the coefficient of `e_{ik} (x) e_{jl}` in the expansion
//! of `R` over matrix units, so the label `R_ijij` names the diagonal in the
//! product basis and `R` acts by `(R x)_{ij} = sum R_((i,j),(k,l)) x_{kl}`.
//!
//! Three families are built here:
//!
//! * the general-linear series (`A`), parametrized by the dimension `N`;
//! * the odd orthogonal (`B`), symplectic (`C`) and even orthogonal (`D`)
//!   series, parametrized by the classical rank `n`, acting in dimension
//!   `2n+1`, `2n`, `2n` respectively.
//!
//! The `B`/`C`/`D` matrices involve `q` raised to differences of the Weyl
//! vector components; those are half-integers for `B`, which is why the
//! scalar ring works with `v = q^(1/2)`.

mod sparse;

pub use sparse::SparseMat;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ring::{RatFunc, RingError, Scalar};

/// Basis label pair `(i, j)`, 1-based.
pub type Pair = (usize, usize);

/// Classical series of the deformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn parse(text: &str) -> Result<Family, BuildError> {
        match text.to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(BuildError::UnknownFamily(other.to_string())),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        write!(f, "{s}")
    }
}

/// Which off-diagonal triangle carries the `q - q^{-1}` terms of the
/// general-linear R-matrix.  The two choices are related by conjugating with
/// the tensor flip; the lower choice is the one whose contraction matches
/// the frozen golden values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Lower,
    Upper,
}

impl Orientation {
    pub fn parse(text: &str) -> Result<Orientation, BuildError> {
        match text.to_ascii_lowercase().as_str() {
            "lower" => Ok(Orientation::Lower),
            "upper" => Ok(Orientation::Upper),
            other => Err(BuildError::UnknownOrientation(other.to_string())),
        }
    }
}

/// Errors raised while constructing or deserializing matrices.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("unknown family `{0}` (expected A, B, C or D)")]
    UnknownFamily(String),
    #[error("unknown orientation `{0}` (expected lower or upper)")]
    UnknownOrientation(String),
    #[error("family {family}: {msg}")]
    BadParameter { family: Family, msg: String },
    #[error("matrix entry {0:?} out of range for dimension {1}")]
    IndexOutOfRange((Pair, Pair), usize),
    #[error("duplicate matrix entry at {0:?}")]
    DuplicateEntry((Pair, Pair)),
    #[error(transparent)]
    Scalar(#[from] RingError),
}

/// A fully resolved series choice: family, rank, dimension, and the
/// Weyl-vector/sign data entering the orthogonal and symplectic matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    family: Family,
    rank: usize,
    dim: usize,
    /// Twice the Weyl-vector components (integers even for half-integer
    /// components), indexed by basis label minus one.  Empty for family A.
    two_rho: Vec<i64>,
    /// Signature signs; all `+1` except the lower half of the symplectic
    /// series.  Empty for family A.
    eps: Vec<i64>,
}

/// Dimension bounds honored by every constructor: exact arithmetic on the
/// cube of the space stays desk-scale up to `N = 8`.
pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 8;

impl SeriesSpec {
    /// General-linear series in dimension `dim`.
    pub fn a(dim: usize) -> Result<SeriesSpec, BuildError> {
        if !(MIN_DIM..=MAX_DIM).contains(&dim) {
            return Err(BuildError::BadParameter {
                family: Family::A,
                msg: format!("dimension {dim} outside {MIN_DIM}..={MAX_DIM}"),
            });
        }
        Ok(SeriesSpec {
            family: Family::A,
            rank: dim - 1,
            dim,
            two_rho: Vec::new(),
            eps: Vec::new(),
        })
    }

    /// Odd orthogonal series of rank `rank` (dimension `2 rank + 1`).
    pub fn b(rank: usize) -> Result<SeriesSpec, BuildError> {
        let dim = 2 * rank + 1;
        if rank < 1 || dim > MAX_DIM {
            return Err(BuildError::BadParameter {
                family: Family::B,
                msg: format!("rank {rank} gives dimension {dim} outside bounds"),
            });
        }
        // 2 rho = (2n-1, 2n-3, ..., 1, 0, -1, ..., -(2n-1)).
        let two_rho = mirrored(dim, |i| 2 * (rank as i64 - i as i64) + 1);
        Ok(SeriesSpec {
            family: Family::B,
            rank,
            dim,
            two_rho,
            eps: vec![1; dim],
        })
    }

    /// Symplectic series of rank `rank` (dimension `2 rank`).
    pub fn c(rank: usize) -> Result<SeriesSpec, BuildError> {
        let dim = 2 * rank;
        if rank < 1 || dim > MAX_DIM {
            return Err(BuildError::BadParameter {
                family: Family::C,
                msg: format!("rank {rank} gives dimension {dim} outside bounds"),
            });
        }
        // 2 rho = (2n, 2n-2, ..., 2, -2, ..., -2n).
        let two_rho = mirrored(dim, |i| 2 * (rank as i64 - i as i64 + 1));
        let mut eps = vec![1; dim];
        for e in eps.iter_mut().skip(rank) {
            *e = -1;
        }
        Ok(SeriesSpec {
            family: Family::C,
            rank,
            dim,
            two_rho,
            eps,
        })
    }

    /// Even orthogonal series of rank `rank` (dimension `2 rank`).
    pub fn d(rank: usize) -> Result<SeriesSpec, BuildError> {
        let dim = 2 * rank;
        if rank < 2 || dim > MAX_DIM {
            return Err(BuildError::BadParameter {
                family: Family::D,
                msg: format!("rank {rank} gives dimension {dim} outside bounds"),
            });
        }
        // 2 rho = (2n-2, ..., 2, 0, 0, -2, ..., -(2n-2)).
        let two_rho = mirrored(dim, |i| 2 * (rank as i64 - i as i64));
        Ok(SeriesSpec {
            family: Family::D,
            rank,
            dim,
            two_rho,
            eps: vec![1; dim],
        })
    }

    /// Resolve a family with its CLI-style parameter (dimension for `A`,
    /// rank otherwise).
    pub fn resolve(family: Family, param: usize) -> Result<SeriesSpec, BuildError> {
        match family {
            Family::A => SeriesSpec::a(param),
            Family::B => SeriesSpec::b(param),
            Family::C => SeriesSpec::c(param),
            Family::D => SeriesSpec::d(param),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    pub fn eps(&self) -> &[i64] {
        &self.eps
    }

    /// The conjugate basis label `i' = N + 1 - i`.
    pub fn conjugate(&self, i: usize) -> usize {
        self.dim + 1 - i
    }

    /// Build the q-deformed R-matrix for the series (lower orientation for
    /// family A).
    pub fn build(&self) -> RMatrix<RatFunc> {
        match self.family {
            Family::A => build_gl(self.dim, Orientation::Lower).expect("dimension validated"),
            _ => build_bcd(self),
        }
    }
}

/// First half by the given rule, middle zero when `dim` is odd, second half
/// mirrored with opposite sign.
fn mirrored(dim: usize, first_half: impl Fn(usize) -> i64) -> Vec<i64> {
    let mut out = vec![0i64; dim];
    for i in 1..=dim / 2 {
        let val = first_half(i);
        out[i - 1] = val;
        out[dim - i] = -val;
    }
    out
}

/// The general-linear R-matrix in dimension `dim`:
///
/// ```text
/// R = q sum_i e_ii (x) e_ii  +  sum_{i != j} e_ii (x) e_jj
///       + (q - q^{-1}) sum_{i > j} e_ij (x) e_ji        (lower orientation)
/// ```
///
/// The upper orientation puts the last sum on `i < j` instead; the two are
/// conjugate under the tensor flip.
pub fn build_gl(dim: usize, orientation: Orientation) -> Result<RMatrix<RatFunc>, BuildError> {
    if !(MIN_DIM..=MAX_DIM).contains(&dim) {
        return Err(BuildError::BadParameter {
            family: Family::A,
            msg: format!("dimension {dim} outside {MIN_DIM}..={MAX_DIM}"),
        });
    }
    let q = RatFunc::q();
    let lambda = RatFunc::q().sub(&RatFunc::q_pow(-1));
    let mut r = RMatrix::new(dim);
    for i in 1..=dim {
        for j in 1..=dim {
            if i == j {
                r.add_at((i, i), (i, i), &q);
            } else {
                r.add_at((i, j), (i, j), &RatFunc::one());
            }
        }
    }
    for i in 1..=dim {
        for j in 1..=dim {
            let carries = match orientation {
                Orientation::Lower => i > j,
                Orientation::Upper => i < j,
            };
            if carries {
                r.add_at((i, j), (j, i), &lambda);
            }
        }
    }
    Ok(r)
}

/// The orthogonal/symplectic R-matrix for a resolved series:
///
/// ```text
/// R = q sum_{i != i'} e_ii (x) e_ii  +  e_mm (x) e_mm          (odd dim only)
///       + sum_{i != j, i != j'} e_ii (x) e_jj
///       + q^{-1} sum_{i != i'} e_ii (x) e_{i'i'}
///       + (q - q^{-1}) sum_{i > j} e_ij (x) e_ji
///       - (q - q^{-1}) sum_{i > j} q^{rho_i - rho_j} eps_i eps_j
///                                     e_ij (x) e_{i'j'}
/// ```
fn build_bcd(spec: &SeriesSpec) -> RMatrix<RatFunc> {
    let n = spec.dim;
    let q = RatFunc::q();
    let qinv = RatFunc::q_pow(-1);
    let lambda = q.sub(&qinv);
    let mut r = RMatrix::new(n);
    for i in 1..=n {
        if i != spec.conjugate(i) {
            r.add_at((i, i), (i, i), &q);
        } else {
            r.add_at((i, i), (i, i), &RatFunc::one());
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i != j && i != spec.conjugate(j) {
                r.add_at((i, j), (i, j), &RatFunc::one());
            }
        }
    }
    for i in 1..=n {
        let ic = spec.conjugate(i);
        if i != ic {
            r.add_at((i, ic), (i, ic), &qinv);
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i > j {
                r.add_at((i, j), (j, i), &lambda);
                let ic = spec.conjugate(i);
                let jc = spec.conjugate(j);
                let sign = spec.eps[i - 1] * spec.eps[j - 1];
                let weight = RatFunc::v_pow(spec.two_rho[i - 1] - spec.two_rho[j - 1])
                    .scale(&crate::ring::rat_int(sign));
                r.add_at((i, ic), (j, jc), &lambda.mul(&weight).neg());
            }
        }
    }
    r
}

/// Sparse matrix on the tensor square, keyed by composite index pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix<S: Scalar> {
    dim: usize,
    entries: BTreeMap<(Pair, Pair), S>,
}

impl<S: Scalar> RMatrix<S> {
    pub fn new(dim: usize) -> Self {
        RMatrix {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// Identity on the tensor square.
    pub fn identity(dim: usize) -> Self {
        let mut r = RMatrix::new(dim);
        for i in 1..=dim {
            for j in 1..=dim {
                r.set((i, j), (i, j), S::one());
            }
        }
        r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: Pair, col: Pair) -> S {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn set(&mut self, row: Pair, col: Pair, value: S) {
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn add_at(&mut self, row: Pair, col: Pair, value: &S) {
        let cur = self.get(row, col);
        self.set(row, col, cur.add(value));
    }

    /// Iterate entries in lexicographic `(i, j, k, l)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(Pair, Pair), &S)> {
        self.entries.iter()
    }

    /// Entrywise transformation into another scalar ring, with key context.
    pub fn try_map<T: Scalar, E>(
        &self,
        mut f: impl FnMut(&(Pair, Pair), &S) -> Result<T, E>,
    ) -> Result<RMatrix<T>, E> {
        let mut out = RMatrix::new(self.dim);
        for (key, value) in &self.entries {
            out.set(key.0, key.1, f(key, value)?);
        }
        Ok(out)
    }

    /// Composite row swap: the matrix of `P R` where `P` is the tensor flip.
    /// This is the braid-form operator whose spectral identities (Hecke,
    /// involutivity) the checks consume.
    pub fn braid(&self) -> RMatrix<S> {
        let mut out = RMatrix::new(self.dim);
        for (((i, j), col), value) in &self.entries {
            out.set((*j, *i), *col, value.clone());
        }
        out
    }

    /// Conjugation by the tensor flip: the matrix of `P R P`.
    pub fn flip_conjugate(&self) -> RMatrix<S> {
        let mut out = RMatrix::new(self.dim);
        for (((i, j), (k, l)), value) in &self.entries {
            out.set((*j, *i), (*l, *k), value.clone());
        }
        out
    }

    /// Flatten to a sparse matrix on the `dim^2`-dimensional square space,
    /// with composite index `(i, j) -> (i-1) dim + (j-1)`.
    pub fn to_sparse(&self) -> SparseMat<S> {
        let mut m = SparseMat::zero(self.dim * self.dim);
        for (((i, j), (k, l)), value) in &self.entries {
            m.set(
                (i - 1) * self.dim + (j - 1),
                (k - 1) * self.dim + (l - 1),
                value.clone(),
            );
        }
        m
    }

    pub fn from_sparse(dim: usize, m: &SparseMat<S>) -> Self {
        assert_eq!(
            m.dim(),
            dim * dim,
            "sparse matrix is not on a tensor square"
        );
        let mut r = RMatrix::new(dim);
        for (a, b, value) in m.iter() {
            let row = (a / dim + 1, a % dim + 1);
            let col = (b / dim + 1, b % dim + 1);
            r.set(row, col, value.clone());
        }
        r
    }

    /// Embed into a triple tensor power on the given pair of legs (1-based,
    /// one of (1,2), (1,3), (2,3)), acting as the identity on the third.
    pub fn embed_in_three(&self, legs: (usize, usize)) -> SparseMat<S> {
        let n = self.dim;
        let flat = |a: usize, b: usize, c: usize| ((a - 1) * n + (b - 1)) * n + (c - 1);
        let mut m = SparseMat::zero(n * n * n);
        for (((p, r), (s, t)), value) in &self.entries {
            for u in 1..=n {
                let (row, col) = match legs {
                    (1, 2) => (flat(*p, *r, u), flat(*s, *t, u)),
                    (2, 3) => (flat(u, *p, *r), flat(u, *s, *t)),
                    (1, 3) => (flat(*p, u, *r), flat(*s, u, *t)),
                    other => panic!("unsupported leg pair {other:?}"),
                };
                m.set(row, col, value.clone());
            }
        }
        m
    }

    /// Entries where the two matrices differ, in index order.
    pub fn diff(&self, other: &RMatrix<S>) -> Vec<((Pair, Pair), S, S)> {
        let mut keys: Vec<_> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|key| {
                let a = self.get(key.0, key.1);
                let b = other.get(key.0, key.1);
                (a != b).then_some((*key, a, b))
            })
            .collect()
    }

    /// Text listing, one `R_ijkl = value` line per entry in index order.
    pub fn text_dump(&self) -> String {
        let mut out = String::new();
        for (((i, j), (k, l)), value) in &self.entries {
            writeln!(out, "R_{i}{j}{k}{l} = {value}").expect("string write");
        }
        out
    }

    pub fn to_json(&self) -> RMatrixJson {
        RMatrixJson {
            n: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(((i, j), (k, l)), value)| MatrixEntryJson {
                    row: [*i, *j],
                    col: [*k, *l],
                    value: value.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &RMatrixJson) -> Result<Self, BuildError> {
        let dim = json.n;
        let mut r = RMatrix::new(dim);
        for e in &json.entries {
            let key = ((e.row[0], e.row[1]), (e.col[0], e.col[1]));
            if e.row.iter().chain(e.col.iter()).any(|&x| x < 1 || x > dim) {
                return Err(BuildError::IndexOutOfRange(key, dim));
            }
            if r.entries.contains_key(&key) {
                return Err(BuildError::DuplicateEntry(key));
            }
            r.set(key.0, key.1, S::parse(&e.value)?);
        }
        Ok(r)
    }
}

/// Serialized form of an [`RMatrix`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RMatrixJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub entries: Vec<MatrixEntryJson>,
}

/// One nonzero coefficient in a serialized matrix on the tensor square.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixEntryJson {
    pub row: [usize; 2],
    pub col: [usize; 2],
    pub value: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn gl_matrix_has_documented_shape() {
        let r2 = build_gl(2, Orientation::Lower).unwrap();
        assert_eq!(r2.nnz(), 5);
        assert_eq!(r2.get((1, 1), (1, 1)), q("q"));
        assert_eq!(r2.get((2, 2), (2, 2)), q("q"));
        assert_eq!(r2.get((1, 2), (1, 2)), q("1"));
        assert_eq!(r2.get((2, 1), (2, 1)), q("1"));
        assert_eq!(r2.get((2, 1), (1, 2)), q("q - q^-1"));
        assert_eq!(r2.get((1, 2), (2, 1)), q("0"));

        let up = build_gl(2, Orientation::Upper).unwrap();
        assert_eq!(up.get((1, 2), (2, 1)), q("q - q^-1"));
        assert_eq!(up, r2.flip_conjugate());

        for n in 2..=6 {
            let r = build_gl(n, Orientation::Lower).unwrap();
            assert_eq!(r.nnz(), n * n + n * (n - 1) / 2);
        }
        assert!(build_gl(1, Orientation::Lower).is_err());
        assert!(build_gl(9, Orientation::Lower).is_err());
    }

    #[test]
    fn symplectic_rank_one_matches_independent_transcription() {
        // Worked out by hand from the closed formula in dimension 2:
        // diag(q, 1/q, 1/q, q) plus a single lower corner entry.
        let r = SeriesSpec::c(1).unwrap().build();
        assert_eq!(r.nnz(), 5);
        assert_eq!(r.get((1, 1), (1, 1)), q("q"));
        assert_eq!(r.get((1, 2), (1, 2)), q("1/q"));
        assert_eq!(r.get((2, 1), (2, 1)), q("1/q"));
        assert_eq!(r.get((2, 2), (2, 2)), q("q"));
        assert_eq!(r.get((2, 1), (1, 2)), q("(q - q^-1)*(1 + q^-2)"));
    }

    #[test]
    fn odd_orthogonal_rank_one_shape() {
        let spec = SeriesSpec::b(1).unwrap();
        assert_eq!(spec.dim(), 3);
        assert_eq!(spec.two_rho(), &[1, 0, -1]);
        let r = spec.build();
        // Middle label is self-conjugate: unit diagonal entry there.
        assert_eq!(r.get((2, 2), (2, 2)), q("1"));
        assert_eq!(r.get((1, 1), (1, 1)), q("q"));
        assert_eq!(r.get((1, 3), (1, 3)), q("1/q"));
        assert_eq!(r.get((3, 1), (3, 1)), q("1/q"));
        // Half-integer Weyl differences appear as odd powers of v.
        assert_eq!(r.get((2, 2), (1, 3)), q("-(q - q^-1)*v^-1"));
        assert_eq!(r.get((3, 1), (2, 2)), q("-(q - q^-1)*v^-1"));
        // The two corner contributions combine.
        assert_eq!(r.get((3, 1), (1, 3)), q("(q - q^-1)*(1 - q^-1)"));
        assert_eq!(r.nnz(), 14);
    }

    #[test]
    fn series_parameter_bounds() {
        assert!(SeriesSpec::b(3).is_ok()); // dimension 7
        assert!(SeriesSpec::b(4).is_err()); // dimension 9
        assert!(SeriesSpec::c(4).is_ok()); // dimension 8
        assert!(SeriesSpec::c(5).is_err());
        assert!(SeriesSpec::d(2).is_ok());
        assert!(SeriesSpec::d(1).is_err()); // degenerate
        assert!(SeriesSpec::d(5).is_err());
        let c2 = SeriesSpec::c(2).unwrap();
        assert_eq!(c2.two_rho(), &[4, 2, -2, -4]);
        assert_eq!(c2.eps(), &[1, 1, -1, -1]);
        let d3 = SeriesSpec::d(3).unwrap();
        assert_eq!(d3.two_rho(), &[4, 2, 0, 0, -2, -4]);
    }

    #[test]
    fn braid_and_flip_transforms_move_indices() {
        let r = build_gl(3, Orientation::Lower).unwrap();
        let braid = r.braid();
        for i in 1..=3 {
            for j in 1..=3 {
                for k in 1..=3 {
                    for l in 1..=3 {
                        assert_eq!(braid.get((i, j), (k, l)), r.get((j, i), (k, l)));
                    }
                }
            }
        }
        // Braid form is flip times matrix, checked against sparse algebra.
        let mut flip = SparseMat::zero(9);
        for i in 0..3 {
            for j in 0..3 {
                flip.set(i * 3 + j, j * 3 + i, RatFunc::one());
            }
        }
        assert_eq!(flip.mul(&r.to_sparse()), braid.to_sparse());
        assert_eq!(
            flip.mul(&r.to_sparse()).mul(&flip),
            r.flip_conjugate().to_sparse()
        );
    }

    #[test]
    fn json_and_text_round_trip() {
        let r = SeriesSpec::c(1).unwrap().build();
        let json = r.to_json();
        let text = serde_json::to_string_pretty(&json).unwrap();
        assert!(text.contains("\"N\": 2"));
        let back: RMatrixJson = serde_json::from_str(&text).unwrap();
        let parsed = RMatrix::<RatFunc>::from_json(&back).unwrap();
        assert_eq!(parsed, r);

        let dump = r.text_dump();
        assert!(dump.starts_with("R_1111 = q\n"));
        assert!(dump.contains("R_2112 = (q^4 - 1)/q^3"));
    }

    #[test]
    fn embedding_acts_on_chosen_legs() {
        let r = build_gl(2, Orientation::Lower).unwrap();
        let id = SparseMat::<RatFunc>::identity(2);
        let r12 = r.embed_in_three((1, 2));
        let r23 = r.embed_in_three((2, 3));
        assert_eq!(r12, r.to_sparse().kron(&id));
        assert_eq!(r23, id.kron(&r.to_sparse()));
        // Single entry on legs (1,3) with a free middle index.
        let mut single = RMatrix::<RatFunc>::new(2);
        single.set((1, 2), (2, 1), RatFunc::one());
        let e13 = single.embed_in_three((1, 3));
        assert_eq!(e13.nnz(), 2);
        for u in 0..2usize {
            // (1, u, 2) -> (2, u, 1) in 0-based flat form.
            assert_eq!(e13.get(u * 2 + 1, 4 + u * 2), RatFunc::one());
        }
    }
}
