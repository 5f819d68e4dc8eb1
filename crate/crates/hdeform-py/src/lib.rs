//! Python bindings for the h-deformation engine: build q-deformed
//! R-matrices, contract them at `q = 1` by a singular change of basis,
//! transport the quadratic coordinate algebras, and run the symbolic
//! checks — all in exact arithmetic, with entries rendered as canonical
//! strings.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hdeform_core::contraction::{
    conjugate_tensor_square, contract_r, singular_parameter, ContractionMap,
};
use hdeform_core::qplane::{
    contract_relations, dual_plane, format_set, lift_set, manin_plane, scan_gl3 as scan_core,
    symplectic_space, RelationKind, RelationSet,
};
use hdeform_core::ring::{HPoly, RatFunc, Scalar};
use hdeform_core::rmatrix::{
    build_gl, Family, Orientation, RMatrix as CoreMatrix, RMatrixJson, SeriesSpec,
};
use hdeform_core::verify::{
    check_hecke, check_involutive, check_permutation_equivalence, check_ybe, lift_matrix,
    rtt_relations, wz_relations,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn resolve_spec(family: &str, param: usize) -> PyResult<SeriesSpec> {
    let family = Family::parse(family).map_err(value_err)?;
    SeriesSpec::resolve(family, param).map_err(value_err)
}

/// Shared map resolution: `g` selects the shape, `params` overrides its
/// slots (`p` defaults to the singular parameter `h/(q-1)`, the finite
/// slots default to zero).
fn resolve_map(
    spec: &SeriesSpec,
    g: &str,
    params: Option<BTreeMap<String, String>>,
) -> PyResult<ContractionMap> {
    let allowed: &[&str] = match g {
        "g1" => &["p", "beta"],
        "g2" => &["p", "alpha", "beta"],
        "g3" => &["p", "alpha", "gamma"],
        "standard" => &["p"],
        other => {
            return Err(value_err(format!(
                "unknown map `{other}` (expected g1, g2, g3 or standard)"
            )))
        }
    };
    if g != "standard" && (spec.family() != Family::A || spec.dim() != 3) {
        return Err(value_err(format!(
            "map {g} is specific to the general-linear series in dimension 3"
        )));
    }
    let mut values: BTreeMap<String, RatFunc> = BTreeMap::new();
    for (key, expr) in params.unwrap_or_default() {
        if !allowed.contains(&key.as_str()) {
            return Err(value_err(format!(
                "map {g} takes parameters {}, got `{key}`",
                allowed.join(", ")
            )));
        }
        let value =
            RatFunc::parse(&expr).map_err(|e| value_err(format!("parameter {key}: {e}")))?;
        values.insert(key, value);
    }
    let p = values.get("p").cloned().unwrap_or_else(singular_parameter);
    let zero = RatFunc::zero();
    let get = |k: &str| values.get(k).cloned().unwrap_or_else(|| zero.clone());
    let map = match g {
        "g1" => ContractionMap::gl3_g1(&p, &get("beta")),
        "g2" => ContractionMap::gl3_g2(&p, &get("alpha"), &get("beta")),
        "g3" => ContractionMap::gl3_g3(&p, &get("alpha"), &get("gamma")),
        _ => ContractionMap::from_upper_entries(spec.dim(), &[(1, spec.dim(), p.clone())])
            .map_err(value_err)?,
    };
    Ok(map)
}

fn kind_name(kind: RelationKind) -> &'static str {
    match kind {
        RelationKind::Plane => "plane",
        RelationKind::Dual => "dual",
        RelationKind::SymplecticSpace => "symplectic-space",
        RelationKind::Rtt => "rtt",
        RelationKind::WzMixed => "wz-mixed",
        RelationKind::WzDifferential => "wz-differential",
    }
}

enum Scalars {
    Q(CoreMatrix<RatFunc>),
    H(CoreMatrix<HPoly>),
}

/// A matrix on the tensor square of an `N`-dimensional space, with exact
/// symbolic entries.  `scalar` is `"q"` for entries over `Q(v, h)` with
/// `q = v^2`, and `"h"` for contracted matrices over `Q[h]`.
#[pyclass(name = "RMatrix", frozen, module = "hdeform")]
struct PyRMatrix {
    inner: Scalars,
}

type EntryRow = ((usize, usize), (usize, usize), String);

#[pymethods]
impl PyRMatrix {
    #[getter]
    fn dim(&self) -> usize {
        match &self.inner {
            Scalars::Q(m) => m.dim(),
            Scalars::H(m) => m.dim(),
        }
    }

    #[getter]
    fn nnz(&self) -> usize {
        match &self.inner {
            Scalars::Q(m) => m.nnz(),
            Scalars::H(m) => m.nnz(),
        }
    }

    #[getter]
    fn scalar(&self) -> &'static str {
        match &self.inner {
            Scalars::Q(_) => "q",
            Scalars::H(_) => "h",
        }
    }

    /// All nonzero entries as `((i, j), (k, l), value)` rows in index
    /// order; the entry is the coefficient of `e_ik (x) e_jl`.
    fn entries(&self) -> Vec<EntryRow> {
        fn rows<S: Scalar>(m: &CoreMatrix<S>) -> Vec<EntryRow> {
            m.iter()
                .map(|(&(row, col), v)| (row, col, v.to_string()))
                .collect()
        }
        match &self.inner {
            Scalars::Q(m) => rows(m),
            Scalars::H(m) => rows(m),
        }
    }

    /// The entry at `(row, col)` as a canonical string (`"0"` if absent).
    fn get(&self, row: (usize, usize), col: (usize, usize)) -> String {
        match &self.inner {
            Scalars::Q(m) => m.get(row, col).to_string(),
            Scalars::H(m) => m.get(row, col).to_string(),
        }
    }

    /// One `R_ijkl = value` line per entry.
    fn text(&self) -> String {
        match &self.inner {
            Scalars::Q(m) => m.text_dump(),
            Scalars::H(m) => m.text_dump(),
        }
    }

    fn to_json(&self) -> PyResult<String> {
        let json = match &self.inner {
            Scalars::Q(m) => m.to_json(),
            Scalars::H(m) => m.to_json(),
        };
        serde_json::to_string_pretty(&json).map_err(value_err)
    }

    /// Parse a matrix document (entries over `Q(v, h)`).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyRMatrix> {
        let json: RMatrixJson = serde_json::from_str(text).map_err(value_err)?;
        let matrix = CoreMatrix::<RatFunc>::from_json(&json).map_err(value_err)?;
        Ok(PyRMatrix {
            inner: Scalars::Q(matrix),
        })
    }

    /// Conjugate by the tensor flip: `P R P`.
    fn flip_conjugate(&self) -> PyRMatrix {
        PyRMatrix {
            inner: match &self.inner {
                Scalars::Q(m) => Scalars::Q(m.flip_conjugate()),
                Scalars::H(m) => Scalars::H(m.flip_conjugate()),
            },
        }
    }

    /// Does the matrix satisfy the Yang-Baxter equation
    /// `R_12 R_13 R_23 = R_23 R_13 R_12` exactly?
    fn ybe_ok(&self) -> bool {
        match &self.inner {
            Scalars::Q(m) => check_ybe(m).pass,
            Scalars::H(m) => check_ybe(m).pass,
        }
    }

    /// Does the braid form `P R` satisfy its quadratic minimal polynomial
    /// `(PR - q)(PR + q^{-1}) = 0`?
    fn hecke_ok(&self) -> bool {
        match &self.inner {
            Scalars::Q(m) => check_hecke(m).pass,
            Scalars::H(m) => check_hecke(&lift_matrix(m)).pass,
        }
    }

    /// Does the braid form square to the identity?
    fn involutive_ok(&self) -> bool {
        match &self.inner {
            Scalars::Q(m) => check_involutive(m).pass,
            Scalars::H(m) => check_involutive(m).pass,
        }
    }

    /// Independent quadratic exchange relations among the `N x N` matrix
    /// generators imposed by this matrix, in echelon order.
    fn rtt(&self) -> PyRelationSet {
        let set = match &self.inner {
            Scalars::Q(m) => rtt_relations(m),
            Scalars::H(m) => rtt_relations(&lift_matrix(m)),
        };
        PyRelationSet { inner: set }
    }

    /// Mixed and differential exchange relations over the doubled
    /// generator set (`M_ij` and `dM_ij`), in echelon order.
    fn wz(&self) -> PyRelationSet {
        let set = match &self.inner {
            Scalars::Q(m) => wz_relations(m),
            Scalars::H(m) => wz_relations(&lift_matrix(m)),
        };
        PyRelationSet { inner: set }
    }

    fn __repr__(&self) -> String {
        format!(
            "RMatrix(dim={}, scalar={:?}, nnz={})",
            self.dim(),
            self.scalar(),
            self.nnz()
        )
    }
}

/// A set of quadratic relations among ordered symbols, with exact
/// coefficients.
#[pyclass(name = "RelationSet", frozen, module = "hdeform")]
struct PyRelationSet {
    inner: RelationSet<RatFunc>,
}

#[pymethods]
impl PyRelationSet {
    #[getter]
    fn kind(&self) -> &'static str {
        kind_name(self.inner.kind())
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Human-readable listing, one relation per line, commutator and
    /// anticommutator shorthand where the structure allows.
    fn text(&self) -> String {
        format_set(&self.inner)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner.to_json()).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "RelationSet(kind={:?}, n={}, len={})",
            self.kind(),
            self.inner.n(),
            self.inner.len()
        )
    }
}

/// Build the q-deformed R-matrix of a classical series.  `param` is the
/// dimension for family A and the rank for B, C, D; `orientation`
/// ("lower" or "upper") selects which triangle of the general-linear
/// matrix carries the `q - 1/q` terms.
#[pyfunction]
#[pyo3(signature = (family, param, orientation = "lower"))]
fn build(family: &str, param: usize, orientation: &str) -> PyResult<PyRMatrix> {
    let spec = resolve_spec(family, param)?;
    let matrix = match spec.family() {
        Family::A => {
            let orientation = Orientation::parse(orientation).map_err(value_err)?;
            build_gl(spec.dim(), orientation).map_err(value_err)?
        }
        _ => {
            if orientation != "lower" {
                return Err(value_err(
                    "orientation applies to the general-linear series only",
                ));
            }
            spec.build()
        }
    };
    Ok(PyRMatrix {
        inner: Scalars::Q(matrix),
    })
}

/// Contract the series' R-matrix: conjugate by the change of basis `g`
/// (default the corner map `I + (h/(q-1)) e_1N`) and take the exact
/// `q -> 1` limit.  Raises ValueError with the offending entries and
/// their pole orders when the limit does not exist.
#[pyfunction]
#[pyo3(signature = (family, param, g = "standard", params = None))]
fn contract(
    family: &str,
    param: usize,
    g: &str,
    params: Option<BTreeMap<String, String>>,
) -> PyResult<PyRMatrix> {
    let spec = resolve_spec(family, param)?;
    let map = resolve_map(&spec, g, params)?;
    match contract_r(&spec.build(), &map) {
        Ok(matrix) => Ok(PyRMatrix {
            inner: Scalars::H(matrix),
        }),
        Err(sing) => {
            let mut msg = sing.to_string();
            for e in &sing.entries {
                msg.push_str(&format!(
                    "; R_{}{}{}{}: order {}, value {}",
                    e.row[0], e.row[1], e.col[0], e.col[1], e.order, e.value
                ));
            }
            Err(PyValueError::new_err(msg))
        }
    }
}

/// The conjugated matrix `(g (x) g)^{-1} R (g (x) g)` before the limit
/// is taken, over `Q(v, h)`.
#[pyfunction]
#[pyo3(signature = (family, param, g = "standard", params = None))]
fn pre_limit(
    family: &str,
    param: usize,
    g: &str,
    params: Option<BTreeMap<String, String>>,
) -> PyResult<PyRMatrix> {
    let spec = resolve_spec(family, param)?;
    let map = resolve_map(&spec, g, params)?;
    Ok(PyRMatrix {
        inner: Scalars::Q(conjugate_tensor_square(&spec.build(), &map)),
    })
}

/// Transport a quadratic coordinate algebra along the contraction and
/// return the limit relations.  `kind` is "plane" or "dual" for the
/// general-linear series and "space" for the symplectic row-space
/// relations.
#[pyfunction]
#[pyo3(signature = (family, param, g = "standard", kind = "plane", params = None))]
fn relations(
    family: &str,
    param: usize,
    g: &str,
    kind: &str,
    params: Option<BTreeMap<String, String>>,
) -> PyResult<PyRelationSet> {
    let spec = resolve_spec(family, param)?;
    let map = resolve_map(&spec, g, params)?;
    let source = match (spec.family(), kind) {
        (Family::A, "plane") => manin_plane(spec.dim()),
        (Family::A, "dual") => dual_plane(spec.dim()),
        (Family::C, "space") => symplectic_space(&spec),
        (Family::A, other) => {
            return Err(value_err(format!(
                "family A has relation kinds plane and dual, got `{other}`"
            )))
        }
        (Family::C, other) => {
            return Err(value_err(format!(
                "family C has relation kind space, got `{other}`"
            )))
        }
        (family, _) => {
            return Err(value_err(format!(
                "family {family} has no transported coordinate algebra: its \
                 contraction is obstructed"
            )))
        }
    };
    let limit = contract_relations(&source, &map).map_err(value_err)?;
    Ok(PyRelationSet {
        inner: lift_set(&limit),
    })
}

/// Classify the eight singular-slot patterns of the three-dimensional
/// change of basis.  Returns a JSON array; each element records the
/// pattern, whether it hosts a genuine h-deformation, and how its
/// exceptional convergent assignments (if any) factor through a smaller
/// pattern.
#[pyfunction]
fn scan_gl3() -> PyResult<String> {
    serde_json::to_string_pretty(&scan_core()).map_err(value_err)
}

/// Exact similarity of the two admissible one-slot contractions in
/// dimension 3 under the cyclic basis permutation.
#[pyfunction]
fn equivalence_s_ok() -> bool {
    check_permutation_equivalence().pass
}

#[pymodule]
fn hdeform(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRMatrix>()?;
    m.add_class::<PyRelationSet>()?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(contract, m)?)?;
    m.add_function(wrap_pyfunction!(pre_limit, m)?)?;
    m.add_function(wrap_pyfunction!(relations, m)?)?;
    m.add_function(wrap_pyfunction!(scan_gl3, m)?)?;
    m.add_function(wrap_pyfunction!(equivalence_s_ok, m)?)?;
    Ok(())
}
