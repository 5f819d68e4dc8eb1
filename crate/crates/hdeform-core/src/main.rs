//! Command-line front end for the h-deformation engine.
//!
//! Ties together construction of the q-deformed R-matrices, the singular
//! contraction at `q = 1`, the transport of quadratic relation algebras,
//! and the verification layer, and emits reproducible reports.
//!
//! Exit codes: `0` success (all requested checks pass), `1` a check failed
//! or an obstruction was hit under `--expect-success`, `2` usage or input
//! errors.  Identical configuration yields byte-identical output: emitted
//! documents carry no timing or machine-specific data.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hdeform_core::contraction::{
    conjugate_tensor_square, contract_r, limit_form, series_q_form, singular_parameter,
    transform_form, ContractionMap, FormJson, SingularEntry,
};
use hdeform_core::qplane::{
    contract_relations, dual_plane, format_set, isotropy_expr, manin_plane, reduce_quadratic,
    scan_gl3, symplectic_space, PlaneError, QuadExpr, RelationKind, RelationSet, RelationSetJson,
};
use hdeform_core::ring::{HPoly, RatFunc, Scalar};
use hdeform_core::rmatrix::{build_gl, Family, Orientation, RMatrix, RMatrixJson, SeriesSpec};
use hdeform_core::verify::{
    check_hecke, check_involutive, check_permutation_equivalence, check_ybe, golden_compare,
    lift_matrix, near_one_samples, rtt_relations, spot_check_involutive, spot_check_ybe,
    wz_relations, MatchVariant, Residual, VerificationReport,
};

// --- argument grammar ---------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "hdeform",
    version,
    about = "Exact engine for h-deformed quantum groups: builds q-deformed \
             R-matrices, contracts them at q = 1 by a singular change of \
             basis, transports the quadratic coordinate algebras, and \
             mechanically verifies the resulting identities."
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for the deterministic numeric sample points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct Select {
    /// Classical series: A (general linear), B (odd orthogonal),
    /// C (symplectic), D (even orthogonal).
    #[arg(long, value_parser = parse_family, default_value = "A")]
    family: Family,
    /// Dimension for the A series, 2..=8 (default 3).
    #[arg(long = "N", value_name = "DIM")]
    dim: Option<usize>,
    /// Rank for the B/C/D series (default 2).
    #[arg(long = "n", value_name = "RANK")]
    rank: Option<usize>,
}

#[derive(Args, Clone)]
struct MapArgs {
    /// Change of basis driving the contraction: g1/g2/g3 are the
    /// three-dimensional general-linear maps (one singular slot at (1,2),
    /// (2,3), (1,3) respectively); standard is the corner map
    /// `I + (h/(q-1)) e_1N`, available for every series and dimension.
    #[arg(long = "g", value_enum, default_value_t = MapKind::Standard)]
    g: MapKind,
    /// Override a map parameter, repeatable: p=EXPR, alpha=EXPR, beta=EXPR,
    /// gamma=EXPR with EXPR a rational expression in q, v (v^2 = q) and h.
    #[arg(long = "param", value_name = "KEY=EXPR")]
    param: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapKind {
    G1,
    G2,
    G3,
    Standard,
}

impl MapKind {
    fn name(self) -> &'static str {
        match self {
            MapKind::G1 => "g1",
            MapKind::G2 => "g2",
            MapKind::G3 => "g3",
            MapKind::Standard => "standard",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Orient {
    Lower,
    Upper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckName {
    /// Yang-Baxter equation, before and after contraction.
    Ybe,
    /// Quadratic minimal polynomial of the braid form (general-linear only).
    Hecke,
    /// The contracted braid form squares to the identity.
    Involutive,
    /// Entrywise comparison against the stored listing for this selection.
    Golden,
    /// Similarity of the corner and two-slot contractions in dimension 3.
    EquivalenceS,
    /// Evaluate-then-compose spot checks at sample points near q = 1.
    Numeric,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the q-deformed R-matrix of a classical series.
    Build {
        #[command(flatten)]
        select: Select,
        /// Which off-diagonal triangle carries the q - 1/q terms
        /// (general-linear series only).
        #[arg(long, value_enum, default_value_t = Orient::Lower)]
        orientation: Orient,
    },
    /// Conjugate by the change of basis and take the exact q -> 1 limit;
    /// on divergence, report the obstruction with pole orders.
    Contract {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        map: MapArgs,
        /// Exit with code 1 when the contraction is obstructed.
        #[arg(long)]
        expect_success: bool,
        /// Also emit the conjugated matrix before the limit is taken.
        #[arg(long)]
        dump_pre_limit: bool,
    },
    /// Transport the quadratic coordinate algebras along the contraction:
    /// plane and dual for the A series, the quadric row space for C.
    Plane {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        map: MapArgs,
        /// Also reduce the invariant quadric x^t C x to normal form
        /// (symplectic series only; expected 0).
        #[arg(long)]
        isotropy: bool,
    },
    /// Quadratic exchange relations among matrix generators, for the
    /// contracted matrix, as an independent echelon generating set.
    Rtt {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Mixed and differential exchange relations over the doubled
    /// generator set, for the contracted matrix.
    Wz {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Run verification checks; exit 1 if any fails.
    Verify {
        /// Single check to run; default runs ybe, involutive and golden
        /// where applicable.
        check: Option<CheckName>,
        /// Run every check applicable to the selection.
        #[arg(long)]
        all: bool,
        /// Check a matrix loaded from a JSON file instead of a built one.
        #[arg(long, value_name = "PATH")]
        input: Option<PathBuf>,
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        map: MapArgs,
        /// Emit every residual instead of the 20 largest.
        #[arg(long)]
        full_residuals: bool,
    },
    /// Classify the eight singular-slot patterns of the three-dimensional
    /// change of basis: which host a genuine h-deformation.
    ScanGl3,
    /// Emit a reproduction bundle: configuration, matrices, relations,
    /// and verification results in one document.
    Report {
        #[command(flatten)]
        select: Select,
        #[command(flatten)]
        map: MapArgs,
        /// Emit every residual instead of the 20 largest.
        #[arg(long)]
        full_residuals: bool,
    },
}

fn parse_family(text: &str) -> Result<Family, String> {
    Family::parse(text).map_err(|e| e.to_string())
}

// --- resolved configuration ---------------------------------------------------

struct Selection {
    spec: SeriesSpec,
}

fn resolve_selection(s: &Select) -> Result<Selection> {
    let spec = match s.family {
        Family::A => {
            if s.rank.is_some() {
                bail!("family A takes --N (dimension), not --n (rank)");
            }
            SeriesSpec::a(s.dim.unwrap_or(3))?
        }
        family => {
            if s.dim.is_some() {
                bail!("family {family} takes --n (rank), not --N (dimension)");
            }
            SeriesSpec::resolve(family, s.rank.unwrap_or(2))?
        }
    };
    Ok(Selection { spec })
}

struct MapSpec {
    kind: MapKind,
    map: ContractionMap,
    /// Raw parameter overrides, echoed into reports.
    overrides: BTreeMap<String, String>,
}

fn resolve_map(m: &MapArgs, spec: &SeriesSpec) -> Result<MapSpec> {
    let allowed: &[&str] = match m.g {
        MapKind::G1 => &["p", "beta"],
        MapKind::G2 => &["p", "alpha", "beta"],
        MapKind::G3 => &["p", "alpha", "gamma"],
        MapKind::Standard => &["p"],
    };
    let mut overrides = BTreeMap::new();
    let mut values: BTreeMap<&str, RatFunc> = BTreeMap::new();
    for raw in &m.param {
        let (key, expr) = raw
            .split_once('=')
            .ok_or_else(|| anyhow!("--param takes KEY=EXPR, got `{raw}`"))?;
        let key = allowed.iter().find(|k| **k == key).ok_or_else(|| {
            anyhow!(
                "map {} takes parameters {}, got `{key}`",
                m.g.name(),
                allowed.join(", ")
            )
        })?;
        let value = RatFunc::parse(expr)
            .with_context(|| format!("--param {key}: cannot parse `{expr}`"))?;
        overrides.insert((*key).to_string(), value.to_string());
        values.insert(key, value);
    }
    if m.g != MapKind::Standard && (spec.family() != Family::A || spec.dim() != 3) {
        bail!(
            "map {} is specific to the general-linear series in dimension 3; \
             use --g standard for other selections",
            m.g.name()
        );
    }
    let p = values.get("p").cloned().unwrap_or_else(singular_parameter);
    let zero = RatFunc::zero();
    let get = |k: &str| values.get(k).cloned().unwrap_or_else(|| zero.clone());
    let map = match m.g {
        MapKind::G1 => ContractionMap::gl3_g1(&p, &get("beta")),
        MapKind::G2 => ContractionMap::gl3_g2(&p, &get("alpha"), &get("beta")),
        MapKind::G3 => ContractionMap::gl3_g3(&p, &get("alpha"), &get("gamma")),
        MapKind::Standard => {
            ContractionMap::from_upper_entries(spec.dim(), &[(1, spec.dim(), p.clone())])?
        }
    };
    Ok(MapSpec {
        kind: m.g,
        map,
        overrides,
    })
}

// --- emitted documents ----------------------------------------------------------

#[derive(Serialize, Clone)]
struct ConfigEcho {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    map: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orientation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<String>,
    format: String,
    seed: u64,
}

impl ConfigEcho {
    fn new(command: &str, format: Format, seed: u64) -> Self {
        ConfigEcho {
            command: command.to_string(),
            family: None,
            dim: None,
            rank: None,
            map: None,
            params: BTreeMap::new(),
            orientation: None,
            input: None,
            format: match format {
                Format::Text => "text".to_string(),
                Format::Json => "json".to_string(),
            },
            seed,
        }
    }

    fn with_spec(mut self, spec: &SeriesSpec) -> Self {
        self.family = Some(spec.family().to_string());
        self.dim = Some(spec.dim());
        self.rank = Some(spec.rank());
        self
    }

    fn with_map(mut self, map: &MapSpec) -> Self {
        self.map = Some(map.kind.name().to_string());
        self.params = map.overrides.clone();
        self
    }

    fn text_header(&self) -> String {
        let mut line = format!("# {}", self.command);
        if let (Some(family), Some(dim)) = (&self.family, self.dim) {
            write!(line, " | series {family}, dimension {dim}").expect("string write");
        }
        if let Some(map) = &self.map {
            write!(line, ", map {map}").expect("string write");
            for (k, v) in &self.params {
                write!(line, ", {k} = {v}").expect("string write");
            }
        }
        if let Some(o) = &self.orientation {
            write!(line, ", orientation {o}").expect("string write");
        }
        if let Some(i) = &self.input {
            write!(line, " | input {i}").expect("string write");
        }
        line.push('\n');
        line
    }
}

#[derive(Serialize)]
struct BuildDoc {
    config: ConfigEcho,
    matrix: RMatrixJson,
}

#[derive(Serialize)]
struct ContractDoc {
    config: ConfigEcho,
    map: FormJson,
    converges: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<RMatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    obstruction: Option<Vec<SingularEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pre_limit: Option<RMatrixJson>,
}

#[derive(Serialize)]
struct RelationObstruction {
    set: String,
    relation: usize,
    pair: [usize; 2],
    order: i64,
    value: String,
}

#[derive(Serialize)]
struct PlaneDoc {
    config: ConfigEcho,
    map: FormJson,
    converges: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    relations: Option<RelationSetJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual: Option<RelationSetJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    form: Option<FormJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    isotropy_normal_form: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    obstructions: Vec<RelationObstruction>,
}

#[derive(Serialize)]
struct RelationsDoc {
    config: ConfigEcho,
    map: FormJson,
    relations: RelationSetJson,
}

#[derive(Serialize)]
struct CheckDoc {
    check: String,
    subject: String,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    matched: Option<MatchVariant>,
    residual_count: usize,
    residuals: Vec<Residual>,
}

impl CheckDoc {
    fn from_report(report: &VerificationReport, subject: &str, full: bool) -> Self {
        let shown = if full {
            report.clone()
        } else {
            report.truncated(20)
        };
        CheckDoc {
            check: report.check.clone(),
            subject: subject.to_string(),
            pass: report.pass,
            matched: None,
            residual_count: report.residuals.len(),
            residuals: shown.residuals,
        }
    }

    fn text_lines(&self) -> String {
        let mut out = String::new();
        let verdict = if self.pass {
            match self.matched {
                Some(MatchVariant::Direct) => "pass (direct orientation)".to_string(),
                Some(MatchVariant::FlipConjugate) => {
                    "pass (flip-conjugate orientation)".to_string()
                }
                None => "pass".to_string(),
            }
        } else {
            format!("FAIL ({} residuals)", self.residual_count)
        };
        writeln!(out, "{} [{}]: {}", self.check, self.subject, verdict).expect("string write");
        if !self.pass {
            for r in &self.residuals {
                writeln!(out, "  {}: {}", r.at, r.value).expect("string write");
            }
            if self.residuals.len() < self.residual_count {
                writeln!(
                    out,
                    "  ... {} more (use --full-residuals)",
                    self.residual_count - self.residuals.len()
                )
                .expect("string write");
            }
        }
        out
    }
}

#[derive(Serialize)]
struct VerifyDoc {
    config: ConfigEcho,
    checks: Vec<CheckDoc>,
    all_pass: bool,
}

#[derive(Serialize)]
struct ScanDoc {
    patterns: Vec<hdeform_core::qplane::PatternOutcome>,
}

#[derive(Serialize)]
struct ReportDoc {
    config: ConfigEcho,
    q_matrix: RMatrixJson,
    map: FormJson,
    converges: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    h_matrix: Option<RMatrixJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    obstruction: Option<Vec<SingularEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relations: Option<RelationSetJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual: Option<RelationSetJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    form: Option<FormJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    isotropy_normal_form: Option<String>,
    checks: Vec<CheckDoc>,
    all_pass: bool,
}

// --- stored listings ------------------------------------------------------------

/// Versioned expected listings shipped with the crate, keyed by selection.
/// Only selections with default map parameters have a stored listing.
fn golden_fixture(spec: &SeriesSpec, kind: MapKind) -> Option<(&'static str, &'static str)> {
    macro_rules! fixture {
        ($name:literal) => {
            Some((
                $name,
                include_str!(concat!(
                    env!("CARGO_MANIFEST_DIR"),
                    "/fixtures/golden/",
                    $name,
                    ".json"
                )),
            ))
        };
    }
    match (spec.family(), spec.dim(), kind) {
        (Family::A, 3, MapKind::G1) => fixture!("a3-g1"),
        (Family::A, 3, MapKind::G3) => fixture!("a3-g3"),
        (Family::A, 3, MapKind::Standard) => fixture!("a-standard-n3"),
        (Family::A, 4, MapKind::Standard) => fixture!("a-standard-n4"),
        (Family::A, 5, MapKind::Standard) => fixture!("a-standard-n5"),
        (Family::A, 6, MapKind::Standard) => fixture!("a-standard-n6"),
        (Family::C, 2, MapKind::Standard) => fixture!("c-standard-n1"),
        (Family::C, 4, MapKind::Standard) => fixture!("c-standard-n2"),
        (Family::C, 6, MapKind::Standard) => fixture!("c-standard-n3"),
        _ => None,
    }
}

fn parse_golden(text: &str) -> RMatrix<HPoly> {
    let json: RMatrixJson = serde_json::from_str(text).expect("embedded listing is valid JSON");
    RMatrix::from_json(&json).expect("embedded listing is a valid matrix")
}

// --- rendering helpers -----------------------------------------------------------

fn render_quad(kind: RelationKind, n: usize, expr: &QuadExpr<HPoly>) -> String {
    if expr.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (&(a, b), c) in expr.iter() {
        let coeff = c.to_string();
        let coeff = if c.term_count() > 1 {
            format!("({coeff})")
        } else {
            coeff
        };
        parts.push(format!(
            "{coeff}*{}*{}",
            kind.symbol_name(n, a),
            kind.symbol_name(n, b)
        ));
    }
    parts.join(" + ")
}

fn obstruction_text(entries: &[SingularEntry]) -> String {
    let mut out = format!(
        "contraction is singular at q = 1 in {} entries:\n",
        entries.len()
    );
    for e in entries {
        writeln!(
            out,
            "  R_{}{}{}{}: order {}, value {}",
            e.row[0], e.row[1], e.col[0], e.col[1], e.order, e.value
        )
        .expect("string write");
    }
    out
}

fn emit(out: &Option<PathBuf>, body: String) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{body}"),
    }
    Ok(())
}

fn to_json_body<T: Serialize>(doc: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(doc)? + "\n")
}

// --- check orchestration -----------------------------------------------------------

struct CheckRun {
    spec: SeriesSpec,
    map: MapSpec,
    seed: u64,
    full: bool,
    q_matrix: RMatrix<RatFunc>,
    h_matrix: Option<RMatrix<HPoly>>,
}

impl CheckRun {
    fn new(spec: SeriesSpec, map: MapSpec, seed: u64, full: bool) -> Self {
        let q_matrix = spec.build();
        let h_matrix = contract_r(&q_matrix, &map.map).ok();
        CheckRun {
            spec,
            map,
            seed,
            full,
            q_matrix,
            h_matrix,
        }
    }

    fn ybe(&self) -> Vec<CheckDoc> {
        let mut out = vec![CheckDoc::from_report(
            &check_ybe(&self.q_matrix),
            "q-matrix",
            self.full,
        )];
        if let Some(h) = &self.h_matrix {
            out.push(CheckDoc::from_report(&check_ybe(h), "h-matrix", self.full));
        }
        out
    }

    fn hecke(&self) -> Result<CheckDoc> {
        if self.spec.family() != Family::A {
            bail!(
                "the quadratic minimal-polynomial check applies to the \
                 general-linear series only"
            );
        }
        Ok(CheckDoc::from_report(
            &check_hecke(&self.q_matrix),
            "q-matrix",
            self.full,
        ))
    }

    fn involutive(&self) -> Result<CheckDoc> {
        match &self.h_matrix {
            Some(h) => Ok(CheckDoc::from_report(
                &check_involutive(h),
                "h-matrix",
                self.full,
            )),
            None => bail!(
                "the contraction of this selection is obstructed; there is \
                 no limit matrix to check"
            ),
        }
    }

    fn golden(&self) -> Result<Option<CheckDoc>> {
        if !self.map.overrides.is_empty() {
            return Ok(None);
        }
        let Some((name, text)) = golden_fixture(&self.spec, self.map.kind) else {
            return Ok(None);
        };
        let computed = match &self.h_matrix {
            Some(h) => h,
            None => bail!(
                "the contraction of this selection is obstructed; there is \
                 no limit matrix to compare"
            ),
        };
        let report = golden_compare(computed, &parse_golden(text), "golden");
        let mut doc = CheckDoc::from_report(&report.to_report(), name, self.full);
        doc.matched = report.matched;
        Ok(Some(doc))
    }

    fn equivalence(&self) -> CheckDoc {
        CheckDoc::from_report(
            &check_permutation_equivalence(),
            "corner vs two-slot, dimension 3",
            self.full,
        )
    }

    fn numeric(&self) -> Result<Vec<CheckDoc>> {
        let samples = near_one_samples(self.seed, 2);
        let mut out = Vec::new();
        let pre_limit = conjugate_tensor_square(&self.q_matrix, &self.map.map);
        for (v, h) in &samples {
            let r = spot_check_ybe(&self.q_matrix, v, h)
                .map_err(|e| anyhow!("numeric evaluation failed: {e}"))?;
            out.push(CheckDoc::from_report(&r, "q-matrix sample", self.full));
            let r = spot_check_ybe(&pre_limit, v, h)
                .map_err(|e| anyhow!("numeric evaluation failed: {e}"))?;
            out.push(CheckDoc::from_report(&r, "pre-limit sample", self.full));
        }
        if let Some(hmat) = &self.h_matrix {
            for (_, h) in &samples {
                out.push(CheckDoc::from_report(
                    &spot_check_involutive(hmat, h),
                    "h-matrix sample",
                    self.full,
                ));
            }
        }
        Ok(out)
    }

    /// The default and `--all` check sets.  Explicitly requested checks
    /// that cannot run for the selection are usage errors; inapplicable
    /// checks are silently skipped here instead.
    fn run(&self, requested: Option<CheckName>, all: bool) -> Result<Vec<CheckDoc>> {
        if let Some(name) = requested {
            return Ok(match name {
                CheckName::Ybe => self.ybe(),
                CheckName::Hecke => vec![self.hecke()?],
                CheckName::Involutive => vec![self.involutive()?],
                CheckName::Golden => match self.golden()? {
                    Some(doc) => vec![doc],
                    None => bail!(
                        "no stored listing covers this selection (listings \
                         exist for the default-parameter maps of the \
                         general-linear and symplectic series)"
                    ),
                },
                CheckName::EquivalenceS => vec![self.equivalence()],
                CheckName::Numeric => self.numeric()?,
            });
        }
        let mut checks = self.ybe();
        if all && self.spec.family() == Family::A {
            checks.push(self.hecke()?);
        }
        if self.h_matrix.is_some() {
            checks.push(self.involutive()?);
        }
        if let Some(doc) = self.golden()? {
            checks.push(doc);
        }
        if all {
            checks.push(self.equivalence());
            checks.extend(self.numeric()?);
        }
        Ok(checks)
    }
}

/// Checks applicable to a matrix loaded from a file.
fn input_checks(
    path: &PathBuf,
    requested: Option<CheckName>,
    all: bool,
    full: bool,
) -> Result<Vec<CheckDoc>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let json: RMatrixJson = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a matrix document", path.display()))?;
    let matrix = RMatrix::<RatFunc>::from_json(&json)
        .with_context(|| format!("{} is not a valid matrix", path.display()))?;
    let subject = "input matrix";
    let run_one = |name: CheckName| -> Result<CheckDoc> {
        Ok(match name {
            CheckName::Ybe => CheckDoc::from_report(&check_ybe(&matrix), subject, full),
            CheckName::Hecke => CheckDoc::from_report(&check_hecke(&matrix), subject, full),
            CheckName::Involutive => {
                CheckDoc::from_report(&check_involutive(&matrix), subject, full)
            }
            other => bail!(
                "check {} does not apply to a matrix loaded from a file",
                match other {
                    CheckName::Golden => "golden",
                    CheckName::EquivalenceS => "equivalence-s",
                    CheckName::Numeric => "numeric",
                    _ => unreachable!(),
                }
            ),
        })
    };
    if let Some(name) = requested {
        return Ok(vec![run_one(name)?]);
    }
    if all {
        return Ok(vec![
            run_one(CheckName::Ybe)?,
            run_one(CheckName::Hecke)?,
            run_one(CheckName::Involutive)?,
        ]);
    }
    Ok(vec![run_one(CheckName::Ybe)?])
}

// --- command bodies -----------------------------------------------------------------

fn cmd_build(
    select: &Select,
    orientation: Orient,
    format: Format,
    seed: u64,
) -> Result<(String, i32)> {
    let sel = resolve_selection(select)?;
    let matrix = match sel.spec.family() {
        Family::A => build_gl(
            sel.spec.dim(),
            match orientation {
                Orient::Lower => Orientation::Lower,
                Orient::Upper => Orientation::Upper,
            },
        )?,
        _ => {
            if orientation != Orient::Lower {
                bail!("--orientation applies to the general-linear series only");
            }
            sel.spec.build()
        }
    };
    let mut config = ConfigEcho::new("build", format, seed).with_spec(&sel.spec);
    if sel.spec.family() == Family::A {
        config.orientation = Some(
            match orientation {
                Orient::Lower => "lower",
                Orient::Upper => "upper",
            }
            .to_string(),
        );
    }
    let body = match format {
        Format::Json => to_json_body(&BuildDoc {
            config,
            matrix: matrix.to_json(),
        })?,
        Format::Text => format!("{}{}", config.text_header(), matrix.text_dump()),
    };
    Ok((body, 0))
}

fn cmd_contract(
    select: &Select,
    map_args: &MapArgs,
    expect_success: bool,
    dump_pre_limit: bool,
    format: Format,
    seed: u64,
) -> Result<(String, i32)> {
    let sel = resolve_selection(select)?;
    let map = resolve_map(map_args, &sel.spec)?;
    let q_matrix = sel.spec.build();
    let outcome = contract_r(&q_matrix, &map.map);
    let pre_limit = dump_pre_limit.then(|| conjugate_tensor_square(&q_matrix, &map.map));
    let config = ConfigEcho::new("contract", format, seed)
        .with_spec(&sel.spec)
        .with_map(&map);
    let (converges, matrix, obstruction) = match outcome {
        Ok(h) => (true, Some(h), None),
        Err(sing) => (false, None, Some(sing.entries)),
    };
    let code = if !converges && expect_success { 1 } else { 0 };
    let body = match format {
        Format::Json => to_json_body(&ContractDoc {
            config,
            map: map.map.to_json(),
            converges,
            matrix: matrix.as_ref().map(|m| m.to_json()),
            obstruction,
            pre_limit: pre_limit.as_ref().map(|m| m.to_json()),
        })?,
        Format::Text => {
            let mut out = config.text_header();
            out.push_str("# change of basis:\n");
            out.push_str(&map.map.text_dump());
            if let Some(p) = &pre_limit {
                out.push_str("# conjugated matrix before the limit:\n");
                out.push_str(&p.text_dump());
            }
            match (&matrix, &obstruction) {
                (Some(m), _) => {
                    out.push_str("# contracted matrix at q = 1:\n");
                    out.push_str(&m.text_dump());
                }
                (None, Some(entries)) => out.push_str(&obstruction_text(entries)),
                (None, None) => unreachable!("divergent contraction carries entries"),
            }
            out
        }
    };
    Ok((body, code))
}

fn cmd_plane(
    select: &Select,
    map_args: &MapArgs,
    isotropy: bool,
    format: Format,
    seed: u64,
) -> Result<(String, i32)> {
    let sel = resolve_selection(select)?;
    let map = resolve_map(map_args, &sel.spec)?;
    let config = ConfigEcho::new("plane", format, seed)
        .with_spec(&sel.spec)
        .with_map(&map);
    let n = sel.spec.dim();

    let mut obstructions = Vec::new();
    let mut contract_set =
        |label: &str, set: &RelationSet<RatFunc>| -> Result<Option<RelationSet<HPoly>>> {
            match contract_relations(set, &map.map) {
                Ok(out) => Ok(Some(out)),
                Err(PlaneError::RelationSingular {
                    relation,
                    pair,
                    order,
                    value,
                }) => {
                    obstructions.push(RelationObstruction {
                        set: label.to_string(),
                        relation,
                        pair: [pair.0, pair.1],
                        order,
                        value,
                    });
                    Ok(None)
                }
                Err(other) => Err(other.into()),
            }
        };

    let (relations, dual) = match sel.spec.family() {
        Family::A => {
            if isotropy {
                bail!("--isotropy applies to the symplectic series");
            }
            (
                contract_set("plane", &manin_plane(n))?,
                contract_set("dual", &dual_plane(n))?,
            )
        }
        Family::C => (
            contract_set("symplectic-space", &symplectic_space(&sel.spec))?,
            None,
        ),
        family => bail!(
            "family {family} has no transported coordinate algebra here: the \
             orthogonal contractions are obstructed (see `contract`)"
        ),
    };

    let (form, isotropy_normal_form) = if isotropy {
        let transported = transform_form(&series_q_form(&sel.spec), &map.map);
        let form = limit_form(&transported)
            .map_err(|e| anyhow!("invariant form does not converge: {e}"))?;
        let relations = relations
            .as_ref()
            .expect("symplectic relations converge when the form does");
        let reduced = reduce_quadratic(&isotropy_expr(&form), relations)?;
        let rendered = render_quad(relations.kind(), relations.n(), &reduced);
        (Some(form), Some(rendered))
    } else {
        (None, None)
    };

    let converges = obstructions.is_empty();
    let body = match format {
        Format::Json => to_json_body(&PlaneDoc {
            config,
            map: map.map.to_json(),
            converges,
            relations: relations.as_ref().map(|s| s.to_json()),
            dual: dual.as_ref().map(|s| s.to_json()),
            form: form.as_ref().map(|f| f.to_json()),
            isotropy_normal_form: isotropy_normal_form.clone(),
            obstructions,
        })?,
        Format::Text => {
            let mut out = config.text_header();
            if let Some(set) = &relations {
                out.push_str(match sel.spec.family() {
                    Family::C => "# transported symplectic row-space relations:\n",
                    _ => "# transported coordinate relations:\n",
                });
                out.push_str(&format_set(set));
            }
            if let Some(set) = &dual {
                out.push_str("# transported dual relations:\n");
                out.push_str(&format_set(set));
            }
            if let Some(f) = &form {
                out.push_str("# transported invariant form:\n");
                out.push_str(&f.text_dump());
            }
            if let Some(nf) = &isotropy_normal_form {
                writeln!(out, "# isotropy normal form: x^t C x == {nf}").expect("string write");
            }
            for o in &obstructions {
                writeln!(
                    out,
                    "# {} relations diverge: relation {} keeps order {} at pair \
                     ({}, {}): {}",
                    o.set, o.relation, o.order, o.pair[0], o.pair[1], o.value
                )
                .expect("string write");
            }
            out
        }
    };
    Ok((body, 0))
}

fn cmd_exchange(
    command: &str,
    select: &Select,
    map_args: &MapArgs,
    format: Format,
    seed: u64,
) -> Result<(String, i32)> {
    let sel = resolve_selection(select)?;
    let map = resolve_map(map_args, &sel.spec)?;
    let config = ConfigEcho::new(command, format, seed)
        .with_spec(&sel.spec)
        .with_map(&map);
    let q_matrix = sel.spec.build();
    let h_matrix = match contract_r(&q_matrix, &map.map) {
        Ok(h) => h,
        Err(sing) => {
            let body = match format {
                Format::Json => to_json_body(&ContractDoc {
                    config,
                    map: map.map.to_json(),
                    converges: false,
                    matrix: None,
                    obstruction: Some(sing.entries),
                    pre_limit: None,
                })?,
                Format::Text => {
                    format!(
                        "{}{}",
                        config.text_header(),
                        obstruction_text(&sing.entries)
                    )
                }
            };
            return Ok((body, 1));
        }
    };
    let lifted = lift_matrix(&h_matrix);
    let relations = match command {
        "rtt" => rtt_relations(&lifted),
        _ => wz_relations(&lifted),
    };
    let body = match format {
        Format::Json => to_json_body(&RelationsDoc {
            config,
            map: map.map.to_json(),
            relations: relations.to_json(),
        })?,
        Format::Text => {
            let mut out = config.text_header();
            writeln!(
                out,
                "# {} independent relations (echelon order):",
                relations.len()
            )
            .expect("string write");
            out.push_str(&format_set(&relations));
            out
        }
    };
    Ok((body, 0))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    check: Option<CheckName>,
    all: bool,
    input: &Option<PathBuf>,
    select: &Select,
    map_args: &MapArgs,
    full: bool,
    format: Format,
    seed: u64,
) -> Result<(String, i32)> {
    let (config, checks) = match input {
        Some(path) => {
            let mut config = ConfigEcho::new("verify", format, seed);
            config.input = Some(path.display().to_string());
            (config, input_checks(path, check, all, full)?)
        }
        None => {
            let sel = resolve_selection(select)?;
            let map = resolve_map(map_args, &sel.spec)?;
            let config = ConfigEcho::new("verify", format, seed)
                .with_spec(&sel.spec)
                .with_map(&map);
            let checks = CheckRun::new(sel.spec, map, seed, full).run(check, all)?;
            (config, checks)
        }
    };
    let all_pass = checks.iter().all(|c| c.pass);
    let body = match format {
        Format::Json => to_json_body(&VerifyDoc {
            config,
            checks,
            all_pass,
        })?,
        Format::Text => {
            let mut out = config.text_header();
            for c in &checks {
                out.push_str(&c.text_lines());
            }
            writeln!(
                out,
                "{}",
                if all_pass {
                    "all checks pass"
                } else {
                    "CHECKS FAILED"
                }
            )
            .expect("string write");
            out
        }
    };
    Ok((body, if all_pass { 0 } else { 1 }))
}

fn cmd_scan(format: Format) -> Result<(String, i32)> {
    let patterns = scan_gl3();
    let body = match format {
        Format::Json => to_json_body(&ScanDoc { patterns })?,
        Format::Text => {
            let mut out =
                String::from("# singular-slot patterns of the dimension-3 change of basis\n");
            for p in &patterns {
                let slots = if p.singular_slots.is_empty() {
                    "none".to_string()
                } else {
                    p.singular_slots.join(" ")
                };
                writeln!(
                    out,
                    "singular {slots}: {} — {}",
                    if p.admissible {
                        "admissible"
                    } else {
                        "inadmissible"
                    },
                    p.reason
                )
                .expect("string write");
            }
            out
        }
    };
    Ok((body, 0))
}

fn cmd_report(
    select: &Select,
    map_args: &MapArgs,
    full: bool,
    format: Format,
    seed: u64,
) -> Result<(String, i32)> {
    let sel = resolve_selection(select)?;
    let map = resolve_map(map_args, &sel.spec)?;
    let config = ConfigEcho::new("report", format, seed)
        .with_spec(&sel.spec)
        .with_map(&map);
    let run = CheckRun::new(sel.spec.clone(), map, seed, full);
    let checks = run.run(None, true)?;
    let all_pass = checks.iter().all(|c| c.pass);

    let obstruction = match contract_r(&run.q_matrix, &run.map.map) {
        Ok(_) => None,
        Err(sing) => Some(sing.entries),
    };
    let n = sel.spec.dim();
    let (relations, dual) = match sel.spec.family() {
        Family::A => (
            contract_relations(&manin_plane(n), &run.map.map).ok(),
            contract_relations(&dual_plane(n), &run.map.map).ok(),
        ),
        Family::C => (
            contract_relations(&symplectic_space(&sel.spec), &run.map.map).ok(),
            None,
        ),
        _ => (None, None),
    };
    let (form, isotropy_normal_form) = if sel.spec.family() == Family::C {
        let transported = transform_form(&series_q_form(&sel.spec), &run.map.map);
        match (limit_form(&transported), &relations) {
            (Ok(form), Some(rels)) => {
                let reduced = reduce_quadratic(&isotropy_expr(&form), rels)?;
                let rendered = render_quad(rels.kind(), rels.n(), &reduced);
                (Some(form), Some(rendered))
            }
            _ => (None, None),
        }
    } else {
        (None, None)
    };

    let body = match format {
        Format::Json => to_json_body(&ReportDoc {
            config,
            q_matrix: run.q_matrix.to_json(),
            map: run.map.map.to_json(),
            converges: run.h_matrix.is_some(),
            h_matrix: run.h_matrix.as_ref().map(|m| m.to_json()),
            obstruction,
            relations: relations.as_ref().map(|s| s.to_json()),
            dual: dual.as_ref().map(|s| s.to_json()),
            form: form.as_ref().map(|f| f.to_json()),
            isotropy_normal_form: isotropy_normal_form.clone(),
            checks,
            all_pass,
        })?,
        Format::Text => {
            let mut out = config.text_header();
            out.push_str("# q-deformed matrix:\n");
            out.push_str(&run.q_matrix.text_dump());
            out.push_str("# change of basis:\n");
            out.push_str(&run.map.map.text_dump());
            match (&run.h_matrix, &obstruction) {
                (Some(m), _) => {
                    out.push_str("# contracted matrix at q = 1:\n");
                    out.push_str(&m.text_dump());
                }
                (None, Some(entries)) => out.push_str(&obstruction_text(entries)),
                (None, None) => unreachable!("divergent contraction carries entries"),
            }
            if let Some(set) = &relations {
                out.push_str(match sel.spec.family() {
                    Family::C => "# transported symplectic row-space relations:\n",
                    _ => "# transported coordinate relations:\n",
                });
                out.push_str(&format_set(set));
            }
            if let Some(set) = &dual {
                out.push_str("# transported dual relations:\n");
                out.push_str(&format_set(set));
            }
            if let Some(f) = &form {
                out.push_str("# transported invariant form:\n");
                out.push_str(&f.text_dump());
            }
            if let Some(nf) = &isotropy_normal_form {
                writeln!(out, "# isotropy normal form: x^t C x == {nf}").expect("string write");
            }
            out.push_str("# checks:\n");
            for c in &checks {
                out.push_str(&c.text_lines());
            }
            writeln!(
                out,
                "{}",
                if all_pass {
                    "all checks pass"
                } else {
                    "CHECKS FAILED"
                }
            )
            .expect("string write");
            out
        }
    };
    Ok((body, if all_pass { 0 } else { 1 }))
}

fn run(cli: &Cli) -> Result<(String, i32)> {
    let format = cli.format;
    let seed = cli.seed;
    match &cli.command {
        Command::Build {
            select,
            orientation,
        } => cmd_build(select, *orientation, format, seed),
        Command::Contract {
            select,
            map,
            expect_success,
            dump_pre_limit,
        } => cmd_contract(select, map, *expect_success, *dump_pre_limit, format, seed),
        Command::Plane {
            select,
            map,
            isotropy,
        } => cmd_plane(select, map, *isotropy, format, seed),
        Command::Rtt { select, map } => cmd_exchange("rtt", select, map, format, seed),
        Command::Wz { select, map } => cmd_exchange("wz", select, map, format, seed),
        Command::Verify {
            check,
            all,
            input,
            select,
            map,
            full_residuals,
        } => cmd_verify(
            *check,
            *all,
            input,
            select,
            map,
            *full_residuals,
            format,
            seed,
        ),
        Command::ScanGl3 => cmd_scan(format),
        Command::Report {
            select,
            map,
            full_residuals,
        } => cmd_report(select, map, *full_residuals, format, seed),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((body, code)) => {
            if let Err(e) = emit(&cli.out, body) {
                eprintln!("error: {e:#}");
                std::process::exit(2);
            }
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
