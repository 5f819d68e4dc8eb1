//! Acceptance gate: one test per claimed identity family.  Each test prints
//! a single `criterion NN ...: PASS/FAIL` line (visible with
//! `cargo test --test acceptance -- --nocapture`) and fails loudly with the
//! first offending entry when a claim does not hold.

use hdeform_core::contraction::{
    contract_r, limit_form, series_q_form, singular_parameter, transform_form, BilinearForm,
    ContractionMap, FormJson,
};
use hdeform_core::qplane::{
    contract_relations, dual_plane, isotropy_expr, limit_set, manin_plane, reduce_quadratic,
    scan_gl3, sets_equivalent, specialize_h0, symplectic_space, RelationSet, RelationSetJson,
};
use hdeform_core::ring::{HPoly, RatFunc, Scalar};
use hdeform_core::rmatrix::{build_gl, Orientation, RMatrix, RMatrixJson, SeriesSpec};
use hdeform_core::verify::{
    check_involutive, check_permutation_equivalence, check_ybe, golden_compare, lift_matrix,
    rtt_relations, wz_relations, MatchVariant,
};

macro_rules! check {
    ($cond:expr, $($why:tt)+) => {
        if !$cond {
            return Err(format!($($why)+));
        }
    };
}

fn criterion(label: &str, run: impl FnOnce() -> Result<String, String>) {
    match run() {
        Ok(detail) if detail.is_empty() => println!("{label}: PASS"),
        Ok(detail) => println!("{label}: PASS ({detail})"),
        Err(why) => {
            println!("{label}: FAIL — {why}");
            panic!("{label}: {why}");
        }
    }
}

fn fixture(path: &str) -> String {
    let full = format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), path);
    std::fs::read_to_string(&full).unwrap_or_else(|e| panic!("reading {full}: {e}"))
}

fn golden_matrix(name: &str) -> RMatrix<HPoly> {
    let json: RMatrixJson = serde_json::from_str(&fixture(name)).expect("well-formed fixture");
    RMatrix::from_json(&json).expect("fixture entries parse")
}

fn relation_fixture(name: &str) -> RelationSet<HPoly> {
    let json: RelationSetJson = serde_json::from_str(&fixture(name)).expect("well-formed fixture");
    RelationSet::from_json(&json).expect("fixture terms parse")
}

fn corner_map() -> ContractionMap {
    ContractionMap::gl3_g1(&singular_parameter(), &RatFunc::zero())
}

fn interior_corner_map() -> ContractionMap {
    ContractionMap::gl3_g3(&singular_parameter(), &RatFunc::zero(), &RatFunc::zero())
}

/// Every contraction the golden criteria cover, with a label and the input
/// dimension.
fn all_contracted() -> Result<Vec<(String, RMatrix<HPoly>)>, String> {
    let mut out = Vec::new();
    let r3 = build_gl(3, Orientation::Lower).map_err(|e| e.to_string())?;
    out.push((
        "corner dim 3".into(),
        contract_r(&r3, &corner_map()).map_err(|e| e.to_string())?,
    ));
    out.push((
        "interior corner dim 3".into(),
        contract_r(&r3, &interior_corner_map()).map_err(|e| e.to_string())?,
    ));
    for n in 3..=6 {
        let r = build_gl(n, Orientation::Lower).map_err(|e| e.to_string())?;
        let g = ContractionMap::standard(n).map_err(|e| e.to_string())?;
        out.push((
            format!("general-linear dim {n}"),
            contract_r(&r, &g).map_err(|e| e.to_string())?,
        ));
    }
    for n in 1..=3 {
        let spec = SeriesSpec::c(n).map_err(|e| e.to_string())?;
        let g = ContractionMap::standard(spec.dim()).map_err(|e| e.to_string())?;
        out.push((
            format!("symplectic rank {n}"),
            contract_r(&spec.build(), &g).map_err(|e| e.to_string())?,
        ));
    }
    Ok(out)
}

#[test]
fn c01_corner_map_golden_listing() {
    criterion("criterion 01 (corner-map golden listing)", || {
        let r = build_gl(3, Orientation::Lower).map_err(|e| e.to_string())?;
        let rh = contract_r(&r, &corner_map()).map_err(|e| e.to_string())?;
        let report = golden_compare(&rh, &golden_matrix("golden/a3-g1.json"), "a3-g1");
        check!(
            report.matched == Some(MatchVariant::Direct),
            "first mismatch: {:?}",
            report.direct_mismatches.first()
        );
        Ok(String::new())
    });
}

#[test]
fn c02_interior_corner_and_general_dimension_golden_listings() {
    criterion(
        "criterion 02 (interior-corner and general-dimension golden listings)",
        || {
            let r3 = build_gl(3, Orientation::Lower).map_err(|e| e.to_string())?;
            let rh3 = contract_r(&r3, &interior_corner_map()).map_err(|e| e.to_string())?;
            let report = golden_compare(&rh3, &golden_matrix("golden/a3-g3.json"), "a3-g3");
            check!(
                report.pass(),
                "dim-3 listing, first mismatch: {:?}",
                report.direct_mismatches.first()
            );
            let variant = format!(
                "dim-3 interior listing matches the {:?} orientation",
                report.matched.unwrap()
            );
            for n in 3..=6 {
                let r = build_gl(n, Orientation::Lower).map_err(|e| e.to_string())?;
                let g = ContractionMap::standard(n).map_err(|e| e.to_string())?;
                let rh = contract_r(&r, &g).map_err(|e| e.to_string())?;
                let rep = golden_compare(
                    &rh,
                    &golden_matrix(&format!("golden/a-standard-n{n}.json")),
                    "a-standard",
                );
                check!(
                    rep.matched == Some(MatchVariant::Direct),
                    "dim {n}, first mismatch: {:?}",
                    rep.direct_mismatches.first()
                );
            }
            Ok(variant)
        },
    );
}

#[test]
fn c03_symplectic_golden_listings_and_corner_coefficient() {
    criterion(
        "criterion 03 (symplectic golden listings, corner coefficient)",
        || {
            for n in 1..=3usize {
                let spec = SeriesSpec::c(n).map_err(|e| e.to_string())?;
                let dim = spec.dim();
                let g = ContractionMap::standard(dim).map_err(|e| e.to_string())?;
                let rh = contract_r(&spec.build(), &g).map_err(|e| e.to_string())?;
                let rep = golden_compare(
                    &rh,
                    &golden_matrix(&format!("golden/c-standard-n{n}.json")),
                    "c-standard",
                );
                check!(
                    rep.matched == Some(MatchVariant::Direct),
                    "rank {n}, first mismatch: {:?}",
                    rep.direct_mismatches.first()
                );
                // The double corner carries coefficient 2N h^2, N = 2n.
                let corner = rh.get((1, 1), (dim, dim));
                let expected = HPoly::parse(&format!("{}*h^2", 2 * dim)).unwrap();
                check!(
                    corner == expected,
                    "rank {n} corner is {corner}, expected {expected}"
                );
            }
            Ok(String::new())
        },
    );
}

#[test]
fn c04_orthogonal_series_obstruction() {
    criterion("criterion 04 (orthogonal-series obstruction)", || {
        let specs = [
            SeriesSpec::b(1),
            SeriesSpec::b(2),
            SeriesSpec::d(2),
            SeriesSpec::d(3),
        ];
        for spec in specs {
            let spec = spec.map_err(|e| e.to_string())?;
            let label = format!("{} rank {}", spec.family(), spec.rank());
            let g = ContractionMap::standard(spec.dim()).map_err(|e| e.to_string())?;
            match contract_r(&spec.build(), &g) {
                Ok(_) => check!(false, "{label} unexpectedly converged"),
                Err(obstruction) => {
                    check!(
                        obstruction.entries.iter().any(|e| e.order == -1),
                        "{label}: no simple-pole entry in {:?}",
                        obstruction.entries.first()
                    );
                }
            }
        }
        Ok(String::new())
    });
}

#[test]
fn c05_yang_baxter_for_all_matrices() {
    criterion(
        "criterion 05 (triple-product identity, all matrices)",
        || {
            for (label, rh) in all_contracted()? {
                let report = check_ybe(&rh);
                check!(
                    report.pass,
                    "{label} contracted: first residual {:?}",
                    report.residuals.first()
                );
            }
            for n in 3..=6 {
                let r = build_gl(n, Orientation::Lower).map_err(|e| e.to_string())?;
                let report = check_ybe(&r);
                check!(
                    report.pass,
                    "general-linear dim {n} input: first residual {:?}",
                    report.residuals.first()
                );
            }
            for n in 1..=3 {
                let spec = SeriesSpec::c(n).map_err(|e| e.to_string())?;
                let report = check_ybe(&spec.build());
                check!(
                    report.pass,
                    "symplectic rank {n} input: first residual {:?}",
                    report.residuals.first()
                );
            }
            Ok(String::new())
        },
    );
}

#[test]
fn c06_relation_sets_match_stored_listings() {
    criterion("criterion 06 (transformed relation sets)", || {
        let pairs: [(&str, &ContractionMap); 2] =
            [("g1", &corner_map()), ("g3", &interior_corner_map())];
        for (tag, g) in pairs {
            let plane = contract_relations(&manin_plane(3), g).map_err(|e| e.to_string())?;
            check!(
                sets_equivalent(
                    &plane,
                    &relation_fixture(&format!("relations/a3-{tag}-plane.json"))
                ),
                "dim-3 {tag} plane relations differ from the stored listing"
            );
            let dual = contract_relations(&dual_plane(3), g).map_err(|e| e.to_string())?;
            check!(
                sets_equivalent(
                    &dual,
                    &relation_fixture(&format!("relations/a3-{tag}-dual.json"))
                ),
                "dim-3 {tag} dual relations differ from the stored listing"
            );
        }
        for n in 3..=6 {
            let g = ContractionMap::standard(n).map_err(|e| e.to_string())?;
            let plane = contract_relations(&manin_plane(n), &g).map_err(|e| e.to_string())?;
            check!(
                sets_equivalent(
                    &plane,
                    &relation_fixture(&format!("relations/a-standard-plane-n{n}.json"))
                ),
                "dim-{n} plane relations differ from the stored listing"
            );
        }
        for n in 1..=3 {
            let spec = SeriesSpec::c(n).map_err(|e| e.to_string())?;
            let g = ContractionMap::standard(spec.dim()).map_err(|e| e.to_string())?;
            let space =
                contract_relations(&symplectic_space(&spec), &g).map_err(|e| e.to_string())?;
            check!(
                sets_equivalent(
                    &space,
                    &relation_fixture(&format!("relations/c-standard-space-n{n}.json"))
                ),
                "symplectic rank-{n} relations differ from the stored listing"
            );
        }
        Ok(String::new())
    });
}

#[test]
fn c07_invariant_form_and_isotropy() {
    criterion("criterion 07 (invariant form, isotropy)", || {
        for n in 1..=3 {
            let spec = SeriesSpec::c(n).map_err(|e| e.to_string())?;
            let g = ContractionMap::standard(spec.dim()).map_err(|e| e.to_string())?;
            let form = limit_form(&transform_form(&series_q_form(&spec), &g))
                .map_err(|e| e.to_string())?;
            let json: FormJson =
                serde_json::from_str(&fixture(&format!("golden/c-form-n{n}.json")))
                    .expect("well-formed fixture");
            let expected = BilinearForm::<HPoly>::from_json(&json).map_err(|e| e.to_string())?;
            check!(
                form == expected,
                "rank-{n} transported form differs from the stored listing"
            );
            let space =
                contract_relations(&symplectic_space(&spec), &g).map_err(|e| e.to_string())?;
            let reduced =
                reduce_quadratic(&isotropy_expr(&form), &space).map_err(|e| e.to_string())?;
            check!(
                reduced.is_zero(),
                "rank-{n} quadratic invariant does not reduce to zero"
            );
        }
        Ok(String::new())
    });
}

#[test]
fn c08_admissibility_scan_classification() {
    criterion("criterion 08 (admissibility scan)", || {
        let outcomes = scan_gl3();
        check!(
            outcomes.len() == 8,
            "expected 8 patterns, got {}",
            outcomes.len()
        );
        let admissible: Vec<_> = outcomes.iter().filter(|o| o.admissible).collect();
        check!(
            admissible.len() == 3,
            "expected 3 admissible patterns, got {}",
            admissible.len()
        );
        let mut flags: Vec<[bool; 3]> = admissible.iter().map(|o| o.singular).collect();
        flags.sort();
        check!(
            flags
                == vec![
                    [false, false, true],
                    [false, true, false],
                    [true, false, false]
                ],
            "admissible patterns are not the three single-slot ones: {flags:?}"
        );
        check!(
            outcomes.iter().all(|o| !o.reason.contains("DEVIATION")),
            "scan reported a deviation: {:?}",
            outcomes.iter().find(|o| o.reason.contains("DEVIATION"))
        );
        Ok(String::new())
    });
}

#[test]
fn c09_permutation_equivalence_and_map_identities() {
    criterion(
        "criterion 09 (permutation equivalence, parameter identities)",
        || {
            let report = check_permutation_equivalence();
            check!(
                report.pass,
                "conjugated matrices differ: {:?}",
                report.residuals.first()
            );
            let p = singular_parameter();
            let zero = RatFunc::zero();
            let alpha = RatFunc::parse("q*h - 3").unwrap();
            let beta = RatFunc::parse("h + 2").unwrap();
            let gamma = RatFunc::parse("-5").unwrap();

            let lhs =
                ContractionMap::gl3_g1(&p, &beta).mul(&ContractionMap::gl3_g1(&zero, &beta.neg()));
            check!(
                lhs == ContractionMap::gl3_g1(&p, &zero),
                "corner-map parameter cancellation fails"
            );
            let lhs = ContractionMap::gl3_g2(&p, &alpha, &beta).mul(&ContractionMap::gl3_g2(
                &zero,
                &alpha.neg(),
                &beta.neg(),
            ));
            check!(
                lhs == ContractionMap::gl3_g2(&p, &zero, &zero),
                "two-slot-map parameter cancellation fails"
            );
            let lhs = ContractionMap::gl3_g3(&p, &alpha, &gamma).mul(&ContractionMap::gl3_g3(
                &alpha.mul(&gamma),
                &alpha.neg(),
                &gamma.neg(),
            ));
            check!(
                lhs == ContractionMap::gl3_g3(&p, &zero, &zero),
                "interior-corner-map parameter cancellation fails"
            );
            Ok(String::new())
        },
    );
}

#[test]
fn c10_classical_limits_and_involutivity() {
    criterion("criterion 10 (classical limits, involutivity)", || {
        for (label, rh) in all_contracted()? {
            let at_h0 = rh
                .try_map(|_, v| Ok::<_, std::convert::Infallible>(HPoly::constant(v.eval_h0())))
                .unwrap();
            check!(
                at_h0 == RMatrix::identity(rh.dim()),
                "{label}: h = 0 specialization is not the identity"
            );
            let report = check_involutive(&rh);
            check!(
                report.pass,
                "{label}: braid square differs from identity at {:?}",
                report.residuals.first()
            );
        }
        // Exchange relations at h = 0 are exactly the commutators.
        let gl2 = build_gl(2, Orientation::Lower).map_err(|e| e.to_string())?;
        let g2 = ContractionMap::standard(2).map_err(|e| e.to_string())?;
        let rh2 = contract_r(&gl2, &g2).map_err(|e| e.to_string())?;
        let gl3 = build_gl(3, Orientation::Lower).map_err(|e| e.to_string())?;
        let rh3 = contract_r(&gl3, &corner_map()).map_err(|e| e.to_string())?;
        for (dim, rh) in [(2usize, rh2.clone()), (3, rh3)] {
            let deformed =
                limit_set(&rtt_relations(&lift_matrix(&rh))).map_err(|e| e.to_string())?;
            let commutators =
                limit_set(&rtt_relations(&RMatrix::identity(dim))).map_err(|e| e.to_string())?;
            check!(
                sets_equivalent(&specialize_h0(&deformed), &commutators),
                "dim-{dim} exchange relations at h = 0 are not the commutators"
            );
        }
        // Differential-calculus relations at h = 0 reduce to the identity-matrix case.
        let wz = limit_set(&wz_relations(&lift_matrix(&rh2))).map_err(|e| e.to_string())?;
        let identity_case =
            limit_set(&wz_relations(&RMatrix::identity(2))).map_err(|e| e.to_string())?;
        check!(
            sets_equivalent(&specialize_h0(&wz), &identity_case),
            "dim-2 differential relations at h = 0 differ from the identity-matrix case"
        );
        Ok(String::new())
    });
}
