//! Mechanical verification of the identities the engine claims.
//!
//! Every check returns a [`VerificationReport`]: a named pass/fail together
//! with the full sorted list of nonzero residual entries and wall-clock
//! timing.  Checks never panic on failure — a failing identity is a result,
//! not a bug — and reports are deterministic (residuals sorted by index).

use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::contraction::{contract_r, singular_parameter, ContractionMap};
use crate::qplane::{echelon, matrix_symbol, QuadExpr, RelationKind, RelationSet};
use crate::ring::{HPoly, Numeric, RatFunc, Rational, RingError, Scalar};
use crate::rmatrix::{build_gl, Orientation, Pair, RMatrix, SparseMat};

/// Outcome of one verification check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub pass: bool,
    /// Nonzero residual entries, sorted by location.
    pub residuals: Vec<Residual>,
    pub elapsed_ms: u128,
}

/// One nonzero entry of a residual, with a size measure for ranking.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Residual {
    /// Human-readable location, e.g. `R_1213` or `(1,2,1),(2,1,1)`.
    pub at: String,
    /// Canonical rendering of the offending value.
    pub value: String,
    /// Monomial count of the value (ranking key for truncated reports).
    pub terms: usize,
}

impl VerificationReport {
    fn finish(check: &str, residuals: Vec<Residual>, started: Instant) -> Self {
        VerificationReport {
            check: check.to_string(),
            pass: residuals.is_empty(),
            residuals,
            elapsed_ms: started.elapsed().as_millis(),
        }
    }

    /// Copy with the residual list cut to the `limit` largest entries (by
    /// monomial count, ties broken by location order).
    pub fn truncated(&self, limit: usize) -> Self {
        if self.residuals.len() <= limit {
            return self.clone();
        }
        let mut ranked = self.residuals.clone();
        ranked.sort_by(|a, b| b.terms.cmp(&a.terms).then_with(|| a.at.cmp(&b.at)));
        ranked.truncate(limit);
        ranked.sort_by(|a, b| a.at.cmp(&b.at));
        VerificationReport {
            check: self.check.clone(),
            pass: self.pass,
            residuals: ranked,
            elapsed_ms: self.elapsed_ms,
        }
    }
}

/// Residual list of a sparse matrix on a cube of an `n`-dimensional space.
fn cube_residuals<S: Scalar>(m: &SparseMat<S>, n: usize) -> Vec<Residual> {
    let unflatten = |x: usize| (x / (n * n) + 1, (x / n) % n + 1, x % n + 1);
    m.iter()
        .map(|(i, j, v)| {
            let (a, b, c) = unflatten(i);
            let (d, e, f) = unflatten(j);
            Residual {
                at: format!("({a},{b},{c}),({d},{e},{f})"),
                value: v.to_string(),
                terms: v.term_count(),
            }
        })
        .collect()
}

/// Residual list of a matrix on the tensor square, in `R_ijkl` notation.
fn square_residuals<S: Scalar>(m: &RMatrix<S>) -> Vec<Residual> {
    m.iter()
        .map(|(((i, j), (k, l)), v)| Residual {
            at: format!("R_{i}{j}{k}{l}"),
            value: v.to_string(),
            terms: v.term_count(),
        })
        .collect()
}

/// Yang–Baxter equation on the triple tensor power:
/// `R_12 R_13 R_23 - R_23 R_13 R_12 = 0`.
pub fn check_ybe<S: Scalar>(r: &RMatrix<S>) -> VerificationReport {
    let started = Instant::now();
    let r12 = r.embed_in_three((1, 2));
    let r13 = r.embed_in_three((1, 3));
    let r23 = r.embed_in_three((2, 3));
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    let residual = lhs.sub(&rhs);
    VerificationReport::finish("ybe", cube_residuals(&residual, r.dim()), started)
}

/// Quadratic relation of the braid form of the general-linear matrix:
/// `(PR - q)(PR + q^{-1}) = 0`.
pub fn check_hecke(r: &RMatrix<RatFunc>) -> VerificationReport {
    let started = Instant::now();
    let dim2 = r.dim() * r.dim();
    let braid = r.braid().to_sparse();
    let id = SparseMat::<RatFunc>::identity(dim2);
    let lhs = braid.sub(&id.scale(&RatFunc::q()));
    let rhs = braid.add(&id.scale(&RatFunc::q_pow(-1)));
    let product = RMatrix::from_sparse(r.dim(), &lhs.mul(&rhs));
    VerificationReport::finish("hecke", square_residuals(&product), started)
}

/// Involutivity of the braid form: `(PR)^2 = Id`, the degeneration of the
/// quadratic relation the contracted matrices satisfy at `q = 1`.
pub fn check_involutive<S: Scalar>(r: &RMatrix<S>) -> VerificationReport {
    let started = Instant::now();
    let dim2 = r.dim() * r.dim();
    let braid = r.braid().to_sparse();
    let residual = braid.mul(&braid).sub(&SparseMat::identity(dim2));
    let report = RMatrix::from_sparse(r.dim(), &residual);
    VerificationReport::finish("involutive", square_residuals(&report), started)
}

// --- relation generation -----------------------------------------------------

/// Lift a polynomial matrix into the rational-function field, so the
/// field-based relation machinery can run on contracted matrices.
pub fn lift_matrix(r: &RMatrix<HPoly>) -> RMatrix<RatFunc> {
    let lifted: Result<RMatrix<RatFunc>, std::convert::Infallible> =
        r.try_map(|_, value| Ok(value.to_ratfunc()));
    lifted.unwrap()
}

fn relation_index(n: usize, row: Pair, col: Pair) -> usize {
    ((row.0 - 1) * n + (row.1 - 1)) * n * n + (col.0 - 1) * n + (col.1 - 1)
}

/// Exchange relations `R M_1 M_2 - M_2 M_1 R = 0` among the `n^2` matrix
/// generators (`M_1 = M (x) 1`, `M_2 = 1 (x) M`), one free-algebra element
/// per tensor-square entry, reduced to an independent generating set in
/// canonical echelon order.
pub fn rtt_relations(r: &RMatrix<RatFunc>) -> RelationSet<RatFunc> {
    let n = r.dim();
    let mut rels = vec![QuadExpr::zero(); n * n * n * n];
    // (R M_1 M_2) entry at ((i,j),(k,l)) is sum_ab R_(ij),(ab) M_ak M_bl.
    for (&((i, j), (a, b)), value) in r.iter() {
        for k in 1..=n {
            for l in 1..=n {
                rels[relation_index(n, (i, j), (k, l))].add_term(
                    (matrix_symbol(n, a, k), matrix_symbol(n, b, l)),
                    value.clone(),
                );
            }
        }
    }
    // (M_2 M_1 R) entry at ((i,j),(k,l)) is sum_ab M_jb M_ia R_(ab),(kl).
    for (&((a, b), (k, l)), value) in r.iter() {
        for i in 1..=n {
            for j in 1..=n {
                rels[relation_index(n, (i, j), (k, l))].add_term(
                    (matrix_symbol(n, j, b), matrix_symbol(n, i, a)),
                    value.neg(),
                );
            }
        }
    }
    echelon(&RelationSet::new(n, RelationKind::Rtt, rels))
}

/// Differential-calculus exchange relations over the doubled generator set
/// `{M_ij, dM_ij}`: the mixed family `M_2 dM_1 - R_12 dM_1 M_2 R_21 = 0`
/// together with the differential family `dM_2 dM_1 + R_12 dM_1 dM_2 R_21
/// = 0`, where `R_21 = P R P`, reduced to an independent generating set.
pub fn wz_relations(r: &RMatrix<RatFunc>) -> RelationSet<RatFunc> {
    let n = r.dim();
    let m_sym = |i: usize, k: usize| matrix_symbol(n, i, k);
    let d_sym = |i: usize, k: usize| n * n + matrix_symbol(n, i, k);
    let r21 = r.flip_conjugate();
    let mut mixed = vec![QuadExpr::zero(); n * n * n * n];
    let mut differential = vec![QuadExpr::zero(); n * n * n * n];
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    // (M_2 dM_1) entry is M_jl dM_ik; (dM_2 dM_1) is dM_jl dM_ik.
                    let at = relation_index(n, (i, j), (k, l));
                    mixed[at].add_term((m_sym(j, l), d_sym(i, k)), RatFunc::one());
                    differential[at].add_term((d_sym(j, l), d_sym(i, k)), RatFunc::one());
                }
            }
        }
    }
    // (R_12 dM_1 M_2 R_21) entry at ((i,j),(k,l)) is
    // sum R_(ij),(ab) dM_ac M_bf R21_(cf),(kl), and likewise with dM_bf.
    for (&((i, j), (a, b)), left) in r.iter() {
        for (&((c, f), (k, l)), right) in r21.iter() {
            let at = relation_index(n, (i, j), (k, l));
            let product = left.mul(right);
            mixed[at].add_term((d_sym(a, c), m_sym(b, f)), product.neg());
            differential[at].add_term((d_sym(a, c), d_sym(b, f)), product);
        }
    }
    mixed.append(&mut differential);
    echelon(&RelationSet::new(n, RelationKind::WzMixed, mixed))
}

// --- golden comparison -------------------------------------------------------

/// Which orientation of a computed matrix matched a stored listing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchVariant {
    /// Entrywise equality as computed.
    Direct,
    /// Equality after conjugating by the tensor flip (`P R P`).
    FlipConjugate,
}

/// Result of comparing a computed matrix against a stored listing, trying
/// both the computed orientation and its flip conjugate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenReport {
    pub check: String,
    /// Which orientation matched, if any.  The computed orientation is
    /// authoritative; `FlipConjugate` flags a listing that is flipped
    /// relative to the engine's index convention.
    pub matched: Option<MatchVariant>,
    /// Entry mismatches against the computed orientation.
    pub direct_mismatches: Vec<Residual>,
    /// Entry mismatches against the flip-conjugated orientation.
    pub flip_mismatches: Vec<Residual>,
    pub elapsed_ms: u128,
}

impl GoldenReport {
    pub fn pass(&self) -> bool {
        self.matched.is_some()
    }

    /// Collapse to a plain report: pass iff either orientation matched,
    /// residuals taken from the computed orientation.
    pub fn to_report(&self) -> VerificationReport {
        VerificationReport {
            check: self.check.clone(),
            pass: self.pass(),
            residuals: self.direct_mismatches.clone(),
            elapsed_ms: self.elapsed_ms,
        }
    }
}

fn mismatch_list<S: Scalar>(computed: &RMatrix<S>, listed: &RMatrix<S>) -> Vec<Residual> {
    computed
        .diff(listed)
        .into_iter()
        .map(|(((i, j), (k, l)), got, want)| Residual {
            at: format!("R_{i}{j}{k}{l}"),
            value: format!("computed {got}, listed {want}"),
            terms: got.term_count() + want.term_count(),
        })
        .collect()
}

/// Compare a computed matrix against a stored listing entry by entry, in
/// both the computed orientation and its flip conjugate, and record which
/// (if either) matches.
pub fn golden_compare(
    computed: &RMatrix<HPoly>,
    listed: &RMatrix<HPoly>,
    name: &str,
) -> GoldenReport {
    let started = Instant::now();
    let direct = mismatch_list(computed, listed);
    let flip = mismatch_list(&computed.flip_conjugate(), listed);
    let matched = if direct.is_empty() {
        Some(MatchVariant::Direct)
    } else if flip.is_empty() {
        Some(MatchVariant::FlipConjugate)
    } else {
        None
    };
    GoldenReport {
        check: name.to_string(),
        matched,
        direct_mismatches: direct,
        flip_mismatches: flip,
        elapsed_ms: started.elapsed().as_millis(),
    }
}

// --- similarity of the two corner-type contractions --------------------------

/// In dimension three the two admissible one-parameter contractions with a
/// single singular slot are similar: conjugating the two-slot result by
/// `s (x) s`, where `s = e_13 + e_21 + e_32` is a cyclic permutation,
/// reproduces the corner result exactly (all finite parameters zero).
pub fn check_permutation_equivalence() -> VerificationReport {
    let started = Instant::now();
    let r = build_gl(3, Orientation::Lower).expect("dimension in range");
    let p = singular_parameter();
    let zero = RatFunc::zero();
    let corner = ContractionMap::gl3_g1(&p, &zero);
    let two_slot = ContractionMap::gl3_g2(&p, &zero, &zero);
    let r_corner = contract_r(&r, &corner).expect("corner contraction converges");
    let r_two_slot = contract_r(&r, &two_slot).expect("two-slot contraction converges");
    let mut s = SparseMat::<HPoly>::zero(3);
    s.set(0, 2, HPoly::one());
    s.set(1, 0, HPoly::one());
    s.set(2, 1, HPoly::one());
    let ss = s.kron(&s);
    let ss_inv = s.transpose().kron(&s.transpose());
    let conjugated = ss_inv.mul(&r_two_slot.to_sparse()).mul(&ss);
    let residual = conjugated.sub(&r_corner.to_sparse());
    VerificationReport::finish(
        "equivalence-s",
        square_residuals(&RMatrix::from_sparse(3, &residual)),
        started,
    )
}

// --- numeric spot checks -----------------------------------------------------

/// Evaluate a symbolic matrix at exact rational values of `v` and `h`.
pub fn eval_matrix(
    r: &RMatrix<RatFunc>,
    v: &Rational,
    h: &Rational,
) -> Result<RMatrix<Numeric>, RingError> {
    r.try_map(|_, value| value.eval(v, h).map(Numeric))
}

/// Evaluate at a rational value of `q = v^2`; fails if any entry carries a
/// half-integer power of `q`.
pub fn eval_matrix_q(
    r: &RMatrix<RatFunc>,
    q: &Rational,
    h: &Rational,
) -> Result<RMatrix<Numeric>, RingError> {
    r.try_map(|_, value| value.eval_q(q, h).map(Numeric))
}

/// Evaluate a contracted matrix at an exact rational value of `h`.
pub fn eval_matrix_h(r: &RMatrix<HPoly>, h: &Rational) -> RMatrix<Numeric> {
    let evaluated: Result<RMatrix<Numeric>, std::convert::Infallible> =
        r.try_map(|_, value| Ok(Numeric(value.eval(h))));
    evaluated.unwrap()
}

/// Deterministic sample points `(v, h)` with `v` clustered near the
/// contraction point `q = 1` (distance about `5e-7`), seeded for
/// reproducible runs.
pub fn near_one_samples(seed: u64, count: usize) -> Vec<(Rational, Rational)> {
    use rand_core::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let denom = BigInt::from(2_000_000_000i64);
    (0..count)
        .map(|_| {
            let k = (rng.next_u64() % 999_983 + 1) as i64;
            let offset = if rng.next_u64() % 2 == 0 { k } else { -k };
            let v = crate::ring::rat_int(1) + Rational::new(BigInt::from(offset), denom.clone());
            let h_num = (rng.next_u64() % 193 + 1) as i64;
            let h = Rational::new(BigInt::from(h_num), BigInt::from(89));
            (v, h)
        })
        .collect()
}

/// Evaluate first, compose numerically afterwards: an independent
/// arithmetic path confirming the symbolic identity at a sample point.
pub fn spot_check_ybe(
    r: &RMatrix<RatFunc>,
    v: &Rational,
    h: &Rational,
) -> Result<VerificationReport, RingError> {
    let numeric = eval_matrix(r, v, h)?;
    let mut report = check_ybe(&numeric);
    report.check = format!("ybe@v={v},h={h}");
    Ok(report)
}

/// Numeric spot check of the triple-product identity at a rational `q`.
pub fn spot_check_ybe_q(
    r: &RMatrix<RatFunc>,
    q: &Rational,
    h: &Rational,
) -> Result<VerificationReport, RingError> {
    let numeric = eval_matrix_q(r, q, h)?;
    let mut report = check_ybe(&numeric);
    report.check = format!("ybe@q={q},h={h}");
    Ok(report)
}

/// Numeric spot check that the braid form squares to the identity at a
/// rational value of `h`.
pub fn spot_check_involutive(r: &RMatrix<HPoly>, h: &Rational) -> VerificationReport {
    let mut report = check_involutive(&eval_matrix_h(r, h));
    report.check = format!("involutive@h={h}");
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::conjugate_tensor_square;
    use crate::qplane::{limit_set, pair_columns, sets_equivalent, specialize_h0};
    use crate::ring::{rat, rat_int};
    use crate::rmatrix::SeriesSpec;

    #[test]
    fn standard_matrices_satisfy_ybe() {
        for n in 2..=4 {
            let r = build_gl(n, Orientation::Lower).unwrap();
            assert!(check_ybe(&r).pass, "general-linear dimension {n}");
        }
        let upper = build_gl(3, Orientation::Upper).unwrap();
        assert!(check_ybe(&upper).pass);
        for spec in [
            SeriesSpec::b(1).unwrap(),
            SeriesSpec::c(1).unwrap(),
            SeriesSpec::c(2).unwrap(),
            SeriesSpec::d(2).unwrap(),
        ] {
            let r = spec.build();
            assert!(
                check_ybe(&r).pass,
                "family {} rank {}",
                spec.family(),
                spec.rank()
            );
        }
    }

    #[test]
    fn perturbed_matrix_fails_ybe_with_sorted_residuals() {
        let mut r = build_gl(2, Orientation::Lower).unwrap();
        r.set((1, 2), (1, 2), RatFunc::parse("1 + h").unwrap());
        let report = check_ybe(&r);
        assert!(!report.pass);
        assert!(!report.residuals.is_empty());
        let locations: Vec<_> = report.residuals.iter().map(|r| r.at.clone()).collect();
        let mut sorted = locations.clone();
        sorted.sort();
        assert_eq!(locations, sorted);
    }

    #[test]
    fn hecke_holds_for_general_linear_only() {
        for n in 2..=4 {
            let r = build_gl(n, Orientation::Lower).unwrap();
            assert!(check_hecke(&r).pass, "dimension {n}");
        }
        // The symplectic braid form satisfies a cubic, not the quadratic.
        let c2 = SeriesSpec::c(2).unwrap().build();
        assert!(!check_hecke(&c2).pass);
    }

    #[test]
    fn q_matrices_are_not_involutive() {
        let r = build_gl(2, Orientation::Lower).unwrap();
        let report = check_involutive(&r);
        assert!(!report.pass);
        // (PR)^2 - 1 vanishes at q = 1, entry by entry.
        for res in &report.residuals {
            let value = RatFunc::parse(&res.value).unwrap();
            assert!(value.limit_q1().unwrap().is_zero());
        }
    }

    #[test]
    fn identity_matrix_exchange_relations_are_commutators() {
        let rels = rtt_relations(&RMatrix::<RatFunc>::identity(2));
        // One independent relation per unordered generator pair: C(4,2).
        assert_eq!(rels.len(), 6);
        for e in rels.relations() {
            assert_eq!(e.term_count(), 2);
            let terms: Vec<_> = e.iter().map(|(p, c)| (*p, c.clone())).collect();
            let ((a, b), ref ascending) = terms[0];
            let ((b2, a2), ref descending) = terms[1];
            assert!(a < b && a == a2 && b == b2, "commutator shape");
            assert_eq!(*ascending, RatFunc::one().neg());
            assert_eq!(*descending, RatFunc::one());
        }
    }

    #[test]
    fn contracted_exchange_relations_keep_rank_and_classical_limit() {
        let r = build_gl(2, Orientation::Lower).unwrap();
        let g = ContractionMap::standard(2).unwrap();
        let rh = contract_r(&r, &g).unwrap();
        let deformed = rtt_relations(&lift_matrix(&rh));
        assert_eq!(deformed.len(), 6);
        let deformed = limit_set(&deformed).unwrap();
        let commutators = limit_set(&rtt_relations(&RMatrix::identity(2))).unwrap();
        assert!(!sets_equivalent(&deformed, &commutators));
        assert!(sets_equivalent(&specialize_h0(&deformed), &commutators));
    }

    #[test]
    fn exchange_relation_rank_is_stable_at_numeric_points() {
        let r = build_gl(2, Orientation::Lower).unwrap();
        let symbolic_rank = rtt_relations(&r).len();
        let numeric = eval_matrix_q(&r, &rat_int(2), &rat_int(0)).unwrap();
        let constants: Result<RMatrix<RatFunc>, std::convert::Infallible> =
            numeric.try_map(|_, c| Ok(RatFunc::from_rational(c.0.clone())));
        let numeric_rank = rtt_relations(&constants.unwrap()).len();
        assert_eq!(symbolic_rank, 6);
        assert_eq!(symbolic_rank, numeric_rank);
    }

    #[test]
    fn differential_relations_have_frozen_structure() {
        let r = build_gl(2, Orientation::Lower).unwrap();
        let g = ContractionMap::standard(2).unwrap();
        let rh = contract_r(&r, &g).unwrap();
        let rels = wz_relations(&lift_matrix(&rh));
        // Mixed family: every generator/differential product is resolvable,
        // giving the full tensor-square count 16.  Differential family: the
        // symmetric square of the four differentials, count 10.
        assert_eq!(rels.len(), 26);
        let n2 = 4;
        let cols = pair_columns(2 * n2);
        let pivot = |e: &QuadExpr<RatFunc>| {
            cols.iter()
                .copied()
                .find(|&p| !Scalar::is_zero(&e.get(p)))
                .unwrap()
        };
        let mixed = rels
            .relations()
            .iter()
            .filter(|e| {
                let (a, b) = pivot(e);
                (a <= n2) != (b <= n2)
            })
            .count();
        let differential = rels
            .relations()
            .iter()
            .filter(|e| {
                let (a, b) = pivot(e);
                a > n2 && b > n2
            })
            .count();
        assert_eq!(mixed, 16);
        assert_eq!(differential, 10);
        // The h = 0 specialization is exactly the identity-matrix case.
        let classical = specialize_h0(&limit_set(&rels).unwrap());
        let identity_case = limit_set(&wz_relations(&RMatrix::identity(2))).unwrap();
        assert!(sets_equivalent(&classical, &identity_case));
    }

    #[test]
    fn golden_comparison_reports_matching_orientation() {
        let r = build_gl(3, Orientation::Lower).unwrap();
        let g = ContractionMap::gl3_g1(&singular_parameter(), &RatFunc::zero());
        let rh = contract_r(&r, &g).unwrap();

        let same = golden_compare(&rh, &rh, "self");
        assert_eq!(same.matched, Some(MatchVariant::Direct));
        assert!(same.pass() && same.to_report().pass);

        let flipped = golden_compare(&rh, &rh.flip_conjugate(), "flipped");
        assert_eq!(flipped.matched, Some(MatchVariant::FlipConjugate));
        assert!(!flipped.direct_mismatches.is_empty());
        assert!(flipped.to_report().pass);

        let mut corrupted = rh.clone();
        corrupted.set((1, 1), (1, 1), HPoly::h());
        let broken = golden_compare(&rh, &corrupted, "broken");
        assert_eq!(broken.matched, None);
        assert!(!broken.to_report().pass);
        assert!(broken.direct_mismatches.iter().any(|m| m.at == "R_1111"));
        assert!(!broken.flip_mismatches.is_empty());
    }

    #[test]
    fn two_slot_contraction_is_a_permuted_corner_contraction() {
        let report = check_permutation_equivalence();
        assert_eq!(report.check, "equivalence-s");
        assert!(
            report.pass,
            "first residual: {:?}",
            report.residuals.first()
        );
    }

    #[test]
    fn numeric_spot_checks_confirm_symbolic_identities() {
        let a3 = build_gl(3, Orientation::Lower).unwrap();
        for q in [rat(3, 2), rat_int(2)] {
            assert!(spot_check_ybe_q(&a3, &q, &rat_int(0)).unwrap().pass);
        }
        // Half-integer powers of q appear in the odd orthogonal series, so
        // whole-q evaluation must refuse while v-evaluation succeeds.
        let b1 = SeriesSpec::b(1).unwrap().build();
        assert!(eval_matrix_q(&b1, &rat(3, 2), &rat_int(0)).is_err());
        assert!(spot_check_ybe(&b1, &rat(3, 2), &rat_int(0)).unwrap().pass);
        // The conjugated pre-limit matrix satisfies the identity at sample
        // points arbitrarily close to (but distinct from) q = 1.
        let g = ContractionMap::gl3_g1(&singular_parameter(), &RatFunc::zero());
        let pre_limit = conjugate_tensor_square(&a3, &g);
        for (v, h) in near_one_samples(0, 2) {
            assert!(spot_check_ybe(&pre_limit, &v, &h).unwrap().pass);
        }
        // The contracted matrix stays involutive at a numeric h.
        let rh = contract_r(&a3, &g).unwrap();
        assert!(spot_check_involutive(&rh, &rat(5, 7)).pass);
    }

    #[test]
    fn sample_points_are_deterministic_per_seed() {
        assert_eq!(near_one_samples(0, 3), near_one_samples(0, 3));
        assert_ne!(near_one_samples(0, 3), near_one_samples(1, 3));
        for (v, h) in near_one_samples(7, 5) {
            assert_ne!(v, rat_int(1));
            assert_ne!(h, rat_int(0));
        }
    }

    #[test]
    fn truncation_keeps_largest_residuals() {
        let report = VerificationReport {
            check: "demo".into(),
            pass: false,
            residuals: (0..30)
                .map(|k| Residual {
                    at: format!("r{k:02}"),
                    value: "x".into(),
                    terms: k,
                })
                .collect(),
            elapsed_ms: 0,
        };
        let cut = report.truncated(20);
        assert_eq!(cut.residuals.len(), 20);
        assert!(cut.residuals.iter().all(|r| r.terms >= 10));
        assert_eq!(report.truncated(40).residuals.len(), 30);
    }
}
