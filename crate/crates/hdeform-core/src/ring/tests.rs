use num_traits::Signed;
use proptest::prelude::*;
use rand_core::{Rng, SeedableRng};

use super::*;

fn p(s: &str) -> RatFunc {
    RatFunc::parse(s).unwrap()
}

fn bp(terms: &[(usize, usize, i64)]) -> BiPoly {
    let mut acc = BiPoly::zero();
    for &(vexp, hexp, c) in terms {
        acc = &acc + &BiPoly::monomial(vexp, hexp, rat_int(c));
    }
    acc
}

// --- structural identities on the singular scalar -------------------------

#[test]
fn singular_scalar_cancels_exactly() {
    // (q - 1) * (h / (q - 1)) collapses to h with no residue.
    let s = p("h/(q-1)");
    assert_eq!(p("q-1").mul(&s), p("h"));
    assert_eq!(s.mul(&s).mul(&p("(q-1)^2")), p("h^2"));
}

#[test]
fn hecke_coefficient_times_singular_scalar_limits_to_2h() {
    let lam = p("q - q^-1");
    let s = p("h/(q-1)");
    let prod = lam.mul(&s);
    assert_eq!(prod.order_at_q1().unwrap(), 0);
    assert_eq!(prod.limit_q1().unwrap(), HPoly::parse("2*h").unwrap());
}

#[test]
fn telescoped_power_ratio_limits_to_4() {
    let f = p("(1 - q^-4)/(q - 1)");
    assert_eq!(f.order_at_q1().unwrap(), 0);
    assert_eq!(f.limit_q1().unwrap(), HPoly::from_int(4));
}

#[test]
fn symplectic_corner_scalar_is_8h2_for_rank_4() {
    // (h^2/(q-1)) * (q^-1 + 1) * (1 - q^-4): the corner coefficient produced
    // by contracting the rank-4 symplectic solution.
    let f = p("(h^2/(q-1)) * (q^-1 + 1) * (1 - q^-4)");
    assert_eq!(f.order_at_q1().unwrap(), 0);
    assert_eq!(f.limit_q1().unwrap(), HPoly::parse("8*h^2").unwrap());
    assert_eq!(f.limit_q1().unwrap().to_string(), "8*h^2");
}

#[test]
fn pole_is_reported_with_order() {
    let f = p("h/(q-1)");
    assert_eq!(f.order_at_q1().unwrap(), -1);
    match f.limit_q1() {
        Err(RingError::PoleAtQ1 { order, value }) => {
            assert_eq!(order, -1);
            assert_eq!(value, "h/(q - 1)");
        }
        other => panic!("expected pole, got {other:?}"),
    }
    let g = p("1/(q-1)^3");
    assert_eq!(g.order_at_q1().unwrap(), -3);
}

#[test]
fn half_integer_powers_are_exact() {
    // v = q^(1/2); the odd orthogonal series needs these.
    let f = p("v - 1/v");
    assert_eq!(f.order_at_q1().unwrap(), 1);
    assert_eq!(f.limit_q1().unwrap(), HPoly::zero());
    let g = p("(v - 1/v)/(q - 1)");
    assert_eq!(g, p("1/v"));
    assert_eq!(g.order_at_q1().unwrap(), 0);
    assert_eq!(g.limit_q1().unwrap(), HPoly::one());
    let half = p("(v - 1)/(q - 1)");
    assert_eq!(half.limit_q1().unwrap(), HPoly::parse("1/2").unwrap());
}

#[test]
fn limit_can_be_non_polynomial_in_h() {
    let f = p("1/(h + 1)");
    assert_eq!(f.order_at_q1().unwrap(), 0);
    assert!(matches!(f.limit_q1(), Err(RingError::NonPolynomialInH(_))));
}

#[test]
fn zero_has_no_order_but_limits_to_zero() {
    let z = RatFunc::zero();
    assert_eq!(z.order_at_q1(), Err(RingError::ZeroOrder));
    assert_eq!(z.limit_q1().unwrap(), HPoly::zero());
}

// --- hpoly behaviour -------------------------------------------------------

#[test]
fn hpoly_parse_rejects_fractions_and_v() {
    assert!(HPoly::parse("h/(q-1)").is_err());
    assert!(HPoly::parse("q").is_err());
    assert!(HPoly::parse("v").is_err());
    assert!(HPoly::parse("1/h").is_err());
    assert_eq!(
        HPoly::parse("2*h^2 - h + 3/4").unwrap().to_string(),
        "2*h^2 - h + 3/4"
    );
}

#[test]
fn hpoly_gcd_and_division() {
    let a = HPoly::parse("h^2 - 1").unwrap();
    let b = HPoly::parse("h^2 + 2*h + 1").unwrap();
    assert_eq!(HPoly::gcd_monic(&a, &b), HPoly::parse("h + 1").unwrap());
    assert_eq!(
        a.exact_div(&HPoly::parse("h - 1").unwrap()).unwrap(),
        HPoly::parse("h + 1").unwrap()
    );
    assert!(a.exact_div(&HPoly::parse("h").unwrap()).is_none());
}

// --- canonical form --------------------------------------------------------

#[test]
fn canonical_form_is_unique() {
    let a = RatFunc::new(bp(&[(2, 1, 2)]), bp(&[(2, 0, 2), (0, 0, -2)])).unwrap();
    let b = p("q*h/(q - 1)");
    assert_eq!(a, b);
    // Common factors cancel regardless of how the fraction is presented.
    let t = bp(&[(1, 2, 3), (0, 0, 1)]);
    let num = bp(&[(4, 0, 1), (0, 1, -2)]);
    let den = bp(&[(2, 1, 1), (1, 0, 5)]);
    let plain = RatFunc::new(num.clone(), den.clone()).unwrap();
    let inflated = RatFunc::new(&num * &t, &den * &t).unwrap();
    assert_eq!(plain, inflated);
    assert_eq!(plain.den().lex_leading_coeff(), rat_int(1));
}

#[test]
fn display_follows_house_style() {
    assert_eq!(p("q - q^-1").to_string(), "(q^2 - 1)/q");
    assert_eq!(p("(2*h)/(2*q - 2)").to_string(), "h/(q - 1)");
    assert_eq!(p("h^2/(q^2-1)").to_string(), "h^2/(q^2 - 1)");
    assert_eq!(RatFunc::q_pow(-2).to_string(), "1/q^2");
    assert_eq!(p("-(h/(q-1))").to_string(), "-h/(q - 1)");
}

// --- deterministic random sampling ------------------------------------------

struct Gen(rand_chacha::ChaCha12Rng);

impl Gen {
    fn new(seed: u64) -> Self {
        Gen(rand_chacha::ChaCha12Rng::seed_from_u64(seed))
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.0.next_u64() % (hi - lo + 1) as u64) as i64
    }

    fn bipoly(&mut self, vdeg: usize, hdeg: usize) -> BiPoly {
        let mut acc = BiPoly::zero();
        for v in 0..=vdeg {
            for h in 0..=hdeg {
                acc = &acc + &BiPoly::monomial(v, h, rat_int(self.int(-3, 3)));
            }
        }
        acc
    }

    /// A denominator that is h-free and nonzero at v = 1, so the quotient
    /// has a polynomial limit at q = 1.
    fn tame_denominator(&mut self) -> BiPoly {
        loop {
            let mut acc = BiPoly::zero();
            for v in 0..=3 {
                acc = &acc + &BiPoly::monomial(v, 0, rat_int(self.int(-3, 3)));
            }
            let at_one = acc.eval_v1();
            if !at_one.is_zero() && at_one.leading_coeff().abs() >= rat(1, 2) {
                return acc;
            }
        }
    }
}

#[test]
fn near_one_samples_match_symbolic_limits() {
    let mut gen = Gen::new(0);
    let eps = rat(1, 2_000_000); // v = 1 ± 5e-7, so q - 1 ≈ ±1e-6
                                 // Allowance dominates eps times the worst-case derivative for these
                                 // coefficient ranges (~2e-3) while staying far below any O(1) defect.
    let tol = rat(1, 100);
    for _ in 0..100 {
        let num = gen.bipoly(3, 2);
        let den = gen.tame_denominator();
        let f = RatFunc::new(num, den).unwrap();
        let lim = f.limit_q1().expect("tame denominator gives a limit");
        let h0 = rat(gen.int(-8, 8), 4);
        let expected = lim.eval(&h0);
        for v0 in [rat_int(1) + eps.clone(), rat_int(1) - eps.clone()] {
            let sampled = f.eval(&v0, &h0).unwrap();
            let err = (sampled - expected.clone()).abs();
            let scale = rat_int(1) + expected.abs();
            assert!(
                err <= tol.clone() * scale.clone(),
                "sample at v = {v0} drifted: err {err} vs allowance {}",
                tol.clone() * scale
            );
        }
    }
}

// --- algebraic laws under proptest ------------------------------------------

fn arb_bipoly() -> impl Strategy<Value = BiPoly> {
    proptest::collection::vec((0usize..4, 0usize..3, -5i64..=5), 0..5).prop_map(|terms| bp(&terms))
}

fn arb_nonzero_bipoly() -> impl Strategy<Value = BiPoly> {
    arb_bipoly().prop_filter("nonzero", |b| !b.is_zero())
}

fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    (arb_bipoly(), arb_nonzero_bipoly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), RatFunc::zero());
        prop_assert_eq!(a.add(&a.neg()), RatFunc::zero());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
        }
    }

    #[test]
    fn print_parse_round_trip(a in arb_ratfunc()) {
        prop_assert_eq!(RatFunc::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(
        a in arb_bipoly(),
        b in arb_nonzero_bipoly(),
    ) {
        let product = &a * &b;
        prop_assert_eq!(product.exact_div(&b), Some(a));
    }

    #[test]
    fn gcd_divides_and_scales(
        a in arb_nonzero_bipoly(),
        b in arb_nonzero_bipoly(),
        t in arb_nonzero_bipoly(),
    ) {
        let g = BiPoly::gcd(&a, &b);
        prop_assert!(a.exact_div(&g).is_some());
        prop_assert!(b.exact_div(&g).is_some());
        let gt = BiPoly::gcd(&(&a * &t), &(&b * &t));
        prop_assert_eq!(gt, (&g * &t).normalize_lex());
    }

    #[test]
    fn order_is_additive(a in arb_ratfunc(), b in arb_ratfunc()) {
        if !a.is_zero() && !b.is_zero() {
            let prod = a.mul(&b);
            prop_assert_eq!(
                prod.order_at_q1().unwrap(),
                a.order_at_q1().unwrap() + b.order_at_q1().unwrap()
            );
        }
    }

    #[test]
    fn limit_is_a_homomorphism(a in arb_ratfunc(), b in arb_ratfunc()) {
        // Where all limits exist, the limit respects + and *.
        if let (Ok(la), Ok(lb)) = (a.limit_q1(), b.limit_q1()) {
            let sum = a.add(&b);
            let prod = a.mul(&b);
            prop_assert_eq!(sum.limit_q1().unwrap(), &la + &lb);
            prop_assert_eq!(prod.limit_q1().unwrap(), &la * &lb);
        }
    }

    #[test]
    fn v1_multiplicity_tracks_factors(a in arb_nonzero_bipoly(), k in 0u32..4) {
        let vm1 = bp(&[(1, 0, 1), (0, 0, -1)]);
        let mut lifted = a.clone();
        for _ in 0..k {
            lifted = &lifted * &vm1;
        }
        prop_assert_eq!(
            lifted.v1_multiplicity().unwrap(),
            a.v1_multiplicity().unwrap() + k
        );
        prop_assert_eq!(lifted.strip_v1(k), a);
    }

    #[test]
    fn evaluation_commutes_with_arithmetic(a in arb_ratfunc(), b in arb_ratfunc()) {
        let v0 = rat(5, 4);
        let h0 = rat(-3, 2);
        if let (Ok(ea), Ok(eb)) = (a.eval(&v0, &h0), b.eval(&v0, &h0)) {
            if let Ok(es) = a.add(&b).eval(&v0, &h0) {
                prop_assert_eq!(es, ea.clone() + eb.clone());
            }
            if let Ok(ep) = a.mul(&b).eval(&v0, &h0) {
                prop_assert_eq!(ep, ea * eb);
            }
        }
    }
}
