//! The field `Q(v, h)` of rational functions, kept in a canonical reduced
//! form so that structural equality coincides with mathematical equality.
//!
//! Canonical form: the fraction is reduced (numerator and denominator
//! coprime), the denominator's lexicographically leading coefficient under
//! `v > h` is `1`, and zero is represented as `0/1`.
//!
//! The deformation parameter `q` is identified with `v^2`, so integer and
//! half-integer powers of `q` are both exact monomials.

use std::fmt;

use num_traits::Zero;

use super::{parse, BiPoly, FieldScalar, HPoly, Rational, RingError, Scalar};

/// A rational function in `v` and `h` over `Q`, in canonical reduced form.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: BiPoly,
    den: BiPoly,
}

impl RatFunc {
    /// Build `num/den`, reducing to canonical form.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num: BiPoly::zero(),
                den: BiPoly::one(),
            });
        }
        let g = BiPoly::gcd(&num, &den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        let lead = den.lex_leading_coeff();
        Ok(RatFunc {
            num: num.scale(&lead.recip()),
            den: den.scale(&lead.recip()),
        })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: BiPoly::zero(),
            den: BiPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: BiPoly::one(),
            den: BiPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_bipoly(BiPoly::monomial(0, 0, Rational::from_integer(n.into())))
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFunc::from_bipoly(BiPoly::monomial(0, 0, c))
    }

    pub fn from_bipoly(p: BiPoly) -> Self {
        RatFunc {
            num: p,
            den: BiPoly::one(),
        }
    }

    pub fn from_hpoly(p: HPoly) -> Self {
        RatFunc::from_bipoly(BiPoly::from_hpoly(p))
    }

    /// The generator `h`.
    pub fn h() -> Self {
        RatFunc::from_bipoly(BiPoly::monomial(0, 1, Rational::from_integer(1.into())))
    }

    /// The generator `v` (a square root of `q`).
    pub fn v() -> Self {
        RatFunc::from_bipoly(BiPoly::monomial(1, 0, Rational::from_integer(1.into())))
    }

    /// The deformation parameter `q = v^2`.
    pub fn q() -> Self {
        RatFunc::q_pow(1)
    }

    /// `q^k` for any integer `k` (negative powers included).
    pub fn q_pow(k: i64) -> Self {
        RatFunc::v_pow(2 * k)
    }

    /// `v^k` for any integer `k` (negative powers included).
    pub fn v_pow(k: i64) -> Self {
        let mono = BiPoly::monomial(
            k.unsigned_abs() as usize,
            0,
            Rational::from_integer(1.into()),
        );
        if k >= 0 {
            RatFunc::from_bipoly(mono)
        } else {
            RatFunc {
                num: BiPoly::one(),
                den: mono,
            }
        }
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `true` when the value is a polynomial (denominator `1`).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_h_free(&self) -> bool {
        self.num.is_h_free() && self.den.is_h_free()
    }

    /// `true` when both numerator and denominator only use even powers of
    /// `v`, i.e. the value lies in `Q(q, h)`.
    pub fn is_even_in_v(&self) -> bool {
        self.num.is_even_in_v() && self.den.is_even_in_v()
    }

    /// Renormalize an already-coprime pair so the denominator's leading
    /// lexicographic coefficient is `1`.
    fn from_coprime(num: BiPoly, den: BiPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let lead = den.lex_leading_coeff();
        debug_assert!(!lead.is_zero());
        RatFunc {
            num: num.scale(&lead.recip()),
            den: den.scale(&lead.recip()),
        }
    }

    /// Addition with denominator-gcd reduction: any common factor of the
    /// resulting fraction must divide `gcd(den, den)`, so only small gcds
    /// are ever computed.
    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let d = BiPoly::gcd(&self.den, &rhs.den);
        if d.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let den = &self.den * &rhs.den;
            return RatFunc::from_coprime(num, den);
        }
        let d1 = self.den.exact_div(&d).expect("gcd divides");
        let d2 = rhs.den.exact_div(&d).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        let den = &d1 * &rhs.den;
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = BiPoly::gcd(&num, &d);
        if g.is_one() {
            RatFunc::from_coprime(num, den)
        } else {
            RatFunc::from_coprime(
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// Multiplication with cross-reduction, so the product of two canonical
    /// fractions is canonical without a gcd of the full products.
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let g1 = BiPoly::gcd(&self.num, &rhs.den);
        let g2 = BiPoly::gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        RatFunc::from_coprime(&n1 * &n2, &d1 * &d2)
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(RatFunc::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, RingError> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Order of vanishing at `q = 1`, measured as the multiplicity of the
    /// factor `(v - 1)` in the numerator minus the denominator.  Negative
    /// order means a pole.  The zero element has no order.
    pub fn order_at_q1(&self) -> Result<i64, RingError> {
        if self.is_zero() {
            return Err(RingError::ZeroOrder);
        }
        let mn = self.num.v1_multiplicity().unwrap() as i64;
        let md = self.den.v1_multiplicity().unwrap() as i64;
        Ok(mn - md)
    }

    /// The value at `q = 1`, which must be a polynomial in `h`.
    ///
    /// Fails with a pole error when the order at `q = 1` is negative, and
    /// with a non-polynomial error when the limit exists but is a genuine
    /// rational function of `h`.
    pub fn limit_q1(&self) -> Result<HPoly, RingError> {
        if self.is_zero() {
            return Ok(HPoly::zero());
        }
        // The fraction is reduced, so (v - 1) cannot divide both parts.
        let md = self.den.v1_multiplicity().unwrap();
        if md > 0 {
            return Err(RingError::PoleAtQ1 {
                order: -(md as i64),
                value: self.to_string(),
            });
        }
        let num1 = self.num.eval_v1();
        let den1 = self.den.eval_v1();
        debug_assert!(!den1.is_zero());
        if num1.is_zero() {
            return Ok(HPoly::zero());
        }
        let g = HPoly::gcd_monic(&num1, &den1);
        let num1 = num1.exact_div(&g).expect("gcd divides");
        let den1 = den1.exact_div(&g).expect("gcd divides");
        match den1.deg() {
            Some(0) => {
                let c = den1.leading_coeff();
                Ok(num1.scale(&c.recip()))
            }
            _ => Err(RingError::NonPolynomialInH(self.to_string())),
        }
    }

    /// Evaluate at rational values of `v` and `h`.
    pub fn eval(&self, v: &Rational, h: &Rational) -> Result<Rational, RingError> {
        let d = self.den.eval(v, h);
        if d.is_zero() {
            return Err(RingError::Eval(format!(
                "denominator of `{self}` vanishes at v = {v}, h = {h}"
            )));
        }
        Ok(self.num.eval(v, h) / d)
    }

    /// Evaluate at rational values of `q` and `h`; exact only when the value
    /// lies in `Q(q, h)`.
    pub fn eval_q(&self, q: &Rational, h: &Rational) -> Result<Rational, RingError> {
        let d = self.den.eval_q(q, h)?;
        if d.is_zero() {
            return Err(RingError::Eval(format!(
                "denominator of `{self}` vanishes at q = {q}, h = {h}"
            )));
        }
        Ok(self.num.eval_q(q, h)? / d)
    }

    /// Substitute a rational value for `h`, leaving a function of `v` alone.
    pub fn subst_h(&self, h: &Rational) -> Result<RatFunc, RingError> {
        RatFunc::new(self.num.subst_h(h), self.den.subst_h(h))
    }

    /// Reinterpret as a polynomial in `h` alone; fails when the value
    /// involves `v` or a denominator.
    pub fn to_hpoly(&self) -> Result<HPoly, RingError> {
        if !self.den.is_one() || !self.num.is_v_free() {
            return Err(RingError::NonPolynomialInH(self.to_string()));
        }
        Ok(self
            .num
            .coeffs()
            .first()
            .cloned()
            .unwrap_or_else(HPoly::zero))
    }

    pub fn parse(text: &str) -> Result<Self, RingError> {
        parse::parse_ratfunc(text)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", parse::ratfunc_string(self))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Scalar for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFunc::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn from_int(n: i64) -> Self {
        RatFunc::from_int(n)
    }
    fn parse(text: &str) -> Result<Self, RingError> {
        RatFunc::parse(text)
    }
    fn term_count(&self) -> usize {
        let count = |p: &BiPoly| p.coeffs().iter().map(Scalar::term_count).sum::<usize>();
        count(&self.num)
            + if self.den.is_one() {
                0
            } else {
                count(&self.den)
            }
    }
}

impl FieldScalar for RatFunc {
    fn inv(&self) -> Result<Self, RingError> {
        RatFunc::inv(self)
    }
}
