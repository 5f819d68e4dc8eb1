//! Polynomials in the deformation parameter `h` over [`Rational`].
//!
//! These are the values the `q -> 1` limit produces: every entry of a
//! contracted matrix and every coefficient of a contracted relation set is an
//! [`HPoly`]. Coefficients are stored densely by exponent; the degrees that
//! occur in practice are tiny (at most 2).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{parse, rat_int, RatFunc, Rational, RingError, Scalar};

/// A polynomial in `h` with rational coefficients.
///
/// Invariant: the coefficient vector never has a trailing zero, so the zero
/// polynomial is the empty vector and `deg` is its length minus one.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HPoly {
    coeffs: Vec<Rational>,
}

impl HPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        HPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        HPoly::constant(rat_int(1))
    }

    /// The monomial `h`.
    pub fn h() -> Self {
        HPoly::monomial(1, rat_int(1))
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            HPoly::zero()
        } else {
            HPoly { coeffs: vec![c] }
        }
    }

    /// The monomial `c * h^exp`.
    pub fn monomial(exp: usize, c: Rational) -> Self {
        if c.is_zero() {
            return HPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        HPoly { coeffs }
    }

    /// Build from a dense coefficient vector (`coeffs[k]` multiplies `h^k`).
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        HPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `true` when the polynomial is a rational constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree in `h`; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `h^exp` (zero when absent).
    pub fn coeff(&self, exp: usize) -> Rational {
        self.coeffs.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading (highest-degree) coefficient; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterate over `(exponent, coefficient)` pairs of nonzero terms,
    /// ascending in exponent.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// The constant term, i.e. the value at `h = 0`.
    pub fn eval_h0(&self) -> Rational {
        self.coeff(0)
    }

    /// Evaluate at a rational value of `h`.
    pub fn eval(&self, h: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * h + c;
        }
        acc
    }

    /// Multiply by a rational constant.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return HPoly::zero();
        }
        HPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Exact division; `None` when `self` is not a multiple of `d`.
    pub fn exact_div(&self, d: &HPoly) -> Option<HPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(HPoly::zero());
        }
        let (dd, dn) = (d.coeffs.len() - 1, self.coeffs.len().checked_sub(1)?);
        if dn < dd {
            return None;
        }
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rational::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let val = &rem[k + j] - &(dc * &c);
                    rem[k + j] = val;
                }
            }
            quo[k] = c;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(HPoly::from_coeffs(quo))
        } else {
            None
        }
    }

    /// Monic greatest common divisor in `Q[h]`.
    pub fn gcd_monic(a: &HPoly, b: &HPoly) -> HPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem_by(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Remainder of division by `d` over the field `Q` (`d != 0`).
    fn rem_by(&self, d: &HPoly) -> HPoly {
        let dd = d.coeffs.len() - 1;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let val = &rem[k + j] - &(dc * &c);
                    rem[k + j] = val;
                }
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        HPoly { coeffs: rem }
    }

    /// Scale to leading coefficient `1` (zero stays zero).
    pub fn monic(&self) -> HPoly {
        match self.coeffs.last() {
            None => HPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Embed into the rational-function field.
    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_hpoly(self.clone())
    }

    /// Render the polynomial as a term list for the shared printer.
    pub(super) fn print_terms(&self) -> Vec<(usize, usize, Rational)> {
        let mut out: Vec<(usize, usize, Rational)> =
            self.terms().map(|(e, c)| (0usize, e, c.clone())).collect();
        out.reverse();
        out
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", parse::poly_string(&self.print_terms(), false))
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPoly({self})")
    }
}

impl Add for &HPoly {
    type Output = HPoly;
    fn add(self, rhs: &HPoly) -> HPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
            if let Some(r) = rhs.coeffs.get(k) {
                c += r;
            }
            coeffs.push(c);
        }
        HPoly::from_coeffs(coeffs)
    }
}

impl Sub for &HPoly {
    type Output = HPoly;
    fn sub(self, rhs: &HPoly) -> HPoly {
        self + &(-rhs)
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        HPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &HPoly {
    type Output = HPoly;
    fn mul(self, rhs: &HPoly) -> HPoly {
        if self.is_zero() || rhs.is_zero() {
            return HPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let val = &coeffs[i + j] + &(a * b);
                    coeffs[i + j] = val;
                }
            }
        }
        HPoly::from_coeffs(coeffs)
    }
}

impl Scalar for HPoly {
    fn zero() -> Self {
        HPoly::zero()
    }
    fn one() -> Self {
        HPoly::one()
    }
    fn is_zero(&self) -> bool {
        HPoly::is_zero(self)
    }
    fn is_one(&self) -> bool {
        HPoly::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: i64) -> Self {
        HPoly::constant(rat_int(n))
    }
    fn parse(text: &str) -> Result<Self, RingError> {
        RatFunc::parse(text)?.to_hpoly()
    }
    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !Zero::is_zero(*c)).count()
    }
}

/// Positivity of the leading coefficient, used by canonical normalizations.
pub(super) fn leading_is_negative(p: &HPoly) -> bool {
    p.coeffs.last().map(Signed::is_negative).unwrap_or(false)
}
