//! Exact scalar arithmetic for the deformation engine.
//!
//! Every quantity in the engine lives in the field `Q(v, h)` of rational
//! functions in two commuting variables over the rationals, where `q = v^2`.
//! Working in the square root `v` keeps half-integer powers of `q` (which
//! appear in the odd orthogonal series) exact monomials.
//!
//! The layering is:
//!
//! * [`Rational`] — arbitrary-precision reduced fractions (re-export of
//!   `num_rational::BigRational`).
//! * [`HPoly`] — polynomials in `h` over [`Rational`].
//! * [`BiPoly`] — polynomials in `v` with [`HPoly`] coefficients, i.e. the
//!   ring `Q[v, h]`, with exact division and gcd.
//! * [`RatFunc`] — reduced fractions of two [`BiPoly`]s in canonical form
//!   (coprime, denominator normalized to leading coefficient `1` under
//!   lexicographic `v > h` ordering), together with the analytic operations
//!   the contraction needs: order of vanishing at `q = 1` and the exact
//!   limit `q -> 1`.

mod bipoly;
mod hpoly;
mod parse;
mod ratfunc;

#[cfg(test)]
mod tests;

pub use bipoly::BiPoly;
pub use hpoly::HPoly;
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Rational = BigRational;

/// Convenience constructor for an integer [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Convenience constructor for the fraction `n / d` (`d != 0`).
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Errors produced by scalar arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    /// Division by the zero scalar.
    #[error("division by zero")]
    DivisionByZero,
    /// The zero function has no well-defined vanishing order.
    #[error("the zero function has no order at q = 1")]
    ZeroOrder,
    /// `limit_q1` was asked for a function with a genuine pole at `q = 1`.
    #[error("pole of order {order} at q = 1 in `{value}`")]
    PoleAtQ1 {
        /// Net vanishing order (negative for a pole).
        order: i64,
        /// Canonical rendering of the offending scalar.
        value: String,
    },
    /// The value at `q = 1` exists but is a non-polynomial function of `h`.
    #[error("value at q = 1 is not polynomial in h: `{0}`")]
    NonPolynomialInH(String),
    /// Text input did not conform to the scalar grammar.
    #[error("parse error: {0}")]
    Parse(String),
    /// Numeric evaluation failed (zero denominator, odd power of `v` under a
    /// `q`-substitution, and similar).
    #[error("evaluation error: {0}")]
    Eval(String),
}

/// Commutative-ring interface shared by the scalar types the matrix and
/// relation machinery is generic over.
pub trait Scalar: Clone + PartialEq + Eq + std::fmt::Debug + std::fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Embed an integer.
    fn from_int(n: i64) -> Self;
    /// Parse from the shared scalar grammar.
    fn parse(text: &str) -> Result<Self, RingError>;
    /// Number of monomials in the canonical representation — a size measure
    /// used to rank residuals in failure reports.
    fn term_count(&self) -> usize;
}

/// Scalars forming a field, where echelon reduction and inversion make sense.
pub trait FieldScalar: Scalar {
    /// Multiplicative inverse; fails on zero.
    fn inv(&self) -> Result<Self, RingError>;
    fn div(&self, other: &Self) -> Result<Self, RingError> {
        Ok(self.mul(&other.inv()?))
    }
}

/// A plain rational number packaged as a [`Scalar`], used when a symbolic
/// matrix is evaluated at an exact numeric sample point.  (A newtype rather
/// than a direct impl on [`Rational`], so the trait methods do not collide
/// with the inherent `num` ones.)
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Numeric(pub Rational);

impl std::fmt::Display for Numeric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Numeric {
    fn zero() -> Self {
        Numeric(num_traits::Zero::zero())
    }
    fn one() -> Self {
        Numeric(num_traits::One::one())
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(&self.0)
    }
    fn is_one(&self) -> bool {
        num_traits::One::is_one(&self.0)
    }
    fn add(&self, other: &Self) -> Self {
        Numeric(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Numeric(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Numeric(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Numeric(-&self.0)
    }
    fn from_int(n: i64) -> Self {
        Numeric(rat_int(n))
    }
    fn parse(text: &str) -> Result<Self, RingError> {
        text.trim()
            .parse::<BigRational>()
            .map(Numeric)
            .map_err(|e| RingError::Parse(format!("rational number: {e}")))
    }
    fn term_count(&self) -> usize {
        if Scalar::is_zero(self) {
            0
        } else {
            1
        }
    }
}

impl FieldScalar for Numeric {
    fn inv(&self) -> Result<Self, RingError> {
        if Scalar::is_zero(self) {
            return Err(RingError::DivisionByZero);
        }
        Ok(Numeric(<Rational as num_traits::One>::one() / &self.0))
    }
}
