//! The polynomial ring `Q[v, h]`, represented recursively as polynomials in
//! `v` with [`HPoly`] coefficients.
//!
//! Besides ring arithmetic this module provides the two exact operations the
//! rational-function layer is built on: exact division (for fraction
//! reduction) and a primitive-part polynomial gcd via pseudo-remainder
//! sequences, plus `(v - 1)`-multiplicity extraction for the `q -> 1`
//! analysis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::hpoly::leading_is_negative;
use super::{parse, HPoly, Rational, RingError};

/// A polynomial in `v` whose coefficients are polynomials in `h`.
///
/// Invariant: no trailing zero coefficient; zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: Vec<HPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        BiPoly::from_hpoly(HPoly::one())
    }

    /// Embed a polynomial in `h` as a `v`-degree-zero element.
    pub fn from_hpoly(p: HPoly) -> Self {
        if p.is_zero() {
            BiPoly::zero()
        } else {
            BiPoly { coeffs: vec![p] }
        }
    }

    /// The monomial `c * v^vexp * h^hexp`.
    pub fn monomial(vexp: usize, hexp: usize, c: Rational) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        let mut coeffs = vec![HPoly::zero(); vexp + 1];
        coeffs[vexp] = HPoly::monomial(hexp, c);
        BiPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<HPoly>) -> Self {
        while coeffs.last().is_some_and(HPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree in `v`; `None` for zero.
    pub fn deg_v(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient with respect to `v` (zero polynomial for zero).
    pub fn leading(&self) -> HPoly {
        self.coeffs.last().cloned().unwrap_or_else(HPoly::zero)
    }

    /// The rational coefficient of the lexicographically leading monomial
    /// under `v > h` ordering.
    pub fn lex_leading_coeff(&self) -> Rational {
        self.leading().leading_coeff()
    }

    /// `coeffs[k]` is the coefficient of `v^k`.
    pub fn coeffs(&self) -> &[HPoly] {
        &self.coeffs
    }

    /// `true` when no term involves `h`.
    pub fn is_h_free(&self) -> bool {
        self.coeffs.iter().all(|c| c.deg().unwrap_or(0) == 0)
    }

    /// `true` when no term involves `v`.
    pub fn is_v_free(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `true` when every `v`-exponent with a nonzero coefficient is even,
    /// i.e. the polynomial is an exact polynomial in `q = v^2` and `h`.
    pub fn is_even_in_v(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 0 || c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    fn scale_hpoly(&self, p: &HPoly) -> Self {
        if p.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// Multiply by `v^k`.
    fn shift_v(&self, k: usize) -> Self {
        if self.is_zero() {
            return BiPoly::zero();
        }
        let mut coeffs = vec![HPoly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BiPoly { coeffs }
    }

    /// Evaluate at `v = 1`, leaving a polynomial in `h`.
    pub fn eval_v1(&self) -> HPoly {
        let mut acc = HPoly::zero();
        for c in &self.coeffs {
            acc = &acc + c;
        }
        acc
    }

    /// Evaluate at rational `v` and `h`.
    pub fn eval(&self, v: &Rational, h: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c.eval(h);
        }
        acc
    }

    /// Evaluate substituting `q` for `v^2`; fails when an odd `v`-power has a
    /// nonzero coefficient.
    pub fn eval_q(&self, q: &Rational, h: &Rational) -> Result<Rational, RingError> {
        if !self.is_even_in_v() {
            return Err(RingError::Eval(format!(
                "`{self}` has odd powers of v; evaluation at a q value is not exact"
            )));
        }
        let mut acc = Rational::zero();
        for k in (0..self.coeffs.len()).step_by(2).rev() {
            acc = acc * q + self.coeffs[k].eval(h);
        }
        Ok(acc)
    }

    /// Substitute a rational value for `h`, leaving a polynomial in `v`.
    pub fn subst_h(&self, h: &Rational) -> BiPoly {
        BiPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| HPoly::constant(c.eval(h)))
                .collect(),
        )
    }

    /// Multiplicity of the factor `(v - 1)`; `None` for the zero polynomial.
    pub fn v1_multiplicity(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut m = 0;
        let mut p = self.clone();
        while p.eval_v1().is_zero() {
            p = p.div_v_minus_1();
            m += 1;
        }
        Some(m)
    }

    /// Synthetic division by `(v - 1)`; caller guarantees `self(1, h) = 0`.
    fn div_v_minus_1(&self) -> BiPoly {
        let n = self.coeffs.len();
        debug_assert!(n > 0);
        let mut quo = vec![HPoly::zero(); n - 1];
        let mut carry = HPoly::zero();
        for k in (1..n).rev() {
            carry = &carry + &self.coeffs[k];
            quo[k - 1] = carry.clone();
        }
        BiPoly::from_coeffs(quo)
    }

    /// Divide out `(v - 1)^m` exactly.
    pub fn strip_v1(&self, m: u32) -> BiPoly {
        let mut p = self.clone();
        for _ in 0..m {
            p = p.div_v_minus_1();
        }
        p
    }

    /// Exact division in `Q[v, h]`; `None` when not divisible.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        let dd = d.deg_v().unwrap();
        let dn = self.deg_v().unwrap();
        if dn < dd {
            return None;
        }
        let lead = d.leading();
        let mut rem = self.clone();
        let mut quo = vec![HPoly::zero(); dn - dd + 1];
        loop {
            if rem.is_zero() {
                break;
            }
            let rd = rem.deg_v().unwrap();
            if rd < dd {
                return None;
            }
            let c = rem.leading().exact_div(&lead)?;
            rem = &rem - &d.scale_hpoly(&c).shift_v(rd - dd);
            if !rem.is_zero() && rem.deg_v().unwrap() >= rd {
                return None; // no progress: division cannot terminate
            }
            quo[rd - dd] = c;
        }
        Some(BiPoly::from_coeffs(quo))
    }

    /// Content: the monic gcd in `Q[h]` of all coefficients.
    fn content(&self) -> HPoly {
        let mut g = HPoly::zero();
        for c in &self.coeffs {
            g = HPoly::gcd_monic(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part: `self` divided by its content.
    fn primitive(&self) -> BiPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|p| p.exact_div(&c).expect("content divides"))
                .collect(),
        }
    }

    /// Pseudo-remainder of `a` by `b` in `(Q[h])[v]` (`deg a >= deg b`,
    /// `b != 0`).  When the divisor's leading coefficient is constant in `h`
    /// this is the plain remainder, with no coefficient growth.
    fn pseudo_rem(a: &BiPoly, b: &BiPoly) -> BiPoly {
        let db = b.deg_v().unwrap();
        let lead = b.leading();
        let lead_const = lead.is_constant().then(|| lead.leading_coeff());
        let mut rem = a.clone();
        while let Some(dr) = rem.deg_v() {
            if dr < db {
                break;
            }
            let rl = rem.leading();
            rem = match &lead_const {
                Some(c) => &rem - &b.scale_hpoly(&rl.scale(&c.recip())).shift_v(dr - db),
                None => &rem.scale_hpoly(&lead) - &b.scale_hpoly(&rl).shift_v(dr - db),
            };
            debug_assert!(rem.deg_v().is_none_or(|d| d < dr));
        }
        rem
    }

    /// Lowest `v`-exponent with a nonzero coefficient.
    fn v_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `Some((vexp, hexp, coeff))` when the polynomial is a single monomial.
    fn as_monomial(&self) -> Option<(usize, usize, Rational)> {
        let vexp = self.v_valuation()?;
        if vexp + 1 != self.coeffs.len() {
            return None;
        }
        let c = &self.coeffs[vexp];
        let (hexp, coeff) = c.terms().next()?;
        if c.deg() == Some(hexp) {
            Some((vexp, hexp, coeff.clone()))
        } else {
            None
        }
    }

    /// Largest monomial dividing `self` (for nonzero `self`): the common
    /// `v`/`h` factor of all terms.
    fn monomial_divisor(&self) -> (usize, usize) {
        let vexp = self.v_valuation().unwrap_or(0);
        let hexp = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.terms().next().map(|(e, _)| e).unwrap_or(0))
            .min()
            .unwrap_or(0);
        (vexp, hexp)
    }

    /// Greatest common divisor in `Q[v, h]`, normalized so its
    /// lexicographically leading coefficient (under `v > h`) is `1`.
    pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
        if a.is_zero() {
            return b.normalize_lex();
        }
        if b.is_zero() {
            return a.normalize_lex();
        }
        // Monomials (the common case: powers of v and h) divide in O(terms).
        if let Some((va, ha, _)) = a.as_monomial() {
            let (vb, hb) = b.monomial_divisor();
            return BiPoly::monomial(va.min(vb), ha.min(hb), Rational::from_integer(1.into()));
        }
        if let Some((vb, hb, _)) = b.as_monomial() {
            let (va, ha) = a.monomial_divisor();
            return BiPoly::monomial(va.min(vb), ha.min(hb), Rational::from_integer(1.into()));
        }
        let content = HPoly::gcd_monic(&a.content(), &b.content());
        // Normalizing the leading rational to 1 after every step keeps the
        // coefficient size of the remainder sequence under control.
        let mut p = a.primitive().normalize_lex();
        let mut q = b.primitive().normalize_lex();
        if p.deg_v() < q.deg_v() {
            std::mem::swap(&mut p, &mut q);
        }
        // Primitive pseudo-remainder sequence: ends with either an exact
        // divisor (r = 0, gcd is q) or a nonzero v-constant (the primitive
        // parts are coprime in v).
        let gcd_v = loop {
            if q.deg_v() == Some(0) {
                // A primitive v-constant is a nonzero rational.
                break BiPoly::one();
            }
            let r = BiPoly::pseudo_rem(&p, &q);
            if r.is_zero() {
                break q;
            }
            p = q;
            q = r.primitive().normalize_lex();
        };
        gcd_v.scale_hpoly(&content).normalize_lex()
    }

    /// Scale so the lexicographically leading rational coefficient is `1`.
    pub fn normalize_lex(&self) -> BiPoly {
        let lead = self.lex_leading_coeff();
        if lead.is_zero() {
            return BiPoly::zero();
        }
        self.scale(&lead.recip())
    }

    /// `true` when the `v > h` lexicographic leading coefficient is negative.
    pub fn lex_leading_negative(&self) -> bool {
        self.coeffs.last().map(leading_is_negative).unwrap_or(false)
    }

    /// Render as a term list `(v_exp, h_exp, coeff)` sorted descending.
    pub(super) fn print_terms(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for (vexp, c) in self.coeffs.iter().enumerate().rev() {
            for (hexp, coeff) in c.terms().collect::<Vec<_>>().into_iter().rev() {
                out.push((vexp, hexp, coeff.clone()));
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", parse::poly_string(&self.print_terms(), false))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(HPoly::zero);
            let c = match rhs.coeffs.get(k) {
                Some(b) => &a + b,
                None => a,
            };
            coeffs.push(c);
        }
        BiPoly::from_coeffs(coeffs)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut coeffs = vec![HPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        BiPoly::from_coeffs(coeffs)
    }
}
