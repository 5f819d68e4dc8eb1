//! Text form of scalars: a small expression parser and the shared printer.
//!
//! The printer emits `q`-notation (`q^k` for `v^(2k)`) whenever every power
//! of `v` in the value is even, and falls back to explicit `v` powers
//! otherwise.  The parser accepts the grammar
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := '-' factor | primary ('^' '-'? integer)?
//! primary  := integer | 'q' | 'v' | 'h' | '(' expr ')'
//! ```
//!
//! so every printed value parses back to itself.

use num_traits::{One, Signed};

use super::{RatFunc, Rational, RingError};

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

fn var_string(name: &str, exp: usize) -> String {
    if exp == 1 {
        name.to_string()
    } else {
        format!("{name}^{exp}")
    }
}

/// Render one monomial's absolute value; returns (is_negative, text).
fn term_string(vexp: usize, hexp: usize, coeff: &Rational, use_q: bool) -> (bool, String) {
    let neg = coeff.is_negative();
    let abs = coeff.abs();
    let mut factors: Vec<String> = Vec::new();
    if !abs.is_one() || (vexp == 0 && hexp == 0) {
        factors.push(abs.to_string());
    }
    if vexp > 0 {
        if use_q {
            debug_assert!(vexp.is_multiple_of(2));
            factors.push(var_string("q", vexp / 2));
        } else {
            factors.push(var_string("v", vexp));
        }
    }
    if hexp > 0 {
        factors.push(var_string("h", hexp));
    }
    (neg, factors.join("*"))
}

/// Render a term list (descending, as produced by the polynomial types).
pub(super) fn poly_string(terms: &[(usize, usize, Rational)], use_q: bool) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (vexp, hexp, coeff)) in terms.iter().enumerate() {
        let (neg, body) = term_string(*vexp, *hexp, coeff, use_q);
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// A single monomial with unit coefficient still reads as a product when it
/// mixes the two variables; such denominators need parentheses.
fn needs_parens_single(vexp: usize, hexp: usize, coeff: &Rational) -> bool {
    let mut factors = 0;
    if !coeff.abs().is_one() {
        factors += 1;
    }
    if vexp > 0 {
        factors += 1;
    }
    if hexp > 0 {
        factors += 1;
    }
    factors > 1 || coeff.is_negative()
}

pub(super) fn ratfunc_string(r: &RatFunc) -> String {
    let use_q = r.is_even_in_v();
    let num_terms = r.num().print_terms();
    let num_str = poly_string(&num_terms, use_q);
    if r.den().is_one() {
        return num_str;
    }
    let den_terms = r.den().print_terms();
    let den_str = poly_string(&den_terms, use_q);
    let num_wrapped = if num_terms.len() > 1 {
        format!("({num_str})")
    } else {
        num_str
    };
    let den_wrapped = if den_terms.len() > 1
        || den_terms
            .first()
            .is_some_and(|(v, h, c)| needs_parens_single(*v, *h, c))
    {
        format!("({den_str})")
    } else {
        den_str
    };
    format!("{num_wrapped}/{den_wrapped}")
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(String),
    Var(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>, RingError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Int(digits));
            }
            'q' | 'v' | 'h' => {
                tokens.push(Token::Var(c));
                chars.next();
            }
            '+' => {
                tokens.push(Token::Plus);
                chars.next();
            }
            '-' => {
                tokens.push(Token::Minus);
                chars.next();
            }
            '*' => {
                tokens.push(Token::Star);
                chars.next();
            }
            '/' => {
                tokens.push(Token::Slash);
                chars.next();
            }
            '^' => {
                tokens.push(Token::Caret);
                chars.next();
            }
            '(' => {
                tokens.push(Token::LParen);
                chars.next();
            }
            ')' => {
                tokens.push(Token::RParen);
                chars.next();
            }
            other => {
                return Err(RingError::Parse(format!(
                    "unexpected character `{other}` in `{text}`"
                )));
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> RingError {
        RingError::Parse(format!("{msg} in `{}`", self.text))
    }

    fn expr(&mut self) -> Result<RatFunc, RingError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Token::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Token::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, RingError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Token::Star) {
                acc = acc.mul(&self.factor()?);
            } else if self.eat(&Token::Slash) {
                acc = acc.div(&self.factor()?)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFunc, RingError> {
        if self.eat(&Token::Minus) {
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if self.eat(&Token::Caret) {
            let exp = self.exponent()?;
            return pow(&base, exp);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, RingError> {
        let neg = self.eat(&Token::Minus);
        match self.next() {
            Some(Token::Int(digits)) => {
                let n: i64 = digits
                    .parse()
                    .map_err(|_| self.error("exponent out of range"))?;
                if n > 4096 {
                    return Err(self.error("exponent out of range"));
                }
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.error("expected integer exponent after `^`")),
        }
    }

    fn primary(&mut self) -> Result<RatFunc, RingError> {
        match self.next() {
            Some(Token::Int(digits)) => {
                let n: num_bigint::BigInt = digits
                    .parse()
                    .map_err(|_| self.error("bad integer literal"))?;
                Ok(RatFunc::from_rational(Rational::from_integer(n)))
            }
            Some(Token::Var('q')) => Ok(RatFunc::q()),
            Some(Token::Var('v')) => Ok(RatFunc::v()),
            Some(Token::Var('h')) => Ok(RatFunc::h()),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                if !self.eat(&Token::RParen) {
                    return Err(self.error("missing closing parenthesis"));
                }
                Ok(inner)
            }
            Some(t) => Err(self.error(&format!("unexpected token {t:?}"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

fn pow(base: &RatFunc, exp: i64) -> Result<RatFunc, RingError> {
    if exp < 0 {
        return pow(&base.inv()?, -exp);
    }
    let mut acc = RatFunc::one();
    let mut sq = base.clone();
    let mut e = exp as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&sq);
        }
        e >>= 1;
        if e > 0 {
            sq = sq.mul(&sq);
        }
    }
    Ok(acc)
}

pub(super) fn parse_ratfunc(text: &str) -> Result<RatFunc, RingError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(RingError::Parse(format!("empty expression in `{text}`")));
    }
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        text,
    };
    let value = parser.expr()?;
    if parser.pos != tokens.len() {
        return Err(parser.error("trailing input after expression"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn prints_canonical_examples() {
        assert_eq!(p("h/(q-1)").to_string(), "h/(q - 1)");
        assert_eq!(p("q + 1/q").to_string(), "(q^2 + 1)/q");
        assert_eq!(p("2*h^2").to_string(), "2*h^2");
        assert_eq!(p("-h").to_string(), "-h");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("q^-1").to_string(), "1/q");
        assert_eq!(p("1/(q*h)").to_string(), "1/(q*h)");
        assert_eq!(p("3/2").to_string(), "3/2");
    }

    #[test]
    fn odd_v_powers_print_as_v() {
        assert_eq!(p("v").to_string(), "v");
        assert_eq!(p("v^3 - v").to_string(), "v^3 - v");
        assert_eq!(p("v^2").to_string(), "q");
        assert_eq!(p("1/v").to_string(), "1/v");
    }

    #[test]
    fn parse_precedence() {
        assert_eq!(p("3/2*h"), p("(3/2)*h"));
        assert_eq!(p("-q^2"), RatFunc::q_pow(2).neg());
        assert_eq!(p("q - q^-1"), p("(q^2-1)/q"));
        assert_eq!(p("2^10"), RatFunc::from_int(1024));
    }

    #[test]
    fn parse_errors() {
        assert!(RatFunc::parse("").is_err());
        assert!(RatFunc::parse("q +").is_err());
        assert!(RatFunc::parse("x").is_err());
        assert!(RatFunc::parse("(q").is_err());
        assert!(RatFunc::parse("1/0").is_err());
        assert!(RatFunc::parse("q^(2)").is_err());
        assert!(RatFunc::parse("1 2").is_err());
    }

    #[test]
    fn round_trips() {
        for s in [
            "h/(q - 1)",
            "(q^2 + 1)/q",
            "2*h^2",
            "-h",
            "0",
            "1",
            "(q^4 + q^2*h - 3)/(q^2*h^3 - 1/2)",
            "v^3 - v + h",
        ] {
            let once = p(s);
            let again = p(&once.to_string());
            assert_eq!(once, again, "round trip failed for `{s}`");
        }
    }
}
