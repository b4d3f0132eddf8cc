//! Factored rational text format.
//!
//! ```text
//! value   := sign? product | sign? product "/" "(" product ")"
//!          | sign? "(" product ")" "/" "(" product ")"
//! product := factor ("*" factor)* | "1"
//! factor  := prime ("^" exponent)?
//! sign    := "-"
//! ```
//!
//! No whitespace; primes strictly ascending within a product. The formatter
//! parenthesizes the numerator only when it has more than one factor.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::primes::{factorize, is_prime};

/// A nonzero rational as sign plus prime-power lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRational {
    pub negative: bool,
    pub numerator: Vec<(BigUint, u32)>,
    pub denominator: Vec<(BigUint, u32)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("zero has no factored form")]
    Zero,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unexpected `{token}` at byte {pos}")]
    Unexpected { token: String, pos: usize },
    #[error("unexpected end of input, expected {expected}")]
    Eof { expected: &'static str },
    #[error("base `{token}` at byte {pos} is not prime")]
    NotPrime { token: String, pos: usize },
    #[error("exponent `{token}` at byte {pos} must be at least 1")]
    ZeroExponent { token: String, pos: usize },
    #[error("exponent `{token}` at byte {pos} is too large")]
    ExponentOverflow { token: String, pos: usize },
    #[error("prime `{token}` at byte {pos} is not strictly ascending")]
    Order { token: String, pos: usize },
    #[error("prime `{token}` at byte {pos} appears in numerator and denominator")]
    Shared { token: String, pos: usize },
}

fn product_value(factors: &[(BigUint, u32)]) -> BigUint {
    factors
        .iter()
        .fold(BigUint::one(), |acc, (p, e)| acc * Pow::pow(p, *e))
}

impl FactoredRational {
    pub fn from_rational(q: &BigRational) -> Result<Self, FormatError> {
        if q.is_zero() {
            return Err(FormatError::Zero);
        }
        Ok(Self {
            negative: q.is_negative(),
            numerator: factorize(q.numer().magnitude()),
            denominator: factorize(q.denom().magnitude()),
        })
    }

    pub fn value(&self) -> BigRational {
        let sign = if self.negative {
            Sign::Minus
        } else {
            Sign::Plus
        };
        BigRational::new(
            BigInt::from_biguint(sign, product_value(&self.numerator)),
            BigInt::from(product_value(&self.denominator)),
        )
    }
}

fn write_product(out: &mut String, factors: &[(BigUint, u32)]) {
    if factors.is_empty() {
        out.push('1');
        return;
    }
    for (i, (p, e)) in factors.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        out.push_str(&p.to_string());
        if *e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if self.negative {
            s.push('-');
        }
        if self.denominator.is_empty() {
            write_product(&mut s, &self.numerator);
        } else {
            let wrap = self.numerator.len() > 1;
            if wrap {
                s.push('(');
            }
            write_product(&mut s, &self.numerator);
            if wrap {
                s.push(')');
            }
            s.push_str("/(");
            write_product(&mut s, &self.denominator);
            s.push(')');
        }
        f.write_str(&s)
    }
}

/// Canonical factored text of a nonzero rational.
pub fn format_factored(q: &BigRational) -> Result<String, FormatError> {
    Ok(FactoredRational::from_rational(q)?.to_string())
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn unexpected(&self) -> ParseError {
        let token: String = self.src[self.pos..].chars().take(1).collect();
        ParseError::Unexpected {
            token,
            pos: self.pos,
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(self.unexpected()),
            None => Err(ParseError::Eof { expected: what }),
        }
    }

    fn digits(&mut self, what: &'static str) -> Result<(usize, &'a str), ParseError> {
        let start = self.pos;
        let len = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            return match self.peek() {
                Some(_) => Err(self.unexpected()),
                None => Err(ParseError::Eof { expected: what }),
            };
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn product(&mut self) -> Result<Vec<(BigUint, u32)>, ParseError> {
        let mut out: Vec<(BigUint, u32)> = Vec::new();
        loop {
            let (pos, tok) = self.digits("a prime")?;
            let base: BigUint = tok.parse().expect("digits parse");
            if base.is_one()
                && out.is_empty()
                && self.peek() != Some('^')
                && self.peek() != Some('*')
            {
                return Ok(out);
            }
            if !is_prime(&base) {
                return Err(ParseError::NotPrime {
                    token: tok.to_string(),
                    pos,
                });
            }
            if let Some((prev, _)) = out.last() {
                if *prev >= base {
                    return Err(ParseError::Order {
                        token: tok.to_string(),
                        pos,
                    });
                }
            }
            let mut exp = 1u32;
            if self.peek() == Some('^') {
                self.pos += 1;
                let (epos, etok) = self.digits("an exponent")?;
                exp = etok.parse().map_err(|_| ParseError::ExponentOverflow {
                    token: etok.to_string(),
                    pos: epos,
                })?;
                if exp == 0 {
                    return Err(ParseError::ZeroExponent {
                        token: etok.to_string(),
                        pos: epos,
                    });
                }
            }
            out.push((base, exp));
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }
}

/// Byte offset of `token` as a base (not an exponent) at or after `from`.
fn base_position(s: &str, from: usize, token: &str) -> usize {
    let bytes = s.as_bytes();
    let mut i = from;
    while i < s.len() {
        let end = i + bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
        if end > i {
            if &s[i..end] == token && bytes[i - 1] != b'^' {
                return i;
            }
            i = end;
        } else {
            i += 1;
        }
    }
    from
}

/// Parses the factored grammar back into a rational.
pub fn parse_factored_parts(s: &str) -> Result<FactoredRational, ParseError> {
    if s.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut c = Cursor { src: s, pos: 0 };
    let negative = c.peek() == Some('-');
    if negative {
        c.pos += 1;
    }
    let numerator = if c.peek() == Some('(') {
        c.pos += 1;
        let p = c.product()?;
        c.expect(')', "`)`")?;
        if c.peek().is_none() {
            return Err(ParseError::Eof { expected: "`/`" });
        }
        p
    } else {
        c.product()?
    };
    let mut denominator = Vec::new();
    let mut den_start = s.len();
    if c.peek().is_some() {
        c.expect('/', "`/`")?;
        c.expect('(', "`(`")?;
        den_start = c.pos;
        denominator = c.product()?;
        c.expect(')', "`)`")?;
    }
    if c.peek().is_some() {
        return Err(c.unexpected());
    }
    for (p, _) in &denominator {
        if numerator.iter().any(|(q, _)| q == p) {
            let token = p.to_string();
            let pos = base_position(s, den_start, &token);
            return Err(ParseError::Shared { token, pos });
        }
    }
    Ok(FactoredRational {
        negative,
        numerator,
        denominator,
    })
}

/// Parses the factored grammar into a `BigRational`.
pub fn parse_factored(s: &str) -> Result<BigRational, ParseError> {
    parse_factored_parts(s).map(|f| f.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn double_cover_value() {
        assert_eq!(format_factored(&ratio(-1, 200)).unwrap(), "-1/(2^3*5^2)");
        assert_eq!(parse_factored("-1/(2^3*5^2)").unwrap(), ratio(-1, 200));
    }

    #[test]
    fn unity_and_integers() {
        assert_eq!(format_factored(&ratio(1, 1)).unwrap(), "1");
        assert_eq!(format_factored(&ratio(-1, 1)).unwrap(), "-1");
        assert_eq!(format_factored(&ratio(12, 1)).unwrap(), "2^2*3");
        assert_eq!(parse_factored("1").unwrap(), ratio(1, 1));
        assert_eq!(parse_factored("2^2*3").unwrap(), ratio(12, 1));
        assert_eq!(parse_factored("1/(3)").unwrap(), ratio(1, 3));
    }

    #[test]
    fn degree_three_row() {
        let s = "-(5^2*43^2)/(3^13*7^2)";
        let q = parse_factored(s).unwrap();
        let expect = BigRational::new(
            BigInt::from(-(25i64 * 43 * 43)),
            BigInt::from(3u64.pow(13) * 49),
        );
        assert_eq!(q, expect);
        assert_eq!(format_factored(&q).unwrap(), s);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(format_factored(&ratio(0, 1)), Err(FormatError::Zero));
    }

    #[test]
    fn errors_name_the_token() {
        assert_eq!(
            parse_factored("2^3*4"),
            Err(ParseError::NotPrime {
                token: "4".into(),
                pos: 4
            })
        );
        assert_eq!(
            parse_factored("2^0"),
            Err(ParseError::ZeroExponent {
                token: "0".into(),
                pos: 2
            })
        );
        assert_eq!(
            parse_factored("5*3"),
            Err(ParseError::Order {
                token: "3".into(),
                pos: 2
            })
        );
        assert_eq!(
            parse_factored("2 *3"),
            Err(ParseError::Unexpected {
                token: " ".into(),
                pos: 1
            })
        );
        assert_eq!(
            parse_factored("(3*5)/(2^3*3)"),
            Err(ParseError::Shared {
                token: "3".into(),
                pos: 11
            })
        );
        assert!(matches!(
            parse_factored("-(2*3)"),
            Err(ParseError::Eof { .. })
        ));
        assert!(matches!(
            parse_factored("2/3"),
            Err(ParseError::Unexpected { .. })
        ));
        assert_eq!(parse_factored(""), Err(ParseError::Empty));
    }
}
