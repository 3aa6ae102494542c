//! Text grammar shared by polynomials, Lie expressions and rational functions.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'.'] factor)*
//! factor := atom ['^' int]
//! atom   := int ['/' int] | var | '(' poly ')'
//!
//! lie    := ['+'|'-'] lterm (('+'|'-') lterm)*
//! lterm  := [int ['/' int] ['*']] latom (('.'|'*') term)*
//! latom  := '[' lie (',' lie)+ ']' | var | '(' lie ')'
//!
//! ratfun := poly ['/' factor+]
//! ```
//!
//! Variables are a lowercase letter followed by optional digits, so `x1x4`
//! reads as `x1*x4`. The symbols `·` and `−` are accepted as `.` and `-`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::metabelian::LieExpr;
use crate::poly::{Poly, Rational, Var};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Dot,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().map(|&(_, c)| c).collect();
            out.push((Tok::Num(digits.parse().expect("ascii digits")), off));
            i = j;
            continue;
        }
        if c.is_ascii_lowercase() {
            let mut j = i + 1;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let index = if j > i + 1 {
                let digits: String = chars[i + 1..j].iter().map(|&(_, c)| c).collect();
                digits.parse::<u32>().map_err(|_| Error::Parse {
                    offset: off,
                    message: format!("variable index too large: {digits}"),
                })?
            } else {
                0
            };
            out.push((Tok::Ident(Var::new(c, index)), off));
            i = j;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '.' | '·' => Tok::Dot,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            other => {
                return Err(Error::Parse {
                    offset: off,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        out.push((tok, off));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(s: &str) -> Result<Parser> {
        Ok(Parser {
            toks: tokenize(s)?,
            pos: 0,
            end: s.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |&(_, o)| o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!("expected {t:?}"))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                n.to_u32()
                    .map_or_else(|| self.err("exponent too large"), Ok)
            }
            _ => self.err("expected an integer"),
        }
    }

    /// `int ['/' int]`, with the slash only consumed when an integer follows.
    fn number(&mut self) -> Result<Rational> {
        let n = match self.peek().cloned() {
            Some(Tok::Num(n)) => n,
            _ => return self.err("expected a number"),
        };
        self.pos += 1;
        if self.peek() == Some(&Tok::Slash) {
            if let Some(Tok::Num(d)) = self.peek_at(1).cloned() {
                if d.is_zero() {
                    self.pos += 1;
                    return self.err("zero denominator");
                }
                self.pos += 2;
                return Ok(Rational::new(n, d));
            }
        }
        Ok(Rational::from_integer(n))
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen)
        )
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        loop {
            let t = self.term()?;
            if negate {
                acc -= t;
            } else {
                acc += t;
            }
            if self.eat(&Tok::Plus) {
                negate = false;
            } else if self.eat(&Tok::Minus) {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if matches!(self.peek(), Some(Tok::Star) | Some(Tok::Dot)) {
                self.pos += 1;
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let e = self.small_int()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(_)) => Ok(Poly::constant(self.number()?)),
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Poly::var(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let p = self.poly()?;
                self.expect(&Tok::RParen)?;
                Ok(p)
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }

    fn lie(&mut self) -> Result<LieExpr> {
        let mut terms = Vec::new();
        let mut negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        loop {
            let t = self.lie_term()?;
            terms.push(if negate {
                LieExpr::Scale(Rational::from_integer((-1).into()), Box::new(t))
            } else {
                t
            });
            if self.eat(&Tok::Plus) {
                negate = false;
            } else if self.eat(&Tok::Minus) {
                negate = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            LieExpr::Sum(terms)
        })
    }

    fn lie_term(&mut self) -> Result<LieExpr> {
        let coeff = if matches!(self.peek(), Some(Tok::Num(_))) {
            let c = self.number()?;
            self.eat(&Tok::Star);
            if !matches!(
                self.peek(),
                Some(Tok::LBracket) | Some(Tok::Ident(_)) | Some(Tok::LParen)
            ) {
                return if c.is_zero() {
                    Ok(LieExpr::Sum(Vec::new()))
                } else {
                    self.err("a nonzero scalar is not a Lie element")
                };
            }
            Some(c)
        } else {
            None
        };
        let mut e = self.lie_atom()?;
        while matches!(self.peek(), Some(Tok::Dot) | Some(Tok::Star)) {
            self.pos += 1;
            let p = self.term()?;
            e = LieExpr::Act(Box::new(e), p);
        }
        Ok(match coeff {
            Some(c) => LieExpr::Scale(c, Box::new(e)),
            None => e,
        })
    }

    fn lie_atom(&mut self) -> Result<LieExpr> {
        match self.peek().cloned() {
            Some(Tok::LBracket) => {
                self.pos += 1;
                let mut acc = self.lie()?;
                let mut count = 1;
                while self.eat(&Tok::Comma) {
                    let next = self.lie()?;
                    acc = LieExpr::Bracket(Box::new(acc), Box::new(next));
                    count += 1;
                }
                if count < 2 {
                    return self.err("a commutator needs at least two entries");
                }
                self.expect(&Tok::RBracket)?;
                Ok(acc)
            }
            Some(Tok::Ident(v)) => {
                if v.letter() != 'x' || v.index() == 0 {
                    return self.err(format!("Lie generators are x1, x2, ...; got {v}"));
                }
                self.pos += 1;
                Ok(LieExpr::Gen(v.index()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.lie()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            _ => self.err("expected '[', a generator or '('"),
        }
    }
}

pub fn parse_poly(s: &str) -> Result<Poly> {
    let mut p = Parser::new(s)?;
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let out = p.poly()?;
    p.finish()?;
    Ok(out)
}

pub fn parse_lie(s: &str) -> Result<LieExpr> {
    let mut p = Parser::new(s)?;
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let out = p.lie()?;
    p.finish()?;
    Ok(out)
}

/// Parses `numer / (d1)(d2)^k...` into the numerator and the list of
/// denominator factors (repeated according to their powers).
pub fn parse_rational_function(s: &str) -> Result<(Poly, Vec<Poly>)> {
    let mut p = Parser::new(s)?;
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let numer = p.poly()?;
    let mut denoms = Vec::new();
    if p.eat(&Tok::Slash) {
        loop {
            let base = p.atom()?;
            let e = if p.eat(&Tok::Caret) {
                p.small_int()?
            } else {
                1
            };
            for _ in 0..e {
                denoms.push(base.clone());
            }
            p.eat(&Tok::Star);
            if !p.starts_factor() {
                break;
            }
        }
    }
    p.finish()?;
    Ok((numer, denoms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn implicit_products_and_rationals() {
        let a = parse_poly("2x1x4 - 3/2 x2^2").unwrap();
        let b = parse_poly("2*x1*x4 - 3/2*x2^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(
            parse_poly("(x1+x2)^2").unwrap(),
            parse_poly("x1^2 + 2*x1*x2 + x2^2").unwrap()
        );
        assert_eq!(parse_poly("−x1·x2").unwrap(), parse_poly("-x1*x2").unwrap());
    }

    #[test]
    fn errors_report_offsets() {
        assert!(matches!(
            parse_poly("x1 + "),
            Err(Error::Parse { offset: 5, .. })
        ));
        assert!(matches!(
            parse_poly("x1 ? x2"),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("x1)").is_err());
    }

    #[test]
    fn rational_functions() {
        let (n, d) = parse_rational_function("z^2/(1-z^4)").unwrap();
        assert_eq!(n, parse_poly("z^2").unwrap());
        assert_eq!(d, vec![parse_poly("1 - z^4").unwrap()]);
        let (n, d) = parse_rational_function("(6*z^2 - z^6)/(1-z^2)^3").unwrap();
        assert_eq!(n, parse_poly("6z^2 - z^6").unwrap());
        assert_eq!(d.len(), 3);
        let (_, d) = parse_rational_function("z^5/(1-z^2)(1-z^3)").unwrap();
        assert_eq!(d.len(), 2);
        let (n, d) = parse_rational_function("0").unwrap();
        assert!(n.is_zero() && d.is_empty());
        let (n, _) = parse_rational_function("3/2/(1-z)").unwrap();
        assert_eq!(n, Poly::constant(crate::poly::rat_frac(3, 2)));
    }

    #[test]
    fn lie_shapes() {
        let e = parse_lie("2[x4,x2,x2] - [x4,x1].x3*x5").unwrap();
        match e {
            LieExpr::Sum(ts) => {
                assert_eq!(ts.len(), 2);
                match &ts[0] {
                    LieExpr::Scale(c, inner) => {
                        assert_eq!(*c, rat(2));
                        assert!(matches!(**inner, LieExpr::Bracket(_, _)));
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_lie("[x1]").is_err());
        assert!(parse_lie("[y1,x2]").is_err());
        assert_eq!(parse_lie("0").unwrap(), LieExpr::Sum(Vec::new()));
        assert!(parse_lie("3").is_err());
    }
}
