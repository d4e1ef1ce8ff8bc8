use num_bigint::BigInt;

use super::{BiPoly, Coef, Rat, QT};
use crate::Error;

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Op(char),
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if matches!(c, 'x' | 'y' | 't' | 'u' | 'v') {
            out.push((i, Tok::Var(c)));
            i += 1;
            if i < chars.len() && chars[i].is_ascii_alphanumeric() {
                return Err(Error::Parse { pos: i, msg: "implicit multiplication is not allowed".into() });
            }
        } else if matches!(c, '+' | '-' | '*' | '/' | '^') {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else if c == '(' {
            out.push((i, Tok::LParen));
            i += 1;
        } else if c == ')' {
            out.push((i, Tok::RParen));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character '{}'", c) });
        }
    }
    Ok(out)
}

struct Parser<'a, C: Coef> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    _c: std::marker::PhantomData<C>,
}

impl<'a, C: Coef> Parser<'a, C> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T, Error> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<BiPoly<C>, Error> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly<C>, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let at = self.here();
                    let rhs = self.unary()?;
                    let d = constant_of(&rhs).ok_or(Error::Parse {
                        pos: at,
                        msg: "division is only allowed by a nonzero rational constant".into(),
                    })?;
                    if d.is_zero() {
                        return Err(Error::Parse { pos: at, msg: "division by zero".into() });
                    }
                    acc = acc.scale(&(Rat::from_integer(1.into()) / d));
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    return self.err("implicit multiplication is not allowed; use '*'");
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BiPoly<C>, Error> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly<C>, Error> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Num(n)) => n.clone(),
                _ => return self.err("exponent must be a nonnegative integer literal"),
            };
            let e: u32 = match u32::try_from(e) {
                Ok(v) if v <= MAX_EXPONENT => v,
                _ => return self.err("exponent too large"),
            };
            self.pos += 1;
            if let Some(Tok::Op('^')) = self.peek() {
                return self.err("chained exponents are ambiguous; use parentheses");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiPoly<C>, Error> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(BiPoly::constant(C::from_rat(Rat::from_integer(n))))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                match v {
                    'x' | 'u' => Ok(BiPoly::x()),
                    'y' | 'v' => Ok(BiPoly::y()),
                    't' => match C::param() {
                        Some(t) => Ok(BiPoly::constant(t)),
                        None => Err(Error::Parse { pos: at, msg: "parameter t is not allowed over Q".into() }),
                    },
                    _ => unreachable!(),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn constant_of<C: Coef>(p: &BiPoly<C>) -> Option<Rat> {
    if p.is_zero() {
        return Some(Rat::from_integer(0.into()));
    }
    if p.len() == 1 {
        let c = p.terms().get(&(0, 0))?;
        return c.as_rat();
    }
    None
}

fn parse_generic<C: Coef>(text: &str) -> Result<BiPoly<C>, Error> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser::<C> { toks: &toks, pos: 0, end: text.chars().count(), _c: Default::default() };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Parse an expression over Q in the variables x, y (u, v are aliases).
pub fn parse_bipoly(text: &str) -> Result<BiPoly<Rat>, Error> {
    parse_generic::<Rat>(text)
}

/// Parse an expression whose coefficients may involve the parameter t.
pub fn parse_bipoly_qt(text: &str) -> Result<BiPoly<QT>, Error> {
    parse_generic::<QT>(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rint};

    #[test]
    fn example_support_size() {
        let p = parse_bipoly("(y^4+x^3)^6+x^17*y^3").unwrap();
        assert_eq!(p.len(), 8);
        assert_eq!(p.coeff(17, 3), rint(1));
        assert_eq!(p.coeff(9, 12), rint(20));
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse_bipoly("0").unwrap().is_zero());
        assert!(parse_bipoly("(1/2)*x*y - x*y*(1/2)").unwrap().is_zero());
    }

    #[test]
    fn rationals_and_aliases() {
        let p = parse_bipoly("3/2*u^3*v^2 - -v").unwrap();
        assert_eq!(p.coeff(3, 2), rat(3, 2));
        assert_eq!(p.coeff(0, 1), rint(1));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_bipoly("2x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("{:?}", other),
        }
        match parse_bipoly("x + t") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{:?}", other),
        }
        assert!(matches!(parse_bipoly("(x+y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_bipoly("x/y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_bipoly("x^-1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_bipoly("x $ y"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_bipoly(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_bipoly("x (y)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn family_parameter() {
        let p = parse_bipoly_qt("y^2 + x^3 + t*x^2").unwrap();
        assert_eq!(p.t_degree(), 1);
        assert_eq!(p.at_t(&rint(0)), parse_bipoly("y^2+x^3").unwrap());
    }
}
