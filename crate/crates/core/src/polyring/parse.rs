//! Expression grammar shared by polynomial and derivation fixtures.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | x<i> | y<i> | d/dx<i> | d/dy<i> | '(' expr ')'
//! ```

use num_bigint::BigInt;
use thiserror::Error;

use super::VarId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(VarId),
    /// The basis vector field `d/dx<i>` or `d/dy<i>`.
    Partial(VarId),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(VarId),
    Partial(VarId),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn err(column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        let start = j;
        while j < chars.len() && chars[j].is_ascii_digit() {
            j += 1;
        }
        (start, j)
    };
    let var_at = |j: usize| -> Result<(VarId, usize), ParseError> {
        let kind = chars[j];
        let (s, e) = digits(j + 1);
        if s == e {
            return Err(err(j + 1, format!("expected index after '{kind}'")));
        }
        let idx: usize = chars[s..e]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| err(s + 1, "index too large"))?;
        if idx == 0 {
            return Err(err(s + 1, "variable indices are 1-based"));
        }
        let v = if kind == 'x' {
            VarId::x(idx)
        } else {
            VarId::y(idx)
        };
        Ok((v, e))
    };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                out.push((col, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((col, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((col, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((col, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((col, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((col, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let (s, e) = digits(i);
                let text: String = chars[s..e].iter().collect();
                out.push((col, Tok::Int(text.parse().expect("digits"))));
                i = e;
            }
            'x' | 'y' => {
                let (v, e) = var_at(i)?;
                out.push((col, Tok::Var(v)));
                i = e;
            }
            'd' => {
                let rest: String = chars[i..].iter().take(3).collect();
                if rest != "d/d" || i + 3 >= chars.len() || !matches!(chars[i + 3], 'x' | 'y') {
                    return Err(err(col, "expected d/dx<i> or d/dy<i>"));
                }
                let (v, e) = var_at(i + 3)?;
                out.push((col, Tok::Partial(v)));
                i = e;
            }
            other => return Err(err(col, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let col = self.col();
            match self.bump() {
                Some(Tok::Int(k)) => {
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| err(col, "exponent out of range"))?;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => Err(err(col, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Int(k)) => Ok(Expr::Int(k)),
            Some(Tok::Var(v)) => Ok(Expr::Var(v)),
            Some(Tok::Partial(v)) => Ok(Expr::Partial(v)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let col = self.col();
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(err(col, "expected ')'")),
                }
            }
            Some(t) => Err(err(col, format!("unexpected token {t:?}"))),
            None => Err(err(col, "unexpected end of input")),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: src.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_precedence() {
        let e = parse_expr("x1*y2 - x2^2").unwrap();
        match e {
            Expr::Sub(a, b) => {
                assert!(matches!(*a, Expr::Mul(_, _)));
                assert!(matches!(*b, Expr::Pow(_, 2)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parses_partials() {
        let e = parse_expr("x1 * d/dy3").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::Var(VarId::x(1))),
                Box::new(Expr::Partial(VarId::y(3)))
            )
        );
    }

    #[test]
    fn reports_columns() {
        let e = parse_expr("x1 + ?").unwrap_err();
        assert_eq!(e.column, 6);
        let e = parse_expr("(x1 + y1").unwrap_err();
        assert_eq!(e.column, 9);
        assert!(parse_expr("x0").is_err());
        assert!(parse_expr("x1 y1").is_err());
    }
}
