//! The expression language:
//!
//! ```text
//! expr    := term ('+' term)*
//! term    := factor ('*' factor)*
//! factor  := INT | '[' INT (',' INT)* ']' | 'P' '(' INT ')' | IDENT
//!          | FUNC '(' expr (',' expr)* ')' | '(' expr ')'
//! FUNC    := M | NC | twist | sym | alt | schur | hom | zeta | class
//! ```
//!
//! `*` is the product of varieties or the tensor product of motives, `+`
//! the disjoint union or the direct sum.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Func {
    M,
    NC,
    Twist,
    Sym,
    Alt,
    Schur,
    Hom,
    Zeta,
    Class,
}

impl Func {
    pub const ALL: [Func; 9] =
        [Func::M, Func::NC, Func::Twist, Func::Sym, Func::Alt, Func::Schur, Func::Hom, Func::Zeta, Func::Class];

    pub fn name(self) -> &'static str {
        match self {
            Func::M => "M",
            Func::NC => "NC",
            Func::Twist => "twist",
            Func::Sym => "sym",
            Func::Alt => "alt",
            Func::Schur => "schur",
            Func::Hom => "hom",
            Func::Zeta => "zeta",
            Func::Class => "class",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(i64),
    Partition(Vec<u32>),
    Projective(u32),
    Ident(String),
    Product(Box<Expr>, Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(i64),
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Star,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let simple = match c {
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '[' => Some(Token::LBracket),
            ']' => Some(Token::RBracket),
            ',' => Some(Token::Comma),
            '+' => Some(Token::Plus),
            '*' => Some(Token::Star),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((start, t));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| ParseError { position: start, message: format!("integer `{s}` out of range") })?;
            out.push((start, Token::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '^') {
                i += 1;
            }
            out.push((start, Token::Ident(chars[start..i].iter().collect())));
        } else {
            return Err(ParseError { position: start, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.position(), message: message.into() })
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Sum(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(&Token::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected an integer"),
        }
    }

    fn natural(&mut self, what: &str) -> Result<u32, ParseError> {
        let at = self.position();
        let n = self.int()?;
        u32::try_from(n).map_err(|_| ParseError { position: at, message: format!("{what} must be a non-negative integer") })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Token::LBracket) => {
                self.pos += 1;
                let mut parts = vec![self.natural("a partition part")?];
                while self.peek() == Some(&Token::Comma) {
                    self.pos += 1;
                    parts.push(self.natural("a partition part")?);
                }
                self.expect(Token::RBracket, "`]`")?;
                Ok(Expr::Partition(parts))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                let at = self.position();
                self.pos += 1;
                let called = self.peek() == Some(&Token::LParen);
                if name == "P" && called {
                    self.pos += 1;
                    let n = self.natural("the dimension of P(n)")?;
                    self.expect(Token::RParen, "`)`")?;
                    return Ok(Expr::Projective(n));
                }
                match (Func::from_name(&name), called) {
                    (Some(f), true) => {
                        self.pos += 1;
                        let mut args = vec![self.expr()?];
                        while self.peek() == Some(&Token::Comma) {
                            self.pos += 1;
                            args.push(self.expr()?);
                        }
                        self.expect(Token::RParen, "`,` or `)`")?;
                        Ok(Expr::Call(f, args))
                    }
                    (Some(f), false) => {
                        Err(ParseError { position: at, message: format!("`{}` needs arguments: {}(...)", f.name(), f.name()) })
                    }
                    (None, true) if name.starts_with("S^") => Err(ParseError {
                        position: at,
                        message: format!(
                            "`{name}(...)` names a ledger class, not a function; use `sym(n, ...)` on motives \
                             or `motivecalc measure eval '{name}(...)'`"
                        ),
                    }),
                    (None, true) => Err(ParseError { position: at, message: format!("unknown function `{name}`") }),
                    (None, false) => Ok(Expr::Ident(name)),
                }
            }
            Some(_) => self.error("expected an expression"),
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, end: text.chars().count() };
    let e = p.expr()?;
    if p.pos < p.tokens.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_expression(s)
    }
}

/// Canonical form: minimal parentheses for the left-associative grammar.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Partition(parts) => {
                let s: Vec<String> = parts.iter().map(u32::to_string).collect();
                write!(f, "[{}]", s.join(","))
            }
            Expr::Projective(n) => write!(f, "P({n})"),
            Expr::Ident(s) => f.write_str(s),
            Expr::Sum(a, b) => match **b {
                Expr::Sum(..) => write!(f, "{a} + ({b})"),
                _ => write!(f, "{a} + {b}"),
            },
            Expr::Product(a, b) => {
                match **a {
                    Expr::Sum(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                f.write_str("*")?;
                match **b {
                    Expr::Sum(..) | Expr::Product(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            Expr::Call(func, args) => {
                let s: Vec<String> = args.iter().map(ToString::to_string).collect();
                write!(f, "{}({})", func.name(), s.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(f: Func, args: Vec<Expr>) -> Expr {
        Expr::Call(f, args)
    }

    #[test]
    fn parses_the_basic_forms() {
        assert_eq!(parse_expression("M(P(1))").unwrap(), call(Func::M, vec![Expr::Projective(1)]));
        assert_eq!(
            parse_expression("NC(P(1)*P(1))").unwrap(),
            call(Func::NC, vec![Expr::Product(Box::new(Expr::Projective(1)), Box::new(Expr::Projective(1)))])
        );
        assert_eq!(
            parse_expression("alt(3, M(P(1)))").unwrap(),
            call(Func::Alt, vec![Expr::Int(3), call(Func::M, vec![Expr::Projective(1)])])
        );
        assert_eq!(
            parse_expression("schur([2,1], NC(pt))").unwrap(),
            call(Func::Schur, vec![Expr::Partition(vec![2, 1]), call(Func::NC, vec![Expr::Ident("pt".into())])])
        );
        assert_eq!(parse_expression("twist(-2, M(pt))").unwrap().to_string(), "twist(-2, M(pt))");
    }

    #[test]
    fn product_binds_tighter_than_sum() {
        let e = parse_expression("pt + P(1) * P(2)").unwrap();
        assert!(matches!(&e, Expr::Sum(_, b) if matches!(**b, Expr::Product(..))));
        assert_eq!(e.to_string(), "pt + P(1)*P(2)");
        let e = parse_expression("(pt + P(1)) * P(2)").unwrap();
        assert_eq!(e.to_string(), "(pt + P(1))*P(2)");
        assert_eq!(parse_expression("a + (b + c)").unwrap().to_string(), "a + (b + c)");
        assert_eq!(parse_expression("(a + b) + c").unwrap().to_string(), "a + b + c");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expression("M(P(1)").unwrap_err();
        assert_eq!(e.position, 6);
        assert_eq!(parse_expression("foo(1)").unwrap_err().message, "unknown function `foo`");
        assert_eq!(parse_expression("M(P(1)) $").unwrap_err().position, 8);
        assert_eq!(parse_expression("P(-1)").unwrap_err().position, 2);
        assert!(parse_expression("sym").is_err());
        assert!(parse_expression("").is_err());
        assert!(parse_expression("M(P(1)) M(pt)").is_err());
    }
}
