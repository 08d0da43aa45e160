//! Hand-rolled lexer and recursive-descent parser for the expression
//! grammar:
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*"? factor)*
//! factor := atom ("^" NAT)?
//! atom   := VAR | RATIONAL | "(" expr ")" | "[" expr "," expr "]"
//!         | "f" "(" NAT "," NAT "," NAT ")" | "sigma" DIGIT | "nu" NAT
//!         | "e" DIGIT
//! ```
//!
//! Whitespace is insignificant and `*` between factors is optional, so
//! `x2 x1` and `x2*x1` parse identically.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use grassfree::poly::Rational;

use crate::ast::Expr;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Nat(String),
    Ident(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Nat(s) => format!("number '{s}'"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (tok_line, tok_column) = (line, column);
        let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if ch.is_whitespace() {
            advance(&mut chars);
            continue;
        }
        let tok = match ch {
            '+' => {
                advance(&mut chars);
                Tok::Plus
            }
            '-' => {
                advance(&mut chars);
                Tok::Minus
            }
            '*' => {
                advance(&mut chars);
                Tok::Star
            }
            '^' => {
                advance(&mut chars);
                Tok::Caret
            }
            '/' => {
                advance(&mut chars);
                Tok::Slash
            }
            '(' => {
                advance(&mut chars);
                Tok::LParen
            }
            ')' => {
                advance(&mut chars);
                Tok::RParen
            }
            '[' => {
                advance(&mut chars);
                Tok::LBracket
            }
            ']' => {
                advance(&mut chars);
                Tok::RBracket
            }
            ',' => {
                advance(&mut chars);
                Tok::Comma
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while matches!(chars.peek(), Some(c) if c.is_ascii_digit()) {
                    digits.push(advance(&mut chars));
                }
                Tok::Nat(digits)
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while matches!(chars.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    name.push(advance(&mut chars));
                }
                Tok::Ident(name)
            }
            c => {
                return Err(ParseError {
                    line: tok_line,
                    column: tok_column,
                    message: format!("unexpected character '{c}'"),
                    expected: vec![],
                })
            }
        };
        out.push(Spanned { tok, line: tok_line, column: tok_column });
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.at]
    }

    fn next(&mut self) -> Spanned {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, at: &Spanned, message: String, expected: Vec<&'static str>) -> ParseError {
        ParseError { line: at.line, column: at.column, message, expected }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(())
        } else {
            Err(self.error(&t, format!("found {}", t.tok.describe()), vec![expected]))
        }
    }

    fn expect_nat(&mut self, what: &'static str) -> Result<u32, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Nat(s) => s.parse::<u32>().map_err(|_| {
                self.error(&t, format!("number '{s}' is too large"), vec![what])
            }),
            other => Err(self.error(&t, format!("found {}", other.describe()), vec![what])),
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = if self.peek().tok == Tok::Minus {
            self.next();
            Expr::Neg(Box::new(self.parse_term()?))
        } else {
            self.parse_term()?
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = Expr::Add(Box::new(acc), Box::new(self.parse_term()?));
                }
                Tok::Minus => {
                    self.next();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.parse_term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(tok: &Tok) -> bool {
        matches!(tok, Tok::Nat(_) | Tok::Ident(_) | Tok::LParen | Tok::LBracket)
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            if self.peek().tok == Tok::Star {
                self.next();
                acc = Expr::Mul(Box::new(acc), Box::new(self.parse_factor()?));
            } else if Self::starts_factor(&self.peek().tok) {
                acc = Expr::Mul(Box::new(acc), Box::new(self.parse_factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Expr, ParseError> {
        let atom = self.parse_atom()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let exponent = self.expect_nat("a nonnegative integer exponent")?;
            Ok(Expr::Pow(Box::new(atom), exponent))
        } else {
            Ok(atom)
        }
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Nat(digits) => {
                let numerator: BigInt = digits.parse().expect("digit string");
                if self.peek().tok == Tok::Slash {
                    self.next();
                    let dt = self.next();
                    let Tok::Nat(den) = &dt.tok else {
                        return Err(self.error(
                            &dt,
                            format!("found {}", dt.tok.describe()),
                            vec!["a denominator"],
                        ));
                    };
                    let denominator: BigInt = den.parse().expect("digit string");
                    if denominator.is_zero() {
                        return Err(self.error(&dt, "denominator must be nonzero".into(), vec![]));
                    }
                    Ok(Expr::Rat(Rational::new(numerator, denominator)))
                } else {
                    Ok(Expr::Rat(Rational::from_integer(numerator)))
                }
            }
            Tok::LParen => {
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::LBracket => {
                let left = self.parse_expr()?;
                self.expect(Tok::Comma, "','")?;
                let right = self.parse_expr()?;
                self.expect(Tok::RBracket, "']'")?;
                Ok(Expr::Commutator(Box::new(left), Box::new(right)))
            }
            Tok::Ident(name) => self.parse_name(&t, name),
            other => Err(self.error(
                &t,
                format!("found {}", other.describe()),
                vec!["a variable", "a number", "'('", "'['", "a named symbol"],
            )),
        }
    }

    fn parse_name(&mut self, at: &Spanned, name: &str) -> Result<Expr, ParseError> {
        if name == "f" {
            self.expect(Tok::LParen, "'('")?;
            let a = self.expect_nat("a nonnegative integer")?;
            self.expect(Tok::Comma, "','")?;
            let b = self.expect_nat("a nonnegative integer")?;
            self.expect(Tok::Comma, "','")?;
            let c = self.expect_nat("a nonnegative integer")?;
            self.expect(Tok::RParen, "')'")?;
            return Ok(Expr::F(a, b, c));
        }
        if let Some(rest) = name.strip_prefix("sigma") {
            if let Ok(k) = rest.parse::<usize>() {
                if (1..=3).contains(&k) {
                    return Ok(Expr::Sigma(k));
                }
            }
            return Err(self.error(
                at,
                format!("unknown identifier '{name}'"),
                vec!["sigma1", "sigma2", "sigma3"],
            ));
        }
        if let Some(rest) = name.strip_prefix("nu") {
            if let Ok(k) = rest.parse::<u32>() {
                if k >= 1 {
                    return Ok(Expr::Nu(k));
                }
            }
            return Err(self.error(
                at,
                format!("unknown identifier '{name}'"),
                vec!["nu1", "nu2", "..."],
            ));
        }
        if let Some(rest) = name.strip_prefix('e') {
            if let Ok(k) = rest.parse::<usize>() {
                if (1..=2).contains(&k) {
                    return Ok(Expr::Elem2(k));
                }
            }
        }
        if let Some(rest) = name.strip_prefix('x') {
            if rest.len() == 1 {
                if let Ok(k) = rest.parse::<usize>() {
                    if k >= 1 {
                        return Ok(Expr::Var(k - 1));
                    }
                }
            }
            return Err(self.error(
                at,
                format!("unknown identifier '{name}'"),
                vec!["x1", "x2", "x3", "x4"],
            ));
        }
        Err(self.error(
            at,
            format!("unknown identifier '{name}'"),
            vec!["x1..x4", "f(a,b,c)", "sigma1..sigma3", "nu1..", "e1", "e2"],
        ))
    }
}

/// Parses a complete expression; trailing input is an error.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, at: 0 };
    let expr = parser.parse_expr()?;
    let t = parser.next();
    if t.tok == Tok::Eof {
        Ok(expr)
    } else {
        Err(ParseError {
            line: t.line,
            column: t.column,
            message: format!("found {} after a complete expression", t.tok.describe()),
            expected: vec!["'+'", "'-'", "'*'", "end of input"],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_commutator_difference() {
        let lhs = parse("x2*x1 - x1*x2").unwrap();
        let rhs = Expr::Sub(
            Box::new(Expr::Mul(Box::new(Expr::Var(1)), Box::new(Expr::Var(0)))),
            Box::new(Expr::Mul(Box::new(Expr::Var(0)), Box::new(Expr::Var(1)))),
        );
        assert_eq!(lhs, rhs);
        // implicit multiplication parses identically
        assert_eq!(parse("x2 x1 - x1 x2").unwrap(), rhs);
    }

    #[test]
    fn parses_commutator_power() {
        let e = parse("[x2,x1]^2").unwrap();
        assert_eq!(
            e,
            Expr::Pow(
                Box::new(Expr::Commutator(Box::new(Expr::Var(1)), Box::new(Expr::Var(0)))),
                2
            )
        );
    }

    #[test]
    fn parses_named_symbols() {
        assert_eq!(parse("f(2,4,5)").unwrap(), Expr::F(2, 4, 5));
        assert_eq!(parse("sigma2").unwrap(), Expr::Sigma(2));
        assert_eq!(parse("nu3").unwrap(), Expr::Nu(3));
        assert_eq!(parse("e1").unwrap(), Expr::Elem2(1));
        assert_eq!(parse("3/2").unwrap(), Expr::Rat(grassfree::poly::ratio(3, 2)));
    }

    #[test]
    fn reports_position_and_expectations() {
        let err = parse("x1 + ").unwrap_err();
        assert_eq!((err.line, err.column), (1, 6));
        assert!(!err.expected.is_empty());
        let err = parse("f(1,2").unwrap_err();
        assert!(err.expected.contains(&"','"));
        let err = parse("x1 +\n* x2").unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
    }

    #[test]
    fn rejects_unknown_identifiers() {
        let err = parse("sigma9").unwrap_err();
        assert!(err.message.contains("unknown identifier"));
        let err = parse("foo(1)").unwrap_err();
        assert!(err.message.contains("unknown identifier"));
        let err = parse("x12").unwrap_err();
        assert!(err.expected.contains(&"x1"));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(parse("1/0").is_err());
    }
}
