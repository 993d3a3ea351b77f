//! Tokens and polynomial expressions shared by [`PolyRing::parse`] and the
//! session-file parser.
//!
//! Precedence, tightest first: `^` (integer exponent only), unary `-`,
//! `*` and `/` (division by a nonzero constant), then binary `+` and `-`.
//!
//! [`PolyRing::parse`]: super::PolyRing::parse

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

use super::poly::{Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Eq,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Int(n) => write!(f, "integer `{n}`"),
            TokenKind::Plus => write!(f, "`+`"),
            TokenKind::Minus => write!(f, "`-`"),
            TokenKind::Star => write!(f, "`*`"),
            TokenKind::Slash => write!(f, "`/`"),
            TokenKind::Caret => write!(f, "`^`"),
            TokenKind::LParen => write!(f, "`(`"),
            TokenKind::RParen => write!(f, "`)`"),
            TokenKind::LBracket => write!(f, "`[`"),
            TokenKind::RBracket => write!(f, "`]`"),
            TokenKind::LBrace => write!(f, "`{{`"),
            TokenKind::RBrace => write!(f, "`}}`"),
            TokenKind::Comma => write!(f, "`,`"),
            TokenKind::Semi => write!(f, "`;`"),
            TokenKind::Eq => write!(f, "`=`"),
            TokenKind::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

/// Lexical or syntax error with the set of tokens that would have been accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
    pub lexical: bool,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lexical {
            write!(f, "unexpected character {}", self.found)
        } else {
            write!(f, "expected one of {}, found {}", self.expected.join(", "), self.found)
        }
    }
}

impl From<SyntaxError> for Error {
    fn from(e: SyntaxError) -> Error {
        Error::Parse {
            line: e.line,
            column: e.column,
            message: e.to_string(),
        }
    }
}

/// Split `text` into tokens. `#` starts a comment running to end of line.
pub fn tokenize(text: &str) -> std::result::Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let kind = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token {
                kind: TokenKind::Ident(s),
                line: start_line,
                column: start_col,
            });
            continue;
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
                col += 1;
            }
            out.push(Token {
                kind: TokenKind::Int(s.parse().expect("digits")),
                line: start_line,
                column: start_col,
            });
            continue;
        } else {
            match c {
                '+' => TokenKind::Plus,
                '-' => TokenKind::Minus,
                '*' => TokenKind::Star,
                '/' => TokenKind::Slash,
                '^' => TokenKind::Caret,
                '(' => TokenKind::LParen,
                ')' => TokenKind::RParen,
                '[' => TokenKind::LBracket,
                ']' => TokenKind::RBracket,
                '{' => TokenKind::LBrace,
                '}' => TokenKind::RBrace,
                ',' => TokenKind::Comma,
                ';' => TokenKind::Semi,
                '=' => TokenKind::Eq,
                other => {
                    return Err(SyntaxError {
                        line,
                        column: col,
                        expected: Vec::new(),
                        found: format!("{other:?}"),
                        lexical: true,
                    })
                }
            }
        };
        out.push(Token {
            kind,
            line: start_line,
            column: start_col,
        });
        i += 1;
        col += 1;
    }
    out.push(Token {
        kind: TokenKind::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Unevaluated polynomial expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Var(_) => 5,
        }
    }

    /// Every identifier referenced, in order of first appearance.
    pub fn identifiers(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_idents(&mut out);
        out
    }

    fn collect_idents(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone())
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_idents(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_idents(out);
                b.collect_idents(out);
            }
        }
    }

    pub fn evaluate(&self, ring: &Ring) -> Result<Polynomial> {
        Ok(match self {
            Expr::Int(n) => ring.constant(ring.field().from_bigint(n)),
            Expr::Var(v) => ring
                .var(v)
                .map_err(|_| Error::Structural(format!("undeclared identifier `{v}`")))?,
            Expr::Neg(a) => a.evaluate(ring)?.neg(),
            Expr::Add(a, b) => a.evaluate(ring)?.add(&b.evaluate(ring)?),
            Expr::Sub(a, b) => a.evaluate(ring)?.sub(&b.evaluate(ring)?),
            Expr::Mul(a, b) => a.evaluate(ring)?.mul(&b.evaluate(ring)?),
            Expr::Div(a, b) => {
                let d = b.evaluate(ring)?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Structural(
                        "division is only allowed by a nonzero constant".into(),
                    ));
                }
                let inv = ring.field().inv(&d.constant_term()).expect("nonzero");
                a.evaluate(ring)?.scale(&inv)
            }
            Expr::Pow(a, e) => a.evaluate(ring)?.pow(*e),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(e: &Expr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(a, 3, f)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                wrap(a, 1, f)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                wrap(b, 2, f)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                wrap(b, 3, f)
            }
            Expr::Pow(a, e) => {
                wrap(a, 5, f)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Recursive-descent cursor over a token slice.
pub struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(tokens: &'a [Token]) -> Self {
        Cursor { tokens, pos: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    pub fn peek_at(&self, offset: usize) -> &Token {
        &self.tokens[(self.pos + offset).min(self.tokens.len() - 1)]
    }

    pub fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.pos.min(self.tokens.len() - 1)];
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    /// Current position, for backtracking with [`Cursor::seek`].
    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn seek(&mut self, pos: usize) {
        self.pos = pos.min(self.tokens.len() - 1);
    }

    pub fn at(&self, kind: &TokenKind) -> bool {
        &self.peek().kind == kind
    }

    pub fn error(&self, expected: &[&str]) -> SyntaxError {
        let t = self.peek();
        SyntaxError {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.kind.to_string(),
            lexical: false,
        }
    }

    pub fn expect(&mut self, kind: TokenKind, label: &str) -> std::result::Result<Token, SyntaxError> {
        if self.peek().kind == kind {
            Ok(self.advance().clone())
        } else {
            Err(self.error(&[label]))
        }
    }

    pub fn ident(&mut self) -> std::result::Result<(String, Token), SyntaxError> {
        match &self.peek().kind {
            TokenKind::Ident(s) => {
                let s = s.clone();
                let t = self.advance().clone();
                Ok((s, t))
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    pub fn expr(&mut self) -> std::result::Result<Expr, SyntaxError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.advance();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
                }
                TokenKind::Minus => {
                    self.advance();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> std::result::Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().kind {
                TokenKind::Star => {
                    self.advance();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                TokenKind::Slash => {
                    self.advance();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Expr, SyntaxError> {
        if self.at(&TokenKind::Minus) {
            self.advance();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Expr, SyntaxError> {
        let base = self.primary()?;
        if self.at(&TokenKind::Caret) {
            self.advance();
            match &self.peek().kind {
                TokenKind::Int(n) => {
                    let e = n.to_u32().filter(|&e| e <= u16::MAX as u32);
                    match e {
                        Some(e) => {
                            self.advance();
                            Ok(Expr::Pow(Box::new(base), e))
                        }
                        None => Err(self.error(&["exponent below 65536"])),
                    }
                }
                _ => Err(self.error(&["integer exponent"])),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> std::result::Result<Expr, SyntaxError> {
        match &self.peek().kind {
            TokenKind::Int(n) => {
                let n = n.clone();
                self.advance();
                Ok(Expr::Int(n))
            }
            TokenKind::Ident(s) => {
                let s = s.clone();
                self.advance();
                Ok(Expr::Var(s))
            }
            TokenKind::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.error(&["integer", "identifier", "`(`", "`-`"])),
        }
    }
}

/// Parse a complete expression.
pub fn parse_expr(text: &str) -> std::result::Result<Expr, SyntaxError> {
    let tokens = tokenize(text)?;
    let mut c = Cursor::new(&tokens);
    let e = c.expr()?;
    if !c.at(&TokenKind::Eof) {
        return Err(c.error(&["operator", "end of input"]));
    }
    Ok(e)
}
