//! Session files: a small declarative language of rings, ideals, quotients
//! and tasks.
//!
//! ```text
//! ring R = F7[x, y] order degrevlex;
//! ideal I = (x*y);
//! quotient T = R/I;
//! task spc { Q = (x + y); z = x; }
//! ```
//!
//! Comments start with `#`. Orders are `lex`, `degrevlex` (default) and
//! `elim(k)`. Ideals live in the most recent ring unless followed by
//! `in R`. A quotient may designate base variables with `base (x, ...)`;
//! when its relations present a tower over them the quotient is a tower.

use std::fmt;

use crate::error::{Error, Result};
use crate::polynomial::expr::{tokenize, Cursor, Expr, SyntaxError, TokenKind};
use crate::polynomial::{FieldSpec, TermOrder};

/// Source position. Spans never take part in equality, so a reparsed
/// pretty-print compares equal to the original.
#[derive(Debug, Clone, Copy, Default, Eq)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Span {
    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Ring {
        name: String,
        field: FieldSpec,
        vars: Vec<String>,
        order: TermOrder,
        span: Span,
    },
    Ideal {
        name: String,
        gens: Vec<Expr>,
        ring: Option<String>,
        span: Span,
    },
    Quotient {
        name: String,
        ring: String,
        ideal: String,
        base: Option<Vec<String>>,
        span: Span,
    },
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Ring { name, .. } | Decl::Ideal { name, .. } | Decl::Quotient { name, .. } => name,
        }
    }

    pub fn span(&self) -> Span {
        match self {
            Decl::Ring { span, .. } | Decl::Ideal { span, .. } | Decl::Quotient { span, .. } => *span,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TaskKind {
    Spc,
    Split,
    Koszul,
    Mult,
    Frobenius,
    Hensel,
    Retraction,
    Reduce,
    Length,
    Socle,
    Idempotent,
}

impl TaskKind {
    pub const ALL: [TaskKind; 11] = [
        TaskKind::Spc,
        TaskKind::Split,
        TaskKind::Koszul,
        TaskKind::Mult,
        TaskKind::Frobenius,
        TaskKind::Hensel,
        TaskKind::Retraction,
        TaskKind::Reduce,
        TaskKind::Length,
        TaskKind::Socle,
        TaskKind::Idempotent,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::Spc => "spc",
            TaskKind::Split => "split",
            TaskKind::Koszul => "koszul",
            TaskKind::Mult => "mult",
            TaskKind::Frobenius => "frobenius",
            TaskKind::Hensel => "hensel",
            TaskKind::Retraction => "retraction",
            TaskKind::Reduce => "reduce",
            TaskKind::Length => "length",
            TaskKind::Socle => "socle",
            TaskKind::Idempotent => "idempotent",
        }
    }

    pub fn from_name(s: &str) -> Option<TaskKind> {
        TaskKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// `(required, optional)` keys.
    pub fn keys(&self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            TaskKind::Spc => (&["Q", "z"], &["in", "u"]),
            TaskKind::Koszul => (&["Q", "z"], &["in"]),
            TaskKind::Split => (&["J"], &["in"]),
            TaskKind::Retraction => (&["J", "a"], &["in"]),
            TaskKind::Reduce => (&["J"], &["in", "fresh"]),
            TaskKind::Mult => (&["Q"], &["in", "z", "nmax"]),
            TaskKind::Frobenius => (&["Q", "z", "q"], &["in"]),
            TaskKind::Hensel => (&["f", "y", "factors"], &["in", "N"]),
            TaskKind::Idempotent => (&["e"], &["in", "N"]),
            TaskKind::Length | TaskKind::Socle => (&[], &["in", "of"]),
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Right-hand side of a task assignment: a single expression or a
/// parenthesized list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Expr(Expr),
    List(Vec<Expr>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Expr(e) => write!(f, "{e}"),
            Value::List(items) => write!(f, "({})", join(items)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assign {
    pub key: String,
    pub value: Value,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    pub kind: TaskKind,
    pub assigns: Vec<Assign>,
    pub span: Span,
}

impl Task {
    pub fn get(&self, key: &str) -> Option<&Assign> {
        self.assigns.iter().find(|a| a.key == key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Decl(Decl),
    Task(Task),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SessionFile {
    pub items: Vec<Item>,
}

impl SessionFile {
    pub fn decls(&self) -> impl Iterator<Item = &Decl> {
        self.items.iter().filter_map(|i| match i {
            Item::Decl(d) => Some(d),
            Item::Task(_) => None,
        })
    }

    pub fn tasks(&self) -> impl Iterator<Item = &Task> {
        self.items.iter().filter_map(|i| match i {
            Item::Task(t) => Some(t),
            Item::Decl(_) => None,
        })
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
}

/// Canonical text; parsing it gives back an equal AST.
impl fmt::Display for SessionFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            match item {
                Item::Decl(Decl::Ring {
                    name, field, vars, order, ..
                }) => writeln!(f, "ring {name} = {field}[{}] order {};", vars.join(", "), order.name())?,
                Item::Decl(Decl::Ideal { name, gens, ring, .. }) => {
                    write!(f, "ideal {name} = ({})", join(gens))?;
                    if let Some(r) = ring {
                        write!(f, " in {r}")?;
                    }
                    writeln!(f, ";")?;
                }
                Item::Decl(Decl::Quotient {
                    name, ring, ideal, base, ..
                }) => {
                    write!(f, "quotient {name} = {ring}/{ideal}")?;
                    if let Some(b) = base {
                        write!(f, " base ({})", b.join(", "))?;
                    }
                    writeln!(f, ";")?;
                }
                Item::Task(t) => {
                    writeln!(f, "task {} {{", t.kind)?;
                    for a in &t.assigns {
                        writeln!(f, "    {} = {};", a.key, a.value)?;
                    }
                    writeln!(f, "}}")?;
                }
            }
        }
        Ok(())
    }
}

type PResult<T> = std::result::Result<T, SyntaxError>;

struct Parser<'a> {
    c: Cursor<'a>,
}

impl Parser<'_> {
    fn span(&self) -> Span {
        let t = self.c.peek();
        Span {
            line: t.line,
            column: t.column,
        }
    }

    fn at_keyword(&self, word: &str) -> bool {
        matches!(&self.c.peek().kind, TokenKind::Ident(s) if s == word)
    }

    fn ident_list(&mut self, open: TokenKind, close: TokenKind, close_label: &str) -> PResult<Vec<String>> {
        let open_label = if open == TokenKind::LParen { "`(`" } else { "`[`" };
        self.c.expect(open, open_label)?;
        let mut out = vec![self.c.ident()?.0];
        while self.c.at(&TokenKind::Comma) {
            self.c.advance();
            out.push(self.c.ident()?.0);
        }
        self.c.expect(close, close_label)?;
        Ok(out)
    }

    fn expr_list(&mut self) -> PResult<Vec<Expr>> {
        self.c.expect(TokenKind::LParen, "`(`")?;
        let mut out = Vec::new();
        if self.c.at(&TokenKind::RParen) {
            self.c.advance();
            return Ok(out);
        }
        out.push(self.c.expr()?);
        while self.c.at(&TokenKind::Comma) {
            self.c.advance();
            out.push(self.c.expr()?);
        }
        if !self.c.at(&TokenKind::RParen) {
            return Err(self.c.error(&["`,`", "`)`", "operator"]));
        }
        self.c.advance();
        Ok(out)
    }

    fn session(&mut self) -> PResult<SessionFile> {
        let mut items = Vec::new();
        loop {
            let span = self.span();
            let word = match &self.c.peek().kind {
                TokenKind::Eof => break,
                TokenKind::Ident(s) => s.clone(),
                _ => return Err(self.c.error(&["`ring`", "`ideal`", "`quotient`", "`task`"])),
            };
            let item = match word.as_str() {
                "ring" => Item::Decl(self.ring(span)?),
                "ideal" => Item::Decl(self.ideal(span)?),
                "quotient" => Item::Decl(self.quotient(span)?),
                "task" => Item::Task(self.task(span)?),
                _ => return Err(self.c.error(&["`ring`", "`ideal`", "`quotient`", "`task`"])),
            };
            items.push(item);
        }
        Ok(SessionFile { items })
    }

    fn ring(&mut self, span: Span) -> PResult<Decl> {
        self.c.advance();
        let name = self.c.ident()?.0;
        self.c.expect(TokenKind::Eq, "`=`")?;
        let field_err = self.c.error(&["field `Q` or `F<p>`"]);
        let field = match self.c.ident() {
            Ok((s, _)) if s == "Q" => FieldSpec::Rationals,
            Ok((s, _)) => s
                .strip_prefix('F')
                .and_then(|p| p.parse::<u32>().ok())
                .and_then(|p| FieldSpec::prime(p).ok())
                .ok_or(field_err)?,
            Err(_) => return Err(field_err),
        };
        let vars = self.ident_list(TokenKind::LBracket, TokenKind::RBracket, "`]`")?;
        let mut order = TermOrder::DegRevLex;
        if self.at_keyword("order") {
            self.c.advance();
            let expected = ["`lex`", "`degrevlex`", "`elim`"];
            order = match &self.c.peek().kind {
                TokenKind::Ident(s) if s == "lex" => TermOrder::Lex,
                TokenKind::Ident(s) if s == "degrevlex" => TermOrder::DegRevLex,
                TokenKind::Ident(s) if s == "elim" => {
                    self.c.advance();
                    self.c.expect(TokenKind::LParen, "`(`")?;
                    let k = match &self.c.peek().kind {
                        TokenKind::Int(n) => usize::try_from(n.clone()).map_err(|_| self.c.error(&["small integer"]))?,
                        _ => return Err(self.c.error(&["integer"])),
                    };
                    self.c.advance();
                    if !self.c.at(&TokenKind::RParen) {
                        return Err(self.c.error(&["`)`"]));
                    }
                    TermOrder::Elimination(k)
                }
                _ => return Err(self.c.error(&expected)),
            };
            self.c.advance();
        }
        self.c.expect(TokenKind::Semi, "`;`")?;
        Ok(Decl::Ring {
            name,
            field,
            vars,
            order,
            span,
        })
    }

    fn ideal(&mut self, span: Span) -> PResult<Decl> {
        self.c.advance();
        let name = self.c.ident()?.0;
        self.c.expect(TokenKind::Eq, "`=`")?;
        let gens = self.expr_list()?;
        let mut ring = None;
        if self.at_keyword("in") {
            self.c.advance();
            ring = Some(self.c.ident()?.0);
        }
        if !self.c.at(&TokenKind::Semi) {
            return Err(self.c.error(&["`in`", "`;`"]));
        }
        self.c.advance();
        Ok(Decl::Ideal { name, gens, ring, span })
    }

    fn quotient(&mut self, span: Span) -> PResult<Decl> {
        self.c.advance();
        let name = self.c.ident()?.0;
        self.c.expect(TokenKind::Eq, "`=`")?;
        let ring = self.c.ident()?.0;
        self.c.expect(TokenKind::Slash, "`/`")?;
        let ideal = self.c.ident()?.0;
        let mut base = None;
        if self.at_keyword("base") {
            self.c.advance();
            base = Some(self.ident_list(TokenKind::LParen, TokenKind::RParen, "`)`")?);
        }
        if !self.c.at(&TokenKind::Semi) {
            return Err(self.c.error(&["`base`", "`;`"]));
        }
        self.c.advance();
        Ok(Decl::Quotient {
            name,
            ring,
            ideal,
            base,
            span,
        })
    }

    fn task(&mut self, span: Span) -> PResult<Task> {
        self.c.advance();
        let kinds: Vec<String> = TaskKind::ALL.iter().map(|k| format!("`{k}`")).collect();
        let kinds: Vec<&str> = kinds.iter().map(|s| s.as_str()).collect();
        let kind = match &self.c.peek().kind {
            TokenKind::Ident(s) => TaskKind::from_name(s).ok_or_else(|| self.c.error(&kinds))?,
            _ => return Err(self.c.error(&kinds)),
        };
        self.c.advance();
        self.c.expect(TokenKind::LBrace, "`{`")?;
        let mut assigns = Vec::new();
        while !self.c.at(&TokenKind::RBrace) {
            let aspan = self.span();
            let key = match self.c.ident() {
                Ok((k, _)) => k,
                Err(_) => return Err(self.c.error(&["key", "`}`"])),
            };
            self.c.expect(TokenKind::Eq, "`=`")?;
            let value = self.value()?;
            self.c.expect(TokenKind::Semi, "`;`")?;
            assigns.push(Assign {
                key,
                value,
                span: aspan,
            });
        }
        self.c.advance();
        Ok(Task { kind, assigns, span })
    }

    /// A parenthesized list when the parentheses close the value, otherwise
    /// a plain expression such as `(x + y)^2`.
    fn value(&mut self) -> PResult<Value> {
        if self.c.at(&TokenKind::LParen) {
            let start = self.c.position();
            if let Ok(list) = self.expr_list() {
                if self.c.at(&TokenKind::Semi) {
                    return Ok(Value::List(list));
                }
            }
            self.c.seek(start);
        }
        Ok(Value::Expr(self.c.expr()?))
    }
}

/// Syntax only: tokens and grammar, no name resolution.
pub fn parse_syntax(text: &str) -> Result<SessionFile> {
    let tokens = tokenize(text)?;
    let mut p = Parser { c: Cursor::new(&tokens) };
    Ok(p.session()?)
}

/// Parse a session and check that every identifier resolves, every ring
/// and quotient is well formed and every task has its required keys.
pub fn parse_session(text: &str) -> Result<SessionFile> {
    let file = parse_syntax(text)?;
    super::resolve::Environment::build(&file)?;
    Ok(file)
}
