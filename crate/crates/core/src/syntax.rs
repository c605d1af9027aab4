//! Surface syntax: a named mirror of terms, its parser and the printer.
//!
//! ```text
//! term    := *N | name | #N | @(term).term | [name:term].term
//!          | [name=term].term | <term>.term | (term)
//! entry   := name:term | name=term | name!
//! closure := [entry (; entry)*] |- term
//! ```
//!
//! `#N` denotes the N-th variable free outside the environment, so printing
//! and parsing round-trip on open terms as well.

use std::fmt::Write as _;

use thiserror::Error;

use crate::term::{Closure, Entry, Env, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unbound name `{name}`")]
    UnboundName { line: usize, column: usize, name: String },
}

/// Named terms as written, before names are resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Surface {
    Sort(u64),
    Name(String, Pos),
    Free(usize),
    Appl(Box<Surface>, Box<Surface>),
    Abst(String, Box<Surface>, Box<Surface>),
    Abbr(String, Box<Surface>, Box<Surface>),
    Cast(Box<Surface>, Box<Surface>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceEntry {
    Decl(String, Surface),
    Defn(String, Surface),
    Void(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

struct Parser {
    chars: Vec<char>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Parser {
        Parser { chars: src.chars().collect(), at: 0 }
    }

    fn pos(&self) -> Pos {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.at] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Pos { line, column }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        let Pos { line, column } = self.pos();
        Err(SyntaxError::Parse { line, column, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.at < self.chars.len() && self.chars[self.at].is_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).copied()
    }

    fn looking_at(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        self.at + n <= self.chars.len() && self.chars[self.at..self.at + n].iter().copied().eq(s.chars())
    }

    fn expect(&mut self, s: &str) -> Result<(), SyntaxError> {
        if self.looking_at(s) {
            self.at += s.chars().count();
            Ok(())
        } else {
            match self.peek() {
                Some(c) => self.error(format!("expected `{s}`, found `{c}`")),
                None => self.error(format!("expected `{s}`, found end of input")),
            }
        }
    }

    fn number(&mut self) -> Result<u64, SyntaxError> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.chars.len() && self.chars[self.at].is_ascii_digit() {
            self.at += 1;
        }
        if start == self.at {
            return self.error("expected a number");
        }
        let digits: String = self.chars[start..self.at].iter().collect();
        digits.parse().or_else(|_| {
            self.at = start;
            self.error("number out of range")
        })
    }

    fn name(&mut self) -> Result<(String, Pos), SyntaxError> {
        self.skip_ws();
        let pos = self.pos();
        let start = self.at;
        match self.chars.get(self.at) {
            Some(c) if c.is_alphabetic() || *c == '_' => self.at += 1,
            _ => return self.error("expected a name"),
        }
        while let Some(&c) = self.chars.get(self.at) {
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                self.at += 1;
            } else {
                break;
            }
        }
        Ok((self.chars[start..self.at].iter().collect(), pos))
    }

    fn term(&mut self) -> Result<Surface, SyntaxError> {
        match self.peek() {
            Some('*') => {
                self.at += 1;
                Ok(Surface::Sort(self.number()?))
            }
            Some('#') => {
                self.at += 1;
                Ok(Surface::Free(self.number()? as usize))
            }
            Some('@') => {
                self.at += 1;
                self.expect("(")?;
                let v = self.term()?;
                self.expect(")")?;
                self.expect(".")?;
                let t = self.term()?;
                Ok(Surface::Appl(Box::new(v), Box::new(t)))
            }
            Some('[') => {
                self.at += 1;
                let (x, _) = self.name()?;
                let declared = match self.peek() {
                    Some(':') => true,
                    Some('=') => false,
                    _ => return self.error("expected `:` or `=`"),
                };
                self.at += 1;
                let v = self.term()?;
                self.expect("]")?;
                self.expect(".")?;
                let t = self.term()?;
                Ok(if declared {
                    Surface::Abst(x, Box::new(v), Box::new(t))
                } else {
                    Surface::Abbr(x, Box::new(v), Box::new(t))
                })
            }
            Some('<') => {
                self.at += 1;
                let u = self.term()?;
                self.expect(">")?;
                self.expect(".")?;
                let t = self.term()?;
                Ok(Surface::Cast(Box::new(u), Box::new(t)))
            }
            Some('(') => {
                self.at += 1;
                let t = self.term()?;
                self.expect(")")?;
                Ok(t)
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let (x, pos) = self.name()?;
                Ok(Surface::Name(x, pos))
            }
            Some(c) => self.error(format!("unexpected `{c}`")),
            None => self.error("unexpected end of input"),
        }
    }

    fn entry(&mut self) -> Result<SurfaceEntry, SyntaxError> {
        let (x, _) = self.name()?;
        match self.peek() {
            Some(':') => {
                self.at += 1;
                Ok(SurfaceEntry::Decl(x, self.term()?))
            }
            Some('=') => {
                self.at += 1;
                Ok(SurfaceEntry::Defn(x, self.term()?))
            }
            Some('!') => {
                self.at += 1;
                Ok(SurfaceEntry::Void(x))
            }
            _ => self.error("expected `:`, `=` or `!` after the entry name"),
        }
    }

    fn closure(&mut self) -> Result<(Vec<SurfaceEntry>, Surface), SyntaxError> {
        let mut entries = Vec::new();
        if !self.looking_at("|-") {
            entries.push(self.entry()?);
            while self.looking_at(";") {
                self.at += 1;
                entries.push(self.entry()?);
            }
        }
        self.expect("|-")?;
        let t = self.term()?;
        self.end()?;
        Ok((entries, t))
    }

    fn end(&mut self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected `{c}` after the end of the term")),
        }
    }
}

/// Parses the surface form of a closure without resolving names.
pub fn parse_surface(text: &str) -> Result<(Vec<SurfaceEntry>, Surface), SyntaxError> {
    Parser::new(text).closure()
}

/// Resolves names against `scope`, innermost binder last.
fn resolve(t: &Surface, scope: &mut Vec<String>) -> Result<Term, SyntaxError> {
    Ok(match t {
        Surface::Sort(s) => Term::Sort(*s),
        Surface::Free(k) => Term::Ref(scope.len() + k),
        Surface::Name(x, pos) => match scope.iter().rev().position(|y| y == x) {
            Some(i) => Term::Ref(i),
            None => return Err(SyntaxError::UnboundName { line: pos.line, column: pos.column, name: x.clone() }),
        },
        Surface::Appl(v, f) => Term::appl(resolve(v, scope)?, resolve(f, scope)?),
        Surface::Cast(u, f) => Term::cast(resolve(u, scope)?, resolve(f, scope)?),
        Surface::Abst(x, w, b) | Surface::Abbr(x, w, b) => {
            let w = resolve(w, scope)?;
            scope.push(x.clone());
            let b = resolve(b, scope);
            scope.pop();
            match t {
                Surface::Abst(..) => Term::abst(w, b?),
                _ => Term::abbr(w, b?),
            }
        }
    })
}

/// A closure with the names its environment entries were given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedClosure {
    pub closure: Closure,
    pub names: Vec<String>,
}

impl ParsedClosure {
    /// Parses a further term in the scope of this closure's environment.
    pub fn parse_term(&self, text: &str) -> Result<Term, SyntaxError> {
        let mut p = Parser::new(text);
        let t = p.term()?;
        p.end()?;
        let mut scope = self.names.clone();
        resolve(&t, &mut scope)
    }
}

pub fn parse_closure_named(text: &str) -> Result<ParsedClosure, SyntaxError> {
    let (entries, subject) = parse_surface(text)?;
    let mut scope: Vec<String> = Vec::new();
    let mut env = Env::new();
    for e in &entries {
        let (name, entry) = match e {
            SurfaceEntry::Decl(x, t) => (x, Entry::Decl(resolve(t, &mut scope)?)),
            SurfaceEntry::Defn(x, t) => (x, Entry::Defn(resolve(t, &mut scope)?)),
            SurfaceEntry::Void(x) => (x, Entry::Void),
        };
        env.push(entry);
        scope.push(name.clone());
    }
    let subject = resolve(&subject, &mut scope)?;
    Ok(ParsedClosure { closure: Closure::new(env, subject), names: scope })
}

pub fn parse_closure(text: &str) -> Result<Closure, SyntaxError> {
    parse_closure_named(text).map(|p| p.closure)
}

/// Parses a term in the empty environment.
pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    ParsedClosure { closure: Closure::new(Env::new(), Term::Sort(0)), names: Vec::new() }.parse_term(text)
}

fn write_term(out: &mut String, t: &Term, level: usize) {
    match t {
        Term::Sort(s) => write!(out, "*{s}").unwrap(),
        Term::Ref(i) if *i < level => write!(out, "x{}", level - 1 - i).unwrap(),
        Term::Ref(i) => write!(out, "#{}", i - level).unwrap(),
        Term::Appl(v, f) => {
            out.push_str("@(");
            write_term(out, v, level);
            out.push_str(").");
            write_term(out, f, level);
        }
        Term::Cast(u, f) => {
            out.push('<');
            write_term(out, u, level);
            out.push_str(">.");
            write_term(out, f, level);
        }
        Term::Abst(w, b) | Term::Abbr(w, b) => {
            let sep = if matches!(t, Term::Abst(..)) { ':' } else { '=' };
            write!(out, "[x{level}{sep}").unwrap();
            write_term(out, w, level);
            out.push_str("].");
            write_term(out, b, level + 1);
        }
    }
}

/// Prints a term, naming binders `x0`, `x1`, ... by depth.
pub fn print_term(t: &Term) -> String {
    print_term_at(t, 0)
}

/// Prints a term that lives under `level` environment entries named `x0`
/// up to `x{level-1}`.
pub fn print_term_at(t: &Term, level: usize) -> String {
    let mut out = String::new();
    write_term(&mut out, t, level);
    out
}

pub fn print_env(env: &Env) -> String {
    let parts: Vec<String> = env
        .entries()
        .iter()
        .enumerate()
        .map(|(pos, e)| {
            let mut s = format!("x{pos}");
            match e {
                Entry::Decl(t) | Entry::Defn(t) => {
                    s.push(if matches!(e, Entry::Decl(_)) { ':' } else { '=' });
                    write_term(&mut s, t, pos);
                }
                Entry::Void => s.push('!'),
            }
            s
        })
        .collect();
    parts.join("; ")
}

pub fn print_closure(c: &Closure) -> String {
    let env = print_env(&c.env);
    let subject = print_term_at(&c.subject, c.env.len());
    if env.is_empty() {
        format!("|- {subject}")
    } else {
        format!("{env} |- {subject}")
    }
}
