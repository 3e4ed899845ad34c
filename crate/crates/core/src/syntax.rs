//! Concrete syntax for combinator terms and the Polish-notation word codec.
//!
//! Grammar:
//!
//! ```text
//! term  := item+                      (juxtaposition, left-associative)
//! item  := atom | ident | '(' term ')'
//! atom  := 'S' | 'K' | 'F'            (always a single character)
//! ident := letter [a-z0-9_']*         (first letter not S, K or F)
//! ```
//!
//! Identifiers resolve to bound definitions when an environment is supplied
//! and to variables otherwise, so `xM` is the variable `x` applied to `M`,
//! while `SKK` is `(S K) K`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::term::{Calculus, Node, Operator, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("operator {op} at byte {pos} is not part of {calculus}-calculus")]
    IllegalOperator { pos: usize, op: Operator, calculus: Calculus },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolishError {
    #[error("letter `{letter}` at position {pos} is not in the {calculus} Polish alphabet")]
    BadLetter { pos: usize, letter: char, calculus: Calculus },
    #[error("ill-formed Polish word: {0}")]
    IllFormed(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() && Operator::from_symbol(c).is_none()
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '\''
}

/// True when `name` lexes as a single identifier.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if is_ident_start(c)) && chars.all(is_ident_continue)
}

struct Parser<'a, 'e> {
    src: &'a str,
    pos: usize,
    calculus: Calculus,
    env: Option<&'e HashMap<String, Term>>,
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse { pos: self.pos, message: message.into() })
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let mut acc: Option<Term> = None;
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') => break,
                Some(_) => {
                    let item = self.item()?;
                    acc = Some(match acc {
                        None => item,
                        Some(f) => Term::app(f, item),
                    });
                }
            }
        }
        match acc {
            Some(t) => Ok(t),
            None => self.error("expected a term"),
        }
    }

    fn item(&mut self) -> Result<Term, SyntaxError> {
        let start = self.pos;
        let c = self.peek().expect("item called at end of input");
        if c == '(' {
            self.pos += 1;
            let t = self.term()?;
            self.skip_ws();
            if self.peek() != Some(')') {
                return self.error("expected `)`");
            }
            self.pos += 1;
            return Ok(t);
        }
        if let Some(op) = Operator::from_symbol(c) {
            if !self.calculus.admits(op) {
                return Err(SyntaxError::IllegalOperator { pos: start, op, calculus: self.calculus });
            }
            self.pos += 1;
            return Ok(Term::atom(op));
        }
        if is_ident_start(c) {
            self.pos += 1;
            while let Some(c) = self.peek() {
                if !is_ident_continue(c) {
                    break;
                }
                self.pos += 1;
            }
            let name = &self.src[start..self.pos];
            if let Some(bound) = self.env.and_then(|env| env.get(name)) {
                return Ok(bound.clone());
            }
            return Ok(Term::var(name));
        }
        self.error(format!("unexpected character `{c}`"))
    }
}

/// Parses a term; identifiers become variables.
pub fn parse(text: &str, calculus: Calculus) -> Result<Term, SyntaxError> {
    parse_in(text, calculus, None)
}

/// Parses a term, resolving identifiers bound in `env` to their definitions.
pub fn parse_in(text: &str, calculus: Calculus, env: Option<&HashMap<String, Term>>) -> Result<Term, SyntaxError> {
    let mut p = Parser { src: text, pos: 0, calculus, env };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < text.len() {
        return p.error("unbalanced `)`");
    }
    Ok(t)
}

#[derive(Clone, Copy, PartialEq)]
enum Last {
    Start,
    Atom,
    Ident,
    Close,
}

struct Printer {
    out: String,
    last: Last,
}

impl Printer {
    fn token(&mut self, s: &str, kind: Last) {
        let first = s.chars().next().unwrap_or(' ');
        if self.last == Last::Ident && is_ident_continue(first) {
            self.out.push(' ');
        }
        self.out.push_str(s);
        self.last = kind;
    }

    fn term(&mut self, t: &Term) {
        let (head, args) = t.spine();
        self.item(head);
        for a in args {
            if a.as_app().is_some() {
                self.token("(", Last::Start);
                self.term(a);
                self.token(")", Last::Close);
            } else {
                self.item(a);
            }
        }
    }

    fn item(&mut self, t: &Term) {
        match t.node() {
            Node::Atom(op) => self.token(&op.symbol().to_string(), Last::Atom),
            Node::Var(name) => self.token(name, Last::Ident),
            Node::App(..) => self.term(t),
        }
    }
}

/// Minimal-parentheses rendering; `parse(&print(t))` reproduces `t` whenever
/// every variable name is a valid identifier.
pub fn print(t: &Term) -> String {
    let mut p = Printer { out: String::new(), last: Last::Start };
    p.term(t);
    p.out
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

/// A term serialised in Polish notation, `A` marking application.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolishWord(String);

impl PolishWord {
    /// Validates letters (`A`, `S`, `K`, `F`) and the arity counter.
    pub fn parse(text: &str) -> Result<PolishWord, PolishError> {
        let mut counter: i64 = 1;
        for (pos, c) in text.chars().enumerate() {
            if counter <= 0 {
                return Err(PolishError::IllFormed(format!("trailing letters from position {pos}")));
            }
            match c {
                'A' => counter += 1,
                'S' | 'K' | 'F' => counter -= 1,
                other => return Err(PolishError::IllFormed(format!("unexpected letter `{other}` at position {pos}"))),
            }
        }
        if counter != 0 {
            return Err(PolishError::IllFormed(format!("{counter} operand(s) missing")));
        }
        Ok(PolishWord(text.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PolishWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Preorder serialisation of a closed term.
pub fn to_polish(t: &Term) -> Result<PolishWord, TermError> {
    if !t.is_closed() {
        return Err(TermError::Open);
    }
    let mut out = String::with_capacity(t.size() as usize);
    for sub in t.subterms() {
        match sub.node() {
            Node::App(..) => out.push('A'),
            Node::Atom(op) => out.push(op.symbol()),
            Node::Var(_) => unreachable!("closed term"),
        }
    }
    Ok(PolishWord(out))
}

pub fn from_polish(word: &PolishWord, calculus: Calculus) -> Result<Term, PolishError> {
    // Operands are pushed as they complete; an `A` frame waits for two.
    enum Frame {
        Empty,
        Half(Term),
    }
    let mut frames: Vec<Frame> = Vec::new();
    let mut result = None;
    for (pos, c) in word.0.chars().enumerate() {
        if c == 'A' {
            frames.push(Frame::Empty);
            continue;
        }
        let op = Operator::from_symbol(c).expect("validated word");
        if !calculus.admits(op) {
            return Err(PolishError::BadLetter { pos, letter: c, calculus });
        }
        let mut done = Term::atom(op);
        loop {
            match frames.pop() {
                None => {
                    result = Some(done);
                    break;
                }
                Some(Frame::Empty) => {
                    frames.push(Frame::Half(done));
                    break;
                }
                Some(Frame::Half(f)) => done = Term::app(f, done),
            }
        }
    }
    result.ok_or_else(|| PolishError::IllFormed("empty word".into()))
}

/// One `let name = term;` statement of a prelude file.
#[derive(Debug, Clone, PartialEq)]
pub struct Definition {
    pub name: String,
    pub term: Term,
}

/// Parses a prelude: a sequence of `let name = term;` statements. Each body
/// may refer to names bound earlier in the file or in `env`.
pub fn parse_prelude(
    text: &str,
    calculus: Calculus,
    env: &HashMap<String, Term>,
) -> Result<Vec<Definition>, SyntaxError> {
    let mut scope = env.clone();
    let mut defs = Vec::new();
    let mut offset = 0;
    for stmt in text.split_inclusive(';') {
        let base = offset;
        offset += stmt.len();
        let trimmed = stmt.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = stmt.len() - stmt.trim_start().len();
        let err = |pos: usize, message: &str| SyntaxError::Parse { pos: base + lead + pos, message: message.into() };
        let body = trimmed.strip_suffix(';').ok_or_else(|| err(trimmed.len(), "missing `;` after definition"))?;
        let rest = body
            .strip_prefix("let")
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| err(0, "expected `let`"))?;
        let (name, term_text) = rest.split_once('=').ok_or_else(|| err(3, "expected `=`"))?;
        let name = name.trim();
        if !is_identifier(name) {
            return Err(err(4, &format!("`{name}` is not a valid name")));
        }
        let term_start = base + lead + 3 + rest.find('=').unwrap_or(0) + 1;
        let term = parse_in(term_text, calculus, Some(&scope)).map_err(|e| match e {
            SyntaxError::Parse { pos, message } => SyntaxError::Parse { pos: term_start + pos, message },
            SyntaxError::IllegalOperator { pos, op, calculus } => {
                SyntaxError::IllegalOperator { pos: term_start + pos, op, calculus }
            }
        })?;
        scope.insert(name.to_string(), term.clone());
        defs.push(Definition { name: name.to_string(), term });
    }
    Ok(defs)
}

/// Renders definitions in prelude format, one statement per line.
pub fn render_prelude(defs: &[Definition]) -> String {
    let mut out = String::new();
    for d in defs {
        out.push_str(&format!("let {} = {};\n", d.name, d.term));
    }
    out
}
