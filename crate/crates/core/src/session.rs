//! Named definitions and evaluation defaults shared by the command-line
//! front end and the demos.

use std::collections::HashMap;

use thiserror::Error;

use crate::reduce::{Reducer, Strategy};
use crate::syntax::{parse_in, parse_prelude, Definition, SyntaxError};
use crate::term::{Calculus, Term};

/// The library prelude shipped for SF.
pub const SF_PRELUDE: &str = include_str!("../prelude/sf.prelude");
/// The library prelude shipped for SK.
pub const SK_PRELUDE: &str = include_str!("../prelude/sk.prelude");

pub const DEFAULT_BUDGET: u64 = 100_000;

pub fn shipped_prelude(calculus: Calculus) -> &'static str {
    match calculus {
        Calculus::SF => SF_PRELUDE,
        Calculus::SK => SK_PRELUDE,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SessionError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("definition of `{0}` is not closed")]
    Open(String),
}

#[derive(Clone, Debug)]
pub struct Session {
    pub calculus: Calculus,
    pub strategy: Strategy,
    pub budget: u64,
    definitions: HashMap<String, Term>,
    warnings: Vec<String>,
}

impl Session {
    /// A session with the shipped library prelude loaded.
    pub fn new(calculus: Calculus) -> Session {
        let mut s = Session::empty(calculus);
        s.load_prelude(shipped_prelude(calculus)).expect("shipped prelude loads");
        s
    }

    pub fn empty(calculus: Calculus) -> Session {
        Session {
            calculus,
            strategy: Strategy::NormalOrder,
            budget: DEFAULT_BUDGET,
            definitions: HashMap::new(),
            warnings: Vec::new(),
        }
    }

    /// Loads `let name = term;` statements. A name already bound is
    /// shadowed and a warning recorded. Returns the definitions loaded.
    pub fn load_prelude(&mut self, text: &str) -> Result<Vec<Definition>, SessionError> {
        let defs = parse_prelude(text, self.calculus, &self.definitions)?;
        if let Some(open) = defs.iter().find(|d| !d.term.is_closed()) {
            return Err(SessionError::Open(open.name.clone()));
        }
        for d in &defs {
            if self.definitions.insert(d.name.clone(), d.term.clone()).is_some() {
                self.warnings.push(format!("warning: `{}` rebinds an earlier definition", d.name));
            }
        }
        Ok(defs)
    }

    /// Parses a term; bound names expand to their definitions and other
    /// identifiers stay variables.
    pub fn parse(&self, text: &str) -> Result<Term, SyntaxError> {
        parse_in(text, self.calculus, Some(&self.definitions))
    }

    pub fn lookup(&self, name: &str) -> Option<&Term> {
        self.definitions.get(name)
    }

    pub fn names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.definitions.keys().map(String::as_str).collect();
        names.sort_unstable();
        names
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn reducer(&self) -> Reducer {
        Reducer::new(self.calculus, self.budget).with_strategy(self.strategy)
    }
}
