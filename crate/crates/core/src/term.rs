//! Combinator terms over the operators `S`, `K` and `F`.
//!
//! A [`Term`] is an immutable, reference-counted binary tree of applications.
//! Every node caches a small summary (spine head, argument count, whether any
//! rewrite step exists below it, a structural hash) so that the reduction
//! engine can skip normal subterms in constant time.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;

use thiserror::Error;

/// A primitive combinator symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    S,
    K,
    F,
}

impl Operator {
    /// Number of arguments the operator's rule consumes.
    pub fn arity(self) -> usize {
        match self {
            Operator::S => 3,
            Operator::K => 2,
            Operator::F => 3,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Operator::S => 'S',
            Operator::K => 'K',
            Operator::F => 'F',
        }
    }

    pub fn from_symbol(c: char) -> Option<Operator> {
        match c {
            'S' => Some(Operator::S),
            'K' => Some(Operator::K),
            'F' => Some(Operator::F),
            _ => None,
        }
    }

    fn bit(self) -> u8 {
        match self {
            Operator::S => 1,
            Operator::K => 2,
            Operator::F => 4,
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Which combinatory calculus a term belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Calculus {
    SK,
    SF,
}

impl Calculus {
    pub fn operators(self) -> [Operator; 2] {
        match self {
            Calculus::SK => [Operator::S, Operator::K],
            Calculus::SF => [Operator::S, Operator::F],
        }
    }

    pub fn admits(self, op: Operator) -> bool {
        self.operators().contains(&op)
    }

    /// The second operator of the calculus: `K` for SK, `F` for SF.
    pub fn partner(self) -> Operator {
        self.operators()[1]
    }

    pub fn name(self) -> &'static str {
        match self {
            Calculus::SK => "sk",
            Calculus::SF => "sf",
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Calculus::SK => "SK",
            Calculus::SF => "SF",
        })
    }
}

impl std::str::FromStr for Calculus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sk" => Ok(Calculus::SK),
            "sf" => Ok(Calculus::SF),
            other => Err(format!("unknown calculus `{other}` (expected sk or sf)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("operator {op} is not part of {calculus}-calculus")]
    IllegalOperator { op: Operator, calculus: Calculus },
    #[error("term is open (contains variables) where a closed term is required")]
    Open,
}

/// Spine head of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Head {
    Op(Operator),
    Var,
}

#[derive(Debug)]
pub enum Node {
    Atom(Operator),
    Var(Rc<str>),
    App(Term, Term),
}

#[derive(Debug, Clone, Copy)]
struct Meta {
    size: u64,
    head: Head,
    nargs: u32,
    no_step: bool,
    stuck: bool,
    closed: bool,
    ops: u8,
    hash: u64,
}

#[derive(Debug)]
struct Inner {
    node: Node,
    meta: Meta,
}

/// An immutable combinator term. Cloning is cheap; equality is structural.
#[derive(Clone)]
pub struct Term(Rc<Inner>);

impl Term {
    pub fn atom(op: Operator) -> Term {
        let mut h = DefaultHasher::new();
        (0u8, op).hash(&mut h);
        Term(Rc::new(Inner {
            node: Node::Atom(op),
            meta: Meta {
                size: 1,
                head: Head::Op(op),
                nargs: 0,
                no_step: true,
                stuck: false,
                closed: true,
                ops: op.bit(),
                hash: h.finish(),
            },
        }))
    }

    pub fn s() -> Term {
        Term::atom(Operator::S)
    }

    pub fn k() -> Term {
        Term::atom(Operator::K)
    }

    pub fn f() -> Term {
        Term::atom(Operator::F)
    }

    pub fn var(name: impl Into<Rc<str>>) -> Term {
        let name = name.into();
        let mut h = DefaultHasher::new();
        (1u8, &*name).hash(&mut h);
        Term(Rc::new(Inner {
            node: Node::Var(name),
            meta: Meta {
                size: 1,
                head: Head::Var,
                nargs: 0,
                no_step: true,
                stuck: false,
                closed: false,
                ops: 0,
                hash: h.finish(),
            },
        }))
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        let fm = fun.0.meta;
        let am = arg.0.meta;
        let nargs = fm.nargs.saturating_add(1);
        let mut fires = false;
        let mut stuck_here = false;
        if let Head::Op(op) = fm.head {
            if nargs as usize == op.arity() {
                match op {
                    Operator::S | Operator::K => fires = true,
                    Operator::F => {
                        // fun = F a m, so its fun is F a
                        let first = fun.fun().and_then(Term::arg).expect("F spine with three args");
                        if first.is_factorable() {
                            fires = true;
                        } else if first.0.meta.no_step {
                            stuck_here = true;
                        }
                    }
                }
            }
        }
        let mut h = DefaultHasher::new();
        (2u8, fm.hash, am.hash).hash(&mut h);
        let meta = Meta {
            size: fm.size.saturating_add(am.size).saturating_add(1),
            head: fm.head,
            nargs,
            no_step: fm.no_step && am.no_step && !fires,
            stuck: fm.stuck || am.stuck || stuck_here,
            closed: fm.closed && am.closed,
            ops: fm.ops | am.ops,
            hash: h.finish(),
        };
        Term(Rc::new(Inner { node: Node::App(fun, arg), meta }))
    }

    /// Left-associated application `head a1 a2 ... an`.
    pub fn apply(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn as_atom(&self) -> Option<Operator> {
        match self.node() {
            Node::Atom(op) => Some(*op),
            _ => None,
        }
    }

    pub fn as_var(&self) -> Option<&str> {
        match self.node() {
            Node::Var(name) => Some(name),
            _ => None,
        }
    }

    pub fn as_app(&self) -> Option<(&Term, &Term)> {
        match self.node() {
            Node::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    pub fn fun(&self) -> Option<&Term> {
        self.as_app().map(|(f, _)| f)
    }

    pub fn arg(&self) -> Option<&Term> {
        self.as_app().map(|(_, a)| a)
    }

    /// Node count (atoms, variables and applications). Saturates at `u64::MAX`.
    pub fn size(&self) -> u64 {
        self.0.meta.size
    }

    pub fn is_closed(&self) -> bool {
        self.0.meta.closed
    }

    pub fn head(&self) -> Head {
        self.0.meta.head
    }

    /// Number of arguments on the spine.
    pub fn spine_len(&self) -> usize {
        self.0.meta.nargs as usize
    }

    /// True when no rewrite step exists anywhere inside the term.
    pub fn is_step_free(&self) -> bool {
        self.0.meta.no_step
    }

    /// True when the term contains a fully applied `F` whose first argument
    /// is headed by a variable (directly or through further such blocks).
    pub fn has_stuck_factor(&self) -> bool {
        self.0.meta.stuck
    }

    /// Whether the term is an atom or a compound, syntactically.
    pub fn is_factorable(&self) -> bool {
        match self.0.meta.head {
            Head::Op(op) => (self.0.meta.nargs as usize) < op.arity(),
            Head::Var => false,
        }
    }

    pub fn contains_operator(&self, op: Operator) -> bool {
        self.0.meta.ops & op.bit() != 0
    }

    pub fn check_calculus(&self, calculus: Calculus) -> Result<(), TermError> {
        for op in [Operator::S, Operator::K, Operator::F] {
            if self.contains_operator(op) && !calculus.admits(op) {
                return Err(TermError::IllegalOperator { op, calculus });
            }
        }
        Ok(())
    }

    /// Decomposes `h a1 ... an` into `h` and `[a1, ..., an]`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::with_capacity(self.spine_len());
        let mut cur = self;
        while let Node::App(f, a) = cur.node() {
            args.push(a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Rc::ptr_eq(&self.0, &other.0)
    }

    /// Substitutes `value` for every occurrence of variable `name`.
    pub fn substitute(&self, name: &str, value: &Term) -> Term {
        if self.is_closed() {
            return self.clone();
        }
        match self.node() {
            Node::Var(v) if &**v == name => value.clone(),
            Node::Atom(_) | Node::Var(_) => self.clone(),
            Node::App(f, a) => Term::app(f.substitute(name, value), a.substitute(name, value)),
        }
    }

    pub fn has_free_var(&self, name: &str) -> bool {
        if self.is_closed() {
            return false;
        }
        match self.node() {
            Node::Var(v) => &**v == name,
            Node::Atom(_) => false,
            Node::App(f, a) => f.has_free_var(name) || a.has_free_var(name),
        }
    }

    /// Iterates over all subterms in preorder.
    pub fn subterms(&self) -> Subterms<'_> {
        Subterms { stack: vec![self] }
    }
}

pub struct Subterms<'a> {
    stack: Vec<&'a Term>,
}

impl<'a> Iterator for Subterms<'a> {
    type Item = &'a Term;

    fn next(&mut self) -> Option<&'a Term> {
        let t = self.stack.pop()?;
        if let Node::App(f, a) = t.node() {
            self.stack.push(a);
            self.stack.push(f);
        }
        Some(t)
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        let mut stack = vec![(self, other)];
        while let Some((a, b)) = stack.pop() {
            if a.ptr_eq(b) {
                continue;
            }
            if a.0.meta.hash != b.0.meta.hash || a.0.meta.size != b.0.meta.size {
                return false;
            }
            match (a.node(), b.node()) {
                (Node::Atom(x), Node::Atom(y)) if x == y => {}
                (Node::Var(x), Node::Var(y)) if x == y => {}
                (Node::App(f1, a1), Node::App(f2, a2)) => {
                    stack.push((a1, a2));
                    stack.push((f1, f2));
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.meta.hash);
    }
}

impl Drop for Term {
    fn drop(&mut self) {
        // Unwind uniquely owned chains without recursion.
        let mut pending: Vec<Term> = Vec::new();
        if let Some(inner) = Rc::get_mut(&mut self.0) {
            if let Node::App(f, a) = &mut inner.node {
                pending.push(std::mem::replace(f, placeholder()));
                pending.push(std::mem::replace(a, placeholder()));
            }
        }
        while let Some(mut t) = pending.pop() {
            if let Some(inner) = Rc::get_mut(&mut t.0) {
                if let Node::App(f, a) = &mut inner.node {
                    pending.push(std::mem::replace(f, placeholder()));
                    pending.push(std::mem::replace(a, placeholder()));
                }
            }
        }
    }
}

thread_local! {
    static PLACEHOLDER: Term = Term::atom(Operator::S);
}

fn placeholder() -> Term {
    PLACEHOLDER.with(Term::clone)
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

/// Head status of a term, the judgment the `F` rules depend on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// A bare operator.
    AtomHead,
    /// A partially applied operator `left right`; never reducible at its head.
    Compound(Term, Term),
    /// An operator applied to at least its full arity.
    Redex,
    /// Spine headed by a variable.
    VarHeaded,
}

impl Classification {
    pub fn is_factorable(&self) -> bool {
        matches!(self, Classification::AtomHead | Classification::Compound(..))
    }
}

pub fn classify(t: &Term, calculus: Calculus) -> Result<Classification, TermError> {
    t.check_calculus(calculus)?;
    Ok(match t.head() {
        Head::Var => Classification::VarHeaded,
        Head::Op(op) => match t.as_app() {
            None => Classification::AtomHead,
            Some((l, r)) if t.spine_len() < op.arity() => Classification::Compound(l.clone(), r.clone()),
            Some(_) => Classification::Redex,
        },
    })
}

pub fn is_factorable(t: &Term, calculus: Calculus) -> Result<bool, TermError> {
    classify(t, calculus).map(|c| c.is_factorable())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Term {
        Term::var(n)
    }

    #[test]
    fn classification_examples() {
        let sm = Term::app(Term::s(), v("m"));
        assert_eq!(classify(&sm, Calculus::SF).unwrap(), Classification::Compound(Term::s(), v("m")));
        let smnp = Term::apply(Term::s(), [v("m"), v("n"), v("p")]);
        assert_eq!(classify(&smnp, Calculus::SF).unwrap(), Classification::Redex);
        let xm = Term::app(v("x"), v("m"));
        assert_eq!(classify(&xm, Calculus::SF).unwrap(), Classification::VarHeaded);
        assert_eq!(classify(&Term::f(), Calculus::SF).unwrap(), Classification::AtomHead);
    }

    #[test]
    fn operator_arities_drive_compounds() {
        let k1 = Term::app(Term::k(), Term::k());
        assert!(matches!(classify(&k1, Calculus::SK).unwrap(), Classification::Compound(..)));
        let k2 = Term::app(k1, Term::s());
        assert_eq!(classify(&k2, Calculus::SK).unwrap(), Classification::Redex);
        let f2 = Term::apply(Term::f(), [v("m"), v("p")]);
        assert!(is_factorable(&f2, Calculus::SF).unwrap());
        let f3 = Term::apply(Term::f(), [v("m"), v("n"), v("p")]);
        assert!(!is_factorable(&f3, Calculus::SF).unwrap());
        assert!(!is_factorable(&v("x"), Calculus::SF).unwrap());
    }

    #[test]
    fn illegal_operators_are_rejected() {
        assert_eq!(
            classify(&Term::k(), Calculus::SF),
            Err(TermError::IllegalOperator { op: Operator::K, calculus: Calculus::SF })
        );
        let t = Term::app(Term::s(), Term::f());
        assert!(classify(&t, Calculus::SK).is_err());
    }

    #[test]
    fn sizes() {
        assert_eq!(Term::s().size(), 1);
        let skk = Term::app(Term::s(), Term::app(Term::k(), Term::k()));
        assert_eq!(skk.size(), 5);
        assert_eq!(Term::app(Term::f(), Term::f()).size(), 3);
    }

    #[test]
    fn step_flags() {
        let skkx = Term::apply(Term::s(), [Term::k(), Term::k(), v("x")]);
        assert!(!skkx.is_step_free());
        let stuck = Term::apply(Term::f(), [v("x"), Term::s(), Term::s()]);
        assert!(stuck.is_step_free());
        assert!(stuck.has_stuck_factor());
        let fires = Term::apply(Term::f(), [Term::s(), v("m"), v("n")]);
        assert!(!fires.is_step_free());
    }

    #[test]
    fn structural_equality_and_deep_drop() {
        let a = Term::apply(Term::s(), [Term::k(), v("x")]);
        let b = Term::apply(Term::s(), [Term::k(), v("x")]);
        assert_eq!(a, b);
        assert_ne!(a, Term::apply(Term::s(), [Term::k(), v("y")]));
        let mut deep = Term::s();
        for _ in 0..200_000 {
            deep = Term::app(Term::s(), deep);
        }
        assert_eq!(deep.size(), 400_001);
        drop(deep);
    }
}
