//! deBruijn λ-terms, β-normalisation and bracket abstraction into combinators.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::reduce::Reducer;
use crate::term::{Calculus, Head, Node, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LambdaTerm {
    Index(usize),
    Lam(Box<LambdaTerm>),
    App(Box<LambdaTerm>, Box<LambdaTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("λ syntax error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("λ-term is open: index {index} escapes its binders")]
    Open { index: usize },
}

impl LambdaTerm {
    pub fn index(n: usize) -> LambdaTerm {
        LambdaTerm::Index(n)
    }

    pub fn lam(body: LambdaTerm) -> LambdaTerm {
        LambdaTerm::Lam(Box::new(body))
    }

    pub fn app(f: LambdaTerm, a: LambdaTerm) -> LambdaTerm {
        LambdaTerm::App(Box::new(f), Box::new(a))
    }

    pub fn apply(f: LambdaTerm, args: impl IntoIterator<Item = LambdaTerm>) -> LambdaTerm {
        args.into_iter().fold(f, LambdaTerm::app)
    }

    pub fn size(&self) -> usize {
        match self {
            LambdaTerm::Index(_) => 1,
            LambdaTerm::Lam(b) => 1 + b.size(),
            LambdaTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    /// Smallest number of enclosing binders needed to close the term.
    pub fn free_depth(&self) -> usize {
        match self {
            LambdaTerm::Index(n) => n + 1,
            LambdaTerm::Lam(b) => b.free_depth().saturating_sub(1),
            LambdaTerm::App(f, a) => f.free_depth().max(a.free_depth()),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_depth() == 0
    }

    fn shift(&self, by: isize, cutoff: usize) -> LambdaTerm {
        match self {
            LambdaTerm::Index(n) if *n >= cutoff => {
                let shifted = *n as isize + by;
                debug_assert!(shifted >= 0, "negative deBruijn index");
                LambdaTerm::Index(shifted as usize)
            }
            LambdaTerm::Index(n) => LambdaTerm::Index(*n),
            LambdaTerm::Lam(b) => LambdaTerm::lam(b.shift(by, cutoff + 1)),
            LambdaTerm::App(f, a) => LambdaTerm::app(f.shift(by, cutoff), a.shift(by, cutoff)),
        }
    }

    fn subst(&self, target: usize, value: &LambdaTerm) -> LambdaTerm {
        match self {
            LambdaTerm::Index(n) if *n == target => value.clone(),
            LambdaTerm::Index(n) => LambdaTerm::Index(*n),
            LambdaTerm::Lam(b) => LambdaTerm::lam(b.subst(target + 1, &value.shift(1, 0))),
            LambdaTerm::App(f, a) => LambdaTerm::app(f.subst(target, value), a.subst(target, value)),
        }
    }

    /// `(λ body) arg` contracted.
    fn beta(body: &LambdaTerm, arg: &LambdaTerm) -> LambdaTerm {
        body.subst(0, &arg.shift(1, 0)).shift(-1, 0)
    }

    /// One leftmost-outermost β-step.
    pub fn step(&self) -> Option<LambdaTerm> {
        match self {
            LambdaTerm::Index(_) => None,
            LambdaTerm::Lam(b) => b.step().map(LambdaTerm::lam),
            LambdaTerm::App(f, a) => {
                if let LambdaTerm::Lam(body) = &**f {
                    return Some(LambdaTerm::beta(body, a));
                }
                if let Some(f2) = f.step() {
                    return Some(LambdaTerm::app(f2, (**a).clone()));
                }
                a.step().map(|a2| LambdaTerm::app((**f).clone(), a2))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BetaOutcome {
    Normal { result: LambdaTerm, steps: u64 },
    Budget { partial: LambdaTerm, steps: u64 },
}

impl BetaOutcome {
    pub fn normal_form(&self) -> Option<&LambdaTerm> {
        match self {
            BetaOutcome::Normal { result, .. } => Some(result),
            BetaOutcome::Budget { .. } => None,
        }
    }
}

/// Leftmost-outermost β-reduction to normal form within `budget` steps.
pub fn beta_normalize(t: &LambdaTerm, budget: u64) -> BetaOutcome {
    let mut cur = t.clone();
    let mut steps = 0;
    loop {
        let Some(next) = cur.step() else {
            return BetaOutcome::Normal { result: cur, steps };
        };
        if steps >= budget {
            return BetaOutcome::Budget { partial: cur, steps };
        }
        cur = next;
        steps += 1;
    }
}

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaTerm::Index(n) => write!(f, "{n}"),
            LambdaTerm::Lam(b) => write!(f, "\\{b}"),
            LambdaTerm::App(fun, arg) => {
                match &**fun {
                    LambdaTerm::Lam(_) => write!(f, "({fun})")?,
                    _ => write!(f, "{fun}")?,
                }
                match &**arg {
                    LambdaTerm::Index(n) => write!(f, " {n}"),
                    _ => write!(f, " ({arg})"),
                }
            }
        }
    }
}

struct LambdaParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl LambdaParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, message: &str) -> Result<T, LambdaError> {
        Err(LambdaError::Parse { pos: self.pos, message: message.into() })
    }

    fn term(&mut self) -> Result<LambdaTerm, LambdaError> {
        let mut acc: Option<LambdaTerm> = None;
        loop {
            self.skip_ws();
            let Some(&c) = self.src.get(self.pos) else {
                break;
            };
            let item = match c {
                b')' => break,
                b'\\' => {
                    self.pos += 1;
                    LambdaTerm::lam(self.term()?)
                }
                b'(' => {
                    self.pos += 1;
                    let t = self.term()?;
                    self.skip_ws();
                    if self.src.get(self.pos) != Some(&b')') {
                        return self.err("expected `)`");
                    }
                    self.pos += 1;
                    t
                }
                c if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                    match digits.parse() {
                        Ok(n) => LambdaTerm::Index(n),
                        Err(_) => return self.err("index too large"),
                    }
                }
                _ => return self.err("unexpected character"),
            };
            acc = Some(match acc {
                None => item,
                Some(f) => LambdaTerm::app(f, item),
            });
        }
        match acc {
            Some(t) => Ok(t),
            None => self.err("expected a λ-term"),
        }
    }
}

/// Parses `\` abstractions, decimal indices and juxtaposition, e.g. `\\1 0`.
pub fn parse_lambda(text: &str) -> Result<LambdaTerm, LambdaError> {
    let mut p = LambdaParser { src: text.as_bytes(), pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return p.err("unbalanced `)`");
    }
    Ok(t)
}

/// `K` of the calculus: `K` itself, or `FF` in SF-calculus.
pub fn k_combinator(calculus: Calculus) -> Term {
    match calculus {
        Calculus::SK => Term::k(),
        Calculus::SF => Term::app(Term::f(), Term::f()),
    }
}

/// `S K K` with `K` as above.
pub fn identity_combinator(calculus: Calculus) -> Term {
    let k = k_combinator(calculus);
    Term::apply(Term::s(), [k.clone(), k])
}

/// Eliminates variable `x` from `body`:
///
/// ```text
/// [x]x     = S K K
/// [x]M     = K M              (x not free in M)
/// [x](M N) = S ([x]M) ([x]N)
/// ```
pub fn abstract_var(x: &str, body: &Term, calculus: Calculus) -> Term {
    if !body.has_free_var(x) {
        return Term::app(k_combinator(calculus), body.clone());
    }
    match body.node() {
        Node::Var(_) => identity_combinator(calculus),
        Node::App(m, n) => Term::apply(Term::s(), [abstract_var(x, m, calculus), abstract_var(x, n, calculus)]),
        Node::Atom(_) => unreachable!("atoms have no free variables"),
    }
}

/// Abstracts several variables: `[x1]([x2](... body))`.
pub fn abstract_vars(params: &[&str], body: &Term, calculus: Calculus) -> Term {
    params.iter().rev().fold(body.clone(), |acc, x| abstract_var(x, &acc, calculus))
}

/// Translates a closed λ-term into a closed combinator.
pub fn bracket_abstract(t: &LambdaTerm, calculus: Calculus) -> Result<Term, LambdaError> {
    fn go(t: &LambdaTerm, depth: usize, calculus: Calculus) -> Result<Term, LambdaError> {
        match t {
            LambdaTerm::Index(n) if *n < depth => Ok(Term::var(format!("v{}", depth - 1 - n))),
            LambdaTerm::Index(n) => Err(LambdaError::Open { index: *n }),
            LambdaTerm::App(f, a) => Ok(Term::app(go(f, depth, calculus)?, go(a, depth, calculus)?)),
            LambdaTerm::Lam(b) => {
                let body = go(b, depth + 1, calculus)?;
                Ok(abstract_var(&format!("v{depth}"), &body, calculus))
            }
        }
    }
    go(t, 0, calculus)
}

/// Church numeral `λf.λx.f^n x` as a λ-term.
pub fn church_lambda(n: usize) -> LambdaTerm {
    let mut body = LambdaTerm::Index(0);
    for _ in 0..n {
        body = LambdaTerm::app(LambdaTerm::Index(1), body);
    }
    LambdaTerm::lam(LambdaTerm::lam(body))
}

/// Every closed λ-term with at most `max_size` nodes, smallest first.
pub fn enumerate_closed_lambda(max_size: usize) -> Vec<LambdaTerm> {
    // exact[s][d]: terms of size s whose free indices are below d
    fn exact(size: usize, depth: usize, memo: &mut HashMap<(usize, usize), Vec<LambdaTerm>>) -> Vec<LambdaTerm> {
        if let Some(v) = memo.get(&(size, depth)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.extend((0..depth).map(LambdaTerm::Index));
        } else {
            out.extend(exact(size - 1, depth + 1, memo).into_iter().map(LambdaTerm::lam));
            for left in 1..size - 1 {
                let fs = exact(left, depth, memo);
                let args = exact(size - 1 - left, depth, memo);
                for f in &fs {
                    for a in &args {
                        out.push(LambdaTerm::app(f.clone(), a.clone()));
                    }
                }
            }
        }
        memo.insert((size, depth), out.clone());
        out
    }
    let mut memo = HashMap::new();
    (1..=max_size).flat_map(|s| exact(s, 0, &mut memo)).collect()
}

/// Most fresh variables fed to a term before its head must be a variable.
const MAX_FRESH: usize = 8;

/// Extensional comparison of two combinators by fresh-variable probing:
/// both are applied to the same fresh variables until their normal forms
/// are headed by a variable, then heads and argument counts must match and
/// the arguments are compared the same way, down to `depth` levels.
pub fn agree_on_fresh_variables(a: &Term, b: &Term, reducer: &Reducer, depth: usize) -> bool {
    fn go(a: &Term, b: &Term, reducer: &Reducer, depth: usize, fresh: &mut usize) -> bool {
        if depth == 0 {
            return true;
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        for _ in 0..=MAX_FRESH {
            let (na, nb) = (reducer.normalize(&a), reducer.normalize(&b));
            if na.is_budget() || nb.is_budget() {
                return na.is_budget() && nb.is_budget();
            }
            let (na, nb) = (na.term().clone(), nb.term().clone());
            if na.head() == Head::Var && nb.head() == Head::Var {
                let (ha, xs) = na.spine();
                let (hb, ys) = nb.spine();
                return ha == hb
                    && xs.len() == ys.len()
                    && xs.iter().zip(&ys).all(|(x, y)| go(x, y, reducer, depth - 1, fresh));
            }
            let v = Term::var(format!("_{fresh}"));
            *fresh += 1;
            a = Term::app(na, v.clone());
            b = Term::app(nb, v);
        }
        false
    }
    go(a, b, reducer, depth, &mut 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn lam(s: &str) -> LambdaTerm {
        parse_lambda(s).unwrap()
    }

    #[test]
    fn parsing_and_printing() {
        let t = lam("\\\\1 0");
        assert_eq!(t, LambdaTerm::lam(LambdaTerm::lam(LambdaTerm::app(LambdaTerm::Index(1), LambdaTerm::Index(0)))));
        assert_eq!(t.to_string(), "\\\\1 0");
        for s in ["(\\0) (\\0)", "\\0 (\\0)", "\\\\\\2 0 (1 0)", "(\\0 0) (\\0 0)", "\\12"] {
            assert_eq!(lam(s).to_string(), s);
        }
        assert!(parse_lambda("\\").is_err());
        assert!(parse_lambda("(0").is_err());
        assert!(parse_lambda("x").is_err());
        assert!(lam("\\\\1 0").is_closed());
        assert!(!lam("\\1").is_closed());
    }

    #[test]
    fn beta_examples() {
        let t = LambdaTerm::app(lam("\\0"), lam("\\\\1 0"));
        assert_eq!(beta_normalize(&t, 100).normal_form(), Some(&lam("\\\\1 0")));
        assert_eq!(beta_normalize(&lam("(\\0) (\\0)"), 100).normal_form(), Some(&lam("\\0")));
        assert!(matches!(beta_normalize(&lam("(\\0 0) (\\0 0)"), 100), BetaOutcome::Budget { .. }));
    }

    #[test]
    fn shifting_under_binders() {
        // (λλ1) (λ0) applied inside a binder: λ((λλ2 0) 0) -> λλ1 0
        let t = lam("\\(\\\\2 0) 0");
        assert_eq!(beta_normalize(&t, 10).normal_form(), Some(&lam("\\\\1 0")));
        // K applied to a free-ish reference: λ(λλ1) 0 -> λλ1
        let t = lam("\\(\\\\1) 0");
        assert_eq!(beta_normalize(&t, 10).normal_form(), Some(&lam("\\\\1")));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_abstract(&lam("\\0"), Calculus::SK).unwrap(), parse("SKK", Calculus::SK).unwrap());
        assert_eq!(bracket_abstract(&lam("\\0"), Calculus::SF).unwrap(), parse("S(FF)(FF)", Calculus::SF).unwrap());
        assert_eq!(bracket_abstract(&lam("\\\\1"), Calculus::SK).unwrap(), parse("S(KK)(SKK)", Calculus::SK).unwrap());
        assert_eq!(bracket_abstract(&lam("\\1"), Calculus::SK), Err(LambdaError::Open { index: 1 }));
    }

    #[test]
    fn church_zero_and_one() {
        let zero = bracket_abstract(&church_lambda(0), Calculus::SK).unwrap();
        assert_eq!(zero.to_string(), "K(SKK)");
        let one = bracket_abstract(&church_lambda(1), Calculus::SK).unwrap();
        assert_eq!(one.to_string(), "S(S(KS)(S(KK)(SKK)))(K(SKK))");
    }

    #[test]
    fn closed_lambda_enumeration() {
        let terms = enumerate_closed_lambda(3);
        let shown: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, ["\\0", "\\\\0", "\\\\1"]);
        let five = enumerate_closed_lambda(5);
        assert!(five.iter().all(|t| t.is_closed() && t.size() <= 5));
        let unique: std::collections::HashSet<_> = five.iter().collect();
        assert_eq!(unique.len(), five.len());
        // brute force over index bound 4 agrees on the count
        fn all(size: usize) -> Vec<LambdaTerm> {
            if size == 1 {
                return (0..4).map(LambdaTerm::Index).collect();
            }
            let mut out: Vec<LambdaTerm> = all(size - 1).into_iter().map(LambdaTerm::lam).collect();
            for l in 1..size - 1 {
                for f in all(l) {
                    for a in all(size - 1 - l) {
                        out.push(LambdaTerm::app(f.clone(), a));
                    }
                }
            }
            out
        }
        let brute = (1..=5).flat_map(all).filter(LambdaTerm::is_closed).count();
        assert_eq!(brute, five.len());
    }

    #[test]
    fn fresh_variable_probing() {
        let r = Reducer::new(Calculus::SK, 10_000);
        let sk = |s: &str| parse(s, Calculus::SK).unwrap();
        assert!(agree_on_fresh_variables(&sk("SKK"), &sk("SKS"), &r, 4));
        assert!(!agree_on_fresh_variables(&sk("K"), &sk("SKK"), &r, 4));
        // eta: S(K x)(SKK) behaves as x
        assert!(agree_on_fresh_variables(&sk("S(K(SKK))(SKK)"), &sk("SKK"), &r, 4));
        assert!(!agree_on_fresh_variables(&sk("K"), &sk("K(SKK)"), &r, 4));
        let omega = sk("SII(SII)").substitute("I", &sk("SKK"));
        assert!(agree_on_fresh_variables(&omega, &omega, &r, 4));
    }
}
