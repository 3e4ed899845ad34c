//! Partial recursive functions over big naturals.
//!
//! Conventions: `Zero` and `Succ` are unary, `Proj(i, n)` is 1-indexed,
//! `PrimRec(base, step)` recurses on its first argument
//! (`f(0, xs) = base(xs)`, `f(k+1, xs) = step(k, f(k, xs), xs)`), and
//! `Mu(body)` searches its first argument: `mu y. body(y, xs) = 0`.
//!
//! The evaluator counts one call per node visit and stops when the budget
//! is spent. Library programs such as [`add`] and [`tri`] are recognised by
//! structure and can be run natively ("jets"); a jet still costs one call.

use std::fmt;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::term::{Node, Term, TermError};

use super::godel::{cantor_pair, gnum};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RecFn {
    Zero,
    Succ,
    Proj(usize, usize),
    Comp(Rc<RecFn>, Vec<RecFn>),
    PrimRec(Rc<RecFn>, Rc<RecFn>),
    Mu(Rc<RecFn>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecError {
    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("ill-formed program: {0}")]
    IllFormed(String),
}

impl RecFn {
    pub fn comp(outer: RecFn, inners: Vec<RecFn>) -> RecFn {
        RecFn::Comp(Rc::new(outer), inners)
    }

    pub fn prim_rec(base: RecFn, step: RecFn) -> RecFn {
        RecFn::PrimRec(Rc::new(base), Rc::new(step))
    }

    pub fn mu(body: RecFn) -> RecFn {
        RecFn::Mu(Rc::new(body))
    }

    /// Arity under the standard formation rules, or the first rule broken.
    pub fn arity(&self) -> Result<usize, RecError> {
        match self {
            RecFn::Zero | RecFn::Succ => Ok(1),
            RecFn::Proj(i, n) => {
                if *i >= 1 && i <= n {
                    Ok(*n)
                } else {
                    Err(RecError::IllFormed(format!("projection {i} of {n}")))
                }
            }
            RecFn::Comp(outer, inners) => {
                let k = outer.arity()?;
                if inners.len() != k {
                    return Err(RecError::IllFormed(format!(
                        "composition feeds {} functions into one of arity {k}",
                        inners.len()
                    )));
                }
                let mut arities = inners.iter().map(RecFn::arity);
                let n = arities
                    .next()
                    .ok_or_else(|| RecError::IllFormed("composition with no inner functions".into()))??;
                for a in arities {
                    if a? != n {
                        return Err(RecError::IllFormed("inner functions of a composition disagree on arity".into()));
                    }
                }
                Ok(n)
            }
            RecFn::PrimRec(base, step) => {
                let b = base.arity()?;
                let s = step.arity()?;
                if s != b + 2 {
                    return Err(RecError::IllFormed(format!(
                        "primitive recursion with base arity {b} needs step arity {}, got {s}",
                        b + 2
                    )));
                }
                Ok(b + 1)
            }
            RecFn::Mu(body) => {
                let b = body.arity()?;
                if b == 0 {
                    return Err(RecError::IllFormed("minimisation over a nullary body".into()));
                }
                Ok(b - 1)
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            RecFn::Zero | RecFn::Succ | RecFn::Proj(..) => 1,
            RecFn::Comp(o, hs) => 1 + o.size() + hs.iter().map(RecFn::size).sum::<usize>(),
            RecFn::PrimRec(b, s) => 1 + b.size() + s.size(),
            RecFn::Mu(b) => 1 + b.size(),
        }
    }
}

impl fmt::Display for RecFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecFn::Zero => write!(f, "Zero"),
            RecFn::Succ => write!(f, "Succ"),
            RecFn::Proj(i, n) => write!(f, "Proj({i},{n})"),
            RecFn::Comp(o, hs) => {
                write!(f, "Comp({o},[")?;
                for (i, h) in hs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{h}")?;
                }
                write!(f, "])")
            }
            RecFn::PrimRec(b, s) => write!(f, "PrimRec({b},{s})"),
            RecFn::Mu(b) => write!(f, "Mu({b})"),
        }
    }
}

/// A natively evaluated library program.
#[derive(Clone)]
pub struct Jet {
    pub name: &'static str,
    pub program: RecFn,
    pub native: fn(&[BigUint]) -> BigUint,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet").field("name", &self.name).finish()
    }
}

/// The jets for [`add`], [`mul`], [`pred`], [`sub_from`] and [`tri`].
pub fn standard_jets() -> Vec<Jet> {
    vec![
        Jet { name: "add", program: add(), native: |a| &a[0] + &a[1] },
        Jet { name: "mul", program: mul(), native: |a| &a[0] * &a[1] },
        Jet {
            name: "pred",
            program: pred(),
            native: |a| {
                if a[0].is_zero() {
                    BigUint::zero()
                } else {
                    &a[0] - 1u32
                }
            },
        },
        Jet {
            name: "sub_from",
            program: sub_from(),
            native: |a| {
                if a[0] >= a[1] {
                    BigUint::zero()
                } else {
                    &a[1] - &a[0]
                }
            },
        },
        Jet { name: "tri", program: tri(), native: |a| (&a[0] * (&a[0] + 1u32)) / 2u32 },
    ]
}

#[derive(Debug)]
pub struct Evaluator {
    budget: u64,
    jets: Vec<Jet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalReport {
    /// `None` when the budget ran out first.
    pub value: Option<BigUint>,
    pub calls: u64,
}

struct Exhausted;

impl Evaluator {
    /// Plain Kleene semantics, no jets.
    pub fn naive(budget: u64) -> Evaluator {
        Evaluator { budget, jets: Vec::new() }
    }

    pub fn with_jets(budget: u64) -> Evaluator {
        Evaluator { budget, jets: standard_jets() }
    }

    pub fn eval(&self, f: &RecFn, args: &[BigUint]) -> Result<EvalReport, RecError> {
        let expected = f.arity()?;
        if expected != args.len() {
            return Err(RecError::Arity { expected, got: args.len() });
        }
        let mut calls = 0u64;
        let value = self.go(f, args, &mut calls).ok();
        Ok(EvalReport { value, calls })
    }

    fn tick(&self, calls: &mut u64) -> Result<(), Exhausted> {
        if *calls >= self.budget {
            return Err(Exhausted);
        }
        *calls += 1;
        Ok(())
    }

    fn go(&self, f: &RecFn, args: &[BigUint], calls: &mut u64) -> Result<BigUint, Exhausted> {
        self.tick(calls)?;
        if matches!(f, RecFn::Comp(..) | RecFn::PrimRec(..)) {
            if let Some(jet) = self.jets.iter().find(|j| j.program == *f) {
                return Ok((jet.native)(args));
            }
        }
        match f {
            RecFn::Zero => Ok(BigUint::zero()),
            RecFn::Succ => Ok(&args[0] + 1u32),
            RecFn::Proj(i, _) => Ok(args[i - 1].clone()),
            RecFn::Comp(outer, inners) => {
                let mid = inners.iter().map(|h| self.go(h, args, calls)).collect::<Result<Vec<_>, _>>()?;
                self.go(outer, &mid, calls)
            }
            RecFn::PrimRec(base, step) => {
                let rest = &args[1..];
                let mut acc = self.go(base, rest, calls)?;
                let mut k = BigUint::zero();
                let mut frame = Vec::with_capacity(args.len() + 1);
                while k < args[0] {
                    frame.clear();
                    frame.push(k.clone());
                    frame.push(acc);
                    frame.extend_from_slice(rest);
                    acc = self.go(step, &frame, calls)?;
                    k += 1u32;
                }
                Ok(acc)
            }
            RecFn::Mu(body) => {
                let mut y = BigUint::zero();
                let mut frame: Vec<BigUint> = std::iter::once(BigUint::zero()).chain(args.iter().cloned()).collect();
                loop {
                    frame[0] = y.clone();
                    if self.go(body, &frame, calls)?.is_zero() {
                        return Ok(y);
                    }
                    y += 1u32;
                }
            }
        }
    }
}

/// Evaluates with the standard jets; `None` means undefined within `budget` calls.
pub fn eval_rec(f: &RecFn, args: &[BigUint], budget: u64) -> Result<Option<BigUint>, RecError> {
    Ok(Evaluator::with_jets(budget).eval(f, args)?.value)
}

fn proj(i: usize, n: usize) -> RecFn {
    RecFn::Proj(i, n)
}

/// Turns a recursion on the first of two arguments into a unary one.
fn diagonal(f: RecFn) -> RecFn {
    RecFn::comp(f, vec![proj(1, 1), proj(1, 1)])
}

/// The constant `k` as a function of `arity` arguments.
pub fn constant(k: u64, arity: usize) -> RecFn {
    let mut f = RecFn::comp(RecFn::Zero, vec![proj(1, arity)]);
    for _ in 0..k {
        f = RecFn::comp(RecFn::Succ, vec![f]);
    }
    f
}

/// `add(k, x) = k + x`.
pub fn add() -> RecFn {
    RecFn::prim_rec(proj(1, 1), RecFn::comp(RecFn::Succ, vec![proj(2, 3)]))
}

/// `mul(k, x) = k * x`.
pub fn mul() -> RecFn {
    RecFn::prim_rec(constant(0, 1), RecFn::comp(add(), vec![proj(2, 3), proj(3, 3)]))
}

/// Truncated predecessor.
pub fn pred() -> RecFn {
    diagonal(RecFn::prim_rec(constant(0, 1), proj(1, 3)))
}

/// `sub_from(k, x) = x - k`, truncated at zero.
pub fn sub_from() -> RecFn {
    RecFn::prim_rec(proj(1, 1), RecFn::comp(pred(), vec![proj(2, 3)]))
}

/// `monus(x, y) = x - y`, truncated at zero.
pub fn monus() -> RecFn {
    RecFn::comp(sub_from(), vec![proj(2, 2), proj(1, 2)])
}

/// 1 on zero, 0 elsewhere.
pub fn is_zero() -> RecFn {
    diagonal(RecFn::prim_rec(constant(1, 1), constant(0, 3)))
}

/// 0 on zero, 1 elsewhere.
pub fn sign() -> RecFn {
    diagonal(RecFn::prim_rec(constant(0, 1), constant(1, 3)))
}

/// Triangular numbers `n(n+1)/2`.
pub fn tri() -> RecFn {
    let step = RecFn::comp(add(), vec![RecFn::comp(RecFn::Succ, vec![proj(1, 3)]), proj(2, 3)]);
    diagonal(RecFn::prim_rec(constant(0, 1), step))
}

/// `cantor(a, b) = tri(a + b) + b`.
pub fn cantor() -> RecFn {
    RecFn::comp(add(), vec![RecFn::comp(tri(), vec![add()]), proj(2, 2)])
}

/// Code of an application from the codes of its parts: `cantor(p, q) + 3`.
pub fn gnum_app() -> RecFn {
    let mut f = cantor();
    for _ in 0..3 {
        f = RecFn::comp(RecFn::Succ, vec![f]);
    }
    f
}

/// `cond(c, x, y)` is `x` when `c = 0` and `y` otherwise.
pub fn cond() -> RecFn {
    let branch =
        |value: usize, guard: RecFn| RecFn::comp(mul(), vec![proj(value, 3), RecFn::comp(guard, vec![proj(1, 3)])]);
    RecFn::comp(add(), vec![branch(2, is_zero()), branch(3, sign())])
}

/// Largest `w` with `tri(w) <= z`, found by unbounded search.
pub fn unpair_diagonal() -> RecFn {
    // mu w. [tri(w + 1) <= z]
    let tri_next = RecFn::comp(tri(), vec![RecFn::comp(RecFn::Succ, vec![proj(1, 2)])]);
    let above = RecFn::comp(monus(), vec![tri_next, proj(2, 2)]);
    RecFn::mu(RecFn::comp(is_zero(), vec![above]))
}

/// Second component of the Cantor unpairing.
pub fn unpair_right() -> RecFn {
    RecFn::comp(monus(), vec![proj(1, 1), RecFn::comp(tri(), vec![unpair_diagonal()])])
}

/// First component of the Cantor unpairing.
pub fn unpair_left() -> RecFn {
    RecFn::comp(monus(), vec![unpair_diagonal(), unpair_right()])
}

fn on_components(component: RecFn) -> RecFn {
    // n <= 2 codes an atom, which is its own component
    let n_minus = |k| RecFn::comp(monus(), vec![proj(1, 1), constant(k, 1)]);
    RecFn::comp(cond(), vec![n_minus(2), proj(1, 1), RecFn::comp(component, vec![n_minus(3)])])
}

/// On codes: the function part of an application, an atom unchanged.
pub fn car_code() -> RecFn {
    on_components(unpair_left())
}

/// On codes: the argument part of an application, an atom unchanged.
pub fn cdr_code() -> RecFn {
    on_components(unpair_right())
}

/// The constant function of `arity` arguments returning `gnum(t)`, built
/// from the atom codes by the pairing recurrence.
pub fn term_code(t: &Term, arity: usize) -> Result<RecFn, TermError> {
    if !t.is_closed() {
        return Err(TermError::Open);
    }
    fn go(t: &Term, arity: usize) -> RecFn {
        match t.node() {
            Node::Atom(op) => constant(if op.symbol() == 'S' { 1 } else { 2 }, arity),
            Node::App(p, q) => RecFn::comp(gnum_app(), vec![go(p, arity), go(q, arity)]),
            Node::Var(_) => unreachable!("closed"),
        }
    }
    Ok(go(t, arity))
}

/// `n` maps to `gnum(a^n b)` where `a^0 b = b` and `a^(k+1) b = a (a^k b)`.
///
/// Church numerals satisfy `cn(n + 1) = succ cn(n)` syntactically, so with
/// `a = succ` and `b = cn(0)` this computes the code of `cn(n)`.
pub fn iterated_code(a: &Term, b: &Term) -> Result<RecFn, TermError> {
    let step = RecFn::comp(gnum_app(), vec![term_code(a, 3)?, proj(2, 3)]);
    Ok(diagonal(RecFn::prim_rec(term_code(b, 1)?, step)))
}

/// Meta-level check that `iterated_code(a, b)` is the intended program:
/// the code of `a^n b` computed directly.
pub fn iterated_code_oracle(a: &Term, b: &Term, n: usize) -> Result<BigUint, TermError> {
    let mut code = gnum(b)?;
    let ca = gnum(a)?;
    for _ in 0..n {
        code = cantor_pair(&ca, &code) + 3u32;
    }
    Ok(code)
}

/// The naturals `0..n` as `BigUint`.
pub fn nats(n: u64) -> impl Iterator<Item = BigUint> {
    (0..n).map(BigUint::from)
}

/// Convenience for tests and examples: `BigUint::from`.
pub fn nat(n: u64) -> BigUint {
    BigUint::from(n)
}
