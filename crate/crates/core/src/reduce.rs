//! Rewrite rules of SK- and SF-calculus, reduction strategies and traces.
//!
//! The rules:
//!
//! ```text
//! S x y z      -> x z (y z)
//! K x y        -> x
//! F o m n      -> m          when o is an operator
//! F (p q) m n  -> n p q      when p q is a compound
//! ```
//!
//! `F` only fires when its first argument is factorable. A fully applied `F`
//! whose first argument is still reducible waits for that argument; one whose
//! first argument is headed by a variable is stuck.

use std::fmt;

use crate::term::{Calculus, Head, Node, Operator, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Leftmost-outermost.
    #[default]
    NormalOrder,
    /// Rightmost-innermost.
    ApplicativeOrder,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "normal" => Ok(Strategy::NormalOrder),
            "applicative" => Ok(Strategy::ApplicativeOrder),
            other => Err(format!("unknown strategy `{other}` (expected normal or applicative)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    S,
    K,
    FAtom,
    FCompound,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::S => "S-rule",
            Rule::K => "K-rule",
            Rule::FAtom => "F-atom-rule",
            Rule::FCompound => "F-compound-rule",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    Left,
    Right,
}

/// A position in a term: the left/right choices taken from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Path(pub Vec<Dir>);

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for d in &self.0 {
            f.write_str(match d {
                Dir::Left => "L",
                Dir::Right => "R",
            })?;
        }
        Ok(())
    }
}

impl Path {
    pub fn subterm<'t>(&self, t: &'t Term) -> Option<&'t Term> {
        let mut cur = t;
        for d in &self.0 {
            let (f, a) = cur.as_app()?;
            cur = match d {
                Dir::Left => f,
                Dir::Right => a,
            };
        }
        Some(cur)
    }

    /// Rebuilds `t` with the subterm at this path replaced by `with`.
    pub fn replace(&self, t: &Term, with: Term) -> Option<Term> {
        let mut ancestors = Vec::with_capacity(self.0.len());
        let mut cur = t;
        for d in &self.0 {
            let (f, a) = cur.as_app()?;
            ancestors.push(cur);
            cur = match d {
                Dir::Left => f,
                Dir::Right => a,
            };
        }
        let mut acc = with;
        for (node, d) in ancestors.into_iter().zip(&self.0).rev() {
            let (f, a) = node.as_app().expect("ancestor is an application");
            acc = match d {
                Dir::Left => Term::app(acc, a.clone()),
                Dir::Right => Term::app(f.clone(), acc),
            };
        }
        Some(acc)
    }
}

/// One rewrite: the redex found at `path` and its contractum.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub path: Path,
    pub rule: Rule,
    pub before: Term,
    pub after: Term,
}

impl Step {
    /// Applies this step to the whole term it was found in.
    pub fn apply_to(&self, whole: &Term) -> Term {
        self.path.replace(whole, self.after.clone()).expect("step path exists in term")
    }
}

/// Contracts a redex at the root of `t`, if `t` is one.
pub fn contract(t: &Term) -> Option<(Rule, Term)> {
    let (head, args) = t.spine();
    let op = head.as_atom()?;
    if args.len() != op.arity() {
        return None;
    }
    match op {
        Operator::S => {
            let (x, y, z) = (args[0], args[1], args[2]);
            Some((Rule::S, Term::app(Term::app(x.clone(), z.clone()), Term::app(y.clone(), z.clone()))))
        }
        Operator::K => Some((Rule::K, args[0].clone())),
        Operator::F => {
            let (o, m, n) = (args[0], args[1], args[2]);
            if !o.is_factorable() {
                return None;
            }
            match o.as_app() {
                None => Some((Rule::FAtom, m.clone())),
                Some((p, q)) => Some((Rule::FCompound, Term::app(Term::app(n.clone(), p.clone()), q.clone()))),
            }
        }
    }
}

fn push_lefts(path: &mut Vec<Dir>, n: usize) {
    path.extend(std::iter::repeat_n(Dir::Left, n));
}

/// Locates the strategy-selected redex. Relies on the exact step-existence
/// flag cached on every node, so the descent never backtracks.
fn locate(t: &Term, strategy: Strategy) -> Option<Path> {
    if t.is_step_free() {
        return None;
    }
    let mut path = Vec::new();
    let mut cur = t;
    loop {
        let (head, args) = cur.spine();
        let k = args.len();
        let prefix_fires = match head.node() {
            Node::Atom(op) if k >= op.arity() => {
                let redex_prefix_args = op.arity();
                match op {
                    Operator::F => args[0].is_factorable(),
                    _ => true,
                }
                .then_some(redex_prefix_args)
            }
            _ => None,
        };
        let arg_order: Box<dyn Iterator<Item = usize>> = match strategy {
            Strategy::NormalOrder => {
                if let Some(arity) = prefix_fires {
                    push_lefts(&mut path, k - arity);
                    return Some(Path(path));
                }
                Box::new(0..k)
            }
            Strategy::ApplicativeOrder => Box::new((0..k).rev()),
        };
        let mut next = None;
        for i in arg_order {
            if !args[i].is_step_free() {
                next = Some(i);
                break;
            }
        }
        match next {
            Some(i) => {
                push_lefts(&mut path, k - 1 - i);
                path.push(Dir::Right);
                cur = args[i];
            }
            None => {
                let arity = prefix_fires.expect("node with a step has a firing prefix or a reducible argument");
                push_lefts(&mut path, k - arity);
                return Some(Path(path));
            }
        }
    }
}

/// The unique strategy-selected step, or `None` when no redex exists.
pub fn step_once(t: &Term, _calculus: Calculus, strategy: Strategy) -> Option<Step> {
    let path = locate(t, strategy)?;
    let before = path.subterm(t).expect("located path").clone();
    let (rule, after) = contract(&before).expect("located a redex");
    Some(Step { path, rule, before, after })
}

/// Why a normalisation stopped without reaching a normal form or budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StuckReason {
    /// Only fully applied `F`s whose first argument is variable-headed remain.
    VarHeadedFactor,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReduceOutcome {
    Normal { result: Term, steps: Trace },
    Budget { partial: Term, steps: Trace },
    Stuck { term: Term, reason: StuckReason, steps: Trace },
}

/// Steps taken during a normalisation. `recorded` is empty unless tracing
/// was requested; `count` is always exact.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    pub count: u64,
    pub recorded: Vec<Step>,
}

impl ReduceOutcome {
    pub fn normal_form(&self) -> Option<&Term> {
        match self {
            ReduceOutcome::Normal { result, .. } => Some(result),
            _ => None,
        }
    }

    pub fn into_normal_form(self) -> Option<Term> {
        match self {
            ReduceOutcome::Normal { result, .. } => Some(result),
            _ => None,
        }
    }

    pub fn term(&self) -> &Term {
        match self {
            ReduceOutcome::Normal { result, .. } => result,
            ReduceOutcome::Budget { partial, .. } => partial,
            ReduceOutcome::Stuck { term, .. } => term,
        }
    }

    pub fn trace(&self) -> &Trace {
        match self {
            ReduceOutcome::Normal { steps, .. }
            | ReduceOutcome::Budget { steps, .. }
            | ReduceOutcome::Stuck { steps, .. } => steps,
        }
    }

    pub fn step_count(&self) -> u64 {
        self.trace().count
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, ReduceOutcome::Budget { .. })
    }
}

/// Reduction settings shared by a batch of normalisations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reducer {
    pub calculus: Calculus,
    pub strategy: Strategy,
    pub budget: u64,
    pub record_trace: bool,
}

impl Reducer {
    pub fn new(calculus: Calculus, budget: u64) -> Reducer {
        Reducer { calculus, strategy: Strategy::NormalOrder, budget, record_trace: false }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Reducer {
        self.strategy = strategy;
        self
    }

    pub fn traced(mut self) -> Reducer {
        self.record_trace = true;
        self
    }

    pub fn normalize(&self, t: &Term) -> ReduceOutcome {
        let mut cur = t.clone();
        let mut trace = Trace::default();
        loop {
            let Some(path) = locate(&cur, self.strategy) else {
                if cur.has_stuck_factor() {
                    return ReduceOutcome::Stuck { term: cur, reason: StuckReason::VarHeadedFactor, steps: trace };
                }
                return ReduceOutcome::Normal { result: cur, steps: trace };
            };
            if trace.count >= self.budget {
                return ReduceOutcome::Budget { partial: cur, steps: trace };
            }
            let before = path.subterm(&cur).expect("located path").clone();
            let (rule, after) = contract(&before).expect("located a redex");
            let next = path.replace(&cur, after.clone()).expect("located path");
            if self.record_trace {
                trace.recorded.push(Step { path, rule, before, after });
            }
            trace.count += 1;
            cur = next;
        }
    }

    /// Normalises `f a1 ... an`.
    pub fn apply(&self, f: &Term, args: &[Term]) -> ReduceOutcome {
        self.normalize(&Term::apply(f.clone(), args.iter().cloned()))
    }
}

/// Normalises with a full trace.
pub fn normalize(t: &Term, calculus: Calculus, strategy: Strategy, budget: u64) -> ReduceOutcome {
    Reducer { calculus, strategy, budget, record_trace: true }.normalize(t)
}

/// Renders a trace, one line per step:
/// `<step#> <rule> @ <path> : <before> => <after>`.
pub fn render_trace(steps: &[Step]) -> String {
    let mut out = String::new();
    for (i, s) in steps.iter().enumerate() {
        out.push_str(&format!("{} {} @ {} : {} => {}\n", i + 1, s.rule, s.path, s.before, s.after));
    }
    out
}

/// Per-probe comparison of `a X` and `b X`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeResult {
    pub probe: Term,
    pub left: ReduceOutcome,
    pub right: ReduceOutcome,
    pub agree: bool,
}

fn outcomes_agree(l: &ReduceOutcome, r: &ReduceOutcome) -> bool {
    match (l, r) {
        (ReduceOutcome::Normal { result: x, .. }, ReduceOutcome::Normal { result: y, .. }) => x == y,
        (ReduceOutcome::Budget { .. }, ReduceOutcome::Budget { .. }) => true,
        (ReduceOutcome::Stuck { term: x, .. }, ReduceOutcome::Stuck { term: y, .. }) => x == y,
        _ => false,
    }
}

pub fn probe_agreement(a: &Term, b: &Term, probes: &[Term], reducer: &Reducer) -> Vec<ProbeResult> {
    let quiet = Reducer { record_trace: false, ..*reducer };
    probes
        .iter()
        .map(|x| {
            let left = quiet.apply(a, std::slice::from_ref(x));
            let right = quiet.apply(b, std::slice::from_ref(x));
            let agree = outcomes_agree(&left, &right);
            ProbeResult { probe: x.clone(), left, right, agree }
        })
        .collect()
}

/// True iff `a X` and `b X` have identical normal forms (or both exhaust the
/// budget) for every probe `X`.
pub fn extensionally_agree(a: &Term, b: &Term, calculus: Calculus, probes: &[Term], budget: u64) -> bool {
    let reducer = Reducer::new(calculus, budget);
    probes.iter().all(|x| {
        let l = reducer.apply(a, std::slice::from_ref(x));
        let r = reducer.apply(b, std::slice::from_ref(x));
        outcomes_agree(&l, &r)
    })
}

/// True when no rule applies anywhere in `t` and `t` is not stuck.
pub fn is_normal(t: &Term) -> bool {
    t.is_step_free() && !t.has_stuck_factor()
}

/// All applications in a closed normal form are compounds.
pub fn all_apps_compound(t: &Term) -> bool {
    t.subterms()
        .filter(|s| s.as_app().is_some())
        .all(|s| matches!(s.head(), Head::Op(op) if s.spine_len() < op.arity()))
}
