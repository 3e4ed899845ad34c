//! Models of computability, encodings between them, and the two checks
//! that compare models: the simulation law `enc(f1(xs)) = f2(enc(xs))`
//! and in-model computability of a recoding.

pub mod enumerate;
pub mod godel;
pub mod recfn;

use std::fmt;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::reduce::{is_normal, ReduceOutcome, Reducer, Strategy};
use crate::stdlib::{church_numeral, define_core, Catalog};
use crate::syntax::{from_polish, to_polish, PolishWord};
use crate::term::{Calculus, Term};
use crate::turing::{run_machine, Halt, MachineSpec};

use recfn::{Evaluator, RecFn};

/// The universal value space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Nat(BigUint),
    Term(Term),
    Word(PolishWord),
}

impl Value {
    pub fn nat(n: u64) -> Value {
        Value::Nat(BigUint::from(n))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(n) => write!(f, "{n}"),
            Value::Term(t) => write!(f, "{t}"),
            Value::Word(w) => write!(f, "{w}"),
        }
    }
}

/// How a Turing machine's halting configuration is read as a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Readout {
    /// Accept yields the tape contents; reject is undefined.
    Tape,
    /// Accept and reject yield the Polish words of `true` and `false`.
    Decision,
}

#[derive(Clone, Debug)]
pub enum Program {
    Rec(RecFn),
    Comb(Term),
    Machine(MachineSpec, Readout),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applied {
    Value(Value),
    Undefined(String),
    Budget,
}

pub trait Model {
    fn name(&self) -> String;
    fn contains(&self, v: &Value) -> bool;
    /// Deterministic; a returned value is a member of the domain.
    fn apply(&self, program: &Program, args: &[Value]) -> Applied;
}

fn guard_args(model: &dyn Model, args: &[Value]) -> Option<Applied> {
    args.iter().find(|a| !model.contains(a)).map(|a| {
        Applied::Undefined(format!("argument {} is outside the domain of {}", abbreviate(&a.to_string()), model.name()))
    })
}

fn wrong_program(model: &dyn Model) -> Applied {
    Applied::Undefined(format!("not a program of {}", model.name()))
}

/// Naturals with the partial recursive functions; the budget counts calls.
#[derive(Clone, Debug)]
pub struct RecursiveModel {
    pub budget: u64,
}

impl Model for RecursiveModel {
    fn name(&self) -> String {
        "recursive".into()
    }

    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Nat(_))
    }

    fn apply(&self, program: &Program, args: &[Value]) -> Applied {
        let Program::Rec(f) = program else {
            return wrong_program(self);
        };
        if let Some(bad) = guard_args(self, args) {
            return bad;
        }
        let nats: Vec<BigUint> = args
            .iter()
            .map(|a| match a {
                Value::Nat(n) => n.clone(),
                _ => unreachable!("guarded"),
            })
            .collect();
        match Evaluator::with_jets(self.budget).eval(f, &nats) {
            Ok(r) => r.value.map_or(Applied::Budget, |n| Applied::Value(Value::Nat(n))),
            Err(e) => Applied::Undefined(e.to_string()),
        }
    }
}

/// Closed normal forms of a calculus, with functions represented by closed terms.
#[derive(Clone, Debug)]
pub struct NormalModel {
    pub calculus: Calculus,
    pub strategy: Strategy,
    pub budget: u64,
}

impl NormalModel {
    pub fn new(calculus: Calculus, budget: u64) -> NormalModel {
        NormalModel { calculus, strategy: Strategy::NormalOrder, budget }
    }

    fn is_value(&self, t: &Term) -> bool {
        t.is_closed() && t.check_calculus(self.calculus).is_ok() && is_normal(t)
    }
}

impl Model for NormalModel {
    fn name(&self) -> String {
        format!("{} normal", self.calculus)
    }

    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Term(t) if self.is_value(t))
    }

    fn apply(&self, program: &Program, args: &[Value]) -> Applied {
        let Program::Comb(f) = program else {
            return wrong_program(self);
        };
        if !f.is_closed() || f.check_calculus(self.calculus).is_err() {
            return wrong_program(self);
        }
        if let Some(bad) = guard_args(self, args) {
            return bad;
        }
        let terms: Vec<Term> = args
            .iter()
            .map(|a| match a {
                Value::Term(t) => t.clone(),
                _ => unreachable!("guarded"),
            })
            .collect();
        let reducer = Reducer::new(self.calculus, self.budget).with_strategy(self.strategy);
        match reducer.apply(f, &terms) {
            ReduceOutcome::Normal { result, .. } => Applied::Value(Value::Term(result)),
            ReduceOutcome::Budget { .. } => Applied::Budget,
            ReduceOutcome::Stuck { term, .. } => {
                Applied::Undefined(format!("stuck at {}", abbreviate(&term.to_string())))
            }
        }
    }
}

/// Closed normal forms written as Polish words, with Turing machines as
/// programs. Arguments are joined by `#` on the input tape.
#[derive(Clone, Debug)]
pub struct TuringModel {
    pub calculus: Calculus,
    pub budget: u64,
}

impl TuringModel {
    fn word_of(&self, t: &Term) -> Value {
        Value::Word(to_polish(t).expect("closed"))
    }
}

impl Model for TuringModel {
    fn name(&self) -> String {
        format!("{} Turing", self.calculus)
    }

    fn contains(&self, v: &Value) -> bool {
        match v {
            Value::Word(w) => from_polish(w, self.calculus).is_ok_and(|t| is_normal(&t)),
            _ => false,
        }
    }

    fn apply(&self, program: &Program, args: &[Value]) -> Applied {
        let Program::Machine(m, readout) = program else {
            return wrong_program(self);
        };
        if let Some(bad) = guard_args(self, args) {
            return bad;
        }
        let input: Vec<String> = args.iter().map(|a| a.to_string()).collect();
        let out = match run_machine(m, &input.join("#"), self.budget) {
            Ok(out) => out,
            Err(e) => return Applied::Undefined(e.to_string()),
        };
        let catalog = define_core(self.calculus);
        match (out.halt, readout) {
            (Halt::Budget, _) => Applied::Budget,
            (Halt::Accept, Readout::Decision) => Applied::Value(self.word_of(&catalog.term("true"))),
            (Halt::Reject, Readout::Decision) => Applied::Value(self.word_of(&catalog.term("false"))),
            (Halt::Reject, Readout::Tape) => Applied::Undefined("rejected".into()),
            (Halt::Accept, Readout::Tape) => {
                let contents = out.tape.contents();
                match PolishWord::parse(&contents) {
                    Ok(w) if self.contains(&Value::Word(w.clone())) => Applied::Value(Value::Word(w)),
                    _ => Applied::Undefined(format!("tape {} is not a value", abbreviate(&contents))),
                }
            }
        }
    }
}

type Map = dyn Fn(&Value) -> Option<Value>;

/// An injective map from one model's domain into another's.
#[derive(Clone)]
pub struct Encoding {
    name: String,
    source: Rc<dyn Model>,
    target: Rc<dyn Model>,
    map: Rc<Map>,
}

impl fmt::Debug for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Encoding({}: {} -> {})", self.name, self.source.name(), self.target.name())
    }
}

impl Encoding {
    pub fn new(
        name: impl Into<String>,
        source: Rc<dyn Model>,
        target: Rc<dyn Model>,
        map: impl Fn(&Value) -> Option<Value> + 'static,
    ) -> Encoding {
        Encoding { name: name.into(), source, target, map: Rc::new(map) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Rc<dyn Model> {
        &self.source
    }

    pub fn target(&self) -> &Rc<dyn Model> {
        &self.target
    }

    /// `None` for values outside the source domain.
    pub fn encode(&self, v: &Value) -> Option<Value> {
        if !self.source.contains(v) {
            return None;
        }
        (self.map)(v)
    }

    /// Naturals as Church numerals.
    pub fn church(source: Rc<dyn Model>, target: Rc<NormalModel>) -> Encoding {
        let calculus = target.calculus;
        Encoding::new("church", source, target, move |v| match v {
            Value::Nat(n) => Some(Value::Term(church_numeral(n.to_usize()?, calculus))),
            _ => None,
        })
    }

    /// Closed terms by their Gödel numbers.
    pub fn godel(source: Rc<dyn Model>, target: Rc<dyn Model>) -> Encoding {
        Encoding::new("godel", source, target, |v| match v {
            Value::Term(t) => Some(Value::Nat(godel::gnum(t).ok()?)),
            _ => None,
        })
    }

    /// Closed terms by their Polish words.
    pub fn polish(source: Rc<dyn Model>, target: Rc<dyn Model>) -> Encoding {
        Encoding::new("polish", source, target, |v| match v {
            Value::Term(t) => Some(Value::Word(to_polish(t).ok()?)),
            _ => None,
        })
    }

    pub fn identity(model: Rc<dyn Model>) -> Encoding {
        Encoding::new("identity", model.clone(), model, |v| Some(v.clone()))
    }
}

/// Two distinct inputs with the same image, if any.
pub fn find_collision(enc: &Encoding, inputs: &[Value]) -> Option<(Value, Value)> {
    let mut seen = std::collections::HashMap::new();
    for x in inputs {
        let Some(y) = enc.encode(x) else { continue };
        if let Some(prev) = seen.insert(y, x.clone()) {
            if prev != *x {
                return Some((prev, x.clone()));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Mismatch,
    NotEncodable,
    TargetUndefined,
    TargetBudget,
    SourceUndefined,
    SourceBudget,
}

impl Verdict {
    pub fn is_violation(self) -> bool {
        matches!(self, Verdict::Mismatch | Verdict::NotEncodable | Verdict::TargetUndefined | Verdict::TargetBudget)
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::Mismatch => "MISMATCH",
            Verdict::NotEncodable => "NOT-ENCODABLE",
            Verdict::TargetUndefined => "TARGET-UNDEFINED",
            Verdict::TargetBudget => "TARGET-BUDGET",
            Verdict::SourceUndefined => "skip (source undefined)",
            Verdict::SourceBudget => "skip (source budget)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub rows: Vec<Row>,
}

const CELL_WIDTH: usize = 40;

fn abbreviate(s: &str) -> String {
    let n = s.chars().count();
    if n <= CELL_WIDTH {
        return s.to_string();
    }
    let head: String = s.chars().take(CELL_WIDTH - 16).collect();
    format!("{head}... ({n} chars)")
}

impl Report {
    pub fn violations(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.verdict.is_violation())
    }

    pub fn violation_count(&self) -> usize {
        self.violations().count()
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count() == 0
    }

    pub fn summary(&self) -> String {
        let skipped =
            self.rows.iter().filter(|r| matches!(r.verdict, Verdict::SourceBudget | Verdict::SourceUndefined)).count();
        format!("{}: {} cases, {} violations, {} skipped", self.title, self.rows.len(), self.violation_count(), skipped)
    }

    /// Aligned text table with columns input, lhs, rhs, verdict; long cells
    /// are shortened.
    pub fn render_table(&self) -> String {
        let header = ["input", "lhs", "rhs", "verdict"];
        let cells: Vec<[String; 4]> = self
            .rows
            .iter()
            .map(|r| [abbreviate(&r.input), abbreviate(&r.lhs), abbreviate(&r.rhs), r.verdict.label().to_string()])
            .collect();
        let mut width = header.map(str::len);
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |row: [&str; 4]| {
            let mut s = String::new();
            for (i, c) in row.iter().enumerate() {
                if i == 3 {
                    s.push_str(c);
                } else {
                    s.push_str(&format!("{c:<w$}  ", w = width[i]));
                }
            }
            s.push('\n');
            s
        };
        let mut out = format!("# {}\n", self.title);
        out.push_str(&line(header));
        for row in &cells {
            out.push_str(&line([&row[0], &row[1], &row[2], &row[3]]));
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    /// One tab-separated line per case, full values.
    pub fn render_tsv(&self) -> String {
        let mut out = String::from("input\tlhs\trhs\tverdict\n");
        for r in &self.rows {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.input, r.lhs, r.rhs, r.verdict.label()));
        }
        out
    }
}

fn show_args(args: &[Value]) -> String {
    args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
}

fn show(a: &Applied) -> String {
    match a {
        Applied::Value(v) => v.to_string(),
        Applied::Undefined(why) => format!("undefined: {why}"),
        Applied::Budget => "budget".into(),
    }
}

/// Checks `enc(f1(xs)) = f2(enc(xs))` on every input tuple.
pub fn check_simulation(enc: &Encoding, f1: &Program, f2: &Program, inputs: &[Vec<Value>]) -> Report {
    let rows = inputs
        .iter()
        .map(|xs| {
            let input = show_args(xs);
            let row = |lhs: String, rhs: String, verdict| Row { input: input.clone(), lhs, rhs, verdict };
            let out = match enc.source().apply(f1, xs) {
                Applied::Value(v) => v,
                Applied::Budget => return row("budget".into(), String::new(), Verdict::SourceBudget),
                other => return row(show(&other), String::new(), Verdict::SourceUndefined),
            };
            let (Some(lhs), Some(encoded)) =
                (enc.encode(&out), xs.iter().map(|x| enc.encode(x)).collect::<Option<Vec<_>>>())
            else {
                return row(out.to_string(), String::new(), Verdict::NotEncodable);
            };
            match enc.target().apply(f2, &encoded) {
                Applied::Value(rhs) => {
                    let verdict = if lhs == rhs { Verdict::Ok } else { Verdict::Mismatch };
                    row(lhs.to_string(), rhs.to_string(), verdict)
                }
                Applied::Budget => row(lhs.to_string(), "budget".into(), Verdict::TargetBudget),
                other => row(lhs.to_string(), show(&other), Verdict::TargetUndefined),
            }
        })
        .collect();
    Report { title: format!("simulation via {}", enc.name()), rows }
}

/// Checks that `recoding`, run in the source model of `rho1`, computes
/// `rho2(rho1(x))` on every input. `rho1` maps that model into another and
/// `rho2` maps back.
pub fn check_weak_equivalence(rho2: &Encoding, rho1: &Encoding, recoding: &Program, inputs: &[Value]) -> Report {
    let home = rho1.source();
    let rows = inputs
        .iter()
        .map(|x| {
            let input = x.to_string();
            let expected = rho1.encode(x).and_then(|y| rho2.encode(&y));
            let got = home.apply(recoding, std::slice::from_ref(x));
            let (lhs, rhs, verdict) = match (&got, expected) {
                (_, None) => (show(&got), String::new(), Verdict::NotEncodable),
                (Applied::Value(v), Some(e)) => {
                    let verdict = if *v == e { Verdict::Ok } else { Verdict::Mismatch };
                    (v.to_string(), e.to_string(), verdict)
                }
                (Applied::Budget, Some(e)) => ("budget".into(), e.to_string(), Verdict::TargetBudget),
                (Applied::Undefined(_), Some(e)) => (show(&got), e.to_string(), Verdict::TargetUndefined),
            };
            Row { input, lhs, rhs, verdict }
        })
        .collect();
    Report { title: format!("recoding {} then {}", rho1.name(), rho2.name()), rows }
}

/// One entry of the arithmetic suite: a recursive program and the
/// combinator that should simulate it on Church numerals.
#[derive(Clone, Debug)]
pub struct ArithmeticCase {
    pub name: &'static str,
    pub arity: usize,
    pub recursive: RecFn,
    pub combinator: Term,
}

/// succ, plus, times, is_zero and pred. `is_zero` answers with the
/// numerals one and zero so its results stay in the numeral domain.
pub fn arithmetic_suite(catalog: &Catalog) -> Vec<ArithmeticCase> {
    let numeric_is_zero = crate::lambda::abstract_vars(
        &["n"],
        &crate::syntax::parse_in("is_zero n one zero", catalog.calculus(), Some(&catalog.environment()))
            .expect("library names resolve"),
        catalog.calculus(),
    );
    vec![
        ArithmeticCase { name: "succ", arity: 1, recursive: RecFn::Succ, combinator: catalog.term("succ") },
        ArithmeticCase { name: "plus", arity: 2, recursive: recfn::add(), combinator: catalog.term("plus") },
        ArithmeticCase { name: "times", arity: 2, recursive: recfn::mul(), combinator: catalog.term("times") },
        ArithmeticCase { name: "is_zero", arity: 1, recursive: recfn::is_zero(), combinator: numeric_is_zero },
        ArithmeticCase { name: "pred", arity: 1, recursive: recfn::pred(), combinator: catalog.term("pred") },
    ]
}

/// Every tuple of `arity` naturals with each component at most `max`.
pub fn nat_tuples(arity: usize, max: u64) -> Vec<Vec<Value>> {
    let mut tuples = vec![Vec::new()];
    for _ in 0..arity {
        tuples = tuples
            .into_iter()
            .flat_map(|t: Vec<Value>| {
                (0..=max).map(move |n| {
                    let mut t = t.clone();
                    t.push(Value::nat(n));
                    t
                })
            })
            .collect();
    }
    tuples
}

/// The Gödel-side counterpart of an SF structural function, for the
/// simulation of the SF normal model into the recursive model.
#[derive(Clone, Debug)]
pub struct StructuralCase {
    pub name: &'static str,
    pub combinator: Term,
    pub recursive: RecFn,
}

/// `car` and `cdr` of the SF catalog with their recursive versions on codes.
pub fn structural_suite(catalog: &Catalog) -> Vec<StructuralCase> {
    vec![
        StructuralCase { name: "car", combinator: catalog.term("car"), recursive: recfn::car_code() },
        StructuralCase { name: "cdr", combinator: catalog.term("cdr"), recursive: recfn::cdr_code() },
    ]
}

/// The recursive program for `n -> gnum(churchNumeral(n))`.
pub fn numeral_code_program(calculus: Calculus) -> RecFn {
    let one = church_numeral(1, calculus);
    let (succ, zero) = one.as_app().expect("one is an application");
    recfn::iterated_code(succ, zero).expect("numerals are closed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::enumerate::enumerate_normal_forms;
    use crate::turing::{equality_machine, identity_machine};

    fn models(calculus: Calculus) -> (Rc<RecursiveModel>, Rc<NormalModel>) {
        (Rc::new(RecursiveModel { budget: 1_000_000 }), Rc::new(NormalModel::new(calculus, 1_000_000)))
    }

    #[test]
    fn arithmetic_simulation_and_negative_control() {
        let (rec, normal) = models(Calculus::SF);
        let enc = Encoding::church(rec, normal);
        let catalog = define_core(Calculus::SF);
        for case in arithmetic_suite(&catalog) {
            let report = check_simulation(
                &enc,
                &Program::Rec(case.recursive.clone()),
                &Program::Comb(case.combinator.clone()),
                &nat_tuples(case.arity, 3),
            );
            assert!(report.is_clean(), "{}\n{}", case.name, report.render_table());
        }
        let wrong =
            check_simulation(&enc, &Program::Rec(RecFn::Succ), &Program::Comb(catalog.term("i")), &nat_tuples(1, 8));
        assert_eq!(wrong.violation_count(), 9);
        assert!(wrong.rows.iter().all(|r| r.verdict == Verdict::Mismatch));
    }

    #[test]
    fn structural_simulation_into_the_recursive_model() {
        let (rec, normal) = models(Calculus::SF);
        let enc = Encoding::godel(normal, rec);
        let catalog = define_core(Calculus::SF);
        let inputs: Vec<Vec<Value>> =
            enumerate_normal_forms(Calculus::SF, 5).into_iter().map(|t| vec![Value::Term(t)]).collect();
        for case in structural_suite(&catalog) {
            let report = check_simulation(
                &enc,
                &Program::Comb(case.combinator.clone()),
                &Program::Rec(case.recursive.clone()),
                &inputs,
            );
            assert!(report.is_clean(), "{}\n{}", case.name, report.render_table());
        }
    }

    #[test]
    fn equality_is_simulated_by_the_machine() {
        let normal: Rc<dyn Model> = Rc::new(NormalModel::new(Calculus::SF, 1_000_000));
        let turing: Rc<dyn Model> = Rc::new(TuringModel { calculus: Calculus::SF, budget: 100_000 });
        let enc = Encoding::polish(normal, turing);
        let catalog = define_core(Calculus::SF);
        let nfs = enumerate_normal_forms(Calculus::SF, 3);
        let pairs: Vec<Vec<Value>> = nfs
            .iter()
            .flat_map(|a| nfs.iter().map(move |b| vec![Value::Term(a.clone()), Value::Term(b.clone())]))
            .collect();
        let report = check_simulation(
            &enc,
            &Program::Comb(catalog.term("eq")),
            &Program::Machine(equality_machine(), Readout::Decision),
            &pairs,
        );
        assert!(report.is_clean(), "{}", report.render_table());
    }

    #[test]
    fn recodings_are_computable_on_both_sides() {
        let (rec, normal) = models(Calculus::SF);
        let to_nat = Encoding::godel(normal.clone(), rec.clone());
        let to_term = Encoding::church(rec.clone(), normal.clone());
        let catalog = define_core(Calculus::SF);
        let terms: Vec<Value> = enumerate_normal_forms(Calculus::SF, 3).into_iter().map(Value::Term).collect();
        let sf_side = check_weak_equivalence(&to_term, &to_nat, &Program::Comb(catalog.term("godelize")), &terms);
        assert!(sf_side.is_clean(), "{}", sf_side.render_table());

        let nats: Vec<Value> = (0..=4).map(Value::nat).collect();
        let rec_side =
            check_weak_equivalence(&to_nat, &to_term, &Program::Rec(numeral_code_program(Calculus::SF)), &nats);
        assert!(rec_side.is_clean(), "{}", rec_side.render_table());

        let same = Encoding::identity(rec.clone());
        let trivial = check_weak_equivalence(&same, &same, &Program::Rec(RecFn::Proj(1, 1)), &nats);
        assert!(trivial.is_clean());
    }

    #[test]
    fn encodings_are_injective_on_small_domains() {
        let (rec, normal) = models(Calculus::SF);
        let terms: Vec<Value> = enumerate_normal_forms(Calculus::SF, 7).into_iter().map(Value::Term).collect();
        assert_eq!(find_collision(&Encoding::godel(normal.clone(), rec.clone()), &terms), None);
        let turing: Rc<dyn Model> = Rc::new(TuringModel { calculus: Calculus::SF, budget: 10 });
        assert_eq!(find_collision(&Encoding::polish(normal.clone(), turing), &terms), None);
        let nats: Vec<Value> = (0..30).map(Value::nat).collect();
        assert_eq!(find_collision(&Encoding::church(rec, normal), &nats), None);
    }

    #[test]
    fn models_guard_their_domains() {
        let (rec, normal) = models(Calculus::SF);
        assert!(rec.contains(&Value::nat(3)));
        assert!(!rec.contains(&Value::Term(Term::s())));
        assert!(normal.contains(&Value::Term(Term::s())));
        assert!(!normal.contains(&Value::Term(Term::k())));
        assert!(!normal.contains(&Value::Term(Term::var("x"))));
        let redex = crate::syntax::parse("FFSS", Calculus::SF).unwrap();
        assert!(!normal.contains(&Value::Term(redex)));
        assert!(matches!(rec.apply(&Program::Rec(RecFn::Succ), &[Value::Term(Term::s())]), Applied::Undefined(_)));
        assert!(matches!(normal.apply(&Program::Rec(RecFn::Succ), &[]), Applied::Undefined(_)));
        assert_eq!(rec.apply(&Program::Rec(RecFn::Succ), &[Value::nat(4)]), Applied::Value(Value::nat(5)));
    }

    #[test]
    fn budget_and_undefined_stay_distinct() {
        let rec = RecursiveModel { budget: 1000 };
        let search = RecFn::mu(RecFn::comp(RecFn::Succ, vec![RecFn::Proj(1, 2)]));
        assert_eq!(rec.apply(&Program::Rec(search), &[Value::nat(0)]), Applied::Budget);
        let normal = NormalModel::new(Calculus::SK, 1000);
        let omega = crate::syntax::parse("S(SKK)(SKK)(S(SKK)(SKK))", Calculus::SK).unwrap();
        assert_eq!(normal.apply(&Program::Comb(omega), &[]), Applied::Budget);
        let turing = TuringModel { calculus: Calculus::SF, budget: 100 };
        let word = |s: &str| Value::Word(PolishWord::parse(s).unwrap());
        assert_eq!(
            turing.apply(&Program::Machine(identity_machine("ASF"), Readout::Tape), &[word("ASF")]),
            Applied::Value(word("ASF"))
        );
        assert!(matches!(
            turing.apply(&Program::Machine(equality_machine(), Readout::Tape), &[word("S"), word("F")]),
            Applied::Undefined(_)
        ));
        assert!(matches!(
            turing.apply(&Program::Machine(equality_machine(), Readout::Tape), &[word("S"), word("S")]),
            Applied::Undefined(_)
        ));
    }

    #[test]
    fn report_rendering() {
        let report = Report {
            title: "demo".into(),
            rows: vec![
                Row { input: "0".into(), lhs: "1".into(), rhs: "1".into(), verdict: Verdict::Ok },
                Row { input: "1".into(), lhs: "2".into(), rhs: "x".repeat(80), verdict: Verdict::Mismatch },
            ],
        };
        let table = report.render_table();
        assert!(table.starts_with("# demo\ninput  lhs  rhs"));
        assert!(table.contains("(80 chars)"));
        assert!(table.ends_with("demo: 2 cases, 1 violations, 0 skipped\n"));
        let tsv = report.render_tsv();
        assert_eq!(tsv.lines().count(), 3);
        assert!(tsv.lines().nth(2).unwrap().split('\t').nth(2).unwrap().len() == 80);
    }
}
