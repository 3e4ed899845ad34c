//! Closed combinators for SF- and SK-calculus.
//!
//! Every entry is written as a parameter list and a body in the term syntax,
//! then compiled with bracket abstraction. Bodies may mention earlier entries
//! by name. The SF catalog adds the intensional entries built on `F`:
//! atom tests, structural equality and Gödelisation.
//!
//! Numerals are Church numerals, compiled from `λf.λx.f^n x`. `succ` is the
//! combinator `S X` where `X = [f] S (K f)`, so that `succ` applied to a
//! numeral is already the next numeral. All arithmetic iterates `succ`, which
//! keeps every computed numeral in that canonical shape.

use std::collections::HashMap;

use crate::lambda::{abstract_vars, bracket_abstract, church_lambda};
use crate::reduce::{ReduceOutcome, Reducer};
use crate::syntax::{parse_in, Definition, SyntaxError};
use crate::term::{Calculus, Node, Operator, Term};

/// A named closed combinator together with its behavioural contract.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedCombinator {
    pub name: &'static str,
    pub calculus: Calculus,
    pub body: Term,
    pub contract: &'static str,
}

struct Source {
    name: &'static str,
    params: &'static [&'static str],
    body: &'static str,
    contract: &'static str,
    sf_only: bool,
}

const fn def(
    name: &'static str,
    params: &'static [&'static str],
    body: &'static str,
    contract: &'static str,
) -> Source {
    Source { name, params, body, contract, sf_only: false }
}

const fn sf_def(
    name: &'static str,
    params: &'static [&'static str],
    body: &'static str,
    contract: &'static str,
) -> Source {
    Source { name, params, body, contract, sf_only: true }
}

// `k` is pre-bound to K (SK) or FF (SF); numerals zero..three are pre-bound
// to compiled Church numerals.
const SOURCES: &[Source] = &[
    def("i", &[], "S k k", "i x = x"),
    def("true", &[], "k", "true a b = a"),
    def("false", &[], "k i", "false a b = b"),
    def("not", &["b"], "b false true", "negation of a boolean"),
    def("and", &["a", "b"], "a b false", "conjunction, lazy in its second argument"),
    def("or", &["a", "b"], "a true b", "disjunction, lazy in its second argument"),
    def("pair", &["a", "b", "s"], "s a b", "pair a b s = s a b"),
    def("fst", &["p"], "p true", "fst (pair a b) = a"),
    def("snd", &["p"], "p false", "snd (pair a b) = b"),
    def("fix_half", &["x", "y"], "y (x x y)", "half of the Turing fixpoint"),
    def("fix", &[], "fix_half fix_half", "fix g = g (fix g), one head step at a time"),
    def("succ_step", &["f"], "S (k f)", "the X of succ = S X"),
    def("succ", &[], "S succ_step", "succ n = n + 1, canonical numerals stay canonical"),
    def("plus", &["m", "n"], "m succ n", "plus m n = m + n"),
    def("times", &["m", "n"], "m (plus n) zero", "times m n = m * n"),
    def("is_zero", &["n"], "n (k false) true", "true iff n = 0"),
    def("pred_step", &["p"], "pair (snd p) (succ (snd p))", "(a, b) -> (b, b + 1)"),
    def("pred", &["n"], "fst (n pred_step (pair zero zero))", "pred n = n - 1, pred 0 = 0"),
    def("num_eq", &["m", "n"], "and (is_zero (n pred m)) (is_zero (m pred n))", "numeral equality"),
    def("tri_step", &["p"], "pair (plus (fst p) (snd p)) (succ (snd p))", "(t, i) -> (t + i, i + 1)"),
    def("tri", &["n"], "fst (n tri_step (pair zero one))", "tri n = n (n + 1) / 2"),
    def("cantor", &["a", "b"], "plus (tri (plus a b)) b", "Cantor pairing (a + b)(a + b + 1)/2 + b"),
    sf_def("is_s", &["o"], "o (k (k true)) i (k (k false))", "true on S, false on F"),
    sf_def("eq_atom", &["a", "b"], "is_s a (is_s b) (not (is_s b))", "equality of two atoms"),
    sf_def("is_atom", &["m"], "F m true (k (k false))", "true iff the normal form m is an operator"),
    sf_def("car", &["m"], "F m m k", "left component of a compound, atoms unchanged"),
    sf_def("cdr", &["m"], "F m m (k i)", "right component of a compound, atoms unchanged"),
    sf_def("eq_pair", &["e", "p", "q", "r", "s"], "and (e p r) (e q s)", "componentwise recursion of eq"),
    sf_def("eq_compound", &["e", "n", "p", "q"], "F n false (eq_pair e p q)", "eq once m = p q"),
    sf_def(
        "eq_body",
        &["e", "m", "n"],
        "F m (F n (eq_atom m n) (k (k false))) (eq_compound e n)",
        "one layer of structural equality",
    ),
    sf_def("eq", &[], "fix eq_body", "eq m n = true iff m and n are identical normal forms"),
    sf_def("godel_atom", &["m"], "eq_atom m S one two", "code of an atom: S = 1, F = 2"),
    sf_def("godel_app", &["g", "p", "q"], "plus three (cantor (g p) (g q))", "code of an application"),
    sf_def("godel_body", &["g", "m"], "F m (godel_atom m) (godel_app g)", "one layer of godelize"),
    sf_def("godelize", &[], "fix godel_body", "godelize m = the numeral of m's Gödel number"),
    sf_def("eq_via_recoding", &["m", "n"], "num_eq (godelize m) (godelize n)", "equality by comparing Gödel numbers"),
];

/// An immutable table of named combinators for one calculus.
#[derive(Debug, Clone)]
pub struct Catalog {
    calculus: Calculus,
    entries: Vec<NamedCombinator>,
    index: HashMap<String, usize>,
}

impl Catalog {
    pub fn calculus(&self) -> Calculus {
        self.calculus
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.index.get(name).map(|&i| &self.entries[i].body)
    }

    /// Looks up an entry that is known to exist.
    pub fn term(&self, name: &str) -> Term {
        self.get(name).unwrap_or_else(|| panic!("no combinator `{name}` in the {} catalog", self.calculus)).clone()
    }

    pub fn entries(&self) -> &[NamedCombinator] {
        &self.entries
    }

    pub fn environment(&self) -> HashMap<String, Term> {
        self.entries.iter().map(|e| (e.name.to_string(), e.body.clone())).collect()
    }

    pub fn definitions(&self) -> Vec<Definition> {
        self.entries.iter().map(|e| Definition { name: e.name.to_string(), term: e.body.clone() }).collect()
    }

    /// `f a1 ... an` for a catalog entry `f`.
    pub fn call(&self, name: &str, args: impl IntoIterator<Item = Term>) -> Term {
        Term::apply(self.term(name), args)
    }

    /// Normal form of `true` or `false`, mapped back to a host boolean.
    pub fn decode_bool(&self, t: &Term) -> Option<bool> {
        if t == self.get("true")? {
            Some(true)
        } else if t == self.get("false")? {
            Some(false)
        } else {
            None
        }
    }

    pub fn encode_bool(&self, b: bool) -> Term {
        self.term(if b { "true" } else { "false" })
    }
}

/// Builds the catalog for `calculus`; the SK catalog omits the `F`-based entries.
pub fn define_core(calculus: Calculus) -> Catalog {
    try_define_core(calculus).expect("built-in definitions compile")
}

fn try_define_core(calculus: Calculus) -> Result<Catalog, SyntaxError> {
    let mut entries = Vec::new();
    let mut env: HashMap<String, Term> = HashMap::new();
    let push = |entries: &mut Vec<NamedCombinator>, env: &mut HashMap<String, Term>, name, body: Term, contract| {
        env.insert(name_str(name), body.clone());
        entries.push(NamedCombinator { name, calculus, body, contract });
    };
    push(&mut entries, &mut env, "k", crate::lambda::k_combinator(calculus), "k a b = a");
    for (name, n) in [("zero", 0), ("one", 1), ("two", 2), ("three", 3)] {
        push(&mut entries, &mut env, name, church_numeral(n, calculus), "Church numeral");
    }
    for src in SOURCES {
        if src.sf_only && calculus != Calculus::SF {
            continue;
        }
        let body = parse_in(src.body, calculus, Some(&env))?;
        let term = abstract_vars(src.params, &body, calculus);
        debug_assert!(term.is_closed(), "{} is not closed", src.name);
        push(&mut entries, &mut env, src.name, term, src.contract);
    }
    let index = entries.iter().enumerate().map(|(i, e)| (e.name.to_string(), i)).collect();
    Ok(Catalog { calculus, entries, index })
}

fn name_str(name: &str) -> String {
    name.to_string()
}

/// Bracket-abstraction image of `λf.λx.f^n x`.
///
/// Numeral `n + 1` is `S X` applied to numeral `n` for a fixed `X`, so the
/// translation is only run for zero and one.
pub fn church_numeral(n: usize, calculus: Calculus) -> Term {
    let zero = bracket_abstract(&church_lambda(0), calculus).expect("Church numerals are closed");
    if n == 0 {
        return zero;
    }
    let one = bracket_abstract(&church_lambda(1), calculus).expect("Church numerals are closed");
    let succ = one.fun().expect("one is an application").clone();
    let mut t = one;
    for _ in 1..n {
        t = Term::app(succ.clone(), t);
    }
    t
}

/// Reads a numeral back by normalising `t f x` and counting the `f`s.
pub fn decode_numeral(t: &Term, reducer: &Reducer) -> Option<usize> {
    let probe = Term::apply(t.clone(), [Term::var("f"), Term::var("x")]);
    let ReduceOutcome::Normal { result, .. } = reducer.normalize(&probe) else {
        return None;
    };
    let mut count = 0;
    let mut cur = &result;
    loop {
        if cur.as_var() == Some("x") {
            return Some(count);
        }
        let (f, a) = cur.as_app()?;
        if f.as_var() != Some("f") {
            return None;
        }
        count += 1;
        cur = a;
    }
}

/// The SF image of an SK term: every `K` becomes `FF`.
pub fn to_sf(t: &Term) -> Term {
    match t.node() {
        Node::Atom(Operator::K) => Term::app(Term::f(), Term::f()),
        Node::App(p, q) => Term::app(to_sf(p), to_sf(q)),
        _ => t.clone(),
    }
}

/// The booleans `true` and `false` of the calculus, as closed normal forms.
pub fn booleans(calculus: Calculus) -> (Term, Term) {
    let cat = define_core(calculus);
    (cat.term("true"), cat.term("false"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::is_normal;
    use crate::syntax::parse;

    const BUDGET: u64 = 1_000_000;

    fn nf(cat: &Catalog, t: Term) -> Term {
        Reducer::new(cat.calculus(), BUDGET)
            .normalize(&t)
            .into_normal_form()
            .unwrap_or_else(|| panic!("no normal form within budget"))
    }

    #[test]
    fn k_is_ff_and_selects_first() {
        let cat = define_core(Calculus::SF);
        assert_eq!(cat.term("k"), parse("FF", Calculus::SF).unwrap());
        let t = cat.call("k", [Term::var("a"), Term::var("b")]);
        assert_eq!(nf(&cat, t), Term::var("a"));
    }

    #[test]
    fn identity_and_pairs() {
        for calc in [Calculus::SK, Calculus::SF] {
            let cat = define_core(calc);
            let x = Term::atom(calc.partner());
            assert_eq!(nf(&cat, cat.call("i", [x.clone()])), x);
            let p = cat.call("pair", [Term::var("a"), Term::var("b")]);
            assert_eq!(nf(&cat, cat.call("fst", [p.clone()])), Term::var("a"));
            assert_eq!(nf(&cat, cat.call("snd", [p])), Term::var("b"));
        }
    }

    #[test]
    fn fixpoint_unfolds_once_at_the_head() {
        let cat = define_core(Calculus::SK);
        let t = cat.call("fix", [Term::var("g")]);
        let r = Reducer::new(Calculus::SK, 50).traced();
        let out = r.normalize(&t);
        // g (fix g) keeps unfolding inside the argument, so no normal form;
        // but the head becomes g after a few steps.
        let mut cur = t.clone();
        let mut saw_head_g = false;
        for s in &out.trace().recorded {
            cur = s.apply_to(&cur);
            if cur.spine().0.as_var() == Some("g") {
                saw_head_g = true;
                break;
            }
        }
        assert!(saw_head_g);
    }

    #[test]
    fn all_non_fixpoint_entries_have_normal_forms() {
        for calc in [Calculus::SK, Calculus::SF] {
            let cat = define_core(calc);
            for e in cat.entries() {
                assert!(e.body.is_closed(), "{}", e.name);
                if matches!(e.name, "fix" | "eq" | "godelize" | "eq_via_recoding") {
                    continue;
                }
                let out = Reducer::new(calc, 10_000).normalize(&e.body);
                assert!(out.normal_form().is_some(), "{} has no normal form", e.name);
            }
        }
    }

    #[test]
    fn catalog_entries_are_already_normal_where_expected() {
        let cat = define_core(Calculus::SF);
        for name in ["k", "i", "true", "false", "zero", "one", "succ", "pair", "eq_atom", "is_atom"] {
            assert!(is_normal(&cat.term(name)), "{name}");
        }
    }

    #[test]
    fn succ_keeps_numerals_canonical() {
        for calc in [Calculus::SK, Calculus::SF] {
            let cat = define_core(calc);
            for n in 0..6 {
                let next = nf(&cat, cat.call("succ", [church_numeral(n, calc)]));
                assert_eq!(next, church_numeral(n + 1, calc));
            }
        }
    }

    #[test]
    fn iterated_numerals_match_the_direct_translation() {
        for calc in [Calculus::SK, Calculus::SF] {
            for n in 0..12 {
                assert_eq!(church_numeral(n, calc), bracket_abstract(&church_lambda(n), calc).unwrap());
            }
        }
    }

    #[test]
    fn sf_images_of_sk_terms() {
        let skk = parse("SKK", Calculus::SK).unwrap();
        assert_eq!(to_sf(&skk).to_string(), "S(FF)(FF)");
        assert_eq!(to_sf(&parse("SKS", Calculus::SK).unwrap()).to_string(), "S(FF)S");
        assert_eq!(to_sf(&church_numeral(3, Calculus::SK)), church_numeral(3, Calculus::SF));
    }

    #[test]
    fn numerals_decode() {
        let cat = define_core(Calculus::SF);
        let r = Reducer::new(Calculus::SF, BUDGET);
        for n in 0..8 {
            assert_eq!(decode_numeral(&church_numeral(n, Calculus::SF), &r), Some(n));
        }
        assert_eq!(decode_numeral(&cat.term("true"), &r), None);
    }

    #[test]
    fn booleans_decode() {
        let cat = define_core(Calculus::SF);
        assert_eq!(cat.decode_bool(&cat.term("true")), Some(true));
        assert_eq!(cat.decode_bool(&nf(&cat, cat.term("false"))), Some(false));
        assert_eq!(cat.decode_bool(&Term::s()), None);
    }

    #[test]
    fn sk_catalog_has_no_intensional_entries() {
        let cat = define_core(Calculus::SK);
        for name in ["eq", "eq_atom", "is_atom", "godelize"] {
            assert!(cat.get(name).is_none(), "{name}");
        }
        for e in cat.entries() {
            assert!(e.body.check_calculus(Calculus::SK).is_ok());
        }
    }
}
