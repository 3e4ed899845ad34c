use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use sfcalc::lambda::{beta_normalize, parse_lambda, LambdaTerm};
use sfcalc::models::enumerate::{enumerate_normal_forms, enumerate_terms};
use sfcalc::models::godel::{cantor_pair, cantor_unpair, gnum, gterm};
use sfcalc::reduce::{contract, is_normal, step_once, Reducer, Rule, Strategy as Order};
use sfcalc::stdlib::{church_numeral, decode_numeral, define_core};
use sfcalc::syntax::{from_polish, parse, print, to_polish};
use sfcalc::term::{classify, Calculus, Classification, Operator, Term};

fn calculus() -> impl Strategy<Value = Calculus> {
    prop_oneof![Just(Calculus::SK), Just(Calculus::SF)]
}

fn closed_term(c: Calculus) -> impl Strategy<Value = Term> {
    let [a, b] = c.operators();
    let leaf = prop_oneof![Just(Term::atom(a)), Just(Term::atom(b))];
    leaf.prop_recursive(6, 40, 2, |inner| (inner.clone(), inner).prop_map(|(p, q)| Term::app(p, q)))
}

fn open_term(c: Calculus) -> impl Strategy<Value = Term> {
    let [a, b] = c.operators();
    let leaf = prop_oneof![
        Just(Term::atom(a)),
        Just(Term::atom(b)),
        Just(Term::var("x")),
        Just(Term::var("y")),
        Just(Term::var("M")),
    ];
    leaf.prop_recursive(6, 40, 2, |inner| (inner.clone(), inner).prop_map(|(p, q)| Term::app(p, q)))
}

fn any_closed() -> impl Strategy<Value = (Calculus, Term)> {
    calculus().prop_flat_map(|c| closed_term(c).prop_map(move |t| (c, t)))
}

fn lambda_term(binders: usize, fuel: u32) -> BoxedStrategy<LambdaTerm> {
    let leaf = (0..binders.max(1)).prop_map(LambdaTerm::index).boxed();
    if fuel == 0 {
        return leaf;
    }
    prop_oneof![
        2 => leaf,
        1 => lambda_term(binders + 1, fuel - 1).prop_map(LambdaTerm::lam),
        1 => (lambda_term(binders, fuel - 1), lambda_term(binders, fuel - 1)).prop_map(|(f, a)| LambdaTerm::app(f, a)),
    ]
    .boxed()
}

fn closed_lambda() -> impl Strategy<Value = LambdaTerm> {
    lambda_term(0, 5).prop_filter("closed", LambdaTerm::is_closed)
}

/// Checks a rewrite against the rule schema it claims to instantiate.
fn matches_schema(rule: Rule, before: &Term, after: &Term) -> bool {
    let (head, args) = before.spine();
    let args: Vec<Term> = args.into_iter().cloned().collect();
    match (rule, head.as_atom(), args.as_slice()) {
        (Rule::S, Some(Operator::S), [x, y, z]) => {
            *after == Term::app(Term::app(x.clone(), z.clone()), Term::app(y.clone(), z.clone()))
        }
        (Rule::K, Some(Operator::K), [x, _]) => after == x,
        (Rule::FAtom, Some(Operator::F), [o, m, _]) => o.as_atom().is_some() && after == m,
        (Rule::FCompound, Some(Operator::F), [pq, _, n]) => match classify(pq, Calculus::SF) {
            Ok(Classification::Compound(p, q)) => *after == Term::apply(n.clone(), [p, q]),
            _ => false,
        },
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_round_trips(t in calculus().prop_flat_map(open_term)) {
        let calc = if t.contains_operator(Operator::K) { Calculus::SK } else { Calculus::SF };
        prop_assert_eq!(parse(&print(&t), calc).unwrap(), t);
    }

    #[test]
    fn polish_round_trips_with_word_length_equal_to_size((c, t) in any_closed()) {
        let w = to_polish(&t).unwrap();
        prop_assert_eq!(w.len() as u64, t.size());
        prop_assert_eq!(from_polish(&w, c).unwrap(), t);
    }

    #[test]
    fn godel_numbers_decode((c, t) in any_closed()) {
        let n = gnum(&t).unwrap();
        prop_assert_eq!(gterm(&n, c), Some(t));
    }

    #[test]
    fn godel_numbers_separate_distinct_terms((a, b) in calculus().prop_flat_map(|c| (closed_term(c), closed_term(c)))) {
        prop_assert_eq!(gnum(&a).unwrap() == gnum(&b).unwrap(), a == b);
    }

    #[test]
    fn cantor_unpairing_inverts_pairing(a in 0u64..1 << 40, b in 0u64..1 << 40) {
        let (a, b) = (BigUint::from(a), BigUint::from(b));
        prop_assert_eq!(cantor_unpair(&cantor_pair(&a, &b)), (a, b));
    }

    #[test]
    fn closed_terms_classify_as_exactly_one_shape((c, t) in any_closed()) {
        let class = classify(&t, c).unwrap();
        prop_assert!(!matches!(class, Classification::VarHeaded));
        if let Classification::Compound(p, _) = &class {
            prop_assert!(matches!(classify(p, c).unwrap(), Classification::AtomHead | Classification::Compound(..)));
        }
        prop_assert_eq!(class.is_factorable(), t.is_factorable());
    }

    #[test]
    fn factorable_terms_never_step_at_the_root((c, t) in any_closed(), strategy in prop_oneof![Just(Order::NormalOrder), Just(Order::ApplicativeOrder)]) {
        if t.is_factorable() {
            if let Some(step) = step_once(&t, c, strategy) {
                prop_assert!(!step.path.0.is_empty());
            }
        }
    }

    #[test]
    fn steps_are_deterministic_and_sound((c, t) in any_closed(), applicative in any::<bool>()) {
        let strategy = if applicative { Order::ApplicativeOrder } else { Order::NormalOrder };
        let first = step_once(&t, c, strategy);
        prop_assert_eq!(&first, &step_once(&t, c, strategy));
        match first {
            None => prop_assert!(is_normal(&t)),
            Some(step) => {
                prop_assert_eq!(step.path.subterm(&t), Some(&step.before));
                prop_assert!(matches_schema(step.rule, &step.before, &step.after));
                prop_assert_eq!(contract(&step.before), Some((step.rule, step.after.clone())));
                let next = step.apply_to(&t);
                prop_assert_eq!(step.path.subterm(&next), Some(&step.after));
            }
        }
    }

    #[test]
    fn normal_forms_are_normal_and_built_from_compounds((c, t) in any_closed()) {
        let out = Reducer::new(c, 2_000).normalize(&t);
        if let Some(nf) = out.normal_form() {
            prop_assert!(is_normal(nf));
            prop_assert!(nf.is_factorable());
            for sub in nf.subterms() {
                if sub.as_app().is_some() {
                    prop_assert!(matches!(classify(sub, c).unwrap(), Classification::Compound(..)));
                }
            }
            let again = Reducer::new(c, 10).normalize(nf);
            prop_assert_eq!(again.step_count(), 0);
            prop_assert_eq!(again.normal_form(), Some(nf));
        }
    }

    #[test]
    fn beta_reduction_preserves_closedness(t in closed_lambda()) {
        let mut cur = t;
        for _ in 0..50 {
            prop_assert!(cur.is_closed());
            match cur.step() {
                Some(next) => cur = next,
                None => break,
            }
        }
        if let Some(nf) = beta_normalize(&cur, 200).normal_form() {
            prop_assert!(nf.is_closed());
        }
    }

    #[test]
    fn lambda_printing_round_trips(t in closed_lambda()) {
        prop_assert_eq!(parse_lambda(&t.to_string()).unwrap(), t);
    }
}

#[test]
fn godel_numbering_is_injective_up_to_size_eight() {
    for c in [Calculus::SK, Calculus::SF] {
        let terms = enumerate_terms(c, 8);
        let codes: HashSet<BigUint> = terms.iter().map(|t| gnum(t).unwrap()).collect();
        assert_eq!(codes.len(), terms.len(), "{c}");
    }
}

#[test]
fn is_atom_agrees_with_classification() {
    let catalog = define_core(Calculus::SF);
    let reducer = Reducer::new(Calculus::SF, 100_000);
    for m in enumerate_normal_forms(Calculus::SF, 7) {
        let answer = reducer.normalize(&catalog.call("is_atom", [m.clone()]));
        let want = classify(&m, Calculus::SF).unwrap() == Classification::AtomHead;
        assert_eq!(answer.normal_form().and_then(|t| catalog.decode_bool(t)), Some(want), "{m}");
    }
}

#[test]
fn plus_is_a_numeral_homomorphism() {
    for c in [Calculus::SK, Calculus::SF] {
        let catalog = define_core(c);
        let reducer = Reducer::new(c, 1_000_000);
        for a in 0..=8 {
            for b in 0..=8 {
                let sum = catalog.call("plus", [church_numeral(a, c), church_numeral(b, c)]);
                assert_eq!(decode_numeral(&sum, &reducer), Some(a + b), "{c} {a}+{b}");
            }
        }
    }
}

#[test]
fn eq_is_reflexive_and_symmetric() {
    let catalog = define_core(Calculus::SF);
    let reducer = Reducer::new(Calculus::SF, 1_000_000);
    let nfs = enumerate_normal_forms(Calculus::SF, 7);
    let answer = |x: &Term, y: &Term| {
        let out = reducer.normalize(&catalog.call("eq", [x.clone(), y.clone()]));
        out.normal_form().and_then(|t| catalog.decode_bool(t))
    };
    for x in nfs.iter().step_by(3) {
        assert_eq!(answer(x, x), Some(true), "{x}");
        for y in nfs.iter().step_by(7) {
            assert_eq!(answer(x, y), answer(y, x), "{x} {y}");
        }
    }
}

#[test]
fn godelize_is_injective_on_its_domain() {
    let catalog = define_core(Calculus::SF);
    let reducer = Reducer::new(Calculus::SF, 10_000_000);
    let mut seen = HashSet::new();
    for m in enumerate_normal_forms(Calculus::SF, 3) {
        let value = decode_numeral(&catalog.call("godelize", [m.clone()]), &reducer).expect("numeral");
        assert!(seen.insert(value), "{m}");
    }
}
