//! Scripted demonstrations. Each prints the parameters it used and reports
//! whether every check passed.

use std::fmt::Write;
use std::rc::Rc;

use crate::models::enumerate::{enumerate_normal_forms, probe_corpus};
use crate::models::{
    arithmetic_suite, check_simulation, check_weak_equivalence, nat_tuples, numeral_code_program, structural_suite,
    Encoding, Model, NormalModel, Program, RecursiveModel, Report, Row, Value, Verdict,
};
use crate::reduce::{probe_agreement, ReduceOutcome, Reducer};
use crate::stdlib::{define_core, to_sf};
use crate::syntax::{parse, to_polish};
use crate::term::{Calculus, Term};
use crate::turing::{equality_machine, equality_step_bound, run_machine, Halt, EQUALITY_STEP_CONSTANT};

pub const DEMOS: [&str; 4] = ["skk-sks", "sf-equality", "sf-recursive-equiv", "turing-equality"];

#[derive(Clone, Copy, Debug)]
pub struct DemoConfig {
    pub budget: u64,
    pub seed: u64,
    pub tsv: bool,
}

#[derive(Clone, Debug)]
pub struct DemoOutput {
    pub text: String,
    pub passed: bool,
}

/// Runs a demo by name; `None` for an unknown name.
pub fn run_demo(name: &str, config: &DemoConfig) -> Option<DemoOutput> {
    Some(match name {
        "skk-sks" => skk_sks(config),
        "sf-equality" => sf_equality(config),
        "sf-recursive-equiv" => sf_recursive_equiv(config),
        "turing-equality" => turing_equality(config),
        _ => return None,
    })
}

fn render(report: &Report, config: &DemoConfig) -> String {
    if config.tsv {
        report.render_tsv()
    } else {
        report.render_table()
    }
}

fn outcome_text(o: &ReduceOutcome) -> String {
    match o {
        ReduceOutcome::Normal { result, .. } => result.to_string(),
        ReduceOutcome::Budget { .. } => "budget".into(),
        ReduceOutcome::Stuck { term, .. } => format!("stuck: {term}"),
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Ok
    } else {
        Verdict::Mismatch
    }
}

/// SKK and SKS agree on every probe, yet SF's `eq` tells their images apart.
pub fn skk_sks(config: &DemoConfig) -> DemoOutput {
    let skk = parse("SKK", Calculus::SK).expect("literal");
    let sks = parse("SKS", Calculus::SK).expect("literal");
    let exhaustive = enumerate_normal_forms(Calculus::SK, 5).len();
    let probes = probe_corpus(Calculus::SK, 5, 100, config.seed);
    let reducer = Reducer::new(Calculus::SK, config.budget);
    let results = probe_agreement(&skk, &sks, &probes, &reducer);
    let agreed = results.iter().filter(|r| r.agree).count();
    let report = Report {
        title: "SKK X vs SKS X".into(),
        rows: results
            .iter()
            .map(|r| Row {
                input: r.probe.to_string(),
                lhs: outcome_text(&r.left),
                rhs: outcome_text(&r.right),
                verdict: verdict(r.agree),
            })
            .collect(),
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "probes: {} ({exhaustive} normal forms of size <= 5, 100 random with 4..8 operators, seed {}), budget {}",
        probes.len(),
        config.seed,
        config.budget
    );
    text.push_str(&render(&report, config));
    let _ = writeln!(text, "SK agreement: {agreed}/{}", probes.len());

    let catalog = define_core(Calculus::SF);
    let (a, b) = (to_sf(&skk), to_sf(&sks));
    let out = Reducer::new(Calculus::SF, config.budget).normalize(&catalog.call("eq", [a.clone(), b.clone()]));
    let answer = out.normal_form().and_then(|t| catalog.decode_bool(t));
    let _ = writeln!(text, "SF images: {a} and {b}");
    let distinguishes = answer == Some(false);
    let _ = writeln!(
        text,
        "SF eq: {} ({} steps)",
        match answer {
            Some(false) => "distinguishes",
            Some(true) => "identifies",
            None => "no answer",
        },
        out.step_count()
    );
    DemoOutput { text, passed: agreed == probes.len() && distinguishes }
}

/// `eq` against host equality on every ordered pair of small SF normal forms.
pub fn sf_equality(config: &DemoConfig) -> DemoOutput {
    let catalog = define_core(Calculus::SF);
    let reducer = Reducer::new(Calculus::SF, config.budget);
    let mut text = String::new();

    let atoms = [Term::s(), Term::f()];
    let mut atom_rows = Vec::new();
    for x in &atoms {
        for y in &atoms {
            let out = reducer.normalize(&catalog.call("eq_atom", [x.clone(), y.clone()]));
            let got = out.normal_form().and_then(|t| catalog.decode_bool(t));
            atom_rows.push(Row {
                input: format!("{x}, {y}"),
                lhs: got.map_or("no answer".into(), |b| b.to_string()),
                rhs: (x == y).to_string(),
                verdict: verdict(got == Some(x == y)),
            });
        }
    }
    let atom_report = Report { title: "eq_atom against host equality".into(), rows: atom_rows };
    text.push_str(&render(&atom_report, config));

    let max_size = 5;
    let nfs = enumerate_normal_forms(Calculus::SF, max_size);
    let mut rows = Vec::new();
    let mut max_steps = 0;
    for x in &nfs {
        for y in &nfs {
            let out = reducer.normalize(&catalog.call("eq", [x.clone(), y.clone()]));
            max_steps = max_steps.max(out.step_count());
            let got = out.normal_form().and_then(|t| catalog.decode_bool(t));
            let v = match got {
                _ if out.is_budget() => Verdict::TargetBudget,
                Some(b) => verdict(b == (x == y)),
                None => Verdict::TargetUndefined,
            };
            rows.push(Row {
                input: format!("{x}, {y}"),
                lhs: if out.is_budget() { "budget".into() } else { got.map_or("no answer".into(), |b| b.to_string()) },
                rhs: (x == y).to_string(),
                verdict: v,
            });
        }
    }
    let report = Report { title: format!("eq on all ordered pairs of normal forms of size <= {max_size}"), rows };
    let _ = writeln!(
        text,
        "normal forms: {}, pairs: {}, budget per pair: {}, most steps used: {max_steps}",
        nfs.len(),
        nfs.len() * nfs.len(),
        config.budget
    );
    if config.tsv {
        text.push_str(&report.render_tsv());
    } else {
        let failures = Report { title: report.title.clone(), rows: report.violations().cloned().collect() };
        if !failures.rows.is_empty() {
            text.push_str(&failures.render_table());
        }
        let _ = writeln!(text, "{}", report.summary());
    }
    DemoOutput { text, passed: atom_report.is_clean() && report.is_clean() }
}

/// Both recodings between the SF normal model and the recursive model are
/// computable inside their own model, plus the simulation checks that go
/// with them.
pub fn sf_recursive_equiv(config: &DemoConfig) -> DemoOutput {
    let rec = Rc::new(RecursiveModel { budget: config.budget });
    let normal = Rc::new(NormalModel::new(Calculus::SF, config.budget));
    let godel = Encoding::godel(normal.clone(), rec.clone());
    let church = Encoding::church(rec.clone(), normal.clone());
    let catalog = define_core(Calculus::SF);
    let mut text = String::new();
    let _ = writeln!(text, "models: {} and {}, budget {}", normal.name(), rec.name(), config.budget);
    let mut passed = true;
    let mut emit = |report: Report, text: &mut String| {
        passed &= report.is_clean();
        text.push_str(&render(&report, config));
    };

    let small: Vec<Value> = enumerate_normal_forms(Calculus::SF, 3).into_iter().map(Value::Term).collect();
    let _ = writeln!(text, "godelize on the {} normal forms of size <= 3:", small.len());
    emit(check_weak_equivalence(&church, &godel, &Program::Comb(catalog.term("godelize")), &small), &mut text);

    let nats: Vec<Value> = (0..=8).map(Value::nat).collect();
    let _ = writeln!(text, "n -> gnum(numeral n) as a recursive program, n in 0..=8:");
    emit(check_weak_equivalence(&godel, &church, &Program::Rec(numeral_code_program(Calculus::SF)), &nats), &mut text);

    let singles: Vec<Vec<Value>> =
        enumerate_normal_forms(Calculus::SF, 5).into_iter().map(|t| vec![Value::Term(t)]).collect();
    for case in structural_suite(&catalog) {
        let _ = writeln!(text, "{} simulated on codes, {} inputs:", case.name, singles.len());
        emit(
            check_simulation(&godel, &Program::Comb(case.combinator), &Program::Rec(case.recursive), &singles),
            &mut text,
        );
    }

    for case in arithmetic_suite(&catalog) {
        let inputs = nat_tuples(case.arity, 5);
        let _ = writeln!(text, "{} simulated on numerals, operands <= 5:", case.name);
        emit(
            check_simulation(&church, &Program::Rec(case.recursive), &Program::Comb(case.combinator), &inputs),
            &mut text,
        );
    }
    DemoOutput { text, passed }
}

/// The equality machine against host equality on Polish words.
pub fn turing_equality(config: &DemoConfig) -> DemoOutput {
    let machine = equality_machine();
    let max_size = 5;
    let words: Vec<String> = enumerate_normal_forms(Calculus::SF, max_size)
        .iter()
        .map(|t| to_polish(t).expect("closed").as_str().to_string())
        .collect();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "machine: {} states, {} transitions; words: {} (normal forms of size <= {max_size}); budget {}",
        machine.states().len(),
        machine.transition_count(),
        words.len(),
        config.budget
    );
    let mut rows = Vec::new();
    let mut worst = (0u64, 0usize);
    let mut within_bound = true;
    for u in &words {
        for v in &words {
            let input = format!("{u}#{v}");
            let out = run_machine(&machine, &input, config.budget).expect("Polish letters are in the alphabet");
            let n = input.len();
            within_bound &= out.steps <= equality_step_bound(n);
            if out.steps > worst.0 {
                worst = (out.steps, n);
            }
            let got = match out.halt {
                Halt::Accept => "accept",
                Halt::Reject => "reject",
                Halt::Budget => "budget",
            };
            let want = if u == v { "accept" } else { "reject" };
            rows.push(Row {
                input,
                lhs: format!("{got} in {} steps", out.steps),
                rhs: want.into(),
                verdict: verdict(got == want),
            });
        }
    }
    let report = Report { title: "equality machine against host word equality".into(), rows };
    if config.tsv {
        text.push_str(&report.render_tsv());
    } else {
        let shown = Report {
            title: "diagonal and failing cases".into(),
            rows: report.rows.iter().filter(|r| r.rhs == "accept" || r.verdict.is_violation()).cloned().collect(),
        };
        text.push_str(&shown.render_table());
        let _ = writeln!(text, "{}", report.summary());
    }
    let _ = writeln!(
        text,
        "most steps: {} on an input of length {}; bound {} * n^2 {}",
        worst.0,
        worst.1,
        EQUALITY_STEP_CONSTANT,
        if within_bound { "held" } else { "VIOLATED" }
    );
    DemoOutput { text, passed: report.is_clean() && within_bound }
}
