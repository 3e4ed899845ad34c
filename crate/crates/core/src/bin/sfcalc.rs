use std::process::ExitCode;
use std::rc::Rc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use sfcalc::demo::{run_demo, DemoConfig, DEMOS};
use sfcalc::lambda::{bracket_abstract, parse_lambda};
use sfcalc::models::enumerate::{enumerate_normal_forms, probe_corpus};
use sfcalc::models::godel::{gnum, gterm};
use sfcalc::models::{
    arithmetic_suite, check_simulation, check_weak_equivalence, nat_tuples, numeral_code_program, structural_suite,
    Encoding, Model, NormalModel, Program, Readout, RecursiveModel, Report, TuringModel, Value,
};
use sfcalc::reduce::{extensionally_agree, render_trace, ReduceOutcome, Strategy};
use sfcalc::session::Session;
use sfcalc::stdlib::define_core;
use sfcalc::syntax::{from_polish, to_polish, PolishWord};
use sfcalc::term::{Calculus, Operator, Term};
use sfcalc::turing::{equality_machine, run_machine, Halt, MachineSpec};

const EXIT_ERROR: u8 = 1;
const EXIT_BUDGET: u8 = 3;
const EXIT_CHECK_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "sfcalc", version, about = "SF- and SK-calculus workbench")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Calculus; when omitted, K in the input means sk, otherwise sf
    #[arg(long, global = true, value_enum)]
    calc: Option<Calc>,
    #[arg(long, global = true, value_enum, default_value = "normal")]
    strategy: Strat,
    /// Step budget for every evaluation
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: u64,
    /// Seed for randomly drawn probes
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Extra `let name = term;` definitions, loaded after the library
    #[arg(long, global = true)]
    prelude: Vec<std::path::PathBuf>,
    /// Reports as tab-separated lines
    #[arg(long, global = true)]
    tsv: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Calc {
    Sk,
    Sf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strat {
    Normal,
    Applicative,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of a term
    Reduce { term: String },
    /// Print every reduction step of a term
    Trace { term: String },
    /// Compare two terms structurally, extensionally and (in SF) with `eq`
    Eq { left: String, right: String },
    /// Gödel number of a closed term, or the term of a number with --decode
    Godel {
        input: String,
        #[arg(long)]
        decode: bool,
    },
    /// Polish word of a closed term, or the term of a word with --decode
    Polish {
        input: String,
        #[arg(long)]
        decode: bool,
    },
    /// Translate a de Bruijn λ-term such as `\\1 0` into combinators
    Lambda { term: String },
    /// Turing machines
    Tm {
        #[command(subcommand)]
        command: TmCommand,
    },
    /// Model comparison checks
    Check {
        #[command(subcommand)]
        command: CheckCommand,
    },
    /// Run a named demonstration
    Demo { name: String },
}

#[derive(Subcommand)]
enum TmCommand {
    /// Run a machine file (or `equality` for the built-in machine) on a word
    Run { machine: String, input: String },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Simulation law for a suite of programs
    Sim {
        #[arg(value_enum)]
        suite: SimSuite,
        /// Largest operand (arithmetic) or term size (structural, equality)
        #[arg(long)]
        max: Option<u64>,
    },
    /// In-model computability of a recoding
    Weakequiv {
        #[arg(value_enum)]
        side: Side,
        /// Largest input: term size for sf, natural for recursive and identity
        #[arg(long)]
        max: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SimSuite {
    /// Recursive arithmetic against SF numeral combinators
    Arithmetic,
    /// SF car and cdr against recursive programs on Gödel numbers
    Structural,
    /// SF eq against the equality machine on Polish words
    Equality,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    /// godelize inside the SF normal model
    Sf,
    /// n -> gnum(numeral n) inside the recursive model
    Recursive,
    /// identity recoding of the recursive model
    Identity,
}

enum Failure {
    Error(String),
    Budget(String),
    Check(String),
}

type Outcome = Result<String, Failure>;

fn err(e: impl std::fmt::Display) -> Failure {
    Failure::Error(e.to_string())
}

fn detect_calculus(opts: &Opts, texts: &[&str]) -> Calculus {
    match opts.calc {
        Some(Calc::Sk) => Calculus::SK,
        Some(Calc::Sf) => Calculus::SF,
        None if texts.iter().any(|t| t.contains(Operator::K.symbol())) => Calculus::SK,
        None => Calculus::SF,
    }
}

fn session(opts: &Opts, calculus: Calculus) -> Result<Session, Failure> {
    let mut s = Session::new(calculus);
    s.budget = opts.budget;
    s.strategy = match opts.strategy {
        Strat::Normal => Strategy::NormalOrder,
        Strat::Applicative => Strategy::ApplicativeOrder,
    };
    for path in &opts.prelude {
        let text = std::fs::read_to_string(path).map_err(|e| err(format!("{}: {e}", path.display())))?;
        s.load_prelude(&text).map_err(|e| err(format!("{}: {e}", path.display())))?;
    }
    for w in s.warnings() {
        eprintln!("{w}");
    }
    Ok(s)
}

fn parse_term(opts: &Opts, text: &str) -> Result<(Session, Term), Failure> {
    let s = session(opts, detect_calculus(opts, &[text]))?;
    let t = s.parse(text).map_err(err)?;
    Ok((s, t))
}

fn report_outcome(report: Report, tsv: bool) -> Outcome {
    let text = if tsv { report.render_tsv() } else { report.render_table() };
    if report.is_clean() {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn reduce(opts: &Opts, text: &str) -> Outcome {
    let (s, t) = parse_term(opts, text)?;
    match s.reducer().normalize(&t) {
        ReduceOutcome::Normal { result, .. } => Ok(format!("{result}\n")),
        ReduceOutcome::Stuck { term, .. } => Ok(format!("{term}\n")),
        ReduceOutcome::Budget { partial, steps } => Err(Failure::Budget(format!(
            "budget of {} steps exhausted after {} steps; the term reached has size {}",
            opts.budget,
            steps.count,
            partial.size()
        ))),
    }
}

fn trace(opts: &Opts, text: &str) -> Outcome {
    let (s, t) = parse_term(opts, text)?;
    let out = s.reducer().traced().normalize(&t);
    let mut listing = render_trace(&out.trace().recorded);
    match &out {
        ReduceOutcome::Normal { result, .. } => listing.push_str(&format!("normal: {result}\n")),
        ReduceOutcome::Stuck { term, .. } => {
            listing.push_str(&format!("stuck: {term} (a variable-headed term blocks F)\n"))
        }
        ReduceOutcome::Budget { .. } => {
            print!("{listing}");
            return Err(Failure::Budget(format!("budget of {} steps exhausted", opts.budget)));
        }
    }
    Ok(listing)
}

fn eq(opts: &Opts, left: &str, right: &str) -> Outcome {
    let calculus = detect_calculus(opts, &[left, right]);
    let s = session(opts, calculus)?;
    let a = s.parse(left).map_err(err)?;
    let b = s.parse(right).map_err(err)?;
    let reducer = s.reducer();
    let nf = |t: &Term| reducer.normalize(t).normal_form().cloned();
    let mut out = String::new();
    match (nf(&a), nf(&b)) {
        (Some(x), Some(y)) => {
            out.push_str(&format!("normal forms: {}\n", if x == y { "identical" } else { "different" }))
        }
        _ => out.push_str("normal forms: not reached within the budget\n"),
    }
    let probes = probe_corpus(calculus, 5, 100, opts.seed);
    if a.is_closed() && b.is_closed() {
        let agree = extensionally_agree(&a, &b, calculus, &probes, opts.budget);
        out.push_str(&format!(
            "extensional: {} on {} probes (seed {})\n",
            if agree { "agree" } else { "differ" },
            probes.len(),
            opts.seed
        ));
    }
    if calculus == Calculus::SF {
        let catalog = define_core(calculus);
        if !(a.is_closed() && b.is_closed()) {
            out.push_str("SF eq: needs closed terms\n");
            return Ok(out);
        }
        match reducer.normalize(&catalog.call("eq", [a, b])) {
            ReduceOutcome::Normal { result, steps } => match catalog.decode_bool(&result) {
                Some(v) => out.push_str(&format!("SF eq: {v} ({} steps)\n", steps.count)),
                None => out.push_str(&format!("SF eq: no boolean answer, got {result}\n")),
            },
            ReduceOutcome::Budget { .. } => {
                print!("{out}");
                return Err(Failure::Budget(format!("SF eq: budget of {} steps exhausted", opts.budget)));
            }
            other => out.push_str(&format!("SF eq: stuck at {}\n", other.term())),
        }
    }
    Ok(out)
}

fn godel(opts: &Opts, input: &str, decode: bool) -> Outcome {
    if decode {
        let n: BigUint = input.trim().parse().map_err(|_| err(format!("`{input}` is not a natural number")))?;
        let calculus = detect_calculus(opts, &[]);
        return gterm(&n, calculus).map(|t| format!("{t}\n")).ok_or_else(|| err(format!("{n} is not a Gödel number")));
    }
    let (_, t) = parse_term(opts, input)?;
    Ok(format!("{}\n", gnum(&t).map_err(err)?))
}

fn polish(opts: &Opts, input: &str, decode: bool) -> Outcome {
    if decode {
        let word = PolishWord::parse(input).map_err(err)?;
        let t = from_polish(&word, detect_calculus(opts, &[input])).map_err(err)?;
        return Ok(format!("{t}\n"));
    }
    let (_, t) = parse_term(opts, input)?;
    Ok(format!("{}\n", to_polish(&t).map_err(err)?))
}

fn lambda(opts: &Opts, text: &str) -> Outcome {
    let t = parse_lambda(text).map_err(err)?;
    let calculus = opts.calc.map_or(Calculus::SK, |c| match c {
        Calc::Sk => Calculus::SK,
        Calc::Sf => Calculus::SF,
    });
    Ok(format!("{}\n", bracket_abstract(&t, calculus).map_err(err)?))
}

fn tm_run(opts: &Opts, machine: &str, input: &str) -> Outcome {
    let spec = if machine == "equality" {
        equality_machine()
    } else {
        let text = std::fs::read_to_string(machine).map_err(|e| err(format!("{machine}: {e}")))?;
        MachineSpec::parse(&text).map_err(|e| err(format!("{machine}: {e}")))?
    };
    let out = run_machine(&spec, input, opts.budget).map_err(err)?;
    let text = format!(
        "{} after {} steps in state {}\ntape: {}\n",
        match out.halt {
            Halt::Accept => "accept",
            Halt::Reject => "reject",
            Halt::Budget => "budget",
        },
        out.steps,
        out.state,
        out.tape
    );
    if out.halt == Halt::Budget {
        print!("{text}");
        return Err(Failure::Budget(format!("budget of {} steps exhausted", opts.budget)));
    }
    Ok(text)
}

fn check_sim(opts: &Opts, suite: SimSuite, max: Option<u64>) -> Outcome {
    let rec = Rc::new(RecursiveModel { budget: opts.budget });
    let normal = Rc::new(NormalModel::new(Calculus::SF, opts.budget));
    let catalog = define_core(Calculus::SF);
    let mut reports = Vec::new();
    match suite {
        SimSuite::Arithmetic => {
            let enc = Encoding::church(rec, normal);
            for case in arithmetic_suite(&catalog) {
                let mut r = check_simulation(
                    &enc,
                    &Program::Rec(case.recursive),
                    &Program::Comb(case.combinator),
                    &nat_tuples(case.arity, max.unwrap_or(5)),
                );
                r.title = format!("{} ({})", r.title, case.name);
                reports.push(r);
            }
        }
        SimSuite::Structural => {
            let enc = Encoding::godel(normal, rec);
            let inputs: Vec<Vec<Value>> = enumerate_normal_forms(Calculus::SF, max.unwrap_or(5))
                .into_iter()
                .map(|t| vec![Value::Term(t)])
                .collect();
            for case in structural_suite(&catalog) {
                let mut r =
                    check_simulation(&enc, &Program::Comb(case.combinator), &Program::Rec(case.recursive), &inputs);
                r.title = format!("{} ({})", r.title, case.name);
                reports.push(r);
            }
        }
        SimSuite::Equality => {
            let turing: Rc<dyn Model> = Rc::new(TuringModel { calculus: Calculus::SF, budget: opts.budget });
            let enc = Encoding::polish(normal, turing);
            let nfs = enumerate_normal_forms(Calculus::SF, max.unwrap_or(3));
            let pairs: Vec<Vec<Value>> = nfs
                .iter()
                .flat_map(|a| nfs.iter().map(move |b| vec![Value::Term(a.clone()), Value::Term(b.clone())]))
                .collect();
            let mut r = check_simulation(
                &enc,
                &Program::Comb(catalog.term("eq")),
                &Program::Machine(equality_machine(), Readout::Decision),
                &pairs,
            );
            r.title = format!("{} (eq)", r.title);
            reports.push(r);
        }
    }
    combine(reports, opts.tsv)
}

fn combine(reports: Vec<Report>, tsv: bool) -> Outcome {
    let mut text = String::new();
    let mut clean = true;
    for r in reports {
        match report_outcome(r, tsv) {
            Ok(t) => text.push_str(&t),
            Err(Failure::Check(t)) => {
                clean = false;
                text.push_str(&t);
            }
            Err(other) => return Err(other),
        }
    }
    if clean {
        Ok(text)
    } else {
        Err(Failure::Check(text))
    }
}

fn check_weakequiv(opts: &Opts, side: Side, max: Option<u64>) -> Outcome {
    let rec = Rc::new(RecursiveModel { budget: opts.budget });
    let normal = Rc::new(NormalModel::new(Calculus::SF, opts.budget));
    let godel = Encoding::godel(normal.clone(), rec.clone());
    let church = Encoding::church(rec.clone(), normal);
    let report = match side {
        Side::Sf => {
            let inputs: Vec<Value> =
                enumerate_normal_forms(Calculus::SF, max.unwrap_or(3)).into_iter().map(Value::Term).collect();
            check_weak_equivalence(&church, &godel, &Program::Comb(define_core(Calculus::SF).term("godelize")), &inputs)
        }
        Side::Recursive => {
            let inputs: Vec<Value> = (0..=max.unwrap_or(8)).map(Value::nat).collect();
            check_weak_equivalence(&godel, &church, &Program::Rec(numeral_code_program(Calculus::SF)), &inputs)
        }
        Side::Identity => {
            let inputs: Vec<Value> = (0..=max.unwrap_or(8)).map(Value::nat).collect();
            let same = Encoding::identity(rec);
            check_weak_equivalence(&same, &same, &Program::Rec(sfcalc::models::recfn::RecFn::Proj(1, 1)), &inputs)
        }
    };
    report_outcome(report, opts.tsv)
}

fn demo(opts: &Opts, name: &str) -> Outcome {
    let config = DemoConfig { budget: opts.budget, seed: opts.seed, tsv: opts.tsv };
    let out = run_demo(name, &config)
        .ok_or_else(|| err(format!("unknown demo `{name}`; available: {}", DEMOS.join(", "))))?;
    if out.passed {
        Ok(out.text)
    } else {
        Err(Failure::Check(out.text))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = &cli.opts;
    let outcome = match &cli.command {
        Command::Reduce { term } => reduce(opts, term),
        Command::Trace { term } => trace(opts, term),
        Command::Eq { left, right } => eq(opts, left, right),
        Command::Godel { input, decode } => godel(opts, input, *decode),
        Command::Polish { input, decode } => polish(opts, input, *decode),
        Command::Lambda { term } => lambda(opts, term),
        Command::Tm { command: TmCommand::Run { machine, input } } => tm_run(opts, machine, input),
        Command::Check { command: CheckCommand::Sim { suite, max } } => check_sim(opts, *suite, *max),
        Command::Check { command: CheckCommand::Weakequiv { side, max } } => check_weakequiv(opts, *side, *max),
        Command::Demo { name } => demo(opts, name),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Check(text)) => {
            print!("{text}");
            eprintln!("checks failed");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
    }
}
