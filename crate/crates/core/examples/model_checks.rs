//! Simulation and weak-equivalence checks between models of computability.

use std::rc::Rc;

use sfcalc::models::enumerate::enumerate_normal_forms;
use sfcalc::models::{
    arithmetic_suite, check_simulation, check_weak_equivalence, nat_tuples, numeral_code_program, Encoding,
    NormalModel, Program, RecursiveModel, Value,
};
use sfcalc::stdlib::define_core;
use sfcalc::term::Calculus;

fn main() {
    let rec = Rc::new(RecursiveModel { budget: 1_000_000 });
    let normal = Rc::new(NormalModel::new(Calculus::SF, 1_000_000));
    let church = Encoding::church(rec.clone(), normal.clone());
    let godel = Encoding::godel(normal, rec);
    let catalog = define_core(Calculus::SF);
    for case in arithmetic_suite(&catalog) {
        let report = check_simulation(
            &church,
            &Program::Rec(case.recursive),
            &Program::Comb(case.combinator),
            &nat_tuples(case.arity, 3),
        );
        println!("{:<8} {}", case.name, report.summary());
    }

    // n -> gnum(numeral n) recodes the Church encoding into the Goedel one
    let inputs: Vec<Value> = (0..4).map(Value::nat).collect();
    let report = check_weak_equivalence(&godel, &church, &Program::Rec(numeral_code_program(Calculus::SF)), &inputs);
    print!("{}", report.render_table());

    let terms: Vec<Value> = enumerate_normal_forms(Calculus::SF, 3).into_iter().map(Value::Term).collect();
    let report = check_weak_equivalence(&church, &godel, &Program::Comb(catalog.term("godelize")), &terms);
    print!("{}", report.render_table());
}
