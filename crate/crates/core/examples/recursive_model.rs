//! Partial recursive functions, with and without native jets.

use num_bigint::BigUint;
use sfcalc::models::numeral_code_program;
use sfcalc::models::recfn::{self, Evaluator, RecFn};
use sfcalc::term::Calculus;

fn main() {
    let args = [BigUint::from(6u32), BigUint::from(7u32)];
    for (name, f) in [("add", recfn::add()), ("mul", recfn::mul()), ("cantor", recfn::cantor())] {
        let naive = Evaluator::naive(10_000_000).eval(&f, &args).unwrap();
        let fast = Evaluator::with_jets(10_000_000).eval(&f, &args).unwrap();
        println!("{name}(6, 7) = {:?}: {} calls naively, {} with jets", naive.value.unwrap(), naive.calls, fast.calls);
    }

    // unbounded search that never succeeds
    let never = RecFn::mu(recfn::constant(1, 2));
    println!("mu of a constant 1: {:?}", Evaluator::naive(1_000).eval(&never, &[BigUint::from(0u32)]).unwrap().value);

    let program = numeral_code_program(Calculus::SF);
    for n in 0..3u32 {
        let code = recfn::eval_rec(&program, &[BigUint::from(n)], 1_000_000).unwrap().unwrap();
        println!("code of numeral {n} = {code}");
    }
}
