//! The rewrite rules of SK and SF, traced step by step.

use sfcalc::reduce::{render_trace, Reducer, Strategy};
use sfcalc::syntax::parse;
use sfcalc::term::Calculus;

fn main() {
    let cases = [
        (Calculus::SF, "F S M N"),
        (Calculus::SF, "F (S S) M N"),
        (Calculus::SF, "F F A B"),
        (Calculus::SK, "S K K x"),
        (Calculus::SF, "F (F x) M N"),
    ];
    for (calc, text) in cases {
        let t = parse(text, calc).unwrap();
        let out = Reducer::new(calc, 100).traced().normalize(&t);
        println!("[{calc}] {t}");
        print!("{}", render_trace(&out.trace().recorded));
        println!("  => {} ({} steps)\n", out.term(), out.step_count());
    }

    // The two strategies agree wherever both finish.
    let t = parse("S (F F) (F F) (S S S)", Calculus::SF).unwrap();
    for strategy in [Strategy::NormalOrder, Strategy::ApplicativeOrder] {
        let out = Reducer::new(Calculus::SF, 100).with_strategy(strategy).normalize(&t);
        println!("{strategy:?}: {} in {} steps", out.term(), out.step_count());
    }
}
