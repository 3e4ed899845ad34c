//! Church numerals and the arithmetic entries of the catalog.

use sfcalc::reduce::Reducer;
use sfcalc::stdlib::{church_numeral, decode_numeral, define_core};
use sfcalc::term::Calculus;

fn main() {
    for calc in [Calculus::SK, Calculus::SF] {
        let catalog = define_core(calc);
        let reducer = Reducer::new(calc, 1_000_000);
        let n = |k| church_numeral(k, calc);
        println!("[{calc}] 2 = {}", n(2));
        for (name, args) in
            [("succ", vec![n(4)]), ("plus", vec![n(3), n(4)]), ("times", vec![n(3), n(4)]), ("pred", vec![n(5)])]
        {
            let value = decode_numeral(&catalog.call(name, args), &reducer);
            println!("[{calc}] {name} -> {value:?}");
        }
        let zero = reducer.normalize(&catalog.call("is_zero", [n(0)]));
        println!("[{calc}] is_zero 0 -> {:?}", zero.normal_form().and_then(|t| catalog.decode_bool(t)));
    }
}
