//! De Bruijn λ-terms, β-normalisation and bracket abstraction.

use sfcalc::lambda::{agree_on_fresh_variables, beta_normalize, bracket_abstract, church_lambda, parse_lambda};
use sfcalc::reduce::Reducer;
use sfcalc::term::Calculus;

fn main() {
    for text in ["\\0", "\\\\1", "\\\\\\2 0 (1 0)", "(\\0 0) (\\0)", "(\\0 0) (\\0 0)"] {
        let t = parse_lambda(text).unwrap();
        let nf = beta_normalize(&t, 1_000);
        match nf.normal_form() {
            Some(v) => println!("{t}  β-> {v}"),
            None => println!("{t}  has no normal form within 1000 steps"),
        }
        for calc in [Calculus::SK, Calculus::SF] {
            println!("  [{calc}] {}", bracket_abstract(&t, calc).unwrap());
        }
    }

    let two = church_lambda(2);
    let reducer = Reducer::new(Calculus::SK, 10_000);
    let translated = bracket_abstract(&two, Calculus::SK).unwrap();
    let numeral = sfcalc::stdlib::church_numeral(2, Calculus::SK);
    println!(
        "{two} -> {translated}; agrees with the catalog numeral: {}",
        agree_on_fresh_variables(&translated, &numeral, &reducer, 4)
    );
}
