//! Polish words for closed terms: `A` marks an application.

use sfcalc::models::enumerate::enumerate_terms;
use sfcalc::syntax::{from_polish, parse, to_polish, PolishWord};
use sfcalc::term::Calculus;

fn main() {
    let t = parse("S(KK)", Calculus::SK).unwrap();
    let word = to_polish(&t).unwrap();
    println!("{t} -> {word}");

    let back = from_polish(&PolishWord::parse("AAFAFFS").unwrap(), Calculus::SF).unwrap();
    println!("AAFAFFS -> {back}");

    let terms = enumerate_terms(Calculus::SF, 7);
    let ok = terms.iter().all(|t| from_polish(&to_polish(t).unwrap(), Calculus::SF).as_ref() == Ok(t));
    println!("{} SF terms of size <= 7 round-trip: {ok}", terms.len());

    for bad in ["AS", "SS", "AQS"] {
        match PolishWord::parse(bad).and_then(|w| from_polish(&w, Calculus::SF)) {
            Ok(t) => println!("{bad} -> {t}"),
            Err(e) => println!("{bad} rejected: {e}"),
        }
    }
}
