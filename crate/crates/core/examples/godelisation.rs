//! Goedel numbers of terms, computed at the host level and inside SF.

use sfcalc::models::godel::{gnum, gterm};
use sfcalc::reduce::Reducer;
use sfcalc::stdlib::{church_numeral, decode_numeral, define_core};
use sfcalc::syntax::parse;
use sfcalc::term::Calculus;

fn main() {
    for text in ["S", "FF", "SS", "S(FF)", "S(FF)S"] {
        let t = parse(text, Calculus::SF).unwrap();
        let n = gnum(&t).unwrap();
        println!("gnum({t}) = {n}, decodes to {}", gterm(&n, Calculus::SF).unwrap());
    }

    let catalog = define_core(Calculus::SF);
    let reducer = Reducer::new(Calculus::SF, 10_000_000);
    for text in ["S", "FF", "FS"] {
        let m = parse(text, Calculus::SF).unwrap();
        let value = decode_numeral(&catalog.call("godelize", [m.clone()]), &reducer);
        println!("godelize {m} = numeral {value:?}");
    }

    let eight = gnum(&church_numeral(8, Calculus::SF)).unwrap();
    println!("the numeral 8 has a code of {} digits", eight.to_string().len());
}
