//! The SF equality combinator decides identity of closed normal forms.

use sfcalc::models::enumerate::enumerate_normal_forms;
use sfcalc::reduce::Reducer;
use sfcalc::stdlib::define_core;
use sfcalc::term::Calculus;

fn main() {
    let catalog = define_core(Calculus::SF);
    let reducer = Reducer::new(Calculus::SF, 1_000_000);
    let nfs = enumerate_normal_forms(Calculus::SF, 5);
    let (mut agree, mut most) = (0, 0);
    for x in &nfs {
        for y in &nfs {
            let out = reducer.normalize(&catalog.call("eq", [x.clone(), y.clone()]));
            most = most.max(out.step_count());
            if out.normal_form().and_then(|t| catalog.decode_bool(t)) == Some(x == y) {
                agree += 1;
            }
        }
    }
    println!("eq agrees with identity on {agree}/{} pairs, at most {most} steps", nfs.len() * nfs.len());
    println!("eq = {}", catalog.term("eq"));
}
