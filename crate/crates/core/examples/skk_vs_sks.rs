//! SKK and SKS agree on every probe, yet SF tells their images apart.

use sfcalc::models::enumerate::probe_corpus;
use sfcalc::reduce::{extensionally_agree, Reducer};
use sfcalc::stdlib::{define_core, to_sf};
use sfcalc::syntax::parse;
use sfcalc::term::Calculus;

fn main() {
    let skk = parse("SKK", Calculus::SK).unwrap();
    let sks = parse("SKS", Calculus::SK).unwrap();
    let probes = probe_corpus(Calculus::SK, 5, 100, 0);
    let agree = extensionally_agree(&skk, &sks, Calculus::SK, &probes, 100_000);
    println!("SKK and SKS agree on {} probes: {agree}", probes.len());

    let catalog = define_core(Calculus::SF);
    let (a, b) = (to_sf(&skk), to_sf(&sks));
    let out = Reducer::new(Calculus::SF, 1_000_000).normalize(&catalog.call("eq", [a.clone(), b.clone()]));
    let answer = out.normal_form().and_then(|t| catalog.decode_bool(t));
    println!("eq {a} {b} = {answer:?} after {} steps", out.step_count());
}
