//! The word-equality Turing machine on Polish encodings.

use sfcalc::models::enumerate::enumerate_normal_forms;
use sfcalc::syntax::to_polish;
use sfcalc::term::Calculus;
use sfcalc::turing::{equality_machine, equality_step_bound, run_machine, EQUALITY_MACHINE};

fn main() {
    let machine = equality_machine();
    println!(
        "{} transitions; source:\n{}",
        machine.transition_count(),
        EQUALITY_MACHINE.lines().take(8).collect::<Vec<_>>().join("\n")
    );

    for input in ["AFF#AFF", "AFF#AFS", "S#S"] {
        let out = run_machine(&machine, input, 10_000).unwrap();
        println!("{input}: {:?} after {} steps (bound {})", out.halt, out.steps, equality_step_bound(input.len()));
    }

    let words: Vec<String> =
        enumerate_normal_forms(Calculus::SF, 6).iter().map(|t| to_polish(t).unwrap().as_str().to_string()).collect();
    let mut worst = 0;
    for u in &words {
        for v in &words {
            worst = worst.max(run_machine(&machine, &format!("{u}#{v}"), 10_000).unwrap().steps);
        }
    }
    println!("{} pairs, longest run {worst} steps", words.len() * words.len());
}
