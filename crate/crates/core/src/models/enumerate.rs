//! Generators for test domains: all closed terms, all closed normal forms,
//! and seeded random normal forms for probe corpora.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::term::{Calculus, Term};

fn by_leaves(max_size: u64, atoms: &[Term], keep: impl Fn(&Term, &Term) -> bool) -> Vec<Term> {
    if max_size == 0 {
        return Vec::new();
    }
    let max_leaves = max_size.div_ceil(2) as usize;
    let mut levels: Vec<Vec<Term>> = vec![Vec::new(), atoms.to_vec()];
    for leaves in 2..=max_leaves {
        let mut level = Vec::new();
        for left in 1..leaves {
            for p in &levels[left] {
                for q in &levels[leaves - left] {
                    if keep(p, q) {
                        level.push(Term::app(p.clone(), q.clone()));
                    }
                }
            }
        }
        levels.push(level);
    }
    levels.into_iter().flatten().collect()
}

/// Every closed term of size at most `max_size`, smallest first.
pub fn enumerate_terms(calculus: Calculus, max_size: u64) -> Vec<Term> {
    let atoms = calculus.operators().map(Term::atom);
    by_leaves(max_size, &atoms, |_, _| true)
}

/// Every closed normal form of size at most `max_size`, each exactly once,
/// smallest first.
pub fn enumerate_normal_forms(calculus: Calculus, max_size: u64) -> Vec<Term> {
    let atoms = calculus.operators().map(Term::atom);
    by_leaves(max_size, &atoms, |p, _| match p.head() {
        crate::term::Head::Op(op) => p.spine_len() + 1 < op.arity(),
        crate::term::Head::Var => false,
    })
}

/// A random closed normal form with exactly `leaves` operators.
pub fn random_normal_form(rng: &mut impl Rng, calculus: Calculus, leaves: usize) -> Term {
    let ops = calculus.operators();
    if leaves <= 1 {
        return Term::atom(ops[rng.gen_range(0..2)]);
    }
    // a compound: an operator with between one and arity-1 arguments
    let candidates: Vec<(crate::term::Operator, usize)> =
        ops.iter().flat_map(|&op| (1..op.arity()).map(move |n| (op, n))).filter(|&(_, n)| n < leaves).collect();
    let (op, nargs) = candidates[rng.gen_range(0..candidates.len())];
    // split leaves - 1 among nargs arguments, each at least one
    let mut remaining = leaves - 1;
    let mut args = Vec::with_capacity(nargs);
    for i in 0..nargs {
        let left_for_rest = nargs - 1 - i;
        let share = if left_for_rest == 0 { remaining } else { rng.gen_range(1..=remaining - left_for_rest) };
        remaining -= share;
        args.push(random_normal_form(rng, calculus, share));
    }
    Term::apply(Term::atom(op), args)
}

/// Probe corpus: all normal forms up to `exhaustive_size`, followed by
/// `random_count` seeded random normal forms with 4 to 8 operators.
pub fn probe_corpus(calculus: Calculus, exhaustive_size: u64, random_count: usize, seed: u64) -> Vec<Term> {
    let mut probes = enumerate_normal_forms(calculus, exhaustive_size);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_count {
        let leaves = rng.gen_range(4..=8);
        probes.push(random_normal_form(&mut rng, calculus, leaves));
    }
    probes
}
