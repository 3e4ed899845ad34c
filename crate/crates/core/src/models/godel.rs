//! Structural Gödel numbering by Cantor pairing.
//!
//! ```text
//! gnum(S) = 1
//! gnum(K) = gnum(F) = 2
//! gnum(p q) = cantor(gnum p, gnum q) + 3
//! cantor(a, b) = (a + b)(a + b + 1)/2 + b
//! ```

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::term::{Calculus, Node, Operator, Term, TermError};

pub fn cantor_pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8z + 1) - 1) / 2)
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = z - t;
    let a = w - &b;
    (a, b)
}

fn atom_code(op: Operator) -> u32 {
    match op {
        Operator::S => 1,
        Operator::K | Operator::F => 2,
    }
}

/// Gödel number of a closed term.
pub fn gnum(t: &Term) -> Result<BigUint, TermError> {
    if !t.is_closed() {
        return Err(TermError::Open);
    }
    fn go(t: &Term) -> BigUint {
        match t.node() {
            Node::Atom(op) => BigUint::from(atom_code(*op)),
            Node::App(p, q) => cantor_pair(&go(p), &go(q)) + 3u32,
            Node::Var(_) => unreachable!("closed"),
        }
    }
    Ok(go(t))
}

/// Decodes a Gödel number; `None` outside the image of [`gnum`].
pub fn gterm(n: &BigUint, calculus: Calculus) -> Option<Term> {
    if n.is_zero() {
        return None;
    }
    if n.is_one() {
        return Some(Term::s());
    }
    if n.to_u32() == Some(2) {
        return Some(Term::atom(calculus.partner()));
    }
    let (a, b) = cantor_unpair(&(n - 3u32));
    Some(Term::app(gterm(&a, calculus)?, gterm(&b, calculus)?))
}
