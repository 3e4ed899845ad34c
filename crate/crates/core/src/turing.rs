//! Deterministic single-tape Turing machines over a finite alphabet.
//!
//! Machine files hold one transition per line, `state symbol -> state'
//! symbol' move` with `move` one of `L` or `R`, after the header lines
//! `start`, `accept` and `reject`. Optional headers: `blank c` (default
//! `_`) and `alphabet c c ...`; symbols used in transitions join the
//! alphabet either way. Lines starting with `;` are comments.
//!
//! A configuration with no transition rejects.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TuringError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid machine: {0}")]
    Invalid(String),
    #[error("input symbol {symbol:?} at position {pos} is not in the alphabet")]
    Symbol { pos: usize, symbol: char },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MachineSpec {
    states: BTreeSet<String>,
    alphabet: BTreeSet<char>,
    blank: char,
    transitions: BTreeMap<(String, char), (String, char, Move)>,
    start: String,
    accept: String,
    reject: String,
}

impl MachineSpec {
    /// Builds and validates a machine. States and alphabet are whatever
    /// the transitions and the three named states mention, plus `extra_symbols`.
    pub fn new(
        start: &str,
        accept: &str,
        reject: &str,
        blank: char,
        extra_symbols: impl IntoIterator<Item = char>,
        transitions: impl IntoIterator<Item = ((String, char), (String, char, Move))>,
    ) -> Result<MachineSpec, TuringError> {
        let mut alphabet: BTreeSet<char> = extra_symbols.into_iter().collect();
        alphabet.insert(blank);
        let mut states: BTreeSet<String> = [start, accept, reject].iter().map(|s| s.to_string()).collect();
        let mut table = BTreeMap::new();
        for ((q, a), (r, b, m)) in transitions {
            alphabet.insert(a);
            alphabet.insert(b);
            states.insert(q.clone());
            states.insert(r.clone());
            if let Some(old) = table.insert((q.clone(), a), (r, b, m)) {
                return Err(TuringError::Invalid(format!("two transitions for ({q}, {a}): one goes to {}", old.0)));
            }
        }
        let spec = MachineSpec {
            states,
            alphabet,
            blank,
            transitions: table,
            start: start.to_string(),
            accept: accept.to_string(),
            reject: reject.to_string(),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), TuringError> {
        if self.accept == self.reject {
            return Err(TuringError::Invalid("accept and reject must differ".into()));
        }
        if self.start == self.accept || self.start == self.reject {
            return Err(TuringError::Invalid("start must differ from accept and reject".into()));
        }
        for (q, _) in self.transitions.keys() {
            if *q == self.accept || *q == self.reject {
                return Err(TuringError::Invalid(format!("halting state {q} has an outgoing transition")));
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<MachineSpec, TuringError> {
        let mut start = None;
        let mut accept = None;
        let mut reject = None;
        let mut blank = '_';
        let mut extra = Vec::new();
        let mut transitions = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| TuringError::Parse { line, message };
            let content = raw.trim();
            if content.is_empty() || content.starts_with(';') {
                continue;
            }
            let words: Vec<&str> = content.split_whitespace().collect();
            let symbol = |w: &str| -> Result<char, TuringError> {
                let mut cs = w.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) => Ok(c),
                    _ => Err(err(format!("expected a single symbol, found {w:?}"))),
                }
            };
            match words[0] {
                "start" | "accept" | "reject" if words.len() == 2 => {
                    let slot = match words[0] {
                        "start" => &mut start,
                        "accept" => &mut accept,
                        _ => &mut reject,
                    };
                    if slot.replace(words[1].to_string()).is_some() {
                        return Err(err(format!("{} given twice", words[0])));
                    }
                }
                "blank" if words.len() == 2 => blank = symbol(words[1])?,
                "alphabet" => {
                    for w in &words[1..] {
                        extra.push(symbol(w)?);
                    }
                }
                _ => {
                    if words.len() != 6 || words[2] != "->" {
                        return Err(err("expected `state symbol -> state symbol move`".into()));
                    }
                    let m = match words[5] {
                        "L" => Move::L,
                        "R" => Move::R,
                        other => return Err(err(format!("move must be L or R, found {other:?}"))),
                    };
                    transitions.push((
                        (words[0].to_string(), symbol(words[1])?),
                        (words[3].to_string(), symbol(words[4])?, m),
                    ));
                }
            }
        }
        let missing = |name: &str| TuringError::Parse { line: 0, message: format!("missing `{name}` header") };
        let start = start.ok_or_else(|| missing("start"))?;
        let accept = accept.ok_or_else(|| missing("accept"))?;
        let reject = reject.ok_or_else(|| missing("reject"))?;
        MachineSpec::new(&start, &accept, &reject, blank, extra, transitions)
    }

    pub fn states(&self) -> &BTreeSet<String> {
        &self.states
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    pub fn blank(&self) -> char {
        self.blank
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn accept(&self) -> &str {
        &self.accept
    }

    pub fn reject(&self) -> &str {
        &self.reject
    }

    pub fn transition(&self, state: &str, symbol: char) -> Option<&(String, char, Move)> {
        self.transitions.get(&(state.to_string(), symbol))
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }
}

impl fmt::Display for MachineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start {}", self.start)?;
        writeln!(f, "accept {}", self.accept)?;
        writeln!(f, "reject {}", self.reject)?;
        writeln!(f, "blank {}", self.blank)?;
        let symbols: Vec<String> = self.alphabet.iter().map(|c| c.to_string()).collect();
        writeln!(f, "alphabet {}", symbols.join(" "))?;
        for ((q, a), (r, b, m)) in &self.transitions {
            writeln!(f, "{q} {a} -> {r} {b} {m:?}")?;
        }
        Ok(())
    }
}

/// A two-way infinite tape; cells outside the stored window are blank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tape {
    cells: VecDeque<char>,
    head: usize,
    blank: char,
}

impl Tape {
    pub fn new(input: &str, blank: char) -> Tape {
        let mut cells: VecDeque<char> = input.chars().collect();
        if cells.is_empty() {
            cells.push_back(blank);
        }
        Tape { cells, head: 0, blank }
    }

    pub fn read(&self) -> char {
        self.cells[self.head]
    }

    fn write(&mut self, c: char) {
        self.cells[self.head] = c;
    }

    fn shift(&mut self, m: Move) {
        match m {
            Move::L if self.head == 0 => self.cells.push_front(self.blank),
            Move::L => self.head -= 1,
            Move::R => {
                self.head += 1;
                if self.head == self.cells.len() {
                    self.cells.push_back(self.blank);
                }
            }
        }
    }

    /// Cells left of the head, blanks trimmed at the far end.
    pub fn left(&self) -> String {
        let s: String = self.cells.range(..self.head).collect();
        s.trim_start_matches(self.blank).to_string()
    }

    /// Cells right of the head, blanks trimmed at the far end.
    pub fn right(&self) -> String {
        let s: String = self.cells.range(self.head + 1..).collect();
        s.trim_end_matches(self.blank).to_string()
    }

    /// The non-blank span of the tape.
    pub fn contents(&self) -> String {
        let s: String = self.cells.iter().collect();
        s.trim_matches(self.blank).to_string()
    }
}

impl fmt::Display for Tape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]{}", self.left(), self.read(), self.right())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Halt {
    Accept,
    Reject,
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub halt: Halt,
    pub state: String,
    pub tape: Tape,
    pub steps: u64,
}

pub fn run_machine(m: &MachineSpec, input: &str, budget: u64) -> Result<RunOutcome, TuringError> {
    for (pos, symbol) in input.chars().enumerate() {
        if !m.alphabet.contains(&symbol) || symbol == m.blank {
            return Err(TuringError::Symbol { pos, symbol });
        }
    }
    let mut tape = Tape::new(input, m.blank);
    let mut state = m.start.clone();
    let mut steps = 0u64;
    loop {
        if state == m.accept {
            return Ok(RunOutcome { halt: Halt::Accept, state, tape, steps });
        }
        if state == m.reject {
            return Ok(RunOutcome { halt: Halt::Reject, state, tape, steps });
        }
        if steps >= budget {
            return Ok(RunOutcome { halt: Halt::Budget, state, tape, steps });
        }
        let Some((next, write, mv)) = m.transition(&state, tape.read()) else {
            return Ok(RunOutcome { halt: Halt::Reject, state, tape, steps });
        };
        tape.write(*write);
        tape.shift(*mv);
        state = next.clone();
        steps += 1;
    }
}

/// Source text of [`equality_machine`].
pub const EQUALITY_MACHINE: &str = include_str!("../machines/equality.tm");

/// Mark-and-compare machine accepting `u#v` exactly when `u = v`.
pub fn equality_machine() -> MachineSpec {
    MachineSpec::parse(EQUALITY_MACHINE).expect("shipped machine parses")
}

/// Step bound constant for [`equality_machine`]: on an input of length
/// `n >= 1` it halts within `EQUALITY_STEP_CONSTANT * n * n` steps.
///
/// Each of the at most `n - 1` rounds walks from the left end to a letter
/// of the second word and back, at most `2n + 2` moves, and the final scan
/// is at most `n + 1`, for `2n^2 + n - 1` in total.
pub const EQUALITY_STEP_CONSTANT: u64 = 3;

pub fn equality_step_bound(n: usize) -> u64 {
    let n = n.max(1) as u64;
    EQUALITY_STEP_CONSTANT * n * n
}

/// Accepts at once and leaves its input untouched.
pub fn identity_machine(symbols: &str) -> MachineSpec {
    let blank = '_';
    let transitions = symbols
        .chars()
        .chain(std::iter::once(blank))
        .map(|c| (("run".to_string(), c), ("done".to_string(), c, Move::R)));
    MachineSpec::new("run", "done", "fail", blank, symbols.chars(), transitions).expect("identity machine is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decide(input: &str) -> Halt {
        run_machine(&equality_machine(), input, 10_000).unwrap().halt
    }

    #[test]
    fn equality_examples() {
        assert_eq!(decide("ASAKK#ASAKK"), Halt::Accept);
        assert_eq!(decide("ASAKK#AKK"), Halt::Reject);
        assert_eq!(decide("AKK#ASAKK"), Halt::Reject);
        assert_eq!(decide("#S"), Halt::Reject);
        assert_eq!(decide("S#"), Halt::Reject);
        assert_eq!(decide("S#F"), Halt::Reject);
        assert_eq!(decide("#"), Halt::Accept);
        assert_eq!(decide("SS"), Halt::Reject);
        assert_eq!(decide(""), Halt::Reject);
        assert_eq!(decide("S#S#S"), Halt::Reject);
    }

    #[test]
    fn zero_budget_stops_before_the_first_step() {
        let out = run_machine(&equality_machine(), "S#S", 0).unwrap();
        assert_eq!(out.halt, Halt::Budget);
        assert_eq!(out.steps, 0);
        assert_eq!(run_machine(&identity_machine("AS"), "AS", 0).unwrap().halt, Halt::Budget);
    }

    #[test]
    fn foreign_symbols_are_errors() {
        assert_eq!(run_machine(&equality_machine(), "S#Q", 10), Err(TuringError::Symbol { pos: 2, symbol: 'Q' }));
        assert!(run_machine(&equality_machine(), "S_S", 10).is_err());
    }

    #[test]
    fn shipped_machine_has_its_alphabet() {
        let m = equality_machine();
        let alphabet: String = m.alphabet().iter().collect();
        assert_eq!(alphabet, "#AFKSX_");
        assert!(m.transition(m.accept(), '_').is_none());
    }

    #[test]
    fn printing_and_parsing_round_trip() {
        let m = equality_machine();
        assert_eq!(MachineSpec::parse(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn malformed_machines() {
        assert!(matches!(MachineSpec::parse("accept a\nreject r\n"), Err(TuringError::Parse { .. })));
        assert!(matches!(
            MachineSpec::parse("start s\naccept a\nreject r\ns x -> a x Up\n"),
            Err(TuringError::Parse { line: 4, .. })
        ));
        assert!(matches!(
            MachineSpec::parse("start s\naccept a\nreject r\na x -> s x R\n"),
            Err(TuringError::Invalid(_))
        ));
        assert!(matches!(
            MachineSpec::parse("start s\naccept a\nreject r\ns x -> a x R\ns x -> r x R\n"),
            Err(TuringError::Invalid(_))
        ));
        assert!(matches!(MachineSpec::parse("start a\naccept a\nreject r\n"), Err(TuringError::Invalid(_))));
    }

    #[test]
    fn identity_machine_keeps_the_tape() {
        let out = run_machine(&identity_machine("ASKF"), "ASAKK", 10).unwrap();
        assert_eq!(out.halt, Halt::Accept);
        assert_eq!(out.steps, 1);
        assert_eq!(out.tape.contents(), "ASAKK");
    }

    #[test]
    fn tape_views() {
        let mut t = Tape::new("ab", '_');
        t.shift(Move::L);
        assert_eq!(t.read(), '_');
        assert_eq!(t.right(), "ab");
        t.shift(Move::R);
        t.shift(Move::R);
        t.shift(Move::R);
        assert_eq!(t.left(), "ab");
        assert_eq!(t.contents(), "ab");
        assert_eq!(t.to_string(), "ab[_]");
    }

    #[test]
    fn quadratic_bound_on_short_words() {
        let letters = ['A', 'S', 'F'];
        let words: Vec<String> = (0..4)
            .flat_map(|len| {
                let mut ws = vec![String::new()];
                for _ in 0..len {
                    ws = ws.iter().flat_map(|w| letters.iter().map(move |c| format!("{w}{c}"))).collect();
                }
                ws
            })
            .collect();
        for u in &words {
            for v in &words {
                let input = format!("{u}#{v}");
                let out = run_machine(&equality_machine(), &input, 10_000).unwrap();
                assert_eq!(out.halt == Halt::Accept, u == v, "{input}");
                assert!(out.steps <= equality_step_bound(input.len()), "{input}: {}", out.steps);
            }
        }
    }
}
