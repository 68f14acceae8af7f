//! Initial Mealy machines: validation, runs on finite words, lazy stream
//! transforms, the exact ultimately-periodic transform, and series
//! composition.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, FiniteWord, Letter, StreamSource, UPWord, WordStream};

mod enumerate;

pub use enumerate::{enumerate_machines, find_transducer, MachineEnumeration};

/// A state identifier: a non-empty token without whitespace. Product states
/// print as `(left,right)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct State(Arc<str>);

impl State {
    pub fn new(token: &str) -> Result<Self> {
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(Error::UnknownState(token.into()));
        }
        Ok(State(token.into()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One row of a machine description.
#[derive(Debug, Clone)]
pub struct Transition {
    pub from: State,
    pub input: Letter,
    pub to: State,
    pub output: Letter,
}

/// Result of running a machine over a finite word: the state reached and
/// the emitted word, always exactly as long as the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub final_state: State,
    pub output: FiniteWord,
}

/// A validated initial Mealy machine: total transition and output maps on
/// states x input letters, with the output map surjective onto the output
/// alphabet.
///
/// Values are immutable; every operation is a pure function, so machines
/// may be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MealyMachine {
    states: Vec<State>,
    input: Alphabet,
    output: Alphabet,
    initial: usize,
    // Dense tables indexed by state * |input| + letter position.
    next: Vec<usize>,
    out: Vec<Letter>,
}

impl MealyMachine {
    /// Validates a machine description. All violations are reported at
    /// once, not just the first.
    pub fn from_parts(
        states: Vec<State>,
        input: Alphabet,
        output: Alphabet,
        initial: State,
        transitions: Vec<Transition>,
    ) -> Result<Self> {
        let mut violations = Vec::new();

        if states.is_empty() {
            violations.push("machine has no states".to_string());
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                violations.push(format!("duplicate state {s:?}"));
            }
        }
        let initial_index = match states.iter().position(|s| s == &initial) {
            Some(i) => i,
            None => {
                violations.push(format!("initial state {initial:?} is not a declared state"));
                0
            }
        };

        let cells = states.len() * input.len();
        let mut next = vec![usize::MAX; cells];
        let mut out: Vec<Option<Letter>> = vec![None; cells];

        for t in &transitions {
            let q = states.iter().position(|s| s == &t.from);
            let a = input.position(&t.input);
            if q.is_none() {
                violations.push(format!("transition from unknown state {:?}", t.from));
            }
            if a.is_none() {
                violations.push(format!("transition on letter {:?} outside the input alphabet", t.input));
            }
            if !states.contains(&t.to) {
                violations.push(format!("transition to unknown state {:?}", t.to));
            }
            if !output.contains(&t.output) {
                violations.push(format!("output letter {:?} outside the output alphabet", t.output));
            }
            if let (Some(q), Some(a)) = (q, a) {
                let cell = q * input.len() + a;
                if next[cell] != usize::MAX {
                    violations.push(format!("duplicate transition for state {:?} on letter {:?}", t.from, t.input));
                    continue;
                }
                if let Some(to) = states.iter().position(|s| s == &t.to) {
                    next[cell] = to;
                }
                if output.contains(&t.output) {
                    out[cell] = Some(t.output.clone());
                }
            }
        }

        for (cell, slot) in next.iter().enumerate() {
            if *slot == usize::MAX && out[cell].is_none() {
                let q = &states[cell / input.len()];
                let a = &input.letters()[cell % input.len()];
                violations.push(format!("missing transition for state {q:?} on letter {a:?}"));
            }
        }

        if violations.is_empty() {
            let produced: BTreeSet<&Letter> = out.iter().map(|o| o.as_ref().unwrap()).collect();
            for letter in output.letters() {
                if !produced.contains(letter) {
                    violations.push(format!(
                        "output map is not surjective: letter {letter:?} is never produced"
                    ));
                }
            }
        }

        if !violations.is_empty() {
            return Err(Error::InvalidMachine { violations });
        }

        Ok(MealyMachine {
            states,
            input,
            output,
            initial: initial_index,
            next,
            out: out.into_iter().map(Option::unwrap).collect(),
        })
    }

    /// Builds a machine from dense tables. Internal fast path for the
    /// enumerator and composition; callers guarantee validity.
    pub(crate) fn from_tables(
        states: Vec<State>,
        input: Alphabet,
        output: Alphabet,
        initial: usize,
        next: Vec<usize>,
        out: Vec<Letter>,
    ) -> Self {
        debug_assert_eq!(next.len(), states.len() * input.len());
        debug_assert_eq!(out.len(), next.len());
        debug_assert!(initial < states.len());
        MealyMachine { states, input, output, initial, next, out }
    }

    /// The one-state machine that copies its input.
    pub fn identity(alphabet: &Alphabet) -> Self {
        let q = State::new("q1").unwrap();
        MealyMachine {
            states: vec![q],
            input: alphabet.clone(),
            output: alphabet.clone(),
            initial: 0,
            next: vec![0; alphabet.len()],
            out: alphabet.letters().to_vec(),
        }
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn initial_state(&self) -> &State {
        &self.states[self.initial]
    }

    /// The same machine started from a different state.
    pub fn with_initial(&self, q: &State) -> Result<Self> {
        let initial = self.state_index(q)?;
        let mut m = self.clone();
        m.initial = initial;
        Ok(m)
    }

    /// A word with this alphabet can be fed to the machine.
    pub fn is_apt_for(&self, alphabet: &Alphabet) -> bool {
        alphabet.is_subset_of(&self.input)
    }

    fn state_index(&self, q: &State) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == q)
            .ok_or_else(|| Error::UnknownState(q.to_string()))
    }

    fn input_index(&self, a: &Letter) -> Result<usize> {
        self.input.position(a).ok_or_else(|| Error::LetterOutsideAlphabet {
            letter: a.to_string(),
            alphabet: self.input.to_string(),
        })
    }

    fn apt_guard(&self, alphabet: &Alphabet) -> Result<()> {
        if self.is_apt_for(alphabet) {
            Ok(())
        } else {
            Err(Error::NotApt {
                word: alphabet.to_string(),
                machine: self.input.to_string(),
            })
        }
    }

    /// Runs the machine from `from` over `word`, emitting one output letter
    /// per input letter. The empty word leaves the state unchanged and
    /// emits the empty word.
    pub fn run(&self, from: &State, word: &FiniteWord) -> Result<RunResult> {
        let mut q = self.state_index(from)?;
        let width = self.input.len();
        let mut output = Vec::with_capacity(word.len());
        for letter in word.letters() {
            let a = self.input_index(letter)?;
            let cell = q * width + a;
            output.push(self.out[cell].clone());
            q = self.next[cell];
        }
        Ok(RunResult {
            final_state: self.states[q].clone(),
            output: FiniteWord::from_trusted(self.output.clone(), output),
        })
    }

    /// Runs from the initial state and returns just the output word.
    pub fn transform_word(&self, word: &FiniteWord) -> Result<FiniteWord> {
        Ok(self.run(self.initial_state(), word)?.output)
    }

    /// Exact transform of an ultimately periodic word, from the initial
    /// state.
    pub fn transform_up(&self, x: &UPWord) -> Result<UPWord> {
        self.transform_up_from_index(self.initial, x)
    }

    /// Exact transform of an ultimately periodic word from a given state.
    pub fn transform_up_from(&self, from: &State, x: &UPWord) -> Result<UPWord> {
        self.transform_up_from_index(self.state_index(from)?, x)
    }

    /// Consumes the preperiod, then walks the periodic tail keeping the
    /// pair (state, position mod period). By pigeonhole a pair repeats
    /// within |Q| * |v| steps; the stretch between the two visits is a
    /// period of the output, everything before it the preperiod. The
    /// result is then canonicalized, so the returned anti-period is at most
    /// |u| + |Q| * |v| and the returned period divides the cycle length.
    fn transform_up_from_index(&self, start: usize, x: &UPWord) -> Result<UPWord> {
        self.apt_guard(x.alphabet())?;
        let width = self.input.len();

        let mut q = start;
        let mut pre_out = Vec::with_capacity(x.anti_period());
        for letter in x.preperiod_letters() {
            let cell = q * width + self.input_index(letter).expect("apt word");
            pre_out.push(self.out[cell].clone());
            q = self.next[cell];
        }

        let period_cells: Vec<usize> = x
            .period_letters()
            .iter()
            .map(|l| self.input_index(l).expect("apt word"))
            .collect();
        let period_len = period_cells.len();

        let mut seen = vec![usize::MAX; self.states.len() * period_len];
        let mut tail_out = Vec::with_capacity(self.states.len() * period_len);
        let (cycle_start, cycle_end) = loop {
            let step = tail_out.len();
            let phase = step % period_len;
            let key = q * period_len + phase;
            if seen[key] != usize::MAX {
                break (seen[key], step);
            }
            seen[key] = step;
            let cell = q * width + period_cells[phase];
            tail_out.push(self.out[cell].clone());
            q = self.next[cell];
        };

        let mut preperiod = pre_out;
        preperiod.extend_from_slice(&tail_out[..cycle_start]);
        let cycle = tail_out[cycle_start..cycle_end].to_vec();

        let pre = FiniteWord::from_trusted(self.output.clone(), preperiod);
        let per = FiniteWord::from_trusted(self.output.clone(), cycle);
        UPWord::new(&pre, &per)
    }

    /// Lazy transform of a stream: the result's length-`n` prefix always
    /// equals the run of the machine over the input's length-`n` prefix.
    pub fn transform_stream(&self, x: &WordStream) -> Result<WordStream> {
        self.apt_guard(x.alphabet())?;
        let label = format!("transformed:{}", x.label());
        let source = TransformedSource { machine: self.clone(), inner: x.clone() };
        Ok(WordStream::from_source(label, self.output.clone(), Arc::new(source)))
    }

    /// Series composition: this machine feeds the `second` one. The
    /// composite runs on the product state space; its output alphabet is
    /// shrunk to the letters the composite can actually produce, keeping
    /// the surjectivity invariant.
    pub fn series(&self, second: &MealyMachine) -> Result<MealyMachine> {
        if !self.output.is_subset_of(&second.input) {
            return Err(Error::NotComposable {
                first_output: self.output.to_string(),
                second_input: second.input.to_string(),
            });
        }

        let width1 = self.input.len();
        let width2 = second.input.len();
        let k2 = second.states.len();

        let mut states = Vec::with_capacity(self.states.len() * k2);
        for q1 in &self.states {
            for q2 in &second.states {
                states.push(State::new(&format!("({q1},{q2})")).expect("product state token"));
            }
        }

        let cells = states.len() * width1;
        let mut next = Vec::with_capacity(cells);
        let mut out = Vec::with_capacity(cells);
        let mut produced: BTreeSet<Letter> = BTreeSet::new();
        for q1 in 0..self.states.len() {
            for q2 in 0..k2 {
                for a in 0..width1 {
                    let cell1 = q1 * width1 + a;
                    let mid = &self.out[cell1];
                    let a2 = second.input.position(mid).expect("composability checked");
                    let cell2 = q2 * width2 + a2;
                    next.push(self.next[cell1] * k2 + second.next[cell2]);
                    let letter = second.out[cell2].clone();
                    produced.insert(letter.clone());
                    out.push(letter);
                }
            }
        }

        Ok(MealyMachine {
            states,
            input: self.input.clone(),
            output: Alphabet::from_set(produced).expect("at least one letter is produced"),
            initial: self.initial * k2 + second.initial,
            next,
            out,
        })
    }

    /// The machine as a serializable description, transitions in
    /// state-major, letter-minor order.
    pub fn to_spec(&self) -> MachineSpec {
        let width = self.input.len();
        let mut transitions = Vec::with_capacity(self.next.len());
        for (q, state) in self.states.iter().enumerate() {
            for (a, letter) in self.input.letters().iter().enumerate() {
                let cell = q * width + a;
                transitions.push(TransitionSpec {
                    from: state.to_string(),
                    input: letter.to_string(),
                    to: self.states[self.next[cell]].to_string(),
                    output: self.out[cell].to_string(),
                });
            }
        }
        MachineSpec {
            states: self.states.iter().map(State::to_string).collect(),
            input_alphabet: self.input.letters().iter().map(Letter::to_string).collect(),
            output_alphabet: self.output.letters().iter().map(Letter::to_string).collect(),
            initial: self.initial_state().to_string(),
            transitions,
        }
    }
}

struct TransformedSource {
    machine: MealyMachine,
    inner: WordStream,
}

impl StreamSource for TransformedSource {
    fn letter_at(&self, n: u64) -> Letter {
        // Per-index access replays the run; use prefix() for bulk reads.
        self.prefix(n as usize + 1).pop().expect("non-empty prefix")
    }

    fn prefix(&self, len: usize) -> Vec<Letter> {
        let input = self.inner.expand(len);
        self.machine
            .transform_word(&input)
            .expect("stream was checked apt")
            .letters()
            .to_vec()
    }
}

/// JSON-compatible machine description.
///
/// ```json
/// { "states": ["A","B"], "input_alphabet": ["0","1"], "output_alphabet": ["0","1"],
///   "initial": "A",
///   "transitions": [ {"from":"A","input":"0","to":"B","output":"0"}, ... ] }
/// ```
///
/// Exactly one transition per (state, input letter) pair is required;
/// duplicates are a validation error.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MachineSpec {
    pub states: Vec<String>,
    pub input_alphabet: Vec<String>,
    pub output_alphabet: Vec<String>,
    pub initial: String,
    pub transitions: Vec<TransitionSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TransitionSpec {
    pub from: String,
    pub input: String,
    pub to: String,
    pub output: String,
}

impl MachineSpec {
    pub fn parse_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(text, "machine description", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("machine specs always serialize")
    }

    /// Checks every structural invariant and builds the machine.
    pub fn validate(&self) -> Result<MealyMachine> {
        let mut violations = Vec::new();

        let mut states = Vec::new();
        for s in &self.states {
            match State::new(s) {
                Ok(s) => states.push(s),
                Err(_) => violations.push(format!("invalid state token {s:?}")),
            }
        }

        let mut letters = |tokens: &[String], which: &str| -> Option<Alphabet> {
            let mut ls = Vec::new();
            for t in tokens {
                match Letter::new(t) {
                    Ok(l) => ls.push(l),
                    Err(e) => {
                        violations.push(format!("{which}: {e}"));
                        return None;
                    }
                }
            }
            match Alphabet::new(ls) {
                Ok(a) => Some(a),
                Err(e) => {
                    violations.push(format!("{which}: {e}"));
                    None
                }
            }
        };
        let input = letters(&self.input_alphabet, "input alphabet");
        let output = letters(&self.output_alphabet, "output alphabet");

        let initial = State::new(&self.initial)
            .map_err(|_| violations.push(format!("invalid initial state token {:?}", self.initial)))
            .ok();

        let mut transitions = Vec::new();
        for t in &self.transitions {
            let parsed = (|| -> Result<Transition> {
                Ok(Transition {
                    from: State::new(&t.from)?,
                    input: Letter::new(&t.input)?,
                    to: State::new(&t.to)?,
                    output: Letter::new(&t.output)?,
                })
            })();
            match parsed {
                Ok(t) => transitions.push(t),
                Err(e) => violations.push(format!("invalid transition entry: {e}")),
            }
        }

        match (input, output, initial) {
            (Some(input), Some(output), Some(initial)) if violations.is_empty() => {
                MealyMachine::from_parts(states, input, output, initial, transitions)
            }
            _ => Err(Error::InvalidMachine { violations }),
        }
    }
}
