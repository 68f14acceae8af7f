use std::collections::BTreeSet;

use crate::word::{Alphabet, UPWord};

use super::{MealyMachine, State};

/// Deterministic enumeration of every initial Mealy machine with exactly
/// `state_count` states over the given alphabets and a surjective output
/// map.
///
/// Machines are indexed by a mixed-radix counter: the low digit picks the
/// initial state, the remaining digits pick (next state, output letter) per
/// cell in state-major, letter-minor order. `decode` maps an index back to
/// a machine (or `None` when the output map misses letters), which lets
/// exhaustive sweeps partition the raw index range across workers.
#[derive(Debug, Clone)]
pub struct MachineEnumeration {
    states: Vec<State>,
    input: Alphabet,
    output: Alphabet,
    choices_per_cell: u128,
    cells: usize,
    raw_total: u128,
    cursor: u128,
}

impl MachineEnumeration {
    pub fn new(state_count: usize, input: &Alphabet, output: &Alphabet) -> Self {
        assert!(state_count >= 1, "a machine needs at least one state");
        let states: Vec<State> = (1..=state_count)
            .map(|i| State::new(&format!("q{i}")).expect("generated state token"))
            .collect();
        let choices_per_cell = (state_count as u128) * (output.len() as u128);
        let cells = state_count * input.len();
        let table_total = choices_per_cell
            .checked_pow(cells as u32)
            .expect("enumeration space exceeds u128");
        let raw_total = table_total
            .checked_mul(state_count as u128)
            .expect("enumeration space exceeds u128");
        MachineEnumeration {
            states,
            input: input.clone(),
            output: output.clone(),
            choices_per_cell,
            cells,
            raw_total,
            cursor: 0,
        }
    }

    /// Size of the raw index space, surjectivity not yet filtered and the
    /// initial-state choice included.
    pub fn raw_total(&self) -> u128 {
        self.raw_total
    }

    /// Decodes one raw index; `None` when the output map is not surjective.
    pub fn decode(&self, index: u128) -> Option<MealyMachine> {
        debug_assert!(index < self.raw_total);
        let k = self.states.len();
        let initial = (index % k as u128) as usize;
        let mut rest = index / k as u128;

        let out_letters = self.output.letters();
        let mut next = Vec::with_capacity(self.cells);
        let mut out = Vec::with_capacity(self.cells);
        let mut produced = 0u64;
        for _ in 0..self.cells {
            let choice = (rest % self.choices_per_cell) as usize;
            rest /= self.choices_per_cell;
            let to = choice / out_letters.len();
            let letter = choice % out_letters.len();
            produced |= 1 << letter;
            next.push(to);
            out.push(out_letters[letter].clone());
        }
        if produced.count_ones() as usize != out_letters.len() {
            return None;
        }

        Some(MealyMachine::from_tables(
            self.states.clone(),
            self.input.clone(),
            self.output.clone(),
            initial,
            next,
            out,
        ))
    }
}

impl Iterator for MachineEnumeration {
    type Item = MealyMachine;

    fn next(&mut self) -> Option<MealyMachine> {
        while self.cursor < self.raw_total {
            let index = self.cursor;
            self.cursor += 1;
            if let Some(m) = self.decode(index) {
                return Some(m);
            }
        }
        None
    }
}

/// All machines with exactly `state_count` states over `(input, output)`,
/// each exactly once, in a fixed order.
pub fn enumerate_machines(state_count: usize, input: &Alphabet, output: &Alphabet) -> MachineEnumeration {
    MachineEnumeration::new(state_count, input, output)
}

/// Searches for a machine with at most `max_states` states transforming
/// `x` into `y`, trying smaller machines first. The input alphabet is
/// `x`'s, the output alphabet exactly the letters of `y`; any transducer
/// between the two words restricts to one of this shape. A `None` means
/// only that no machine exists within the bound.
pub fn find_transducer(x: &UPWord, y: &UPWord, max_states: usize) -> Option<MealyMachine> {
    let output: BTreeSet<_> = y.used_letters();
    let output = Alphabet::from_set(output).expect("periods are non-empty");
    for k in 1..=max_states {
        for machine in enumerate_machines(k, x.alphabet(), &output) {
            if machine.transform_up(x).as_ref() == Ok(y) {
                return Some(machine);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::word::Alphabet;

    fn bin() -> Alphabet {
        Alphabet::binary()
    }

    fn single(letter: &str) -> Alphabet {
        Alphabet::parse(letter).unwrap()
    }

    #[test]
    fn forced_single_cell_counts() {
        assert_eq!(enumerate_machines(1, &single("0"), &single("0")).count(), 1);
        // One output cell cannot cover two letters.
        assert_eq!(enumerate_machines(1, &single("0"), &bin()).count(), 0);
        // Transitions forced, outputs must be a bijection.
        assert_eq!(enumerate_machines(1, &bin(), &bin()).count(), 2);
    }

    #[test]
    fn enumeration_is_duplicate_free_and_valid() {
        for k in 1..=2 {
            let machines: Vec<_> = enumerate_machines(k, &bin(), &bin()).collect();
            let distinct: HashSet<_> = machines.iter().cloned().collect();
            assert_eq!(distinct.len(), machines.len());
            for m in &machines {
                assert!(m.to_spec().validate().is_ok());
                assert_eq!(m.state_count(), k);
            }
        }
        // Raw space size: (k |B|)^(k |A|) * k.
        assert_eq!(enumerate_machines(2, &bin(), &bin()).raw_total(), 512);
        assert_eq!(enumerate_machines(3, &bin(), &bin()).raw_total(), 139_968);
    }

    #[test]
    fn finds_the_constant_relabeling() {
        let x = UPWord::parse("", "0", &single("0")).unwrap();
        let y = UPWord::parse("", "1", &single("1")).unwrap();
        let m = find_transducer(&x, &y, 1).expect("one-state relabeling exists");
        assert_eq!(m.state_count(), 1);
        assert_eq!(m.transform_up(&x).unwrap(), y);
    }

    #[test]
    fn period_doubling_needs_two_states() {
        let x = UPWord::parse("", "01", &bin()).unwrap();
        let y = UPWord::parse("", "0011", &bin()).unwrap();
        assert!(find_transducer(&x, &y, 1).is_none());
        let m = find_transducer(&x, &y, 2).expect("two states suffice");
        assert_eq!(m.state_count(), 2);
        assert_eq!(m.transform_up(&x).unwrap(), y);
    }

    #[test]
    fn constant_input_supports_periodic_output_via_state_cycles() {
        // A one-state machine on a constant word can only emit a constant
        // word; a two-state cycle already reaches period two.
        let x = UPWord::parse("", "0", &single("0")).unwrap();
        let y = UPWord::parse("", "01", &bin()).unwrap();
        assert!(find_transducer(&x, &y, 1).is_none());
        let m = find_transducer(&x, &y, 2).expect("a two-state cycle alternates outputs");
        assert_eq!(m.transform_up(&x).unwrap(), y);
    }

    #[test]
    fn witnesses_compose_across_a_middle_word() {
        let x = UPWord::parse("", "01", &bin()).unwrap();
        let y = UPWord::parse("", "0011", &bin()).unwrap();
        let z = UPWord::parse("", "1100", &bin()).unwrap();
        let first = find_transducer(&x, &y, 2).unwrap();
        let second = find_transducer(&y, &z, 2).unwrap();
        let composite = first.series(&second).unwrap();
        assert_eq!(composite.transform_up(&x).unwrap(), z);
    }
}
