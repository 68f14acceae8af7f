//! Machine-invariance experiments: bounded orbits, invariance checks for
//! named word-set oracles, recurrence evidence, and the witness pipeline
//! showing the invariant-set lattice is not Boolean.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::complexity::{up_profile, ComparisonFn};
use crate::error::{Error, Result};
use crate::machine::{enumerate_machines, find_transducer, MealyMachine, State, Transition};
use crate::word::{Alphabet, FiniteWord, Letter, UPWord, WordStream};

/// A named, total, deterministic membership predicate on ultimately
/// periodic words, standing in for a class of infinite words.
#[derive(Clone)]
pub struct MembershipOracle {
    name: String,
    predicate: Arc<dyn Fn(&UPWord) -> bool + Send + Sync>,
}

impl fmt::Debug for MembershipOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MembershipOracle({})", self.name)
    }
}

impl MembershipOracle {
    pub fn new(name: impl Into<String>, predicate: impl Fn(&UPWord) -> bool + Send + Sync + 'static) -> Self {
        MembershipOracle { name: name.into(), predicate: Arc::new(predicate) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn accepts(&self, word: &UPWord) -> bool {
        (self.predicate)(word)
    }

    /// The class of all ultimately periodic words: true for every exact
    /// word, the bottom of the invariant-set lattice.
    pub fn ultimately_periodic() -> Self {
        MembershipOracle::new("ultimately-periodic", |_| true)
    }

    /// Words whose canonical period length is at most `bound`.
    pub fn period_bound(bound: usize) -> Self {
        MembershipOracle::new(format!("period-bound:{bound}"), move |w| w.period() <= bound)
    }

    /// Words whose exact complexity satisfies `f(n) <= c * cmp(n)` for all
    /// `n`. Checked on the window `0..=|u|+|v|`, where the profile has
    /// reached its final constant; all registry comparison functions are
    /// non-decreasing, so the finite check settles every larger `n` too.
    pub fn complexity_bound(cmp: ComparisonFn, c: u64) -> Self {
        MembershipOracle::new(format!("complexity-bound:{cmp}:{c}"), move |w| {
            let window = w.anti_period() + w.period();
            let profile = up_profile(w, window);
            profile
                .values()
                .iter()
                .enumerate()
                .all(|(n, &v)| v <= c.saturating_mul(cmp.value(n as u64)))
        })
    }

    /// Words whose letters all come from the given set.
    pub fn alphabet_subset(letters: BTreeSet<Letter>) -> Self {
        let joined = letters.iter().map(Letter::as_str).collect::<Vec<_>>().join(",");
        MembershipOracle::new(format!("alphabet-subset:{joined}"), move |w| {
            w.used_letters().is_subset(&letters)
        })
    }

    /// Looks an oracle up by registry name: `ultimately-periodic`,
    /// `period-bound:<k>`, `complexity-bound:<f>:<c>`,
    /// `alphabet-subset:<letters>`.
    pub fn by_name(name: &str) -> Result<Self> {
        if name == "ultimately-periodic" {
            return Ok(Self::ultimately_periodic());
        }
        if let Some(arg) = name.strip_prefix("period-bound:") {
            let bound: usize = arg
                .parse()
                .map_err(|_| Error::parse(name, "oracle name", "period bound must be an integer"))?;
            return Ok(Self::period_bound(bound));
        }
        if let Some(arg) = name.strip_prefix("complexity-bound:") {
            let (f, c) = arg
                .rsplit_once(':')
                .ok_or_else(|| Error::parse(name, "oracle name", "expected complexity-bound:<f>:<c>"))?;
            let cmp = ComparisonFn::parse(f)?;
            let c: u64 = c
                .parse()
                .map_err(|_| Error::parse(name, "oracle name", "constant must be an integer"))?;
            return Ok(Self::complexity_bound(cmp, c));
        }
        if let Some(arg) = name.strip_prefix("alphabet-subset:") {
            let letters = arg
                .split(',')
                .map(Letter::new)
                .collect::<Result<BTreeSet<_>>>()
                .map_err(|e| Error::parse(name, "oracle name", e.to_string()))?;
            return Ok(Self::alphabet_subset(letters));
        }
        Err(Error::parse(name, "oracle name", "unknown oracle"))
    }

    fn combine(left: &Self, right: &Self, mode: CombineMode) -> Self {
        let (l, r) = (left.predicate.clone(), right.predicate.clone());
        let name = format!("{}({},{})", mode, left.name, right.name);
        match mode {
            CombineMode::Union => MembershipOracle::new(name, move |w| l(w) || r(w)),
            CombineMode::Intersection => MembershipOracle::new(name, move |w| l(w) && r(w)),
        }
    }
}

/// How to combine two oracles in a closure sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    Union,
    Intersection,
}

impl fmt::Display for CombineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombineMode::Union => f.write_str("union"),
            CombineMode::Intersection => f.write_str("intersection"),
        }
    }
}

/// A machine, an accepted input and the rejected output it maps to.
/// Replaying the transform reproduces the rejection.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub machine: MealyMachine,
    pub input: UPWord,
    pub output: UPWord,
}

/// Outcome of an invariance check at finite bounds.
#[derive(Debug, Clone)]
pub enum InvarianceVerdict {
    Pass { machines_examined: u64 },
    Fail { counterexample: Counterexample },
}

impl InvarianceVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, InvarianceVerdict::Pass { .. })
    }
}

/// The standard binary seed words used by invariance suites: a fixed,
/// deterministic mix of periods and preperiods.
pub fn standard_seeds() -> Vec<UPWord> {
    let bin = Alphabet::binary();
    [("", "0"), ("", "1"), ("", "01"), ("0", "1"), ("", "011"), ("1", "10")]
        .iter()
        .map(|(u, v)| UPWord::parse(u, v, &bin).expect("seed words are well-formed"))
        .collect()
}

/// The standard output-alphabet pool `{0}, {1}, {0,1}`.
pub fn standard_output_pool() -> Vec<Alphabet> {
    vec![
        Alphabet::parse("0").unwrap(),
        Alphabet::parse("1").unwrap(),
        Alphabet::binary(),
    ]
}

/// The set of words reachable from `seed` by any enumerated machine within
/// the bounds.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub seed: UPWord,
    pub max_states: usize,
    pub output_pool: Vec<Alphabet>,
    pub members: BTreeSet<UPWord>,
    pub machines_examined: u64,
}

/// Applies every machine with at most `max_states` states, input alphabet
/// equal to the seed's, and output alphabet drawn from the pool; results
/// are deduplicated by canonical form. The seed itself is always a member:
/// the identity machine transforms it to itself.
pub fn orbit(seed: &UPWord, max_states: usize, output_pool: &[Alphabet]) -> OrbitReport {
    let mut members = BTreeSet::new();
    members.insert(seed.clone());
    let mut machines_examined = 1u64; // the identity machine
    for k in 1..=max_states {
        for output in output_pool {
            for machine in enumerate_machines(k, seed.alphabet(), output) {
                machines_examined += 1;
                let image = machine.transform_up(seed).expect("enumerated machines are apt");
                members.insert(image);
            }
        }
    }
    OrbitReport {
        seed: seed.clone(),
        max_states,
        output_pool: output_pool.to_vec(),
        members,
        machines_examined,
    }
}

/// Checks that every enumerated machine keeps every seed inside the
/// oracle's class. Seeds must satisfy the oracle to begin with. On failure
/// the first counterexample in enumeration order (seed-major, then state
/// count, then output alphabet, then machine index) comes back.
pub fn check_invariance(
    oracle: &MembershipOracle,
    max_states: usize,
    seeds: &[UPWord],
    output_pool: &[Alphabet],
) -> Result<InvarianceVerdict> {
    for seed in seeds {
        if !oracle.accepts(seed) {
            return Err(Error::Precondition(format!(
                "seed {} does not satisfy oracle {}",
                seed, oracle.name
            )));
        }
    }
    let mut machines_examined = 0u64;
    for seed in seeds {
        for k in 1..=max_states {
            for output in output_pool {
                for machine in enumerate_machines(k, seed.alphabet(), output) {
                    machines_examined += 1;
                    let image = machine.transform_up(seed).expect("enumerated machines are apt");
                    if !oracle.accepts(&image) {
                        return Ok(InvarianceVerdict::Fail {
                            counterexample: Counterexample {
                                machine,
                                input: seed.clone(),
                                output: image,
                            },
                        });
                    }
                }
            }
        }
    }
    Ok(InvarianceVerdict::Pass { machines_examined })
}

/// Checks the union or intersection of two oracles on the same bounds.
/// Both oracles must individually pass on the seeds they accept; given
/// that, the combination is expected to pass as well, and a failure
/// signals a harness bug rather than mathematics.
pub fn closure_sample(
    left: &MembershipOracle,
    right: &MembershipOracle,
    mode: CombineMode,
    max_states: usize,
    seeds: &[UPWord],
    output_pool: &[Alphabet],
) -> Result<InvarianceVerdict> {
    let accepted_by = |oracle: &MembershipOracle| -> Vec<UPWord> {
        seeds.iter().filter(|s| oracle.accepts(s)).cloned().collect()
    };
    for oracle in [left, right] {
        let own = accepted_by(oracle);
        let verdict = check_invariance(oracle, max_states, &own, output_pool)?;
        if !verdict.is_pass() {
            return Err(Error::Precondition(format!(
                "oracle {} is not invariant at these bounds",
                oracle.name
            )));
        }
    }
    let combined = MembershipOracle::combine(left, right, mode);
    let seeds: Vec<UPWord> = seeds.iter().filter(|s| combined.accepts(s)).cloned().collect();
    check_invariance(&combined, max_states, &seeds, output_pool)
}

/// Occurrence counts of a factor in growing prefixes. A count that no
/// longer grows between the last two checkpoints is evidence (not proof)
/// of non-recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecurrenceVerdict {
    Stabilized,
    Growing,
}

#[derive(Debug, Clone)]
pub struct RecurrenceReport {
    pub stream: String,
    pub factor: FiniteWord,
    pub counts: Vec<(u64, u64)>,
    pub verdict: RecurrenceVerdict,
}

pub fn recurrence_evidence(
    x: &WordStream,
    factor: &FiniteWord,
    checkpoints: &[u64],
) -> Result<RecurrenceReport> {
    if checkpoints.len() < 2 || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(
            "need at least two strictly increasing checkpoints".into(),
        ));
    }
    let mut counts = Vec::with_capacity(checkpoints.len());
    for &cp in checkpoints {
        let prefix = x.expand(cp as usize);
        counts.push((cp, prefix.occurrences_of(factor)?.len() as u64));
    }
    let verdict = if counts[counts.len() - 1].1 == counts[counts.len() - 2].1 {
        RecurrenceVerdict::Stabilized
    } else {
        RecurrenceVerdict::Growing
    };
    Ok(RecurrenceReport {
        stream: x.label().to_string(),
        factor: factor.clone(),
        counts,
        verdict,
    })
}

/// The one-state machine labeled `1ab/aab`: inputs 1, a, b map to outputs
/// a, a, b on a self-loop, undoing the a-target merge.
pub fn figure_v1() -> MealyMachine {
    figure_machine("a")
}

/// The one-state machine labeled `1ab/bab`: inputs 1, a, b map to outputs
/// b, a, b, undoing the b-target merge.
pub fn figure_v2() -> MealyMachine {
    figure_machine("b")
}

fn figure_machine(one_maps_to: &str) -> MealyMachine {
    let q = State::new("q1").unwrap();
    let letter = |s: &str| Letter::new(s).unwrap();
    let input = Alphabet::new([letter("1"), letter("a"), letter("b")]).unwrap();
    let output = Alphabet::new([letter("a"), letter("b")]).unwrap();
    let transition = |on: &str, out: &str| Transition {
        from: q.clone(),
        input: letter(on),
        to: q.clone(),
        output: letter(out),
    };
    let transitions = vec![
        transition("1", one_maps_to),
        transition("a", "a"),
        transition("b", "b"),
    ];
    MealyMachine::from_parts(vec![q.clone()], input, output, q, transitions)
        .expect("figure machine is valid")
}

/// Everything the witness pipeline produced.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub prefix_len: usize,
    /// Evidence for the merge toward `a` (transformed by the `1ab/aab`
    /// machine) and toward `b`.
    pub merge_evidence: Vec<RecurrenceReport>,
    /// Evidence that a Thue-Morse factor keeps occurring.
    pub recurrent_evidence: RecurrenceReport,
}

const WITNESS_CHECKPOINTS: [u64; 2] = [1_000, 10_000];

/// Builds the non-Boolean witness: merges the growing-zero-runs word into
/// Thue-Morse toward each letter, checks that the figure machines recover
/// Thue-Morse exactly on a length-`prefix_len` prefix, and gathers
/// recurrence evidence. The witness factor for each merge is the longest
/// one-free run inside the first checkpoint followed by its closing one;
/// its occurrence count is expected to stabilize, while a Thue-Morse
/// factor keeps growing.
pub fn non_boolean_witness(prefix_len: usize) -> Result<WitnessReport> {
    let a = Letter::new("a").unwrap();
    let b = Letter::new("b").unwrap();
    let x = WordStream::example_one();
    let y = WordStream::thue_morse(a.clone(), b.clone())?;
    let expected = y.expand(prefix_len);

    let mut merge_evidence = Vec::new();
    for (target, machine) in [(a.clone(), figure_v1()), (b.clone(), figure_v2())] {
        let z = WordStream::merge(&x, &y, &target)?;
        let recovered = machine.transform_stream(&z)?.expand(prefix_len);
        if recovered != expected {
            return Err(Error::Precondition(format!(
                "machine for target {target} failed to recover the recurrent word on a {prefix_len}-prefix"
            )));
        }
        let factor = witness_factor(&z, WITNESS_CHECKPOINTS[0] as usize)?;
        merge_evidence.push(recurrence_evidence(&z, &factor, &WITNESS_CHECKPOINTS)?);
    }

    if !merge_evidence.iter().any(|e| e.verdict == RecurrenceVerdict::Stabilized) {
        return Err(Error::Precondition(
            "no merge word showed a stabilized factor count".into(),
        ));
    }

    let tm_factor = FiniteWord::new(
        y.alphabet().clone(),
        vec![a.clone(), b.clone(), b, a],
    )?;
    let recurrent_evidence = recurrence_evidence(&y, &tm_factor, &WITNESS_CHECKPOINTS)?;
    if recurrent_evidence.verdict != RecurrenceVerdict::Growing {
        return Err(Error::Precondition(
            "the recurrent word's factor count unexpectedly stabilized".into(),
        ));
    }

    Ok(WitnessReport {
        prefix_len,
        merge_evidence,
        recurrent_evidence,
    })
}

/// The pre-registered witness-factor rule: inside the first `scan` letters,
/// find the pair of consecutive ones with the widest gap and take the
/// factor from just after the earlier one through the later one — a long
/// one-free block closed by a one. Ever wider gaps appear further out, so
/// this exact block should not recur.
fn witness_factor(z: &WordStream, scan: usize) -> Result<FiniteWord> {
    let prefix = z.expand(scan);
    let one = Letter::new("1").unwrap();
    let ones: Vec<usize> = (0..prefix.len())
        .filter(|&i| prefix.get(i) == Some(&one))
        .collect();
    let best = ones
        .windows(2)
        .max_by_key(|pair| pair[1] - pair[0])
        .ok_or_else(|| Error::Precondition("merge word has fewer than two ones in the scan window".into()))?;
    prefix.factor(best[0] + 1, best[1])
}

/// Mutual bounded-reachability verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reachability {
    MutuallyReachable,
    /// Reachable in one direction only within the bound; `forward` tells
    /// which. The other direction is merely unresolved, not refuted.
    OneWay { forward: bool },
    UnresolvedWithinBound,
}

#[derive(Debug, Clone)]
pub struct ComplicationReport {
    pub max_states: usize,
    pub forward: Option<MealyMachine>,
    pub backward: Option<MealyMachine>,
    pub verdict: Reachability,
}

/// Bounded proxy for the "more complicated" comparison: searches for
/// transducers in both directions up to the state bound and labels the
/// outcome. Unreachability within a bound says nothing about larger
/// machines.
pub fn compare_complication(x: &UPWord, y: &UPWord, max_states: usize) -> ComplicationReport {
    let forward = find_transducer(x, y, max_states);
    let backward = find_transducer(y, x, max_states);
    let verdict = match (&forward, &backward) {
        (Some(_), Some(_)) => Reachability::MutuallyReachable,
        (Some(_), None) => Reachability::OneWay { forward: true },
        (None, Some(_)) => Reachability::OneWay { forward: false },
        (None, None) => Reachability::UnresolvedWithinBound,
    };
    ComplicationReport { max_states, forward, backward, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn bin() -> Alphabet {
        Alphabet::binary()
    }

    fn up(u: &str, v: &str) -> UPWord {
        UPWord::parse(u, v, &bin()).unwrap()
    }

    fn single(letter: &str) -> Alphabet {
        Alphabet::parse(letter).unwrap()
    }

    #[test]
    fn orbit_of_the_constant_word_under_one_state_machines() {
        let zero_alpha = single("0");
        let seed = UPWord::parse("", "0", &zero_alpha).unwrap();
        let report = orbit(&seed, 1, &standard_output_pool());
        let expected: BTreeSet<UPWord> = [
            UPWord::parse("", "0", &zero_alpha).unwrap(),
            UPWord::parse("", "1", &single("1")).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(report.members, expected);
        assert!(report.members.contains(&report.seed));
    }

    #[test]
    fn orbit_of_the_alternating_word_under_relabelings() {
        let seed = up("", "01");
        let report = orbit(&seed, 1, &[bin()]);
        let expected: BTreeSet<UPWord> = [up("", "01"), up("", "10")].into_iter().collect();
        assert_eq!(report.members, expected);

        // Widening the pool with the singleton alphabets adds the two
        // constant words.
        let report = orbit(&seed, 1, &standard_output_pool());
        let expected: BTreeSet<UPWord> =
            [up("", "01"), up("", "10"), up("", "0"), up("", "1")].into_iter().collect();
        assert_eq!(report.members, expected);
    }

    #[test]
    fn orbit_is_monotone_in_the_state_bound() {
        let seed = up("", "01");
        let small = orbit(&seed, 1, &standard_output_pool());
        let large = orbit(&seed, 2, &standard_output_pool());
        assert!(small.members.is_subset(&large.members));
        assert!(large.machines_examined > small.machines_examined);
    }

    #[test]
    fn orbit_members_echo_back_into_the_widened_orbit() {
        // Feeding any member through any one-state machine lands inside
        // the orbit with multiplied state bound, the finite shadow of
        // closure under series composition.
        let seed = up("", "01");
        let pool = standard_output_pool();
        let report = orbit(&seed, 1, &pool);
        let widened = orbit(&seed, 1, &pool); // 1 * 1 states
        for member in &report.members {
            for output in &pool {
                for machine in enumerate_machines(1, seed.alphabet(), output) {
                    let image = machine.transform_up(member).unwrap();
                    assert!(
                        widened.members.contains(&image),
                        "{member} mapped outside the widened orbit"
                    );
                }
            }
        }
    }

    #[test]
    fn ultimately_periodic_oracle_always_passes() {
        let verdict = check_invariance(
            &MembershipOracle::ultimately_periodic(),
            2,
            &standard_seeds(),
            &standard_output_pool(),
        )
        .unwrap();
        assert!(verdict.is_pass());
    }

    #[test]
    fn letter_avoiding_oracle_fails_with_a_replayable_counterexample() {
        let zero_only = single("0");
        let oracle = MembershipOracle::by_name("alphabet-subset:0").unwrap();
        let seed = UPWord::parse("", "0", &zero_only).unwrap();
        let verdict = check_invariance(&oracle, 1, &[seed], &standard_output_pool()).unwrap();
        match verdict {
            InvarianceVerdict::Fail { counterexample } => {
                assert!(oracle.accepts(&counterexample.input));
                assert!(!oracle.accepts(&counterexample.output));
                let replayed = counterexample.machine.transform_up(&counterexample.input).unwrap();
                assert_eq!(replayed, counterexample.output);
            }
            InvarianceVerdict::Pass { .. } => panic!("expected a counterexample"),
        }
    }

    #[test]
    fn invariance_rejects_seeds_outside_the_oracle() {
        let oracle = MembershipOracle::by_name("alphabet-subset:0").unwrap();
        let err = check_invariance(&oracle, 1, &[up("", "01")], &standard_output_pool());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn period_bound_oracles_hold_for_single_state_machines() {
        // One-state machines can only relabel, so the canonical period
        // divides the input period.
        let oracle = MembershipOracle::by_name("period-bound:2").unwrap();
        let seeds = vec![up("", "0"), up("", "01"), up("1", "01")];
        let verdict = check_invariance(&oracle, 1, &seeds, &standard_output_pool()).unwrap();
        assert!(verdict.is_pass());
    }

    #[test]
    fn transform_period_stays_under_twice_state_times_period() {
        for k in 1..=2usize {
            for machine in enumerate_machines(k, &bin(), &bin()) {
                for seed in standard_seeds() {
                    let image = machine.transform_up(&seed).unwrap();
                    assert!(image.period() <= 2 * k * seed.period());
                }
            }
        }
    }

    #[test]
    fn closure_samples_pass_when_the_parts_do() {
        let pool = standard_output_pool();
        let seeds = standard_seeds();

        // The top-like oracle absorbs anything in a union.
        let verdict = closure_sample(
            &MembershipOracle::ultimately_periodic(),
            &MembershipOracle::period_bound(3),
            CombineMode::Union,
            1,
            &seeds,
            &pool,
        )
        .unwrap();
        assert!(verdict.is_pass());

        let verdict = closure_sample(
            &MembershipOracle::period_bound(2),
            &MembershipOracle::period_bound(3),
            CombineMode::Union,
            1,
            &seeds,
            &pool,
        )
        .unwrap();
        assert!(verdict.is_pass());

        let verdict = closure_sample(
            &MembershipOracle::complexity_bound(ComparisonFn::Linear, 2),
            &MembershipOracle::complexity_bound(ComparisonFn::One, 4),
            CombineMode::Intersection,
            1,
            &seeds,
            &pool,
        )
        .unwrap();
        assert!(verdict.is_pass());
    }

    #[test]
    fn closure_sample_rejects_non_invariant_parts() {
        let err = closure_sample(
            &MembershipOracle::by_name("alphabet-subset:0").unwrap(),
            &MembershipOracle::ultimately_periodic(),
            CombineMode::Union,
            1,
            &[UPWord::parse("", "0", &single("0")).unwrap()],
            &standard_output_pool(),
        );
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn oracle_registry_round_trips() {
        for name in [
            "ultimately-periodic",
            "period-bound:4",
            "complexity-bound:n+1:2",
            "complexity-bound:2^n:1",
            "alphabet-subset:0,1",
        ] {
            assert_eq!(MembershipOracle::by_name(name).unwrap().name(), name);
        }
        assert!(MembershipOracle::by_name("no-such-oracle").is_err());
        assert!(MembershipOracle::by_name("period-bound:x").is_err());
    }

    #[test]
    fn recurrence_evidence_distinguishes_the_streams() {
        let x = WordStream::example_one();
        let factor = FiniteWord::parse("101", &bin()).unwrap();
        let report = recurrence_evidence(&x, &factor, &[1_000, 10_000]).unwrap();
        assert_eq!(report.counts, vec![(1_000, 1), (10_000, 1)]);
        assert_eq!(report.verdict, RecurrenceVerdict::Stabilized);

        let a = Letter::new("a").unwrap();
        let b = Letter::new("b").unwrap();
        let tm = WordStream::thue_morse(a.clone(), b.clone()).unwrap();
        let abba = FiniteWord::new(tm.alphabet().clone(), vec![a, b.clone(), b, Letter::new("a").unwrap()]).unwrap();
        let report = recurrence_evidence(&tm, &abba, &[1_000, 10_000]).unwrap();
        assert_eq!(report.verdict, RecurrenceVerdict::Growing);

        let zeros = WordStream::from_up(&up("", "0"));
        let zero = FiniteWord::parse("0", &bin()).unwrap();
        let report = recurrence_evidence(&zeros, &zero, &[10, 100]).unwrap();
        assert_eq!(report.verdict, RecurrenceVerdict::Growing);

        assert!(recurrence_evidence(&zeros, &zero, &[10]).is_err());
        assert!(recurrence_evidence(&zeros, &zero, &[100, 10]).is_err());
    }

    #[test]
    fn witness_pipeline_passes_at_a_small_prefix() {
        let report = non_boolean_witness(1024).unwrap();
        assert_eq!(report.prefix_len, 1024);
        assert!(report
            .merge_evidence
            .iter()
            .any(|e| e.verdict == RecurrenceVerdict::Stabilized));
        assert_eq!(report.recurrent_evidence.verdict, RecurrenceVerdict::Growing);
        // The tiniest prefix holds trivially.
        assert!(non_boolean_witness(1).is_ok());
    }

    #[test]
    fn complication_comparison_labels_directions() {
        let alternating = up("", "01");
        let ones = UPWord::parse("", "1", &single("1")).unwrap();

        // One state suffices to collapse onto a constant word but cannot
        // rebuild the alternation.
        let report = compare_complication(&alternating, &ones, 1);
        assert_eq!(report.verdict, Reachability::OneWay { forward: true });

        // With two states a cycle regenerates period two from the constant
        // word, so the pair becomes mutually reachable.
        let report = compare_complication(&alternating, &ones, 2);
        assert_eq!(report.verdict, Reachability::MutuallyReachable);

        let report = compare_complication(&alternating, &alternating, 1);
        assert_eq!(report.verdict, Reachability::MutuallyReachable);

        let zeros = UPWord::parse("", "0", &single("0")).unwrap();
        let report = compare_complication(&zeros, &ones, 1);
        assert_eq!(report.verdict, Reachability::MutuallyReachable);
    }

    #[test]
    fn quotient_bound_report_integrates_with_words() {
        // Smoke test tying the invariance seeds to the complexity module.
        let v1 = figure_v1();
        let id = MealyMachine::identity(&bin());
        for seed in standard_seeds() {
            let report = crate::complexity::check_quotient_bound(&id, &Word::Up(seed), 6, 0).unwrap();
            assert!(report.pass());
        }
        assert_eq!(v1.state_count(), 1);
    }
}
