//! Exhaustive desk-scale verification sweeps: every machine up to a state
//! bound against every canonical ultimately periodic word up to length
//! bounds, checking the period/anti-period bounds of the exact transform,
//! optionally cross-checking against plain simulation and the complexity
//! quotient bound.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::complexity::up_profile;
use crate::machine::MachineEnumeration;
use crate::word::{Alphabet, FiniteWord, UPWord};

/// Bounds and options for one sweep.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub max_states: usize,
    pub max_preperiod: usize,
    pub max_period: usize,
    /// Word letters and both machine alphabets.
    pub alphabet: Alphabet,
    /// Cross-check the exact transform against this many simulated steps
    /// (0 disables the check).
    pub simulation_steps: usize,
    /// Check `f_y(n) <= |Q| f_x(n)` for `n` up to this value.
    pub lemma_nmax: Option<usize>,
}

impl SweepConfig {
    pub fn new(max_states: usize, max_preperiod: usize, max_period: usize) -> Self {
        SweepConfig {
            max_states,
            max_preperiod,
            max_period,
            alphabet: Alphabet::binary(),
            simulation_steps: 0,
            lemma_nmax: None,
        }
    }
}

/// Aggregated sweep outcome. `histogram` counts cases by (canonical output
/// period, input period, smallest admissible state factor).
#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub machines_examined: u64,
    pub words_examined: u64,
    pub cases: u64,
    pub period_violations: u64,
    pub anti_period_violations: u64,
    pub simulation_mismatches: u64,
    pub lemma_violations: u64,
    /// Cases at one state where the transformed profile equals the source
    /// profile, witnessing tightness of the quotient bound.
    pub lemma_equalities_single_state: u64,
    pub histogram: BTreeMap<(usize, usize, usize), u64>,
    /// Up to three descriptions of failing cases, lowest indices first.
    pub first_failures: Vec<String>,
}

impl SweepReport {
    pub fn violations(&self) -> u64 {
        self.period_violations + self.anti_period_violations + self.simulation_mismatches + self.lemma_violations
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.machines_examined += other.machines_examined;
        self.cases += other.cases;
        self.period_violations += other.period_violations;
        self.anti_period_violations += other.anti_period_violations;
        self.simulation_mismatches += other.simulation_mismatches;
        self.lemma_violations += other.lemma_violations;
        self.lemma_equalities_single_state += other.lemma_equalities_single_state;
        for (key, count) in other.histogram {
            *self.histogram.entry(key).or_insert(0) += count;
        }
        self.first_failures.extend(other.first_failures);
        self.first_failures.sort();
        self.first_failures.truncate(3);
        self
    }
}

/// Every canonical ultimately periodic word over `alphabet` with
/// anti-period at most `max_preperiod` and period at most `max_period`,
/// in a fixed order: all raw pairs are normalized and deduplicated, which
/// yields exactly the canonical pairs inside the bounds.
pub fn canonical_up_words(alphabet: &Alphabet, max_preperiod: usize, max_period: usize) -> Vec<UPWord> {
    let mut words = BTreeSet::new();
    for pre_len in 0..=max_preperiod {
        for pre in all_words(alphabet, pre_len) {
            for per_len in 1..=max_period {
                for per in all_words(alphabet, per_len) {
                    let word = UPWord::new(&pre, &per).expect("period is non-empty");
                    words.insert(word);
                }
            }
        }
    }
    words.into_iter().collect()
}

fn all_words(alphabet: &Alphabet, len: usize) -> Vec<FiniteWord> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                alphabet.letters().iter().map(move |l| {
                    let mut next = w.clone();
                    next.push(l.clone());
                    next
                })
            })
            .collect();
    }
    words
        .into_iter()
        .map(|letters| FiniteWord::new(alphabet.clone(), letters).expect("letters from the alphabet"))
        .collect()
}

/// Smallest `tau` in `1..=k` such that the canonical period divides
/// `input_period * tau`, if any.
fn smallest_tau(canonical_period: usize, input_period: usize, k: usize) -> Option<usize> {
    (1..=k).find(|tau| (input_period * tau) % canonical_period == 0)
}

/// Runs the sweep, machine-parallel. Results are aggregated with counter
/// and set semantics only, so the outcome is independent of the
/// partitioning.
pub fn run_sweep(config: &SweepConfig) -> SweepReport {
    let words = canonical_up_words(&config.alphabet, config.max_preperiod, config.max_period);
    let expansions: Vec<FiniteWord> = words
        .iter()
        .map(|w| w.expand(config.simulation_steps))
        .collect();
    let word_profiles: Vec<Vec<u64>> = match config.lemma_nmax {
        Some(nmax) => words.iter().map(|w| up_profile(w, nmax).values().to_vec()).collect(),
        None => Vec::new(),
    };

    let mut total = SweepReport {
        words_examined: words.len() as u64,
        ..SweepReport::default()
    };

    for k in 1..=config.max_states {
        let space = MachineEnumeration::new(k, &config.alphabet, &config.alphabet);
        let raw_total = space.raw_total();
        debug_assert!(raw_total <= u64::MAX as u128, "sweep bounds are desk-scale");

        let per_k = (0..raw_total as u64)
            .into_par_iter()
            .fold(SweepReport::default, |mut report, index| {
                let Some(machine) = space.decode(index as u128) else {
                    return report;
                };
                report.machines_examined += 1;
                for (word_index, word) in words.iter().enumerate() {
                    report.cases += 1;
                    let image = machine.transform_up(word).expect("words share the sweep alphabet");

                    let mut failures: Vec<&str> = Vec::new();
                    match smallest_tau(image.period(), word.period(), k) {
                        Some(tau) => {
                            *report
                                .histogram
                                .entry((image.period(), word.period(), tau))
                                .or_insert(0) += 1;
                        }
                        None => {
                            report.period_violations += 1;
                            failures.push("period bound");
                        }
                    }
                    if image.anti_period() > word.anti_period() + k * word.period() {
                        report.anti_period_violations += 1;
                        failures.push("anti-period bound");
                    }

                    if config.simulation_steps > 0 {
                        let simulated = machine
                            .transform_word(&expansions[word_index])
                            .expect("words share the sweep alphabet");
                        if image.expand(config.simulation_steps) != simulated {
                            report.simulation_mismatches += 1;
                            failures.push("simulation mismatch");
                        }
                    }

                    if let Some(nmax) = config.lemma_nmax {
                        let source_profile = &word_profiles[word_index];
                        let image_profile = up_profile(&image, nmax);
                        let bound_holds = image_profile
                            .values()
                            .iter()
                            .zip(source_profile)
                            .all(|(fy, fx)| *fy <= k as u64 * fx);
                        if !bound_holds {
                            report.lemma_violations += 1;
                            failures.push("complexity quotient bound");
                        }
                        if k == 1 && image_profile.values() == source_profile.as_slice() {
                            report.lemma_equalities_single_state += 1;
                        }
                    }

                    if !failures.is_empty() && report.first_failures.len() < 3 {
                        report.first_failures.push(format!(
                            "k={k} machine#{index} word={word}: {}",
                            failures.join(", ")
                        ));
                    }
                }
                report
            })
            .reduce(SweepReport::default, SweepReport::merge);

        total = total.merge(per_k);
    }

    total
}
