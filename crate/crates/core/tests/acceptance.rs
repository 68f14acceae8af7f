//! End-to-end acceptance checks. Each test prints one PASS/FAIL line;
//! criteria 1-3 share a single exhaustive sweep over all machines with
//! one to three states and all canonical short binary words.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mealylab::cipher::{decrypt, encrypt, keystream, keystream_for, SessionKey, SharedKey};
use mealylab::complexity::{prefix_profile, up_profile};
use mealylab::invariance::{
    check_invariance, non_boolean_witness, standard_output_pool, standard_seeds,
    InvarianceVerdict, MembershipOracle, RecurrenceVerdict,
};
use mealylab::machine::{MachineEnumeration, MealyMachine};
use mealylab::sweep::{canonical_up_words, run_sweep, SweepConfig, SweepReport};
use mealylab::word::{Alphabet, FiniteWord, UPWord, WordSpec, WordStream};
use mealylab::Letter;

const SIMULATION_STEPS: usize = 200;
const LEMMA_NMAX: usize = 10;

fn shared_sweep() -> &'static SweepReport {
    static SWEEP: OnceLock<SweepReport> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let mut config = SweepConfig::new(3, 2, 4);
        config.simulation_steps = SIMULATION_STEPS;
        config.lemma_nmax = Some(LEMMA_NMAX);
        run_sweep(&config)
    })
}

fn verdict(criterion: &str, ok: bool) {
    println!("acceptance {criterion}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "acceptance {criterion} failed");
}

fn binary() -> Alphabet {
    Alphabet::binary()
}

/// Deterministic pseudo-random machine over the binary alphabets with at
/// most `max_states` states.
fn random_machine(rng: &mut ChaCha8Rng, max_states: usize) -> MealyMachine {
    let k = rng.gen_range(1..=max_states);
    let space = MachineEnumeration::new(k, &binary(), &binary());
    let total = space.raw_total() as u64;
    loop {
        if let Some(m) = space.decode((rng.gen_range(0..total)) as u128) {
            return m;
        }
    }
}

fn random_binary_word(rng: &mut ChaCha8Rng, max_len: usize) -> FiniteWord {
    let len = rng.gen_range(0..=max_len);
    let text: String = (0..len).map(|_| if rng.gen_bool(0.5) { '1' } else { '0' }).collect();
    FiniteWord::parse(&text, &binary()).unwrap()
}

#[test]
fn criterion_1_period_and_anti_period_bounds() {
    let report = shared_sweep();
    let ok = report.period_violations == 0
        && report.anti_period_violations == 0
        && report.words_examined == 88
        && report.cases == report.machines_examined * report.words_examined
        && !report.histogram.is_empty();
    println!(
        "  sweep: {} machines x {} words = {} cases, {} period violations, {} anti-period violations",
        report.machines_examined,
        report.words_examined,
        report.cases,
        report.period_violations,
        report.anti_period_violations
    );
    verdict("1 (theorem sweep: period divides |v|*tau, anti-period bounded)", ok);
}

#[test]
fn criterion_2_exact_transform_matches_simulation() {
    let report = shared_sweep();
    let ok = report.simulation_mismatches == 0 && report.cases > 0;
    println!(
        "  {} cases cross-checked against {SIMULATION_STEPS}-step simulation, {} mismatches",
        report.cases, report.simulation_mismatches
    );
    verdict("2 (exact transform equals 200-step simulation)", ok);
}

#[test]
fn criterion_3_complexity_quotient_bound() {
    let report = shared_sweep();
    let ok = report.lemma_violations == 0 && report.lemma_equalities_single_state > 0;
    println!(
        "  quotient bound to nmax={LEMMA_NMAX}: {} violations, {} single-state equality witnesses",
        report.lemma_violations, report.lemma_equalities_single_state
    );
    verdict("3 (f_y(n) <= |Q| f_x(n) with a tightness witness)", ok);
}

#[test]
fn criterion_4_series_equals_sequential_application() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e71e5);
    let mut ok = true;
    for _ in 0..500 {
        let first = random_machine(&mut rng, 3);
        let second = random_machine(&mut rng, 3);
        let word = random_binary_word(&mut rng, 50);
        let series = first.series(&second).unwrap();
        let direct = series.transform_word(&word).unwrap();
        let chained = second
            .transform_word(&first.transform_word(&word).unwrap())
            .unwrap();
        if direct != chained {
            ok = false;
            break;
        }
    }
    verdict("4 (series composition behaves like sequential runs, 500 pairs)", ok);
}

#[test]
fn criterion_5_non_boolean_witness_at_8192() {
    let report = non_boolean_witness(8192).expect("witness pipeline");
    let stabilized = report
        .merge_evidence
        .iter()
        .any(|e| e.verdict == RecurrenceVerdict::Stabilized);
    let growing = report.recurrent_evidence.verdict == RecurrenceVerdict::Growing;
    for e in &report.merge_evidence {
        println!(
            "  {} factor len {} counts {:?} -> {:?}",
            e.stream,
            e.factor.len(),
            e.counts,
            e.verdict
        );
    }
    println!(
        "  {} factor {} counts {:?} -> {:?}",
        report.recurrent_evidence.stream,
        report.recurrent_evidence.factor,
        report.recurrent_evidence.counts,
        report.recurrent_evidence.verdict
    );
    verdict(
        "5 (figure machines recover Thue-Morse at 8192; recurrence evidence splits)",
        report.prefix_len == 8192 && stabilized && growing,
    );
}

#[test]
fn criterion_6_cipher_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1b8e6);
    let mut ok = true;
    for round in 0..1000 {
        let machine = random_machine(&mut rng, 3);
        let word_spec = match round % 10 {
            8 => WordSpec::parse("gen:example1").unwrap(),
            9 => WordSpec::parse("gen:thue-morse:0,1").unwrap(),
            _ => {
                let pre = random_binary_word(&mut rng, 4);
                let per_len = rng.gen_range(1..=5);
                let per: String = (0..per_len).map(|_| if rng.gen_bool(0.5) { '1' } else { '0' }).collect();
                let pre_text = pre.to_string();
                WordSpec::parse(&format!(
                    "up:u={};v={}",
                    pre_text.chars().map(String::from).collect::<Vec<_>>().join(","),
                    per.chars().map(String::from).collect::<Vec<_>>().join(",")
                ))
                .unwrap()
            }
        };
        let key = SharedKey::new(word_spec, machine.clone()).unwrap();
        let state = machine.states()[rng.gen_range(0..machine.state_count())].clone();
        let session = SessionKey::new(rng.gen_range(0..1000), state);
        let len = rng.gen_range(1..=256);
        let bits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2u8)).collect();
        let plaintext = mealylab::cipher::BitText::from_bits(bits).unwrap();

        let ks = keystream_for(&key, &session, plaintext.len()).unwrap();
        let ciphertext = encrypt(&plaintext, &ks).unwrap();
        if decrypt(&ciphertext, &ks).unwrap() != plaintext {
            ok = false;
            break;
        }
    }

    // Pinned keystream value for the identity machine.
    let key = SharedKey::new(
        WordSpec::parse("up:u=;v=0,1").unwrap(),
        MealyMachine::identity(&binary()),
    )
    .unwrap();
    let session = SessionKey::new(1, mealylab::State::new("q1").unwrap());
    let pinned = keystream(&key, &session, 3).unwrap().to_string() == "1010";

    verdict("6 (1000 cipher roundtrips and the pinned keystream)", ok && pinned);
}

#[test]
fn criterion_7_complexity_oracle_equivalence() {
    // Independent oracle: count distinct factors of a long prefix by
    // sorting joined window strings.
    fn naive_profile(prefix: &FiniteWord, nmax: usize) -> Vec<u64> {
        (0..=nmax)
            .map(|n| {
                if n == 0 {
                    return 1;
                }
                let mut windows: Vec<String> = (0..=prefix.len() - n)
                    .map(|s| {
                        (s..s + n)
                            .map(|i| prefix.get(i).unwrap().as_str())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                windows.sort();
                windows.dedup();
                windows.len() as u64
            })
            .collect()
    }

    let nmax = 8;
    let mut ok = true;
    for word in canonical_up_words(&binary(), 2, 4) {
        let exact = up_profile(&word, nmax);
        let prefix = word.expand(word.anti_period() + word.period() + nmax + 50);
        if exact.values() != naive_profile(&prefix, nmax).as_slice() {
            ok = false;
            break;
        }
    }

    let tm = WordStream::thue_morse(Letter::new("a").unwrap(), Letter::new("b").unwrap()).unwrap();
    let profile = prefix_profile(&tm, 4096, 4).unwrap();
    let tm_ok = profile.values() == [1, 2, 4, 6, 10];
    println!("  thue-morse prefix profile at 4096: {:?}", profile.values());

    verdict("7 (exact complexity equals brute-force counting; frozen Thue-Morse profile)", ok && tm_ok);
}

#[test]
fn criterion_8_invariance_suite() {
    let pass = check_invariance(
        &MembershipOracle::ultimately_periodic(),
        3,
        &standard_seeds(),
        &standard_output_pool(),
    )
    .unwrap();
    let bottom_ok = pass.is_pass();

    let no_ones = MembershipOracle::by_name("alphabet-subset:0").unwrap();
    let seed = UPWord::parse("", "0", &Alphabet::parse("0").unwrap()).unwrap();
    let fail = check_invariance(&no_ones, 1, &[seed], &standard_output_pool()).unwrap();
    let counterexample_ok = match fail {
        InvarianceVerdict::Fail { counterexample } => {
            let replayed = counterexample
                .machine
                .transform_up(&counterexample.input)
                .unwrap();
            println!(
                "  counterexample: {} -> {} under a {}-state machine",
                counterexample.input,
                counterexample.output,
                counterexample.machine.state_count()
            );
            no_ones.accepts(&counterexample.input)
                && !no_ones.accepts(&counterexample.output)
                && replayed == counterexample.output
        }
        InvarianceVerdict::Pass { .. } => false,
    };

    verdict(
        "8 (ultimately-periodic oracle invariant at 3 states; letter-avoiding oracle refuted)",
        bottom_ok && counterexample_ok,
    );
}
