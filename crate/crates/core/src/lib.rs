//! Mealy machines acting on infinite words.
//!
//! The crate provides an exact algebra of ultimately periodic words under
//! finite-state transduction, plus the analyses built on top of it:
//!
//! - [`word`] — letters, alphabets, finite words, canonical ultimately
//!   periodic words ([`UPWord`]) and generator-backed streams
//!   ([`WordStream`]: the growing-zero-runs word, Thue-Morse, merges).
//! - [`machine`] — validated Mealy machines ([`MealyMachine`]), runs on
//!   finite words, lazy stream transforms, the exact ultimately-periodic
//!   transform with pigeonhole cycle detection, series composition,
//!   exhaustive enumeration and bounded transducer search.
//! - [`complexity`] — subword complexity and growth profiles, exact for
//!   ultimately periodic words and prefix-based for streams, with the
//!   `f_y(n) <= |Q| f_x(n)` quotient check and finite-window `O(f)`
//!   witnesses.
//! - [`invariance`] — bounded orbits, machine-invariance checks for named
//!   membership oracles, recurrence evidence, and the non-Boolean lattice
//!   witness pipeline.
//! - [`cipher`] — the machine-keystream XOR cipher and keystream quality
//!   reports.
//! - [`sweep`] — exhaustive period/anti-period bound verification over all
//!   small machines and words.
//!
//! # Word specs
//!
//! Words are written as text: `up:u=0;v=0,1` (preperiod/period, letters
//! comma-separated), `gen:example1`, `gen:thue-morse:a,b`, and
//! `gen:merge:<x>|<y>|<target>`. See [`WordSpec`].
//!
//! # Machine files
//!
//! Machines are JSON objects listing states, alphabets, the initial state
//! and exactly one transition entry per (state, input letter) pair. See
//! [`machine::MachineSpec`].

pub mod cipher;
pub mod complexity;
pub mod error;
pub mod invariance;
pub mod machine;
pub mod sweep;
pub mod word;

pub use error::{Error, Result};
pub use machine::{MealyMachine, RunResult, State};
pub use word::{Alphabet, FiniteWord, Letter, Occurrence, UPWord, Word, WordSpec, WordStream};
