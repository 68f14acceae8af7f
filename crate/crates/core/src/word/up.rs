use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

use super::{Alphabet, FiniteWord, Letter};

/// An ultimately periodic infinite word `u v v v ...` in canonical form.
///
/// Canonical means the period is primitive (not a proper power) and the
/// preperiod is as short as possible: its last letter differs from the
/// period's last letter, or it is empty. Every constructor normalizes, so
/// two values denote the same infinite word exactly when they are equal.
/// Equality, ordering and hashing ignore the stored alphabet.
#[derive(Debug, Clone)]
pub struct UPWord {
    preperiod: Vec<Letter>,
    period: Vec<Letter>,
    alphabet: Alphabet,
}

impl PartialEq for UPWord {
    fn eq(&self, other: &Self) -> bool {
        self.preperiod == other.preperiod && self.period == other.period
    }
}

impl Eq for UPWord {}

impl PartialOrd for UPWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UPWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.preperiod, &self.period).cmp(&(&other.preperiod, &other.period))
    }
}

impl std::hash::Hash for UPWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.preperiod.hash(state);
        self.period.hash(state);
    }
}

impl UPWord {
    /// Builds the word `preperiod . period^omega` and normalizes it:
    /// the period is replaced by its primitive root, then while the
    /// preperiod ends with the period's last letter, that letter is dropped
    /// and the period rotated right. Both steps preserve the denoted word.
    pub fn new(preperiod: &FiniteWord, period: &FiniteWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        if preperiod.alphabet() != period.alphabet() {
            return Err(Error::MixedAlphabets {
                left: preperiod.alphabet().to_string(),
                right: period.alphabet().to_string(),
            });
        }

        let root_len = period.minimal_period()?;
        let mut per: Vec<Letter> = period.letters()[..root_len].to_vec();
        let mut pre: Vec<Letter> = preperiod.letters().to_vec();

        while let Some(last) = pre.last() {
            if last != per.last().expect("period is non-empty") {
                break;
            }
            pre.pop();
            let tail = per.pop().expect("period is non-empty");
            per.insert(0, tail);
        }

        Ok(UPWord {
            preperiod: pre,
            period: per,
            alphabet: period.alphabet().clone(),
        })
    }

    /// Parses a pair of single-character-letter strings, e.g.
    /// `UPWord::parse("0", "01", &Alphabet::binary())`.
    pub fn parse(preperiod: &str, period: &str, alphabet: &Alphabet) -> Result<Self> {
        UPWord::new(
            &FiniteWord::parse(preperiod, alphabet)?,
            &FiniteWord::parse(period, alphabet)?,
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Length of the canonical preperiod.
    pub fn anti_period(&self) -> usize {
        self.preperiod.len()
    }

    /// Length of the canonical (primitive) period.
    pub fn period(&self) -> usize {
        self.period.len()
    }

    pub fn preperiod_letters(&self) -> &[Letter] {
        &self.preperiod
    }

    pub fn period_letters(&self) -> &[Letter] {
        &self.period
    }

    pub fn preperiod_word(&self) -> FiniteWord {
        FiniteWord::from_trusted(self.alphabet.clone(), self.preperiod.clone())
    }

    pub fn period_word(&self) -> FiniteWord {
        FiniteWord::from_trusted(self.alphabet.clone(), self.period.clone())
    }

    /// The letter at position `n` (zero-based).
    pub fn letter_at(&self, n: u64) -> Letter {
        let pre_len = self.preperiod.len() as u64;
        if n < pre_len {
            self.preperiod[n as usize].clone()
        } else {
            let offset = ((n - pre_len) % self.period.len() as u64) as usize;
            self.period[offset].clone()
        }
    }

    /// The prefix of length `len`.
    pub fn expand(&self, len: usize) -> FiniteWord {
        let mut letters = Vec::with_capacity(len);
        let head = len.min(self.preperiod.len());
        letters.extend_from_slice(&self.preperiod[..head]);
        while letters.len() < len {
            let take = (len - letters.len()).min(self.period.len());
            letters.extend_from_slice(&self.period[..take]);
        }
        FiniteWord::from_trusted(self.alphabet.clone(), letters)
    }

    /// The factor spanning the inclusive index range `[from, to]`.
    pub fn factor(&self, from: u64, to: u64) -> Result<FiniteWord> {
        if from > to {
            return Err(Error::InvalidRange { from, to });
        }
        let letters = (from..=to).map(|n| self.letter_at(n)).collect();
        Ok(FiniteWord::from_trusted(self.alphabet.clone(), letters))
    }

    /// The word with its first `n` letters removed, renormalized.
    pub fn shift(&self, n: u64) -> UPWord {
        let pre_len = self.preperiod.len() as u64;
        let (pre, per) = if n <= pre_len {
            (self.preperiod[n as usize..].to_vec(), self.period.clone())
        } else {
            let offset = ((n - pre_len) % self.period.len() as u64) as usize;
            let mut rotated = self.period[offset..].to_vec();
            rotated.extend_from_slice(&self.period[..offset]);
            (Vec::new(), rotated)
        };
        let pre = FiniteWord::new(self.alphabet.clone(), pre).expect("letters stay in alphabet");
        let per = FiniteWord::new(self.alphabet.clone(), per).expect("letters stay in alphabet");
        UPWord::new(&pre, &per).expect("period stays non-empty")
    }

    /// The letters that actually occur in the word.
    pub fn used_letters(&self) -> BTreeSet<Letter> {
        self.preperiod.iter().chain(self.period.iter()).cloned().collect()
    }

    /// Canonical textual form, e.g. `up:u=0;v=0,1`.
    pub fn spec_string(&self) -> String {
        let join = |letters: &[Letter]| {
            letters.iter().map(Letter::as_str).collect::<Vec<_>>().join(",")
        };
        format!("up:u={};v={}", join(&self.preperiod), join(&self.period))
    }
}

impl fmt::Display for UPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}
