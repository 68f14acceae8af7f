//! Words over finite alphabets: finite words, ultimately periodic words and
//! generator-backed infinite words, together with factor and occurrence
//! machinery.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

mod spec;
mod stream;
mod up;

pub use spec::{Word, WordSpec};
pub use stream::{StreamSource, WordStream};
pub use up::UPWord;

/// Characters that structure the textual word-spec and alphabet formats.
/// Letters may not contain them, so every value prints back unambiguously.
const RESERVED: &[char] = [',', ';', '|', '=', ':'].as_slice();

/// A single letter: a non-empty text token.
///
/// Letters are tokens rather than single characters, so alphabets like
/// `{q1-output}` compose freely. Equality is exact token equality.
#[derive(Debug, Clone, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(Arc<str>);

impl PartialEq for Letter {
    fn eq(&self, other: &Self) -> bool {
        // Letters flow out of shared alphabets, so equal letters almost
        // always share their allocation.
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Letter {
    pub fn new(token: &str) -> Result<Self> {
        if token.is_empty() {
            return Err(Error::InvalidLetter {
                token: token.into(),
                reason: "empty token".into(),
            });
        }
        if token.chars().any(char::is_whitespace) {
            return Err(Error::InvalidLetter {
                token: token.into(),
                reason: "contains whitespace".into(),
            });
        }
        if let Some(c) = token.chars().find(|c| RESERVED.contains(c)) {
            return Err(Error::InvalidLetter {
                token: token.into(),
                reason: format!("contains reserved character {c:?}"),
            });
        }
        Ok(Letter(token.into()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite non-empty set of letters, kept in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet {
    letters: Vec<Letter>,
}

impl Alphabet {
    /// Builds an alphabet from the given letters. Duplicates are rejected:
    /// an alphabet is a set, and a duplicate in a description is a typo.
    pub fn new<I: IntoIterator<Item = Letter>>(letters: I) -> Result<Self> {
        let mut letters: Vec<Letter> = letters.into_iter().collect();
        letters.sort();
        for pair in letters.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateLetter(pair[0].to_string()));
            }
        }
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet { letters })
    }

    /// Builds an alphabet from an already deduplicated set.
    pub fn from_set(letters: BTreeSet<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet {
            letters: letters.into_iter().collect(),
        })
    }

    /// Parses a comma-separated list of letters, e.g. `"0,1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let letters = text
            .split(',')
            .map(Letter::new)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::parse(text, "alphabet", e.to_string()))?;
        Alphabet::new(letters)
    }

    /// The binary alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet::parse("0,1").expect("binary alphabet is valid")
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false // by construction
    }

    pub fn contains(&self, letter: &Letter) -> bool {
        self.position(letter).is_some()
    }

    /// Index of `letter` in sorted order. Alphabets are tiny, so a linear
    /// scan beats hashing.
    pub fn position(&self, letter: &Letter) -> Option<usize> {
        self.letters.iter().position(|l| l == letter)
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.letters.iter().all(|l| other.contains(l))
    }

    pub fn is_disjoint_from(&self, other: &Alphabet) -> bool {
        self.letters.iter().all(|l| !other.contains(l))
    }

    /// Union of two alphabets.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let set: BTreeSet<Letter> = self.letters.iter().chain(other.letters.iter()).cloned().collect();
        Alphabet { letters: set.into_iter().collect() }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// An occurrence of a factor: the inclusive index range where it sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub start: usize,
    pub end: usize,
}

/// A finite word over an explicit alphabet. The empty word is allowed.
///
/// Equality and hashing look at the letter sequence only, so words that
/// spell the same thing over different alphabets compare equal.
#[derive(Debug, Clone)]
pub struct FiniteWord {
    letters: Vec<Letter>,
    alphabet: Alphabet,
}

impl PartialEq for FiniteWord {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for FiniteWord {}

impl std::hash::Hash for FiniteWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl FiniteWord {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self> {
        for l in &letters {
            if !alphabet.contains(l) {
                return Err(Error::LetterOutsideAlphabet {
                    letter: l.to_string(),
                    alphabet: alphabet.to_string(),
                });
            }
        }
        Ok(FiniteWord { letters, alphabet })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        FiniteWord { letters: Vec::new(), alphabet }
    }

    /// Constructor for letters already known to lie in the alphabet
    /// (machine outputs, period expansions). Skips the membership scan.
    pub(crate) fn from_trusted(alphabet: Alphabet, letters: Vec<Letter>) -> Self {
        FiniteWord { letters, alphabet }
    }

    /// Parses a word where every character is a single-letter token, e.g.
    /// `FiniteWord::parse("0110", &Alphabet::binary())`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let letters = text
            .chars()
            .map(|c| Letter::new(&c.to_string()))
            .collect::<Result<Vec<_>>>()?;
        FiniteWord::new(alphabet.clone(), letters)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Letter> {
        self.letters.get(index)
    }

    /// The factor spanning the inclusive index range `[from, to]`.
    pub fn factor(&self, from: usize, to: usize) -> Result<FiniteWord> {
        if from > to {
            return Err(Error::InvalidRange { from: from as u64, to: to as u64 });
        }
        if to >= self.letters.len() {
            return Err(Error::IndexOutOfRange { index: to as u64, len: self.letters.len() });
        }
        Ok(FiniteWord {
            letters: self.letters[from..=to].to_vec(),
            alphabet: self.alphabet.clone(),
        })
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let alphabet = self.alphabet.union(&other.alphabet);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FiniteWord { letters, alphabet }
    }

    /// All occurrences of `needle` in this word, in increasing start order.
    pub fn occurrences_of(&self, needle: &FiniteWord) -> Result<Vec<Occurrence>> {
        if needle.is_empty() {
            return Err(Error::EmptyWord);
        }
        let n = needle.len();
        let mut found = Vec::new();
        if n > self.len() {
            return Ok(found);
        }
        for start in 0..=(self.len() - n) {
            if self.letters[start..start + n] == needle.letters[..] {
                found.push(Occurrence { start, end: start + n - 1 });
            }
        }
        Ok(found)
    }

    /// The letters that actually occur in the word.
    pub fn used_letters(&self) -> BTreeSet<Letter> {
        self.letters.iter().cloned().collect()
    }

    /// Smallest `p >= 1` such that the word is a power of its length-`p`
    /// prefix. Always divides the length.
    pub fn minimal_period(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let n = self.len();
        'candidate: for p in 1..=n {
            if n % p != 0 {
                continue;
            }
            for i in p..n {
                if self.letters[i] != self.letters[i % p] {
                    continue 'candidate;
                }
            }
            return Ok(p);
        }
        unreachable!("p = n always matches")
    }
}

impl fmt::Display for FiniteWord {
    /// Single-character letters print contiguously (`0110`); anything else
    /// prints comma-separated so multi-character tokens stay readable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let contiguous = self.letters.iter().all(|l| l.as_str().chars().count() == 1);
        let mut first = true;
        for l in &self.letters {
            if !contiguous && !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
