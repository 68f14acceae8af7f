use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::{Alphabet, FiniteWord, Letter, UPWord};

/// Backing generator of an indexable infinite word.
///
/// `letter_at` must be a pure function of the index: the same index always
/// yields the same letter, and every letter belongs to the stream's
/// alphabet. `prefix` exists so generators with cheap sequential access
/// (machine transforms, run-length generators) can avoid per-index work.
pub trait StreamSource: Send + Sync {
    fn letter_at(&self, n: u64) -> Letter;

    fn prefix(&self, len: usize) -> Vec<Letter> {
        (0..len as u64).map(|n| self.letter_at(n)).collect()
    }
}

/// An indexable infinite word backed by a named generator.
#[derive(Clone)]
pub struct WordStream {
    label: String,
    alphabet: Alphabet,
    source: Arc<dyn StreamSource>,
}

impl fmt::Debug for WordStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordStream")
            .field("label", &self.label)
            .field("alphabet", &self.alphabet.to_string())
            .finish()
    }
}

impl WordStream {
    pub fn from_source(label: String, alphabet: Alphabet, source: Arc<dyn StreamSource>) -> Self {
        WordStream { label, alphabet, source }
    }

    /// Generator tag plus parameters. Labels of the stock generators are in
    /// word-spec syntax and parse back to the same stream.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letter_at(&self, n: u64) -> Letter {
        self.source.letter_at(n)
    }

    /// The prefix of length `len`.
    pub fn expand(&self, len: usize) -> FiniteWord {
        FiniteWord::from_trusted(self.alphabet.clone(), self.source.prefix(len))
    }

    /// The factor spanning the inclusive index range `[from, to]`.
    pub fn factor(&self, from: u64, to: u64) -> Result<FiniteWord> {
        if from > to {
            return Err(Error::InvalidRange { from, to });
        }
        let letters = (from..=to).map(|n| self.letter_at(n)).collect();
        Ok(FiniteWord::from_trusted(self.alphabet.clone(), letters))
    }

    /// A view of an ultimately periodic word as a stream.
    pub fn from_up(word: &UPWord) -> Self {
        WordStream {
            label: word.spec_string(),
            alphabet: word.alphabet().clone(),
            source: Arc::new(UpSource(word.clone())),
        }
    }

    /// The binary word `1 0 1 00 1 000 1 ...` whose runs of zeros grow by
    /// one each time: ones sit exactly at positions 0, 2, 5, 9, 14, ...
    pub fn example_one() -> Self {
        let alphabet = Alphabet::binary();
        let zero = Letter::new("0").unwrap();
        let one = Letter::new("1").unwrap();
        WordStream {
            label: "gen:example1".into(),
            alphabet,
            source: Arc::new(ExampleOneSource { zero, one }),
        }
    }

    /// The Thue-Morse word over `{a, b}`: position `n` maps to `a` when the
    /// binary weight of `n` is even.
    pub fn thue_morse(a: Letter, b: Letter) -> Result<Self> {
        if a == b {
            return Err(Error::Precondition(
                "thue-morse generator needs two distinct letters".into(),
            ));
        }
        let label = format!("gen:thue-morse:{a},{b}");
        let alphabet = Alphabet::new([a.clone(), b.clone()])?;
        Ok(WordStream {
            label,
            alphabet,
            source: Arc::new(ThueMorseSource { a, b }),
        })
    }

    /// The merge construction: `z_n = 1` where `x_n = 1` and `y_n = target`,
    /// otherwise `z_n = y_n`. `x` must be binary, `y`'s alphabet disjoint
    /// from it, and `target` one of `y`'s letters.
    pub fn merge(x: &WordStream, y: &WordStream, target: &Letter) -> Result<Self> {
        let binary = Alphabet::binary();
        if !x.alphabet.is_subset_of(&binary) {
            return Err(Error::Precondition(format!(
                "merge needs a binary first stream, got alphabet {{{}}}",
                x.alphabet
            )));
        }
        if !y.alphabet.is_disjoint_from(&binary) {
            return Err(Error::Precondition(format!(
                "merge needs the second stream's alphabet disjoint from 0,1, got {{{}}}",
                y.alphabet
            )));
        }
        if !y.alphabet.contains(target) {
            return Err(Error::LetterOutsideAlphabet {
                letter: target.to_string(),
                alphabet: y.alphabet.to_string(),
            });
        }
        let one = Letter::new("1").unwrap();
        let alphabet = y.alphabet.union(&Alphabet::new([one.clone()])?);
        let label = format!("gen:merge:{}|{}|{}", x.label, y.label, target);
        Ok(WordStream {
            label,
            alphabet,
            source: Arc::new(MergeSource {
                x: x.clone(),
                y: y.clone(),
                target: target.clone(),
                one,
            }),
        })
    }
}

struct UpSource(UPWord);

impl StreamSource for UpSource {
    fn letter_at(&self, n: u64) -> Letter {
        self.0.letter_at(n)
    }

    fn prefix(&self, len: usize) -> Vec<Letter> {
        self.0.expand(len).letters().to_vec()
    }
}

struct ExampleOneSource {
    zero: Letter,
    one: Letter,
}

impl StreamSource for ExampleOneSource {
    /// Position `n` carries a one exactly when `n = k(k+3)/2` for some
    /// `k >= 0`, i.e. when `8n + 9` is a perfect square.
    fn letter_at(&self, n: u64) -> Letter {
        let s = (8 * n + 9).isqrt();
        if s * s == 8 * n + 9 {
            self.one.clone()
        } else {
            self.zero.clone()
        }
    }

    fn prefix(&self, len: usize) -> Vec<Letter> {
        let mut letters = Vec::with_capacity(len);
        let mut gap = 1usize;
        while letters.len() < len {
            letters.push(self.one.clone());
            for _ in 0..gap {
                if letters.len() == len {
                    break;
                }
                letters.push(self.zero.clone());
            }
            gap += 1;
        }
        letters.truncate(len);
        letters
    }
}

struct ThueMorseSource {
    a: Letter,
    b: Letter,
}

impl StreamSource for ThueMorseSource {
    fn letter_at(&self, n: u64) -> Letter {
        if n.count_ones() % 2 == 0 {
            self.a.clone()
        } else {
            self.b.clone()
        }
    }
}

struct MergeSource {
    x: WordStream,
    y: WordStream,
    target: Letter,
    one: Letter,
}

impl StreamSource for MergeSource {
    fn letter_at(&self, n: u64) -> Letter {
        let y = self.y.letter_at(n);
        if y == self.target && self.x.letter_at(n) == self.one {
            self.one.clone()
        } else {
            y
        }
    }

    fn prefix(&self, len: usize) -> Vec<Letter> {
        let xs = self.x.source.prefix(len);
        let ys = self.y.source.prefix(len);
        xs.into_iter()
            .zip(ys)
            .map(|(x, y)| {
                if y == self.target && x == self.one {
                    self.one.clone()
                } else {
                    y
                }
            })
            .collect()
    }
}
