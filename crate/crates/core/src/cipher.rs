//! The machine-keystream cipher: a shared key consists of an infinite word
//! and a Mealy machine with binary output; each session picks an offset
//! into the word and a starting state, and the machine's output over that
//! segment is XORed bit-by-bit with the plaintext.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complexity::{finite_profile, ComplexityProfile, Exactness, GrowthProfile};
use crate::error::{Error, Result};
use crate::machine::{MachineSpec, MealyMachine, State};
use crate::word::{Alphabet, FiniteWord, Letter, Word, WordSpec};

/// The long-lived shared secret: a word spec and a machine whose output
/// alphabet is exactly `{0, 1}`. The word must be apt for the machine.
#[derive(Debug, Clone)]
pub struct SharedKey {
    word_spec: WordSpec,
    word: Word,
    machine: MealyMachine,
}

/// On-disk form of a shared key.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct KeyFile {
    word: String,
    machine: MachineSpec,
}

impl SharedKey {
    pub fn new(word_spec: WordSpec, machine: MealyMachine) -> Result<Self> {
        if machine.output_alphabet() != &Alphabet::binary() {
            return Err(Error::Precondition(format!(
                "cipher machine must output exactly 0,1 (got {})",
                machine.output_alphabet()
            )));
        }
        let word = word_spec.build()?;
        if !machine.is_apt_for(word.alphabet()) {
            return Err(Error::NotApt {
                word: word.alphabet().to_string(),
                machine: machine.input_alphabet().to_string(),
            });
        }
        Ok(SharedKey { word_spec, word, machine })
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let file: KeyFile =
            serde_json::from_str(text).map_err(|e| Error::parse(text, "key file", e.to_string()))?;
        SharedKey::new(WordSpec::parse(&file.word)?, file.machine.validate()?)
    }

    pub fn to_json(&self) -> String {
        let file = KeyFile {
            word: self.word_spec.to_string(),
            machine: self.machine.to_spec(),
        };
        serde_json::to_string_pretty(&file).expect("key files always serialize")
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }
}

/// Per-session parameters: the offset into the key word and the machine
/// state to start from. Exchanged out of band.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionKey {
    pub offset: u64,
    pub state: State,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SessionFile {
    n: u64,
    q: String,
}

impl SessionKey {
    pub fn new(offset: u64, state: State) -> Self {
        SessionKey { offset, state }
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let file: SessionFile =
            serde_json::from_str(text).map_err(|e| Error::parse(text, "session file", e.to_string()))?;
        Ok(SessionKey { offset: file.n, state: State::new(&file.q)? })
    }

    pub fn to_json(&self) -> String {
        let file = SessionFile { n: self.offset, q: self.state.to_string() };
        serde_json::to_string_pretty(&file).expect("session files always serialize")
    }
}

/// A finite bit string, kept as ASCII-debuggable 0/1 values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitText {
    bits: Vec<u8>,
}

impl BitText {
    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if let Some(bad) = bits.iter().find(|b| **b > 1) {
            return Err(Error::InvalidBit(bad.to_string()));
        }
        Ok(BitText { bits })
    }

    /// Parses '0'/'1' text; whitespace (including newlines) is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for c in text.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                c if c.is_whitespace() => {}
                c => return Err(Error::InvalidBit(c.to_string())),
            }
        }
        Ok(BitText { bits })
    }

    /// Reads a binary word letter-by-letter.
    pub fn from_word(word: &FiniteWord) -> Result<Self> {
        let bits = word
            .letters()
            .iter()
            .map(|l| match l.as_str() {
                "0" => Ok(0),
                "1" => Ok(1),
                other => Err(Error::InvalidBit(other.to_string())),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(BitText { bits })
    }

    pub fn to_word(&self) -> FiniteWord {
        let zero = Letter::new("0").unwrap();
        let one = Letter::new("1").unwrap();
        let letters = self
            .bits
            .iter()
            .map(|&b| if b == 0 { zero.clone() } else { one.clone() })
            .collect();
        FiniteWord::new(Alphabet::binary(), letters).expect("bits map into the binary alphabet")
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn xor(&self, other: &BitText) -> Result<BitText> {
        if self.len() != other.len() {
            return Err(Error::BitLengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(BitText {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        })
    }
}

impl fmt::Display for BitText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// The keystream `q * x[n, n+l]`: the machine started in the session state
/// runs over the inclusive key-word segment, yielding `l + 1` bits.
pub fn keystream(key: &SharedKey, session: &SessionKey, last_offset: u64) -> Result<BitText> {
    let segment = key
        .word()
        .factor(session.offset, session.offset + last_offset)?;
    let run = key.machine().run(&session.state, &segment)?;
    BitText::from_word(&run.output)
}

/// Keystream sized for a plaintext: empty plaintext needs no keystream.
pub fn keystream_for(key: &SharedKey, session: &SessionKey, plaintext_len: usize) -> Result<BitText> {
    if plaintext_len == 0 {
        return Ok(BitText { bits: Vec::new() });
    }
    keystream(key, session, plaintext_len as u64 - 1)
}

/// Bit-by-bit XOR of plaintext and keystream.
pub fn encrypt(plaintext: &BitText, keystream: &BitText) -> Result<BitText> {
    plaintext.xor(keystream)
}

/// XOR is an involution, so decryption is the same operation.
pub fn decrypt(ciphertext: &BitText, keystream: &BitText) -> Result<BitText> {
    ciphertext.xor(keystream)
}

/// Exact tail data available when the key word is ultimately periodic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactTail {
    pub anti_period: usize,
    pub period: usize,
    pub word: String,
}

/// Complexity data for a keystream sample, plus exact period data for
/// ultimately periodic keys.
#[derive(Debug, Clone)]
pub struct KeystreamQuality {
    pub profile: ComplexityProfile,
    pub growth: GrowthProfile,
    pub exact_tail: Option<ExactTail>,
}

/// Profiles a length-`sample_len` keystream. When the key word is
/// ultimately periodic the exact transformed word is also computed: the
/// key word shifted to the session offset, transformed from the session
/// state.
pub fn keystream_quality(
    key: &SharedKey,
    session: &SessionKey,
    sample_len: usize,
    nmax: usize,
) -> Result<KeystreamQuality> {
    if sample_len <= nmax {
        return Err(Error::Precondition(format!(
            "keystream sample {sample_len} must be longer than nmax {nmax}"
        )));
    }
    let sample = keystream_for(key, session, sample_len)?;
    let values = finite_profile(&sample.to_word(), nmax)?;
    let profile = ComplexityProfile::from_parts(
        format!("keystream(n={},q={})[0,{sample_len})", session.offset, session.state),
        values,
        Exactness::PrefixLowerBound,
    );
    let growth = profile.growth();

    let exact_tail = match key.word() {
        Word::Up(x) => {
            let shifted = x.shift(session.offset);
            let machine = key.machine().with_initial(&session.state)?;
            let image = machine.transform_up(&shifted)?;
            Some(ExactTail {
                anti_period: image.anti_period(),
                period: image.period(),
                word: image.spec_string(),
            })
        }
        Word::Stream(_) => None,
    };

    Ok(KeystreamQuality { profile, growth, exact_tail })
}
