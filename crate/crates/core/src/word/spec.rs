use std::fmt;

use crate::error::{Error, Result};

use super::{Alphabet, FiniteWord, Letter, UPWord, WordStream};

/// Parsed form of the textual word format accepted by the CLI and key files:
///
/// - `up:u=<letters>;v=<letters>` with letters comma-separated
/// - `gen:example1`
/// - `gen:thue-morse:<a>,<b>`
/// - `gen:merge:<x>|<y>|<target>` where `<x>` and `<y>` are word specs
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordSpec {
    Up { preperiod: Vec<Letter>, period: Vec<Letter> },
    Example1,
    ThueMorse(Letter, Letter),
    Merge { x: Box<WordSpec>, y: Box<WordSpec>, target: Letter },
}

/// A word usable by every analysis: either exact ultimately periodic data
/// or a generator-backed stream.
#[derive(Debug, Clone)]
pub enum Word {
    Up(UPWord),
    Stream(WordStream),
}

impl WordSpec {
    pub fn parse(text: &str) -> Result<WordSpec> {
        let text = text.trim();
        let segments: Vec<&str> = text.split('|').collect();
        let (spec, consumed) = parse_chain(text, segments[0], &segments[1..])?;
        if consumed != segments.len() - 1 {
            return Err(Error::parse(text, "word spec", "trailing segments after a complete spec"));
        }
        Ok(spec)
    }

    /// Materializes the spec: ultimately periodic words come back exact,
    /// generators come back as streams.
    pub fn build(&self) -> Result<Word> {
        match self {
            WordSpec::Up { preperiod, period } => {
                let mut letters = preperiod.clone();
                letters.extend(period.iter().cloned());
                let alphabet = Alphabet::from_set(letters.into_iter().collect())?;
                let pre = FiniteWord::new(alphabet.clone(), preperiod.clone())?;
                let per = FiniteWord::new(alphabet, period.clone())?;
                Ok(Word::Up(UPWord::new(&pre, &per)?))
            }
            WordSpec::Example1 => Ok(Word::Stream(WordStream::example_one())),
            WordSpec::ThueMorse(a, b) => Ok(Word::Stream(WordStream::thue_morse(a.clone(), b.clone())?)),
            WordSpec::Merge { x, y, target } => {
                let x = x.build()?.into_stream();
                let y = y.build()?.into_stream();
                Ok(Word::Stream(WordStream::merge(&x, &y, target)?))
            }
        }
    }
}

/// Parses one spec whose first piece is `head`; a merge consumes further
/// `|`-separated segments from `rest`. Returns the spec and how many
/// segments of `rest` it consumed.
fn parse_chain<'a>(full: &str, head: &'a str, rest: &[&'a str]) -> Result<(WordSpec, usize)> {
    if let Some(inner) = head.strip_prefix("gen:merge:") {
        let (x, used_x) = parse_chain(full, inner, rest)?;
        let y_head = *rest
            .get(used_x)
            .ok_or_else(|| Error::parse(full, "word spec", "merge is missing its second word"))?;
        let (y, used_y) = parse_chain(full, y_head, &rest[used_x + 1..])?;
        let target_index = used_x + 1 + used_y;
        let target = rest
            .get(target_index)
            .ok_or_else(|| Error::parse(full, "word spec", "merge is missing its target letter"))?;
        let target = Letter::new(target).map_err(|e| Error::parse(full, "word spec", e.to_string()))?;
        return Ok((
            WordSpec::Merge { x: Box::new(x), y: Box::new(y), target },
            target_index + 1,
        ));
    }
    Ok((parse_atomic(full, head)?, 0))
}

fn parse_atomic(full: &str, text: &str) -> Result<WordSpec> {
    if let Some(rest) = text.strip_prefix("up:") {
        let (u_part, v_part) = rest
            .split_once(';')
            .ok_or_else(|| Error::parse(full, "word spec", "expected up:u=...;v=..."))?;
        let u_body = u_part
            .strip_prefix("u=")
            .ok_or_else(|| Error::parse(full, "word spec", "expected u= before the preperiod"))?;
        let v_body = v_part
            .strip_prefix("v=")
            .ok_or_else(|| Error::parse(full, "word spec", "expected v= before the period"))?;
        let preperiod = parse_letter_list(full, u_body)?;
        let period = parse_letter_list(full, v_body)?;
        if period.is_empty() {
            return Err(Error::parse(full, "word spec", "period must be non-empty"));
        }
        return Ok(WordSpec::Up { preperiod, period });
    }
    if text == "gen:example1" {
        return Ok(WordSpec::Example1);
    }
    if let Some(args) = text.strip_prefix("gen:thue-morse:") {
        let letters = parse_letter_list(full, args)?;
        if letters.len() != 2 {
            return Err(Error::parse(full, "word spec", "thue-morse takes exactly two letters"));
        }
        return Ok(WordSpec::ThueMorse(letters[0].clone(), letters[1].clone()));
    }
    Err(Error::parse(full, "word spec", format!("unknown form {text:?}")))
}

fn parse_letter_list(full: &str, body: &str) -> Result<Vec<Letter>> {
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| Letter::new(t).map_err(|e| Error::parse(full, "word spec", e.to_string())))
        .collect()
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSpec::Up { preperiod, period } => {
                let join = |ls: &[Letter]| ls.iter().map(Letter::as_str).collect::<Vec<_>>().join(",");
                write!(f, "up:u={};v={}", join(preperiod), join(period))
            }
            WordSpec::Example1 => f.write_str("gen:example1"),
            WordSpec::ThueMorse(a, b) => write!(f, "gen:thue-morse:{a},{b}"),
            WordSpec::Merge { x, y, target } => write!(f, "gen:merge:{x}|{y}|{target}"),
        }
    }
}

impl Word {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Word::Up(w) => w.alphabet(),
            Word::Stream(s) => s.alphabet(),
        }
    }

    pub fn letter_at(&self, n: u64) -> Letter {
        match self {
            Word::Up(w) => w.letter_at(n),
            Word::Stream(s) => s.letter_at(n),
        }
    }

    pub fn expand(&self, len: usize) -> FiniteWord {
        match self {
            Word::Up(w) => w.expand(len),
            Word::Stream(s) => s.expand(len),
        }
    }

    pub fn factor(&self, from: u64, to: u64) -> Result<FiniteWord> {
        match self {
            Word::Up(w) => w.factor(from, to),
            Word::Stream(s) => s.factor(from, to),
        }
    }

    pub fn as_up(&self) -> Option<&UPWord> {
        match self {
            Word::Up(w) => Some(w),
            Word::Stream(_) => None,
        }
    }

    pub fn into_stream(self) -> WordStream {
        match self {
            Word::Up(w) => WordStream::from_up(&w),
            Word::Stream(s) => s,
        }
    }

    pub fn to_stream(&self) -> WordStream {
        self.clone().into_stream()
    }

    /// Textual form: canonical `up:` syntax for exact words, the generator
    /// label for streams.
    pub fn spec_string(&self) -> String {
        match self {
            Word::Up(w) => w.spec_string(),
            Word::Stream(s) => s.label().to_string(),
        }
    }
}
