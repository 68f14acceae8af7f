//! Subword complexity `f_x(n)` (distinct length-`n` factors) and the growth
//! function `g_x(n)` (its partial sums), exact for ultimately periodic
//! words and prefix-based for streams.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::machine::MealyMachine;
use crate::word::{FiniteWord, Letter, UPWord, Word, WordStream};

/// Whether a profile entry is an exact value or a finite-prefix lower
/// bound on the true complexity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    PrefixLowerBound,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exactness::Exact => f.write_str("exact"),
            Exactness::PrefixLowerBound => f.write_str("prefix-lower-bound"),
        }
    }
}

/// Values `f(0..=nmax)` for one word. `f(0) = 1`: the empty word is a
/// factor of everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityProfile {
    source: String,
    values: Vec<u64>,
    exactness: Vec<Exactness>,
}

impl ComplexityProfile {
    pub(crate) fn from_parts(source: String, values: Vec<u64>, exactness: Exactness) -> Self {
        ComplexityProfile {
            source,
            exactness: vec![exactness; values.len()],
            values,
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn exactness(&self) -> &[Exactness] {
        &self.exactness
    }

    /// Running prefix sums `g(n) = sum of f(0..=n)`.
    pub fn growth(&self) -> GrowthProfile {
        let mut values = Vec::with_capacity(self.values.len());
        let mut acc = 0u64;
        for v in &self.values {
            acc += v;
            values.push(acc);
        }
        GrowthProfile { source: self.source.clone(), values }
    }

    /// Smallest integer `c >= 1` with `f(n) <= c * cmp(n)` for every
    /// `n <= window`, or `None` when `cmp` vanishes where the profile does
    /// not. A finite-window witness, not a proof of `O(cmp)` membership;
    /// the comparison is required at every `n` including `n = 0`.
    pub fn big_o_witness(&self, cmp: &ComparisonFn, window: usize) -> Result<Option<u64>> {
        witness_constant(&self.values, cmp, window)
    }
}

/// `g(0..=nmax)`: strictly increasing since every `f(n) >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthProfile {
    source: String,
    values: Vec<u64>,
}

impl GrowthProfile {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn big_o_witness(&self, cmp: &ComparisonFn, window: usize) -> Result<Option<u64>> {
        witness_constant(&self.values, cmp, window)
    }
}

fn witness_constant(values: &[u64], cmp: &ComparisonFn, window: usize) -> Result<Option<u64>> {
    if window >= values.len() {
        return Err(Error::Precondition(format!(
            "witness window {window} exceeds profile length {}",
            values.len()
        )));
    }
    let mut c = 1u64;
    for (n, &value) in values.iter().enumerate().take(window + 1) {
        let bound = cmp.value(n as u64);
        if bound == 0 {
            if value > 0 {
                return Ok(None);
            }
            continue;
        }
        c = c.max(value.div_ceil(bound));
    }
    Ok(Some(c))
}

/// The named comparison functions available to `O(f)` witnesses:
/// `1`, `n+1`, `n^k`, `2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComparisonFn {
    One,
    Linear,
    Power(u32),
    Exp2,
}

impl ComparisonFn {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "1" => Ok(ComparisonFn::One),
            "n+1" => Ok(ComparisonFn::Linear),
            "2^n" => Ok(ComparisonFn::Exp2),
            _ => {
                if let Some(exp) = name.strip_prefix("n^") {
                    let exp: u32 = exp
                        .parse()
                        .map_err(|_| Error::parse(name, "comparison function", "bad exponent"))?;
                    return Ok(ComparisonFn::Power(exp));
                }
                Err(Error::parse(
                    name,
                    "comparison function",
                    "known functions: 1, n+1, n^<k>, 2^n",
                ))
            }
        }
    }

    pub fn value(&self, n: u64) -> u64 {
        match self {
            ComparisonFn::One => 1,
            ComparisonFn::Linear => n + 1,
            ComparisonFn::Power(k) => n.saturating_pow(*k),
            ComparisonFn::Exp2 => {
                if n >= 63 {
                    u64::MAX
                } else {
                    1 << n
                }
            }
        }
    }
}

impl fmt::Display for ComparisonFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComparisonFn::One => f.write_str("1"),
            ComparisonFn::Linear => f.write_str("n+1"),
            ComparisonFn::Power(k) => write!(f, "n^{k}"),
            ComparisonFn::Exp2 => f.write_str("2^n"),
        }
    }
}

/// Distinct length-`n` factor counts of a finite word, for `n <= nmax`.
/// Needs `nmax < |word|` so every counted length actually has a window.
pub fn finite_profile(word: &FiniteWord, nmax: usize) -> Result<Vec<u64>> {
    if nmax >= word.len() {
        return Err(Error::Precondition(format!(
            "nmax {nmax} must be smaller than the prefix length {}",
            word.len()
        )));
    }
    Ok(count_windows(word.letters(), nmax, word.len()))
}

/// Distinct counts of windows of each length `0..=nmax`, looking only at
/// windows that start before `start_limit`. Windows are packed into
/// integers and deduplicated by sorting; window lengths too wide to pack
/// fall back to hashing letter slices.
fn count_windows(letters: &[Letter], nmax: usize, start_limit: usize) -> Vec<u64> {
    let mut values = Vec::with_capacity(nmax + 1);
    values.push(1); // the empty factor
    if nmax == 0 {
        return values;
    }

    // Dictionary of the distinct letters actually present.
    let mut dict: Vec<&Letter> = Vec::new();
    let mut indices: Vec<u16> = Vec::with_capacity(letters.len());
    for letter in letters {
        let index = match dict.iter().position(|d| *d == letter) {
            Some(i) => i,
            None => {
                dict.push(letter);
                dict.len() - 1
            }
        };
        indices.push(index as u16);
    }
    let radix = dict.len().max(2) as u64;

    let mut keys: Vec<u64> = Vec::new();
    let mut seen: HashSet<&[Letter]> = HashSet::new();
    for n in 1..=nmax {
        let window_starts = if letters.len() >= n { letters.len() - n + 1 } else { 0 };
        let starts = start_limit.min(window_starts);
        let packable =
            dict.len() <= u16::MAX as usize && (radix as u128).checked_pow(n as u32).is_some_and(|p| p <= u64::MAX as u128);
        if packable {
            keys.clear();
            for start in 0..starts {
                let mut key = 0u64;
                for &i in &indices[start..start + n] {
                    key = key * radix + i as u64;
                }
                keys.push(key);
            }
            keys.sort_unstable();
            keys.dedup();
            values.push(keys.len() as u64);
        } else {
            seen.clear();
            for start in 0..starts {
                seen.insert(&letters[start..start + n]);
            }
            values.push(seen.len() as u64);
        }
    }
    values
}

/// Exact subword complexity of an ultimately periodic word. Every factor
/// of `u v^omega` has an occurrence starting before `|u| + |v|`, so the
/// counts come from a prefix of length `|u| + |v| + n - 1` and are exact.
/// In particular `f(n) <= |u| + |v|` for every `n`.
pub fn up_profile(x: &UPWord, nmax: usize) -> ComplexityProfile {
    let starts = x.anti_period() + x.period();
    let prefix = x.expand(starts + nmax.saturating_sub(1).max(1));
    let values = count_windows(prefix.letters(), nmax, starts);
    ComplexityProfile {
        source: x.spec_string(),
        exactness: vec![Exactness::Exact; values.len()],
        values,
    }
}

/// Prefix-based complexity of a stream: distinct factor counts of
/// `x[0, prefix_len)`. True complexities can only be larger, so entries
/// are flagged as lower bounds.
pub fn prefix_profile(x: &WordStream, prefix_len: usize, nmax: usize) -> Result<ComplexityProfile> {
    let prefix = x.expand(prefix_len);
    let values = finite_profile(&prefix, nmax)?;
    Ok(ComplexityProfile {
        source: format!("{}[0,{})", x.label(), prefix_len),
        exactness: vec![Exactness::PrefixLowerBound; values.len()],
        values,
    })
}

/// One row of a quotient-bound report: `f_y(n)` against `|Q| * f_x(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRow {
    pub n: usize,
    pub transformed: u64,
    pub bound: u64,
}

/// Outcome of checking `f_y(n) <= |Q| f_x(n)` for a machine transform.
#[derive(Debug, Clone)]
pub struct QuotientBoundReport {
    pub state_count: usize,
    pub source: String,
    pub transformed: String,
    pub exact: bool,
    pub rows: Vec<QuotientRow>,
}

impl QuotientBoundReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.transformed <= r.bound)
    }

    pub fn violations(&self) -> impl Iterator<Item = &QuotientRow> {
        self.rows.iter().filter(|r| r.transformed > r.bound)
    }
}

/// Transforms `x` by `m` and compares complexity profiles: exact profiles
/// when `x` is ultimately periodic, matched prefix lengths otherwise.
pub fn check_quotient_bound(
    m: &MealyMachine,
    x: &Word,
    nmax: usize,
    prefix_len: usize,
) -> Result<QuotientBoundReport> {
    let k = m.state_count();
    let (source_profile, transformed_profile, exact) = match x {
        Word::Up(up) => {
            let y = m.transform_up(up)?;
            (up_profile(up, nmax), up_profile(&y, nmax), true)
        }
        Word::Stream(stream) => {
            let y = m.transform_stream(stream)?;
            (
                prefix_profile(stream, prefix_len, nmax)?,
                prefix_profile(&y, prefix_len, nmax)?,
                false,
            )
        }
    };
    let rows = source_profile
        .values
        .iter()
        .zip(&transformed_profile.values)
        .enumerate()
        .map(|(n, (&fx, &fy))| QuotientRow { n, transformed: fy, bound: k as u64 * fx })
        .collect();
    Ok(QuotientBoundReport {
        state_count: k,
        source: source_profile.source,
        transformed: transformed_profile.source,
        exact,
        rows,
    })
}
