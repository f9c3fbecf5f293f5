//! Words, factors, and generators for the test-word families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An immutable word `w[1] w[2] … w[n]` over an arbitrary alphabet.
///
/// Public accessors take 1-based positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word<S = u8> {
    symbols: Vec<S>,
}

/// The fragment `w[start..end]` of some word, 1-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub start: usize,
    pub end: usize,
}

impl Factor {
    pub fn new(start: usize, end: usize) -> Self {
        Factor { start, end }
    }

    pub fn len(&self) -> usize {
        (self.end + 1).saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{}]", self.start, self.end)
    }
}

impl<S> Word<S> {
    pub fn new(symbols: Vec<S>) -> Self {
        Word { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[S] {
        &self.symbols
    }

    /// `w[i]`, 1-based. Panics when `i` is outside `1..=n`.
    pub fn at(&self, i: usize) -> &S {
        &self.symbols[i - 1]
    }

    /// The whole word as a factor, or `None` for the empty word.
    pub fn whole(&self) -> Option<Factor> {
        (!self.is_empty()).then(|| Factor::new(1, self.len()))
    }

    /// Checks that `f` is a nonempty factor of this word.
    pub fn check_factor(&self, f: Factor) -> Result<()> {
        if f.start < 1 || f.end > self.len() || f.start > f.end {
            if f.start == f.end + 1 && f.start >= 1 && f.end <= self.len() {
                return Err(Error::EmptyFactor);
            }
            return Err(Error::FactorOutOfBounds {
                start: f.start,
                end: f.end,
                len: self.len(),
            });
        }
        Ok(())
    }

    /// The symbols of `w[start..end]`.
    pub fn slice(&self, f: Factor) -> Result<&[S]> {
        self.check_factor(f)?;
        Ok(&self.symbols[f.start - 1..f.end])
    }
}

impl<S: PartialEq> Word<S> {
    /// Number of distinct symbols occurring in the word.
    pub fn alphabet_size(&self) -> usize {
        let mut seen: Vec<&S> = Vec::new();
        for s in &self.symbols {
            if !seen.contains(&s) {
                seen.push(s);
            }
        }
        seen.len()
    }

    /// Dense symbol codes, numbered by first occurrence.
    pub(crate) fn codes(&self) -> Vec<u32> {
        let mut seen: Vec<&S> = Vec::new();
        self.symbols
            .iter()
            .map(|s| match seen.iter().position(|t| *t == s) {
                Some(k) => k as u32,
                None => {
                    seen.push(s);
                    (seen.len() - 1) as u32
                }
            })
            .collect()
    }
}

impl<S> From<Vec<S>> for Word<S> {
    fn from(symbols: Vec<S>) -> Self {
        Word::new(symbols)
    }
}

impl From<&str> for Word<u8> {
    fn from(s: &str) -> Self {
        Word::new(s.as_bytes().to_vec())
    }
}

impl From<&[u8]> for Word<u8> {
    fn from(s: &[u8]) -> Self {
        Word::new(s.to_vec())
    }
}

impl fmt::Display for Word<u8> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.symbols {
            if b.is_ascii_graphic() || b == b' ' {
                write!(f, "{}", b as char)?;
            } else {
                write!(f, "\\x{b:02x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word<char> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// Families of structured test words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `(01)^k (10)^k`, length `4k`.
    Wk,
    /// Prefix of the Fibonacci word (0 → 01, 1 → 0).
    Fibonacci,
    /// Prefix of the Thue–Morse word.
    ThueMorse,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Wk => "wk",
            Family::Fibonacci => "fibonacci",
            Family::ThueMorse => "thue_morse",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wk" => Ok(Family::Wk),
            "fibonacci" | "fib" => Ok(Family::Fibonacci),
            "thue_morse" | "thue-morse" | "tm" => Ok(Family::ThueMorse),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// Builds a member of `family`. For `wk` the parameter is `k`; for the
/// infinite words it is the prefix length.
pub fn gen_family(family: Family, param: i64) -> Result<Word<u8>> {
    if param < 1 {
        return Err(Error::InvalidArgument(format!(
            "{family} parameter must be positive, got {param}"
        )));
    }
    let n = param as usize;
    let symbols = match family {
        Family::Wk => {
            let mut v = Vec::with_capacity(4 * n);
            for _ in 0..n {
                v.extend_from_slice(b"01");
            }
            for _ in 0..n {
                v.extend_from_slice(b"10");
            }
            v
        }
        Family::Fibonacci => {
            // the fixed point starts with φ(0) = 01; v[0] is already expanded
            let mut v = vec![b'0', b'1'];
            let mut read = 1;
            while v.len() < n {
                let next: &[u8] = if v[read] == b'0' { b"01" } else { b"0" };
                v.extend_from_slice(next);
                read += 1;
            }
            v.truncate(n);
            v
        }
        Family::ThueMorse => (0..n as u64)
            .map(|i| if i.count_ones() % 2 == 0 { b'0' } else { b'1' })
            .collect(),
    };
    Ok(Word::new(symbols))
}

/// Symbols used by [`enumerate_words`], in order.
pub const ENUMERATION_SYMBOLS: &[u8; 62] =
    b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// All words of the given length over the first `alphabet_size` symbols of
/// [`ENUMERATION_SYMBOLS`], in lexicographic order.
///
/// Panics if `alphabet_size` is 0 or larger than 62.
pub fn enumerate_words(alphabet_size: usize, length: usize) -> WordEnumerator {
    assert!(
        (1..=ENUMERATION_SYMBOLS.len()).contains(&alphabet_size),
        "alphabet size must be in 1..=62"
    );
    WordEnumerator {
        alphabet_size,
        digits: Some(vec![0; length]),
    }
}

/// Iterator returned by [`enumerate_words`].
#[derive(Debug, Clone)]
pub struct WordEnumerator {
    alphabet_size: usize,
    digits: Option<Vec<usize>>,
}

impl Iterator for WordEnumerator {
    type Item = Word<u8>;

    fn next(&mut self) -> Option<Word<u8>> {
        let digits = self.digits.as_mut()?;
        let word = Word::new(digits.iter().map(|&d| ENUMERATION_SYMBOLS[d]).collect());
        // odometer step; exhausted once every digit wraps
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                self.digits = None;
                break;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < self.alphabet_size {
                break;
            }
            digits[pos] = 0;
        }
        Some(word)
    }
}
