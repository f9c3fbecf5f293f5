//! Computing `R(w)`, the set of all maximal repetitions of a word.
//!
//! [`find_runs_oracle`] follows the definition period by period and is kept
//! as the reference. [`find_runs`] uses Lyndon roots: every run has, for one
//! of the two orders on the alphabet, a Lyndon root that is also the longest
//! Lyndon word starting at its position, so extending each longest Lyndon
//! word by longest common extensions in both directions enumerates all runs.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

use crate::error::Result;
use crate::periodicity::{min_period_of, ExactRational};
use crate::suffix::{inverse, suffix_array, Lce};
use crate::word::{Factor, Word};

/// A maximal repetition `w[start..end]` with minimal period `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Run {
    pub start: usize,
    pub end: usize,
    pub period: usize,
}

impl Run {
    pub fn new(start: usize, end: usize, period: usize) -> Self {
        Run { start, end, period }
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn factor(&self) -> Factor {
        Factor::new(self.start, self.end)
    }

    pub fn exponent(&self) -> ExactRational {
        Ratio::new(self.len() as i64, self.period as i64)
    }

    pub fn contains_position(&self, i: usize) -> bool {
        self.start <= i && i <= self.end
    }

    /// Number of positions shared with `other` (0 when disjoint).
    pub fn overlap(&self, other: &Run) -> usize {
        let lo = self.start.max(other.start);
        let hi = self.end.min(other.end);
        (hi + 1).saturating_sub(lo)
    }

    /// Checks every run invariant against `w`.
    pub fn is_valid_for<S: PartialEq>(&self, w: &Word<S>) -> bool {
        let f = self.factor();
        if self.period == 0 || w.check_factor(f).is_err() || self.len() < 2 * self.period {
            return false;
        }
        let s = w.symbols();
        if min_period_of(&s[self.start - 1..self.end]) != self.period {
            return false;
        }
        let p = self.period;
        let left_ok = self.start == 1 || s[self.start - 2] != s[self.start - 2 + p];
        let right_ok = self.end == w.len() || s[self.end - p] != s[self.end];
        left_ok && right_ok
    }
}

impl Ord for Run {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.start, self.period, self.end).cmp(&(other.start, other.period, other.end))
    }
}

impl PartialOrd for Run {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{}] p={}", self.start, self.end, self.period)
    }
}

/// `R(w)`, sorted by `(start, period, end)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunSet {
    runs: Vec<Run>,
    word_len: usize,
}

impl RunSet {
    pub fn from_runs(mut runs: Vec<Run>, word_len: usize) -> Self {
        runs.sort();
        runs.dedup();
        RunSet { runs, word_len }
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn word_len(&self) -> usize {
        self.word_len
    }

    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Run> {
        self.runs.iter()
    }

    pub fn contains(&self, r: &Run) -> bool {
        self.runs.binary_search(r).is_ok()
    }

    pub fn index_of(&self, r: &Run) -> Option<usize> {
        self.runs.binary_search(r).ok()
    }
}

impl<'a> IntoIterator for &'a RunSet {
    type Item = &'a Run;
    type IntoIter = std::slice::Iter<'a, Run>;

    fn into_iter(self) -> Self::IntoIter {
        self.runs.iter()
    }
}

/// `R(w)` straight from the definition, `O(n²)`.
pub fn find_runs_oracle<S: PartialEq>(w: &Word<S>) -> RunSet {
    let s = w.symbols();
    let n = s.len();
    let mut runs = Vec::new();
    for p in 1..=n / 2 {
        // maximal blocks of x (0-based) with s[x] == s[x + p]
        let mut x = 0;
        while x + p < n {
            if s[x] != s[x + p] {
                x += 1;
                continue;
            }
            let a = x;
            while x + p < n && s[x] == s[x + p] {
                x += 1;
            }
            // matches on a..x, so the periodic interval is a..x-1+p
            let (start, end) = (a, x - 1 + p);
            if end + 1 - start >= 2 * p && min_period_of(&s[start..=end]) == p {
                runs.push(Run::new(start + 1, end + 1, p));
            }
        }
    }
    RunSet::from_runs(runs, n)
}

/// `R(w)` via longest Lyndon words and LCE queries, `O(n log² n)`.
pub fn find_runs<S: PartialEq>(w: &Word<S>) -> RunSet {
    let n = w.len();
    if n < 2 {
        return RunSet::from_runs(Vec::new(), n);
    }
    let codes = w.codes();
    let top = codes.iter().copied().max().unwrap_or(0);
    let forward_sa = suffix_array(&codes);
    let forward = Lce::with_suffix_array(&codes, &forward_sa);
    let reversed: Vec<u32> = codes.iter().rev().copied().collect();
    let backward = Lce::new(&reversed);

    let mut runs = Vec::new();
    for flip in [false, true] {
        let flipped_isa;
        let isa: &[usize] = if flip {
            let ordered: Vec<u32> = codes.iter().map(|&c| top - c).collect();
            flipped_isa = inverse(&suffix_array(&ordered));
            &flipped_isa
        } else {
            forward.rank()
        };
        // the longest Lyndon word at i ends before the next lexicographically
        // smaller suffix
        let mut stack: Vec<usize> = Vec::new();
        for i in (0..n).rev() {
            while stack.last().is_some_and(|&t| isa[t] > isa[i]) {
                stack.pop();
            }
            let next_smaller = stack.last().copied().unwrap_or(n);
            stack.push(i);

            let p = next_smaller - i;
            if 2 * p > n {
                continue;
            }
            let right = forward.lcp(i, i + p);
            let left = if i > 0 {
                backward.lcp(n - i, n - i - p)
            } else {
                0
            };
            if left + right >= p {
                runs.push(Run::new(i - left + 1, i + p + right, p));
            }
        }
    }
    RunSet::from_runs(runs, n)
}

/// Whether `w[f]` is a maximal repetition.
pub fn is_maximal_repetition<S: PartialEq>(w: &Word<S>, f: Factor) -> Result<bool> {
    let s = w.slice(f)?;
    let p = min_period_of(s);
    Ok(Run::new(f.start, f.end, p).is_valid_for(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{enumerate_words, gen_family, Family};
    use proptest::prelude::*;

    fn runs_of(s: &str) -> Vec<Run> {
        find_runs_oracle(&Word::from(s)).runs().to_vec()
    }

    #[test]
    fn oracle_examples() {
        let mut expected = vec![
            Run::new(1, 4, 2),
            Run::new(5, 8, 2),
            Run::new(4, 5, 1),
            Run::new(2, 7, 3),
        ];
        expected.sort();
        assert_eq!(runs_of("01011010"), expected);
        assert_eq!(runs_of("aaaa"), vec![Run::new(1, 4, 1)]);
        assert!(runs_of("abc").is_empty());
    }

    #[test]
    fn fast_examples() {
        for s in ["01011010", "aaaa", "abc", "", "a", "abaababaab"] {
            let w = Word::from(s);
            assert_eq!(find_runs(&w), find_runs_oracle(&w), "{s}");
        }
        let w4 = gen_family(Family::Wk, 4).unwrap();
        assert_eq!(find_runs(&w4).len(), 6);
    }

    #[test]
    fn maximality_examples() {
        let w = Word::from("01011010");
        assert!(is_maximal_repetition(&w, Factor::new(2, 7)).unwrap());
        assert!(!is_maximal_repetition(&w, Factor::new(1, 2)).unwrap());
        let a = Word::from("aaaa");
        assert!(!is_maximal_repetition(&a, Factor::new(1, 3)).unwrap());
        assert!(is_maximal_repetition(&a, Factor::new(1, 9)).is_err());
    }

    #[test]
    fn fast_equals_oracle_small_exhaustive() {
        for len in 0..=11 {
            for w in enumerate_words(2, len) {
                assert_eq!(find_runs(&w), find_runs_oracle(&w), "{w}");
            }
        }
        for len in 0..=7 {
            for w in enumerate_words(3, len) {
                assert_eq!(find_runs(&w), find_runs_oracle(&w), "{w}");
            }
        }
    }

    #[test]
    fn oracle_runs_satisfy_invariants() {
        for w in enumerate_words(2, 10) {
            for r in &find_runs_oracle(&w) {
                assert!(r.is_valid_for(&w));
                assert!(r.exponent() >= Ratio::from_integer(2));
            }
        }
    }

    proptest! {
        #[test]
        fn fast_equals_oracle_random(s in proptest::collection::vec(0u8..4, 0..120)) {
            let w = Word::new(s);
            prop_assert_eq!(find_runs(&w), find_runs_oracle(&w));
        }

        #[test]
        fn same_period_runs_overlap_less_than_period(s in proptest::collection::vec(0u8..2, 0..80)) {
            let rs = find_runs(&Word::new(s));
            for a in rs.iter() {
                for b in rs.iter() {
                    if a != b && a.period == b.period {
                        prop_assert!(a.overlap(b) < a.period);
                    }
                }
            }
        }
    }
}
