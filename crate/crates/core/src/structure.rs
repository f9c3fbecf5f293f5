//! Cyclic roots, cognate runs, non-separation, and the alignment residue σ.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::runs::{Run, RunSet};
use crate::word::Word;

/// A factor of length `period` inside a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicRoot {
    pub start: usize,
    pub period: usize,
}

/// Two distinct cognate non-separated runs of period `period`, with
/// `left.start < right.start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RunPair {
    pub left: Run,
    pub right: Run,
    pub period: usize,
    pub sigma: usize,
}

impl RunPair {
    /// The chain `i' < j'+1-p < i'' <= j'+1 < j''`.
    pub fn chain_holds(&self) -> bool {
        let (l, r, p) = (self.left, self.right, self.period);
        l.start + p < l.end + 1
            && l.end + 1 < r.start + p
            && r.start <= l.end + 1
            && l.end + 1 < r.end
    }

    /// Overlap of the two runs, 0 when they are only adjacent.
    pub fn overlap(&self) -> usize {
        self.left.overlap(&self.right)
    }
}

fn root<S>(w: &Word<S>, start: usize, p: usize) -> &[S] {
    &w.symbols()[start - 1..start - 1 + p]
}

pub fn cyclic_roots<S: PartialEq>(w: &Word<S>, r: &Run) -> Result<Vec<CyclicRoot>> {
    if !r.is_valid_for(w) {
        return Err(Error::InvalidRun {
            start: r.start,
            end: r.end,
            period: r.period,
        });
    }
    Ok((r.start..=r.end + 1 - r.period)
        .map(|start| CyclicRoot {
            start,
            period: r.period,
        })
        .collect())
}

/// Equal periods and conjugate roots.
pub fn are_cognate<S: PartialEq>(w: &Word<S>, r1: &Run, r2: &Run) -> bool {
    if r1.period != r2.period {
        return false;
    }
    let p = r1.period;
    let u = root(w, r1.start, p);
    let v = root(w, r2.start, p);
    (0..p).any(|shift| u.iter().enumerate().all(|(k, a)| *a == v[(k + shift) % p]))
}

/// Overlapping or immediately adjacent.
pub fn are_non_separated(r1: &Run, r2: &Run) -> bool {
    let (a, b) = if r1.start <= r2.start {
        (r1, r2)
    } else {
        (r2, r1)
    };
    b.start <= a.end + 1
}

/// σ(r1, r2): the leftmost root of `r1` against the leftmost equal root of
/// `r2`, reduced mod p. Requires cognate runs with `r1.start <= r2.start`.
pub fn sigma<S: PartialEq>(w: &Word<S>, r1: &Run, r2: &Run) -> Result<usize> {
    if r1.period != r2.period || r1.start > r2.start {
        return Err(Error::InvalidArgument(format!(
            "sigma needs cognate runs in start order, got {r1} and {r2}"
        )));
    }
    let p = r1.period;
    let u = root(w, r1.start, p);
    (r2.start..=r2.end + 1 - p)
        .find(|&t| root(w, t, p) == u)
        .map(|t| (t - r1.start) % p)
        .ok_or_else(|| {
            Error::verification("sigma", format!("no root of {r2} equals the root of {r1}"))
        })
}

/// Residues `(t - s) mod p` over every pair of equal cyclic roots `s` of `r1`
/// and `t` of `r2`. Roots repeat with period p, so one period of starts on
/// each side suffices.
pub fn sigma_residues<S: PartialEq>(w: &Word<S>, r1: &Run, r2: &Run) -> BTreeSet<usize> {
    let p = r1.period as i64;
    let first = |r: &Run| r.start..=(r.start + r.period - 1).min(r.end + 1 - r.period);
    let mut out = BTreeSet::new();
    for s in first(r1) {
        for t in first(r2) {
            if root(w, s, r1.period) == root(w, t, r2.period) {
                out.insert((t as i64 - s as i64).rem_euclid(p) as usize);
            }
        }
    }
    out
}

/// All cognate non-separated pairs of distinct runs in `rs`, ordered by
/// `(left, right)`.
pub fn cognate_pairs<S: PartialEq>(w: &Word<S>, rs: &RunSet) -> Vec<RunPair> {
    let mut by_period: Vec<&Run> = rs.iter().collect();
    by_period.sort_by_key(|r| (r.period, r.start));
    let mut pairs = Vec::new();
    for (k, a) in by_period.iter().enumerate() {
        for b in &by_period[k + 1..] {
            if b.period != a.period || b.start > a.end + 1 {
                break;
            }
            if are_cognate(w, a, b) {
                // both come from R(w) and are cognate, so an equal root exists
                let s = sigma(w, a, b).expect("cognate runs share a root");
                pairs.push(RunPair {
                    left: **a,
                    right: **b,
                    period: a.period,
                    sigma: s,
                });
            }
        }
    }
    pairs.sort();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runs::find_runs;
    use crate::word::{gen_family, Family};

    fn wk(k: i64) -> Word<u8> {
        gen_family(Family::Wk, k).unwrap()
    }

    #[test]
    fn cyclic_root_examples() {
        let starts = |s: &str, r: Run| -> Vec<usize> {
            cyclic_roots(&Word::from(s), &r)
                .unwrap()
                .into_iter()
                .map(|c| c.start)
                .collect()
        };
        assert_eq!(starts("0101", Run::new(1, 4, 2)), vec![1, 2, 3]);
        assert_eq!(starts("aaaa", Run::new(1, 4, 1)), vec![1, 2, 3, 4]);
        assert_eq!(starts("01011010", Run::new(2, 7, 3)), vec![2, 3, 4, 5]);
        assert!(cyclic_roots(&Word::from("0101"), &Run::new(1, 3, 2)).is_err());
    }

    #[test]
    fn cognate_examples() {
        let w = wk(2);
        assert!(are_cognate(&w, &Run::new(1, 4, 2), &Run::new(5, 8, 2)));
        assert!(!are_cognate(&w, &Run::new(4, 5, 1), &Run::new(1, 4, 2)));
        for r in &find_runs(&w) {
            assert!(are_cognate(&w, r, r));
        }
    }

    #[test]
    fn non_separated_examples() {
        assert!(are_non_separated(&Run::new(1, 4, 2), &Run::new(5, 8, 2)));
        assert!(!are_non_separated(&Run::new(1, 4, 2), &Run::new(6, 9, 2)));
        assert!(are_non_separated(&Run::new(1, 6, 2), &Run::new(4, 9, 2)));
        assert!(are_non_separated(&Run::new(4, 9, 2), &Run::new(1, 6, 2)));
    }

    #[test]
    fn sigma_examples() {
        let w = wk(2);
        assert_eq!(
            sigma(&w, &Run::new(1, 4, 2), &Run::new(5, 8, 2)).unwrap(),
            1
        );
        for r in &find_runs(&w) {
            assert_eq!(sigma(&w, r, r).unwrap(), 0);
        }
        let w4 = wk(4);
        assert_eq!(
            sigma(&w4, &Run::new(1, 8, 2), &Run::new(9, 16, 2)).unwrap(),
            1
        );
        let residues = sigma_residues(&w4, &Run::new(1, 8, 2), &Run::new(9, 16, 2));
        assert_eq!(residues.into_iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn pairs_examples() {
        let w = wk(2);
        let pairs = cognate_pairs(&w, &find_runs(&w));
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].left, Run::new(1, 4, 2));
        assert_eq!(pairs[0].right, Run::new(5, 8, 2));
        assert_eq!(pairs[0].sigma, 1);
        assert!(pairs[0].chain_holds());
        let a = Word::from("aaaa");
        assert!(cognate_pairs(&a, &find_runs(&a)).is_empty());
        let abc = Word::from("abc");
        assert!(cognate_pairs(&abc, &find_runs(&abc)).is_empty());
    }
}
