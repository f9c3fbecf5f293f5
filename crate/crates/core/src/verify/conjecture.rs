//! Experimental modes. They report what they observe and never fail on the
//! conjectured statements themselves.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generation::{classify, GenerationFactor};
use crate::par::Schedule;
use crate::points::region_weight_exceeds_sixth;
use crate::runs::{find_runs, Run};
use crate::stats::{lambda_stats, theorem_bounds_report};
use crate::word::{enumerate_words, Word, ENUMERATION_SYMBOLS};

use super::corpus::CorpusSpec;
use super::DEFAULT_LAMBDAS;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgmaxWord {
    pub word: String,
    pub primary: usize,
    pub secondary_free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxRunsRow {
    pub n: usize,
    /// Largest number of runs over all words of length n.
    pub mrn: usize,
    /// Largest number of primary runs over all words of length n.
    pub max_primary: usize,
    /// Every canonical word attaining `mrn`.
    pub argmax: Vec<ArgmaxWord>,
    /// Every word attaining `mrn` has no secondary runs.
    pub all_secondary_free: bool,
    /// `mrn` equals `max_primary`.
    pub primary_matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxRunsReport {
    pub alphabet_size: usize,
    pub max_len: usize,
    pub rows: Vec<MaxRunsRow>,
    /// `true` when every row supports the conjecture.
    pub consistent: bool,
}

/// Whether symbols appear in order of first occurrence, which picks one
/// word from every class under renaming of the alphabet.
fn is_canonical(w: &Word<u8>) -> bool {
    let mut next = 0usize;
    for &c in w.symbols() {
        let idx = ENUMERATION_SYMBOLS
            .iter()
            .position(|&s| s == c)
            .unwrap_or(usize::MAX);
        if idx > next {
            return false;
        }
        if idx == next {
            next += 1;
        }
    }
    true
}

/// Canonical words of one length. The first symbol is always the smallest,
/// so only the tail is enumerated.
fn canonical_words(alphabet_size: usize, n: usize) -> Vec<Word<u8>> {
    if n == 0 {
        return vec![Word::new(Vec::new())];
    }
    enumerate_words(alphabet_size, n - 1)
        .map(|tail| {
            let mut v = Vec::with_capacity(n);
            v.push(ENUMERATION_SYMBOLS[0]);
            v.extend_from_slice(tail.symbols());
            Word::new(v)
        })
        .filter(is_canonical)
        .collect()
}

/// For each length up to `max_len`: the maximum number of runs, the maximum
/// number of primary runs, and whether the words with the most runs are free
/// of secondary runs.
pub fn conjecture_maxruns(alphabet_size: usize, max_len: usize) -> Result<MaxRunsReport> {
    conjecture_maxruns_with(Schedule::default(), alphabet_size, max_len)
}

pub fn conjecture_maxruns_with(
    schedule: Schedule,
    alphabet_size: usize,
    max_len: usize,
) -> Result<MaxRunsReport> {
    if !(2..=ENUMERATION_SYMBOLS.len()).contains(&alphabet_size) {
        return Err(Error::InvalidArgument(format!(
            "alphabet size must be in 2..={}, got {alphabet_size}",
            ENUMERATION_SYMBOLS.len()
        )));
    }
    if max_len < 1 {
        return Err(Error::InvalidArgument(
            "max length must be at least 1".into(),
        ));
    }
    let mut rows = Vec::with_capacity(max_len);
    for n in 1..=max_len {
        let words = canonical_words(alphabet_size, n);
        let counts = schedule.map(&words, |w| -> Result<(usize, usize)> {
            let rs = find_runs(w);
            let tax = classify(w, &rs, GenerationFactor::DEFAULT)?;
            Ok((rs.len(), tax.primary.len()))
        });
        let counts: Vec<(usize, usize)> = counts.into_iter().collect::<Result<_>>()?;
        let mrn = counts.iter().map(|c| c.0).max().unwrap_or(0);
        let max_primary = counts.iter().map(|c| c.1).max().unwrap_or(0);
        let argmax: Vec<ArgmaxWord> = words
            .iter()
            .zip(&counts)
            .filter(|(_, c)| c.0 == mrn)
            .map(|(w, &(total, primary))| ArgmaxWord {
                word: w.to_string(),
                primary,
                secondary_free: primary == total,
            })
            .collect();
        rows.push(MaxRunsRow {
            n,
            mrn,
            max_primary,
            all_secondary_free: argmax.iter().all(|a| a.secondary_free),
            primary_matches: mrn == max_primary,
            argmax,
        });
    }
    Ok(MaxRunsReport {
        alphabet_size,
        max_len,
        consistent: rows
            .iter()
            .all(|r| r.all_secondary_free && r.primary_matches),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorStatus {
    pub factor: u32,
    pub words: usize,
    pub secondary_runs: usize,
    /// Words on which some explicit-constant bound fails at some λ. Only
    /// factor 3 is covered by the proofs; larger factors are observations.
    pub bound_violations: usize,
    pub bounds_hold: bool,
    pub first_violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSweepReport {
    pub factors: Vec<FactorStatus>,
    /// Secondary sets shrink as the factor grows, on every word. This part
    /// is asserted.
    pub monotone: bool,
    pub monotonicity_violation: Option<String>,
}

/// Classifies every corpus word under each factor and evaluates the
/// explicit-constant bounds.
pub fn factor_sweep(corpus: &CorpusSpec, factors: &[u32]) -> Result<FactorSweepReport> {
    factor_sweep_with(Schedule::default(), corpus, factors)
}

pub fn factor_sweep_with(
    schedule: Schedule,
    corpus: &CorpusSpec,
    factors: &[u32],
) -> Result<FactorSweepReport> {
    let mut factors: Vec<GenerationFactor> = factors
        .iter()
        .map(|&g| GenerationFactor::new(g))
        .collect::<Result<_>>()?;
    factors.sort();
    factors.dedup();
    let words = corpus.build()?;

    struct PerWord {
        secondary: Vec<BTreeSet<Run>>,
        violation: Vec<Option<String>>,
    }
    let per_word = schedule.map(&words, |cw| -> Result<PerWord> {
        let w = &cw.word;
        let rs = find_runs(w);
        let mut secondary = Vec::with_capacity(factors.len());
        let mut violation = Vec::with_capacity(factors.len());
        for &g in &factors {
            let tax = classify(w, &rs, g)?;
            secondary.push(tax.secondary_runs().copied().collect());
            let mut first = None;
            if !w.is_empty() {
                for lambda in DEFAULT_LAMBDAS {
                    let report = theorem_bounds_report(&lambda_stats(w, &tax, lambda)?);
                    if let Some(c) = report.checks.iter().find(|c| !c.satisfied) {
                        first = Some(format!(
                            "{w} lambda={lambda}: {} measured {} against {}",
                            c.name, c.measured, c.bound
                        ));
                        break;
                    }
                }
            }
            violation.push(first);
        }
        Ok(PerWord {
            secondary,
            violation,
        })
    });
    let per_word: Vec<PerWord> = per_word.into_iter().collect::<Result<_>>()?;

    let statuses = factors
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let violations: Vec<&String> = per_word
                .iter()
                .filter_map(|pw| pw.violation[k].as_ref())
                .collect();
            FactorStatus {
                factor: g.get(),
                words: words.len(),
                secondary_runs: per_word.iter().map(|pw| pw.secondary[k].len()).sum(),
                bound_violations: violations.len(),
                bounds_hold: violations.is_empty(),
                first_violation: violations.first().map(|s| s.to_string()),
            }
        })
        .collect();

    let monotonicity_violation = words.iter().zip(&per_word).find_map(|(cw, pw)| {
        pw.secondary
            .windows(2)
            .zip(factors.windows(2))
            .find_map(|(s, g)| {
                s[1].difference(&s[0]).next().map(|r| {
                    format!(
                        "{}: {r} is secondary for factor {} but not {}",
                        cw.word, g[1], g[0]
                    )
                })
            })
    });
    Ok(FactorSweepReport {
        factors: statuses,
        monotone: monotonicity_violation.is_none(),
        monotonicity_violation,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightFloorReport {
    pub max_p: i64,
    /// Values of p for which the region weight is not above 1/6.
    pub failures: Vec<i64>,
}

/// Decides `ρ(V(p, j)) > 1/6` exactly for every `1 <= p <= max_p`.
pub fn weight_floor(schedule: Schedule, max_p: i64) -> WeightFloorReport {
    let max = max_p.max(0) as usize;
    let ok = schedule.map_range(1..max + 1, |p| region_weight_exceeds_sixth(p as i64));
    WeightFloorReport {
        max_p,
        failures: ok
            .iter()
            .enumerate()
            .filter(|(_, &ok)| !ok)
            .map(|(k, _)| k as i64 + 1)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::corpus::FamilySpec;
    use crate::word::Family;

    #[test]
    fn canonical_words_pick_one_per_renaming() {
        let w = canonical_words(2, 3);
        let text: Vec<String> = w.iter().map(|w| w.to_string()).collect();
        assert_eq!(text, ["000", "001", "010", "011"]);
        assert_eq!(canonical_words(3, 3).len(), 5); // Bell number B_3
        assert!(!is_canonical(&Word::from("102")));
    }

    #[test]
    fn maxruns_small_table() {
        let report = conjecture_maxruns(2, 6).unwrap();
        assert_eq!(report.rows.len(), 6);
        assert_eq!(report.rows[0].mrn, 0);
        assert_eq!(report.rows[1].mrn, 1); // "00"
        for row in &report.rows {
            assert!(!row.argmax.is_empty());
            assert!(row.max_primary <= row.mrn);
        }
        assert!(conjecture_maxruns(1, 3).is_err());
        assert!(conjecture_maxruns(2, 0).is_err());
    }

    #[test]
    fn schedules_agree_on_maxruns() {
        assert_eq!(
            conjecture_maxruns_with(Schedule::Sequential, 3, 6).unwrap(),
            conjecture_maxruns_with(Schedule::Parallel, 3, 6).unwrap()
        );
    }

    #[test]
    fn factor_sweep_shrinks_wk_secondaries() {
        let corpus = CorpusSpec {
            families: vec![FamilySpec {
                family: Family::Wk,
                from: 2,
                to: 12,
            }],
            ..Default::default()
        };
        let report = factor_sweep(&corpus, &[5, 3, 4]).unwrap();
        assert!(report.monotone);
        let counts: Vec<usize> = report.factors.iter().map(|f| f.secondary_runs).collect();
        // w_k has k-3 secondary runs at factor 3 (k >= 4)
        assert_eq!(counts[0], (4..=12).map(|k| k - 3).sum::<usize>());
        assert!(counts.windows(2).all(|c| c[0] >= c[1]));
        assert!(report.factors[0].bounds_hold);
        assert!(factor_sweep(&corpus, &[2]).is_err());
    }

    #[test]
    fn weight_floor_small_range() {
        let r = weight_floor(Schedule::Sequential, 200);
        assert!(r.failures.is_empty());
        assert_eq!(
            weight_floor(Schedule::Parallel, 0).failures,
            Vec::<i64>::new()
        );
    }
}
