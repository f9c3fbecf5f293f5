//! The verification harness: every invariant of the crate, run over a
//! corpus of words, with failures reduced to their shortest counterexample.

mod checks;
pub mod conjecture;
pub mod corpus;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generation::GenerationFactor;
use crate::par::Schedule;
use crate::word::Word;

pub use checks::check_word;
pub use corpus::{CorpusSpec, CorpusWord};

/// The λ values swept when none are given.
pub const DEFAULT_LAMBDAS: [usize; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

/// One invariant. The serialized names are stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    /// The fast finder agrees with the brute-force one.
    RunsOracle,
    /// Every reported run is a maximal repetition of its minimal period.
    RunInvariants,
    /// Two periods with `p + q - gcd(p, q) <= n` imply period `gcd(p, q)`.
    GcdPeriod,
    /// The minimal period divides every period `q` with `2q <= n`.
    PeriodDivisibility,
    /// Overlapping runs sharing a period `q` with overlap `>= q` merge.
    OverlapMerge,
    /// Non-separated runs of one period overlap by less than it.
    SamePeriodOverlap,
    /// No run of period p lies between two non-separated runs of period p.
    NoRunBetween,
    /// Every primitive square lies in exactly one run of its period.
    SquareContainment,
    /// Every cyclic root of a run is primitive.
    CyclicRootPrimitivity,
    /// σ of a cognate non-separated pair is non-zero.
    SigmaNonzero,
    /// σ does not depend on which equal roots are compared.
    SigmaIndependence,
    /// The position chain of a cognate non-separated pair.
    PairChain,
    /// Long primitive squares inside a pair are centred on its overlap.
    LongSquareCentre,
    /// A secondary run has exactly one generating pair.
    UniqueGenerator,
    /// The closed form of generated runs equals the generated set.
    GenerationClosedForm,
    /// Generators are primary with exponent > 7/3; secondaries have < 7/3.
    GeneratorExponents,
    /// A run generates at most `|{α : 3 <= α < e(r)}|` runs from the left.
    LeftGenerationCount,
    /// A secondary run lies strictly inside the hull of its pair.
    Hull,
    /// Raising the factor never adds secondary runs.
    FactorMonotone,
    /// The point sets of distinct runs are disjoint.
    DisjointRunPoints,
    /// `|P(r)| = ⌊e(r) - 1⌋ >= 1`.
    RunPoints,
    /// Primary points with equal p cover no common point.
    EqualPeriodCover,
    /// No point is covered by three primary points, for every λ.
    CoverMultiplicity,
    /// Regions covered by primary points stay inside `E(w)`.
    LatticeContainment,
    /// `|Rp_λ| <= |E'_λ| < 12n/(λ - 1/2)`.
    CountBound,
    /// `exp_λ + exs_λ < 6|E'_λ|` and `exs_λ < 3|Rs_λ|`.
    ExponentBound,
    /// `clp_λ < 44 ln(n/(λ - 1/2))`.
    LetterBound,
    /// Run structure of `(01)^k (10)^k`.
    WkStructure,
}

impl CheckId {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check_id: CheckId,
    pub word: String,
    pub length: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
}

/// Runs every check on every corpus word, in parallel where available.
pub fn run_all_checks(
    corpus: &CorpusSpec,
    lambdas: &[usize],
    factor: GenerationFactor,
) -> Result<Vec<CheckOutcome>> {
    run_all_checks_with(Schedule::default(), corpus, lambdas, factor)
}

/// [`run_all_checks`] with an explicit schedule. The output is sorted by
/// (length, word, check) and identical for both schedules.
pub fn run_all_checks_with(
    schedule: Schedule,
    corpus: &CorpusSpec,
    lambdas: &[usize],
    factor: GenerationFactor,
) -> Result<Vec<CheckOutcome>> {
    let words = corpus.build()?;
    Ok(check_words(schedule, &words, lambdas, factor))
}

/// Checks already-built words; see [`run_all_checks_with`].
pub fn check_words(
    schedule: Schedule,
    words: &[CorpusWord],
    lambdas: &[usize],
    factor: GenerationFactor,
) -> Vec<CheckOutcome> {
    let mut out: Vec<CheckOutcome> = schedule
        .map(words, |cw| {
            check_word(&cw.word, &cw.word.to_string(), lambdas, factor, cw.wk)
        })
        .into_iter()
        .flatten()
        .collect();
    out.sort_by(|a, b| (a.length, &a.word, a.check_id).cmp(&(b.length, &b.word, b.check_id)));
    out
}

/// Checks one word of any symbol type.
pub fn check_single<S: PartialEq>(
    w: &Word<S>,
    label: &str,
    lambdas: &[usize],
    factor: GenerationFactor,
) -> Vec<CheckOutcome> {
    check_word(w, label, lambdas, factor, None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check_id: CheckId,
    pub words: usize,
    pub failures: usize,
    /// The shortest failing word and what went wrong on it.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub shortest_counterexample: Option<CheckOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub words: usize,
    pub outcomes: usize,
    pub failures: usize,
    pub checks: Vec<CheckSummary>,
}

impl VerificationSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Aggregates outcomes per check. Expects the order of
/// [`run_all_checks_with`], so the first failure seen is the shortest.
pub fn summarize(outcomes: &[CheckOutcome]) -> VerificationSummary {
    let mut per_check: BTreeMap<CheckId, CheckSummary> = BTreeMap::new();
    let mut words = std::collections::HashSet::new();
    for o in outcomes {
        words.insert((o.length, o.word.as_str()));
        let entry = per_check.entry(o.check_id).or_insert(CheckSummary {
            check_id: o.check_id,
            words: 0,
            failures: 0,
            shortest_counterexample: None,
        });
        entry.words += 1;
        if !o.passed {
            entry.failures += 1;
            let shorter = entry
                .shortest_counterexample
                .as_ref()
                .is_none_or(|c| (o.length, &o.word) < (c.length, &c.word));
            if shorter {
                entry.shortest_counterexample = Some(o.clone());
            }
        }
    }
    let checks: Vec<CheckSummary> = per_check.into_values().collect();
    VerificationSummary {
        words: words.len(),
        outcomes: outcomes.len(),
        failures: checks.iter().map(|c| c.failures).sum(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Family;
    use corpus::{ExhaustiveSpec, FamilySpec};

    #[test]
    fn check_names_are_stable() {
        assert_eq!(CheckId::CoverMultiplicity.name(), "cover_multiplicity");
        assert_eq!(CheckId::RunsOracle.name(), "runs_oracle");
        assert_eq!(CheckId::ExponentBound.to_string(), "exponent_bound");
        let json = serde_json::to_string(&CheckId::PeriodDivisibility).unwrap();
        assert_eq!(json, "\"period_divisibility\"");
        assert_eq!(
            serde_json::from_str::<CheckId>(&json).unwrap(),
            CheckId::PeriodDivisibility
        );
    }

    #[test]
    fn empty_corpus_gives_no_outcomes() {
        let out = run_all_checks(
            &CorpusSpec::default(),
            &DEFAULT_LAMBDAS,
            GenerationFactor::DEFAULT,
        )
        .unwrap();
        assert!(out.is_empty());
        let s = summarize(&out);
        assert!(s.passed());
        assert_eq!(s.words, 0);
    }

    #[test]
    fn small_corpus_passes_and_schedules_agree() {
        let spec = CorpusSpec {
            exhaustive: vec![ExhaustiveSpec {
                alphabet_size: 2,
                max_len: 8,
            }],
            families: vec![FamilySpec {
                family: Family::Wk,
                from: 1,
                to: 8,
            }],
            ..Default::default()
        };
        let seq = run_all_checks_with(
            Schedule::Sequential,
            &spec,
            &DEFAULT_LAMBDAS,
            GenerationFactor::DEFAULT,
        )
        .unwrap();
        let par = run_all_checks_with(
            Schedule::Parallel,
            &spec,
            &DEFAULT_LAMBDAS,
            GenerationFactor::DEFAULT,
        )
        .unwrap();
        assert_eq!(seq, par);
        let s = summarize(&seq);
        assert!(
            s.passed(),
            "{:?}",
            s.checks
                .iter()
                .filter(|c| c.failures > 0)
                .collect::<Vec<_>>()
        );
        assert_eq!(s.words, 517);
    }

    #[test]
    fn summary_keeps_shortest_failure() {
        let mk = |word: &str, passed: bool| CheckOutcome {
            check_id: CheckId::SamePeriodOverlap,
            word: word.into(),
            length: word.len(),
            passed,
            counterexample: (!passed).then(|| "x".into()),
        };
        let s = summarize(&[mk("ab", true), mk("abab", false), mk("abc", false)]);
        assert_eq!(s.failures, 2);
        assert_eq!(
            s.checks[0].shortest_counterexample.as_ref().unwrap().word,
            "abc"
        );
    }
}
