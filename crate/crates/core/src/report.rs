//! The per-word analysis report and its JSON, CSV and text renderings.

use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generation::{classify, GenerationFactor, Taxonomy};
use crate::periodicity::ExactRational;
use crate::ratio;
use crate::runs::{find_runs, RunSet};
use crate::stats::{lambda_stats, theorem_bounds_report, LambdaStats, TheoremReport};
use crate::verify::{check_single, CheckOutcome};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordMeta {
    pub source: String,
    pub length: usize,
    pub alphabet_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunClass {
    Primary,
    Secondary,
}

impl RunClass {
    pub fn name(self) -> &'static str {
        match self {
            RunClass::Primary => "primary",
            RunClass::Secondary => "secondary",
        }
    }
}

/// The generating pair of a secondary run, as indices into the report's
/// run list (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub left: usize,
    pub right: usize,
    pub alpha: usize,
    pub sigma: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunEntry {
    pub start: usize,
    pub end: usize,
    pub period: usize,
    #[serde(with = "crate::ratio::text")]
    pub exponent: ExactRational,
    pub class: RunClass,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator: Option<Generator>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub word_meta: WordMeta,
    pub factor: u32,
    /// Sorted by (start, period, end).
    pub runs: Vec<RunEntry>,
    pub lambda_stats: Vec<LambdaStats>,
    pub bounds: Vec<TheoremReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checks: Option<Vec<CheckOutcome>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub lambdas: Vec<usize>,
    pub factor: GenerationFactor,
    /// Also run every invariant check on the word.
    pub check: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            lambdas: crate::verify::DEFAULT_LAMBDAS.to_vec(),
            factor: GenerationFactor::DEFAULT,
            check: false,
        }
    }
}

/// Finds, classifies and measures the runs of `w`. `source` describes where
/// the word came from and labels check outcomes.
pub fn analyze<S: PartialEq>(
    w: &Word<S>,
    source: &str,
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport> {
    let rs = find_runs(w);
    let tax = classify(w, &rs, opts.factor)?;
    let mut lambdas = opts.lambdas.clone();
    lambdas.sort_unstable();
    lambdas.dedup();
    let stats = lambdas
        .iter()
        .map(|&l| lambda_stats(w, &tax, l))
        .collect::<Result<Vec<_>>>()?;
    let bounds = stats.iter().map(theorem_bounds_report).collect();
    let checks = opts
        .check
        .then(|| check_single(w, source, &lambdas, opts.factor));
    Ok(AnalysisReport {
        word_meta: WordMeta {
            source: source.to_string(),
            length: w.len(),
            alphabet_size: w.alphabet_size(),
        },
        factor: opts.factor.get(),
        runs: run_entries(&rs, &tax),
        lambda_stats: stats,
        bounds,
        checks,
    })
}

fn run_entries(rs: &RunSet, tax: &Taxonomy) -> Vec<RunEntry> {
    rs.iter()
        .map(|r| {
            let generator = tax.record_for(r).map(|g| Generator {
                left: rs.index_of(&g.pair.left).expect("generators are runs"),
                right: rs.index_of(&g.pair.right).expect("generators are runs"),
                alpha: g.alpha,
                sigma: g.pair.sigma,
            });
            RunEntry {
                start: r.start,
                end: r.end,
                period: r.period,
                exponent: r.exponent(),
                class: if generator.is_some() {
                    RunClass::Secondary
                } else {
                    RunClass::Primary
                },
                generator,
            }
        })
        .collect()
}

impl AnalysisReport {
    /// Whether no included check failed.
    pub fn checks_passed(&self) -> bool {
        self.checks.iter().flatten().all(|c| c.passed)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// One row per run:
    /// `start,end,period,exp_num,exp_den,class,gen_left,gen_right,alpha,sigma`.
    /// Generator columns are empty for primary runs.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record([
            "start",
            "end",
            "period",
            "exp_num",
            "exp_den",
            "class",
            "gen_left",
            "gen_right",
            "alpha",
            "sigma",
        ])?;
        for r in &self.runs {
            let g = |f: fn(&Generator) -> usize| {
                r.generator
                    .as_ref()
                    .map(|g| f(g).to_string())
                    .unwrap_or_default()
            };
            wtr.write_record([
                r.start.to_string(),
                r.end.to_string(),
                r.period.to_string(),
                r.exponent.numer().to_string(),
                r.exponent.denom().to_string(),
                r.class.name().to_string(),
                g(|g| g.left),
                g(|g| g.right),
                g(|g| g.alpha),
                g(|g| g.sigma),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let m = &self.word_meta;
        let _ = writeln!(s, "word: {}", m.source);
        let _ = writeln!(
            s,
            "length: {}, alphabet size: {}, factor: {}",
            m.length, m.alphabet_size, self.factor
        );
        let secondary = self
            .runs
            .iter()
            .filter(|r| r.class == RunClass::Secondary)
            .count();
        let _ = writeln!(
            s,
            "runs: {} ({} primary, {secondary} secondary)",
            self.runs.len(),
            self.runs.len() - secondary
        );
        for (k, r) in self.runs.iter().enumerate() {
            let _ = write!(
                s,
                "  #{k:<3} [{}..{}] p={} e={} {}",
                r.start,
                r.end,
                r.period,
                ratio::format(&r.exponent),
                r.class.name()
            );
            if let Some(g) = &r.generator {
                let _ = write!(
                    s,
                    " from (#{}, #{}) alpha={} sigma={}",
                    g.left, g.right, g.alpha, g.sigma
                );
            }
            s.push('\n');
        }
        if !self.lambda_stats.is_empty() {
            let _ = writeln!(s, "lambda  |Rp|  |Rs|  exp        exs        |E'|  clp");
            for st in &self.lambda_stats {
                let _ = writeln!(
                    s,
                    "{:<7} {:<5} {:<5} {:<10} {:<10} {:<5} {}",
                    st.lambda,
                    st.rp_count,
                    st.rs_count,
                    ratio::format(&st.exp_sum),
                    ratio::format(&st.exs_sum),
                    st.eprime_count,
                    st.clp_max
                );
            }
        }
        for b in &self.bounds {
            for c in &b.checks {
                let status = match (c.satisfied, c.vacuous) {
                    (true, true) => "ok (vacuous)",
                    (true, false) => "ok",
                    (false, _) => "VIOLATED",
                };
                let _ = writeln!(
                    s,
                    "bound lambda={} {}: {} vs {} {status}",
                    b.lambda, c.name, c.measured, c.bound
                );
            }
        }
        if let Some(checks) = &self.checks {
            let failed: Vec<&CheckOutcome> = checks.iter().filter(|c| !c.passed).collect();
            let _ = writeln!(s, "checks: {} run, {} failed", checks.len(), failed.len());
            for c in failed {
                let _ = writeln!(
                    s,
                    "  FAIL {}: {}",
                    c.check_id,
                    c.counterexample.as_deref().unwrap_or("")
                );
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{gen_family, Family};

    #[test]
    fn wk4_report() {
        let w = gen_family(Family::Wk, 4).unwrap();
        let rep = analyze(&w, "wk:4", &AnalyzeOptions::default()).unwrap();
        assert_eq!(rep.runs.len(), 6);
        let sec: Vec<&RunEntry> = rep
            .runs
            .iter()
            .filter(|r| r.class == RunClass::Secondary)
            .collect();
        assert_eq!(sec.len(), 1);
        assert_eq!(sec[0].period, 7);
        let g = sec[0].generator.unwrap();
        assert_eq!((g.alpha, g.sigma), (3, 1));
        assert_eq!(rep.runs[g.left].start, 1);
        assert_eq!(rep.runs[g.right].start, 9);
        assert_eq!(rep.lambda_stats.len(), 8);
    }

    #[test]
    fn json_round_trip_and_exact_exponents() {
        let w = Word::from("01011010");
        let opts = AnalyzeOptions {
            check: true,
            ..Default::default()
        };
        let rep = analyze(&w, "01011010", &opts).unwrap();
        assert!(rep.checks_passed());
        let json = rep.to_json().unwrap();
        assert_eq!(AnalysisReport::from_json(&json).unwrap(), rep);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for run in v["runs"].as_array().unwrap() {
            assert!(run["exponent"].as_str().unwrap().contains('/'));
            for key in ["start", "end", "period", "class"] {
                assert!(run.get(key).is_some());
            }
        }
    }

    #[test]
    fn csv_has_fixed_columns() {
        let w = Word::from("01011010");
        let rep = analyze(&w, "01011010", &AnalyzeOptions::default()).unwrap();
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "start,end,period,exp_num,exp_den,class,gen_left,gen_right,alpha,sigma"
        );
        assert_eq!(lines.count(), 4);
    }

    #[test]
    fn square_free_word() {
        let rep = analyze(&Word::from("abc"), "abc", &AnalyzeOptions::default()).unwrap();
        assert!(rep.runs.is_empty());
        assert!(rep
            .lambda_stats
            .iter()
            .all(|s| s.rp_count == 0 && s.eprime_count == 0));
        assert!(rep.to_text().contains("runs: 0"));
    }

    #[test]
    fn char_words_are_supported() {
        let w: Word<char> = Word::new("ééaéé".chars().collect());
        let rep = analyze(&w, "text", &AnalyzeOptions::default()).unwrap();
        assert_eq!(rep.word_meta.length, 5);
        assert_eq!(rep.word_meta.alphabet_size, 2);
        assert_eq!(rep.runs.len(), 2);
    }
}
