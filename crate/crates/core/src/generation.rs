//! The generation relation and the primary/secondary split of `R(w)`.
//!
//! A run `r` is generated by a cognate non-separated pair `(r', r'')` of
//! period `p` when `p(r) >= g·p`, `i' < i <= j'` and `i'' <= j < j''`. Such
//! runs are exactly the runs of period `αp + σ(r', r'')` spanning
//! `[i'' - p(r) .. j' + p(r)]` for every integer `α` with
//! `g <= α < (min(i''-i', j''-j') - σ) / p`.
//!
//! [`classify`] decides membership by testing every pair against every run;
//! [`enumerate_generated`] builds the closed form and validates each
//! candidate. The two are compared, never reconciled.

use std::fmt;

use crate::error::{Error, Result};
use crate::runs::{Run, RunSet};
use crate::structure::{cognate_pairs, RunPair};
use crate::word::Word;

/// The `g` in `p(r) >= g·p`. At least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenerationFactor(u32);

impl GenerationFactor {
    pub const DEFAULT: GenerationFactor = GenerationFactor(3);

    pub fn new(g: u32) -> Result<Self> {
        if g < 3 {
            return Err(Error::FactorTooSmall(g));
        }
        Ok(GenerationFactor(g))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for GenerationFactor {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for GenerationFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A secondary run together with its generating pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenerationRecord {
    pub child: Run,
    pub pair: RunPair,
    pub alpha: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Taxonomy {
    pub primary: Vec<Run>,
    pub secondary: Vec<GenerationRecord>,
    pub factor: GenerationFactor,
}

impl Taxonomy {
    pub fn is_primary(&self, r: &Run) -> bool {
        self.primary.binary_search(r).is_ok()
    }

    pub fn record_for(&self, r: &Run) -> Option<&GenerationRecord> {
        self.secondary
            .binary_search_by(|g| g.child.cmp(r))
            .ok()
            .map(|k| &self.secondary[k])
    }

    pub fn secondary_runs(&self) -> impl Iterator<Item = &Run> {
        self.secondary.iter().map(|g| &g.child)
    }
}

pub fn generates(pair: &RunPair, r: &Run, factor: GenerationFactor) -> bool {
    let (l, rt) = (&pair.left, &pair.right);
    r.period >= factor.get() as usize * pair.period
        && l.start < r.start
        && r.start <= l.end
        && rt.start <= r.end
        && r.end < rt.end
}

/// The runs the closed form predicts for `pair`, each validated against `w`.
///
/// A candidate that is not a run of the predicted period, or not generated by
/// `pair`, is returned as [`Error::Verification`] naming the offending `α`.
pub fn enumerate_generated<S: PartialEq>(
    w: &Word<S>,
    pair: &RunPair,
    factor: GenerationFactor,
) -> Result<Vec<GenerationRecord>> {
    let (l, r, p, sigma) = (pair.left, pair.right, pair.period, pair.sigma);
    let span = (r.start - l.start).min(r.end - l.end);
    let mut out = Vec::new();
    let mut alpha = factor.get() as usize;
    // alpha < (span - sigma) / p  <=>  alpha·p + sigma < span
    while alpha * p + sigma < span {
        let period = alpha * p + sigma;
        let child = Run::new(r.start - period, l.end + period, period);
        if !child.is_valid_for(w) || !generates(pair, &child, factor) {
            return Err(Error::verification(
                "generation_closed_form",
                format!(
                    "alpha={alpha}: candidate {child} for pair ({}, {}) is not a generated run",
                    pair.left, pair.right
                ),
            ));
        }
        out.push(GenerationRecord {
            child,
            pair: *pair,
            alpha,
        });
        alpha += 1;
    }
    Ok(out)
}

/// For each run, every pair in `pairs` that generates it.
pub fn generating_pairs<'a>(
    rs: &'a RunSet,
    pairs: &[RunPair],
    factor: GenerationFactor,
) -> Vec<(&'a Run, Vec<RunPair>)> {
    rs.iter()
        .map(|r| {
            let gens = pairs
                .iter()
                .filter(|pair| generates(pair, r, factor))
                .copied()
                .collect();
            (r, gens)
        })
        .collect()
}

/// Splits `rs = R(w)` into primary and secondary runs by testing every pair.
pub fn classify<S: PartialEq>(
    w: &Word<S>,
    rs: &RunSet,
    factor: GenerationFactor,
) -> Result<Taxonomy> {
    let pairs = cognate_pairs(w, rs);
    let mut primary = Vec::new();
    let mut secondary = Vec::new();
    for (r, gens) in generating_pairs(rs, &pairs, factor) {
        match gens.as_slice() {
            [] => primary.push(*r),
            [pair] => {
                let rest = r.period - pair.sigma;
                if r.period < pair.sigma || rest % pair.period != 0 {
                    return Err(Error::verification(
                        "generation_closed_form",
                        format!(
                            "period of {r} is not alpha·{} + {}",
                            pair.period, pair.sigma
                        ),
                    ));
                }
                secondary.push(GenerationRecord {
                    child: *r,
                    pair: *pair,
                    alpha: rest / pair.period,
                });
            }
            many => {
                return Err(Error::verification(
                    "unique_generator",
                    format!("{r} is generated by {} pairs", many.len()),
                ))
            }
        }
    }
    primary.sort();
    secondary.sort();
    Ok(Taxonomy {
        primary,
        secondary,
        factor,
    })
}

/// Secondary runs whose generating pair has `r` on the left.
pub fn generated_from_left(r: &Run, tax: &Taxonomy) -> Vec<Run> {
    tax.secondary
        .iter()
        .filter(|g| g.pair.left == *r)
        .map(|g| g.child)
        .collect()
}
