//! λ-filtered counts and exponent sums, letter-cover profiles, and the
//! explicit-constant bounds on them.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generation::Taxonomy;
use crate::points::prime_points;
use crate::ratio;
use crate::runs::Run;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaStats {
    pub lambda: usize,
    pub n: usize,
    /// `|Rp_λ(w)|`
    pub rp_count: usize,
    /// `|Rs_λ(w)|`
    pub rs_count: usize,
    #[serde(with = "crate::ratio::text")]
    pub exp_sum: BigRational,
    #[serde(with = "crate::ratio::text")]
    pub exs_sum: BigRational,
    /// `|E'_λ(w)|`
    pub eprime_count: usize,
    /// Entry `i - 1` counts the runs of `Rp_λ(w)` containing `w[i]`.
    pub clp_profile: Vec<usize>,
    pub clp_max: usize,
}

/// Statistics of the primary runs with period at least `lambda` and of the
/// secondary runs they generate. `tax` is expected to use factor 3.
pub fn lambda_stats<S>(w: &Word<S>, tax: &Taxonomy, lambda: usize) -> Result<LambdaStats> {
    if lambda < 1 {
        return Err(Error::InvalidArgument("lambda must be at least 1".into()));
    }
    let n = w.len();
    let rp: Vec<&Run> = tax.primary.iter().filter(|r| r.period >= lambda).collect();
    // pair members share one period, so filtering on it filters both
    let rs: Vec<&Run> = tax
        .secondary
        .iter()
        .filter(|g| {
            g.pair.period >= lambda && tax.is_primary(&g.pair.left) && tax.is_primary(&g.pair.right)
        })
        .map(|g| &g.child)
        .collect();
    let sum = |runs: &[&Run]| {
        runs.iter().fold(BigRational::zero(), |acc, r| {
            acc + ratio::to_big(&r.exponent())
        })
    };

    let mut diff = vec![0i64; n + 1];
    for r in &rp {
        diff[r.start - 1] += 1;
        diff[r.end] -= 1;
    }
    let clp_profile: Vec<usize> = diff[..n]
        .iter()
        .scan(0i64, |acc, d| {
            *acc += d;
            Some(*acc as usize)
        })
        .collect();
    let clp_max = clp_profile.iter().copied().max().unwrap_or(0);

    Ok(LambdaStats {
        lambda,
        n,
        rp_count: rp.len(),
        rs_count: rs.len(),
        exp_sum: sum(&rp),
        exs_sum: sum(&rs),
        eprime_count: prime_points(w, tax, lambda)?.len(),
        clp_profile,
        clp_max,
    })
}

/// One measured quantity against its bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub measured: String,
    pub bound: String,
    pub satisfied: bool,
    /// The strict inequality does not apply (nothing to count) and the
    /// measured value is zero.
    pub vacuous: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub lambda: usize,
    pub n: usize,
    pub checks: Vec<BoundCheck>,
}

impl TheoremReport {
    pub fn all_satisfied(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }
}

/// Compares the statistics against
/// - `|Rp_λ| <= |E'_λ| < 12n/(λ - 1/2)`,
/// - `exp_λ + exs_λ < 6·|E'_λ|` and `exs_λ < 3·|Rs_λ|`,
/// - `clp_λ < 44·ln(n/(λ - 1/2))`.
///
/// Everything except the logarithm is exact.
pub fn theorem_bounds_report(stats: &LambdaStats) -> TheoremReport {
    let (n, lambda) = (stats.n as i64, stats.lambda as i64);
    let mut checks = Vec::new();

    // 12n/(λ - 1/2) = 24n/(2λ - 1)
    let count_bound = Ratio::new(24 * n, 2 * lambda - 1);
    let count_vacuous = n == 0;
    checks.push(BoundCheck {
        name: "count_bound".into(),
        measured: format!("{} <= {}", stats.rp_count, stats.eprime_count),
        bound: ratio::format(&count_bound),
        satisfied: stats.rp_count <= stats.eprime_count
            && (count_vacuous || Ratio::from_integer(stats.eprime_count as i64) < count_bound),
        vacuous: count_vacuous,
    });

    let total = &stats.exp_sum + &stats.exs_sum;
    let exp_bound = BigRational::from_integer(BigInt::from(6 * stats.eprime_count));
    let exp_vacuous = stats.rp_count == 0;
    checks.push(BoundCheck {
        name: "exponent_bound".into(),
        measured: ratio::format(&total),
        bound: ratio::format(&exp_bound),
        satisfied: if exp_vacuous {
            total.is_zero()
        } else {
            total < exp_bound
        },
        vacuous: exp_vacuous,
    });

    let exs_bound = BigRational::from_integer(BigInt::from(3 * stats.rs_count));
    let exs_vacuous = stats.rs_count == 0;
    checks.push(BoundCheck {
        name: "secondary_exponent_bound".into(),
        measured: ratio::format(&stats.exs_sum),
        bound: ratio::format(&exs_bound),
        satisfied: if exs_vacuous {
            stats.exs_sum.is_zero()
        } else {
            stats.exs_sum < exs_bound
        },
        vacuous: exs_vacuous,
    });

    let clp_bound = 44.0 * (stats.n as f64 / (stats.lambda as f64 - 0.5)).ln();
    let clp_vacuous = stats.clp_max == 0;
    checks.push(BoundCheck {
        name: "letter_bound".into(),
        measured: stats.clp_max.to_string(),
        bound: format!("{clp_bound:.6}"),
        satisfied: clp_vacuous || (stats.clp_max as f64) < clp_bound,
        vacuous: clp_vacuous,
    });

    TheoremReport {
        lambda: stats.lambda,
        n: stats.n,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generation::{classify, GenerationFactor};
    use crate::runs::find_runs;
    use crate::word::{gen_family, Family};

    fn tax_of(w: &Word<u8>) -> Taxonomy {
        classify(w, &find_runs(w), GenerationFactor::DEFAULT).unwrap()
    }

    #[test]
    fn wk_examples() {
        let w = gen_family(Family::Wk, 4).unwrap();
        let tax = tax_of(&w);
        let s1 = lambda_stats(&w, &tax, 1).unwrap();
        assert_eq!((s1.rp_count, s1.rs_count), (5, 1));
        assert_eq!(s1.exs_sum, BigRational::new(14.into(), 7.into()));
        let s3 = lambda_stats(&w, &tax, 3).unwrap();
        assert_eq!((s3.rp_count, s3.rs_count), (2, 0));
        assert!(lambda_stats(&w, &tax, 0).is_err());
    }

    #[test]
    fn square_free_is_all_zero() {
        let w = Word::from("abc");
        let tax = tax_of(&w);
        for lambda in 1..=8 {
            let s = lambda_stats(&w, &tax, lambda).unwrap();
            assert_eq!(
                (s.rp_count, s.rs_count, s.eprime_count, s.clp_max),
                (0, 0, 0, 0)
            );
            assert!(s.exp_sum.is_zero() && s.exs_sum.is_zero());
            assert_eq!(s.clp_profile, vec![0, 0, 0]);
            let report = theorem_bounds_report(&s);
            assert!(report.all_satisfied());
        }
    }

    #[test]
    fn count_bound_formula() {
        let w = gen_family(Family::Wk, 4).unwrap();
        let tax = tax_of(&w);
        let s = lambda_stats(&w, &tax, 2).unwrap();
        let report = theorem_bounds_report(&s);
        assert_eq!(report.checks[0].bound, "128/1");
        assert!(report.all_satisfied());
        let s1 = lambda_stats(&w, &tax, 1).unwrap();
        // λ - 1/2 = 1/2
        assert_eq!(theorem_bounds_report(&s1).checks[0].bound, "384/1");
    }

    #[test]
    fn clp_profile_counts_covering_runs() {
        let w = Word::from("aabaab");
        let tax = tax_of(&w);
        let s = lambda_stats(&w, &tax, 1).unwrap();
        // runs: aa at 1..2, aa at 4..5, aabaab p=3
        assert_eq!(s.clp_profile, vec![2, 2, 1, 2, 2, 1]);
        assert_eq!(s.clp_max, 2);
    }
}
