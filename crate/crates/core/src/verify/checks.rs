//! Per-word checks. Each check returns `Err(detail)` describing the first
//! counterexample it finds.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use num_rational::Ratio;

use crate::generation::{
    classify, enumerate_generated, generated_from_left, generates, generating_pairs,
    GenerationFactor, Taxonomy,
};
use crate::periodicity::{
    enumerate_primitive_squares, has_period_of, implied_gcd_period, is_primitive_of, periods_of,
};
use crate::points::{cover_multiplicity, points_of_run, Point};
use crate::runs::{find_runs, find_runs_oracle, Run, RunSet};
use crate::stats::{lambda_stats, theorem_bounds_report};
use crate::structure::{are_non_separated, cognate_pairs, sigma_residues, RunPair};
use crate::word::Word;

use super::{CheckId, CheckOutcome};

type Check = std::result::Result<(), String>;

/// Words up to this length also get the all-factors periodicity checks.
const ALL_FACTORS_MAX_LEN: usize = 16;

struct Context<'a, S> {
    w: &'a Word<S>,
    rs: RunSet,
    pairs: Vec<RunPair>,
    squares: Vec<(usize, usize)>,
}

/// Runs every check on one word and returns one outcome per check.
pub fn check_word<S: PartialEq>(
    w: &Word<S>,
    label: &str,
    lambdas: &[usize],
    factor: GenerationFactor,
    wk: Option<usize>,
) -> Vec<CheckOutcome> {
    let rs = find_runs(w);
    let oracle = find_runs_oracle(w);
    let pairs = cognate_pairs(w, &rs);
    let squares = enumerate_primitive_squares(w);
    let cx = Context {
        w,
        rs,
        pairs,
        squares,
    };

    let mut results: Vec<(CheckId, Check)> = vec![
        (CheckId::RunsOracle, runs_oracle(&cx, &oracle)),
        (CheckId::RunInvariants, run_invariants(&cx)),
        (CheckId::GcdPeriod, gcd_period(&cx)),
        (CheckId::PeriodDivisibility, period_divisibility(&cx)),
        (CheckId::OverlapMerge, overlap_merge(&cx)),
        (CheckId::SamePeriodOverlap, same_period_overlap(&cx)),
        (CheckId::NoRunBetween, no_run_between(&cx)),
        (CheckId::SquareContainment, square_containment(&cx)),
        (CheckId::CyclicRootPrimitivity, cyclic_root_primitivity(&cx)),
        (CheckId::SigmaNonzero, sigma_nonzero(&cx)),
        (CheckId::SigmaIndependence, sigma_independence(&cx)),
        (CheckId::PairChain, pair_chain(&cx)),
        (CheckId::LongSquareCentre, long_square_centre(&cx)),
        (CheckId::UniqueGenerator, unique_generator(&cx, factor)),
        (
            CheckId::GenerationClosedForm,
            generation_closed_form(&cx, factor),
        ),
    ];

    let tax = classify(w, &cx.rs, factor);
    let base = if factor == GenerationFactor::DEFAULT {
        tax.clone()
    } else {
        classify(w, &cx.rs, GenerationFactor::DEFAULT)
    };
    match (&tax, &base) {
        (Ok(tax), Ok(base)) => {
            results.push((CheckId::GeneratorExponents, generator_exponents(tax)));
            results.push((
                CheckId::LeftGenerationCount,
                left_generation_count(&cx, tax),
            ));
            results.push((CheckId::Hull, hull(tax)));
            results.push((CheckId::FactorMonotone, factor_monotone(&cx, tax)));
            results.push((CheckId::DisjointRunPoints, disjoint_run_points(&cx)));
            results.push((CheckId::RunPoints, run_points(&cx)));
            results.push((CheckId::EqualPeriodCover, equal_period_cover(base)));
            results.push((
                CheckId::CoverMultiplicity,
                cover_multiplicity_cap(&cx, base, lambdas),
            ));
            results.push((CheckId::LatticeContainment, lattice_containment(&cx, base)));
            let (count, exponent, letter) = density_bounds(&cx, base, lambdas);
            results.push((CheckId::CountBound, count));
            results.push((CheckId::ExponentBound, exponent));
            results.push((CheckId::LetterBound, letter));
        }
        (Err(e), _) | (_, Err(e)) => {
            // everything downstream of the taxonomy is unverifiable
            let detail = format!("classification failed: {e}");
            for id in [
                CheckId::GeneratorExponents,
                CheckId::LeftGenerationCount,
                CheckId::Hull,
                CheckId::FactorMonotone,
                CheckId::EqualPeriodCover,
                CheckId::CoverMultiplicity,
                CheckId::LatticeContainment,
                CheckId::CountBound,
                CheckId::ExponentBound,
                CheckId::LetterBound,
            ] {
                results.push((id, Err(detail.clone())));
            }
            results.push((CheckId::DisjointRunPoints, disjoint_run_points(&cx)));
            results.push((CheckId::RunPoints, run_points(&cx)));
        }
    }
    if let Some(k) = wk.filter(|&k| k >= 2) {
        let check = match &tax {
            Ok(tax) if factor == GenerationFactor::DEFAULT => wk_structure(&cx, tax, k),
            Ok(_) => base
                .as_ref()
                .map_err(|e| e.to_string())
                .and_then(|b| wk_structure(&cx, b, k)),
            Err(e) => Err(e.to_string()),
        };
        results.push((CheckId::WkStructure, check));
    }

    let length = w.len();
    let mut out: Vec<CheckOutcome> = results
        .into_iter()
        .map(|(check_id, res)| CheckOutcome {
            check_id,
            word: label.to_string(),
            length,
            passed: res.is_ok(),
            counterexample: res.err(),
        })
        .collect();
    out.sort_by_key(|o| o.check_id);
    out
}

fn runs_oracle<S>(cx: &Context<S>, oracle: &RunSet) -> Check {
    if cx.rs == *oracle {
        return Ok(());
    }
    let fast: BTreeSet<_> = cx.rs.iter().collect();
    let slow: BTreeSet<_> = oracle.iter().collect();
    let missing: Vec<String> = slow.difference(&fast).map(|r| r.to_string()).collect();
    let extra: Vec<String> = fast.difference(&slow).map(|r| r.to_string()).collect();
    Err(format!("missing {missing:?}, extra {extra:?}"))
}

fn run_invariants<S: PartialEq>(cx: &Context<S>) -> Check {
    match cx.rs.iter().find(|r| !r.is_valid_for(cx.w)) {
        Some(r) => Err(format!("{r} violates the run invariants")),
        None => Ok(()),
    }
}

/// The slices the periodicity checks look at: the whole word and every run,
/// plus every factor on short words.
fn factor_slices<'a, S>(cx: &Context<'a, S>) -> Vec<(usize, usize)> {
    let n = cx.w.len();
    let mut out: Vec<(usize, usize)> = Vec::new();
    if n <= ALL_FACTORS_MAX_LEN {
        for i in 1..=n {
            for j in i..=n {
                out.push((i, j));
            }
        }
    } else {
        if n > 0 {
            out.push((1, n));
        }
        out.extend(cx.rs.iter().map(|r| (r.start, r.end)));
    }
    out
}

fn slice<S>(w: &Word<S>, (i, j): (usize, usize)) -> &[S] {
    &w.symbols()[i - 1..j]
}

fn gcd_period<S: PartialEq>(cx: &Context<S>) -> Check {
    for f in factor_slices(cx) {
        let s = slice(cx.w, f);
        let ps = periods_of(s);
        let mut memo: HashMap<usize, bool> = HashMap::new();
        for (a, &p) in ps.iter().enumerate() {
            for &q in &ps[a..] {
                let Some(g) = implied_gcd_period(s.len(), p, q) else {
                    break;
                };
                if !*memo.entry(g).or_insert_with(|| has_period_of(s, g)) {
                    return Err(format!(
                        "w[{}..{}] has periods {p}, {q} but not {g}",
                        f.0, f.1
                    ));
                }
            }
        }
    }
    Ok(())
}

fn period_divisibility<S: PartialEq>(cx: &Context<S>) -> Check {
    for f in factor_slices(cx) {
        let s = slice(cx.w, f);
        let ps = periods_of(s);
        let minimal = ps.first().copied().unwrap_or(0);
        if let Some(q) = ps.iter().find(|&&q| s.len() >= 2 * q && q % minimal != 0) {
            return Err(format!(
                "w[{}..{}] has period {q} not divisible by {minimal}",
                f.0, f.1
            ));
        }
    }
    Ok(())
}

fn overlap_merge<S: PartialEq>(cx: &Context<S>) -> Check {
    let runs = cx.rs.runs();
    let periods: Vec<Vec<usize>> = runs
        .iter()
        .map(|r| periods_of(slice(cx.w, (r.start, r.end))))
        .collect();
    for (a, ra) in runs.iter().enumerate() {
        for (b, rb) in runs.iter().enumerate().skip(a + 1) {
            let overlap = ra.overlap(rb);
            if overlap == 0 {
                continue;
            }
            let union = (ra.start.min(rb.start), ra.end.max(rb.end));
            for &q in periods[a].iter().filter(|q| periods[b].contains(q)) {
                if overlap >= q && !has_period_of(slice(cx.w, union), q) {
                    return Err(format!(
                        "{ra} and {rb} overlap by {overlap} but the union lacks period {q}"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn same_period_groups(rs: &RunSet) -> Vec<Vec<Run>> {
    let mut groups: HashMap<usize, Vec<Run>> = HashMap::new();
    for r in rs {
        groups.entry(r.period).or_default().push(*r);
    }
    let mut out: Vec<Vec<Run>> = groups.into_values().collect();
    for g in &mut out {
        g.sort_by_key(|r| r.start);
    }
    out.sort_by_key(|g| g[0].period);
    out
}

fn same_period_overlap<S>(cx: &Context<S>) -> Check {
    for g in same_period_groups(&cx.rs) {
        for (k, a) in g.iter().enumerate() {
            for b in &g[k + 1..] {
                if are_non_separated(a, b) && a.overlap(b) >= a.period {
                    return Err(format!("{a} and {b} overlap by {}", a.overlap(b)));
                }
            }
        }
    }
    Ok(())
}

fn no_run_between<S>(cx: &Context<S>) -> Check {
    for g in same_period_groups(&cx.rs) {
        for (k, a) in g.iter().enumerate() {
            for c in g.iter().skip(k + 2) {
                if are_non_separated(a, c) {
                    return Err(format!(
                        "{a} and {c} are non-separated with a run between them"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn square_containment<S>(cx: &Context<S>) -> Check {
    for &(l, q) in &cx.squares {
        let hosts = cx
            .rs
            .iter()
            .filter(|r| r.period == q && r.start <= l && l + 2 * q - 1 <= r.end)
            .count();
        if hosts != 1 {
            return Err(format!(
                "square ({l}, {q}) lies in {hosts} runs of period {q}"
            ));
        }
    }
    Ok(())
}

fn cyclic_root_primitivity<S: PartialEq>(cx: &Context<S>) -> Check {
    for r in &cx.rs {
        // roots repeat with period p, one period of starts covers them all
        for s in r.start..r.start + r.period {
            if !is_primitive_of(slice(cx.w, (s, s + r.period - 1))) {
                return Err(format!("root at {s} of {r} is not primitive"));
            }
        }
    }
    Ok(())
}

fn sigma_nonzero<S>(cx: &Context<S>) -> Check {
    match cx.pairs.iter().find(|p| p.sigma == 0) {
        Some(p) => Err(format!("sigma({}, {}) = 0", p.left, p.right)),
        None => Ok(()),
    }
}

fn sigma_independence<S: PartialEq>(cx: &Context<S>) -> Check {
    for p in &cx.pairs {
        let residues = sigma_residues(cx.w, &p.left, &p.right);
        if residues.len() != 1 || !residues.contains(&p.sigma) {
            return Err(format!(
                "pair ({}, {}) has residues {residues:?}, sigma {}",
                p.left, p.right, p.sigma
            ));
        }
    }
    Ok(())
}

fn pair_chain<S>(cx: &Context<S>) -> Check {
    match cx.pairs.iter().find(|p| !p.chain_holds()) {
        Some(p) => Err(format!("chain fails for ({}, {})", p.left, p.right)),
        None => Ok(()),
    }
}

fn long_square_centre<S>(cx: &Context<S>) -> Check {
    for pair in &cx.pairs {
        let (l, r, p) = (pair.left, pair.right, pair.period);
        for &(at, q) in &cx.squares {
            if q >= 2 * p && at >= l.start && at + 2 * q - 1 <= r.end {
                let mid = at + q;
                if !(r.start <= mid && mid <= l.end + 1) {
                    return Err(format!(
                        "square ({at}, {q}) in pair ({l}, {r}) has centre {mid}"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn unique_generator<S>(cx: &Context<S>, factor: GenerationFactor) -> Check {
    for (r, gens) in generating_pairs(&cx.rs, &cx.pairs, factor) {
        if gens.len() > 1 {
            return Err(format!("{r} is generated by {} pairs", gens.len()));
        }
    }
    Ok(())
}

fn generation_closed_form<S: PartialEq>(cx: &Context<S>, factor: GenerationFactor) -> Check {
    for pair in &cx.pairs {
        let predicted: BTreeSet<Run> = enumerate_generated(cx.w, pair, factor)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|g| g.child)
            .collect();
        let actual: BTreeSet<Run> = cx
            .rs
            .iter()
            .filter(|r| generates(pair, r, factor))
            .copied()
            .collect();
        if predicted != actual {
            return Err(format!(
                "pair ({}, {}): closed form {:?} vs generated {:?}",
                pair.left,
                pair.right,
                predicted.iter().map(Run::to_string).collect::<Vec<_>>(),
                actual.iter().map(Run::to_string).collect::<Vec<_>>()
            ));
        }
    }
    Ok(())
}

fn generator_exponents(tax: &Taxonomy) -> Check {
    let seven_thirds = Ratio::new(7, 3);
    for g in &tax.secondary {
        for member in [g.pair.left, g.pair.right] {
            if !tax.is_primary(&member) {
                return Err(format!("generator {member} of {} is secondary", g.child));
            }
            if member.exponent() <= seven_thirds {
                return Err(format!(
                    "generator {member} has exponent {}",
                    member.exponent()
                ));
            }
        }
        if g.child.exponent() >= seven_thirds {
            return Err(format!(
                "secondary {} has exponent {}",
                g.child,
                g.child.exponent()
            ));
        }
    }
    Ok(())
}

/// `|{α ∈ ℤ : 3 <= α < len/p}|`
fn alpha_count(r: &Run) -> usize {
    Integer::div_ceil(&r.len(), &r.period).saturating_sub(3)
}

fn left_generation_count<S>(cx: &Context<S>, tax: &Taxonomy) -> Check {
    for r in &cx.rs {
        let children = generated_from_left(r, tax).len();
        if children > alpha_count(r) {
            return Err(format!(
                "{r} generates {children} runs from the left, bound {}",
                alpha_count(r)
            ));
        }
    }
    Ok(())
}

fn hull(tax: &Taxonomy) -> Check {
    for g in &tax.secondary {
        if !(g.pair.left.start < g.child.start && g.child.end < g.pair.right.end) {
            return Err(format!("{} leaves the hull of its pair", g.child));
        }
    }
    Ok(())
}

fn factor_monotone<S: PartialEq>(cx: &Context<S>, tax: &Taxonomy) -> Check {
    let next = GenerationFactor::new(tax.factor.get() + 1).expect("factor grows");
    let bigger = classify(cx.w, &cx.rs, next).map_err(|e| e.to_string())?;
    let extra = bigger
        .secondary_runs()
        .find(|r| tax.record_for(r).is_none())
        .copied();
    match extra {
        Some(r) => Err(format!(
            "{r} is secondary for factor {next} but not {}",
            tax.factor
        )),
        None => Ok(()),
    }
}

fn disjoint_run_points<S>(cx: &Context<S>) -> Check {
    let mut owner: HashMap<Point, Run> = HashMap::new();
    for r in &cx.rs {
        for pt in points_of_run(r).points {
            if let Some(other) = owner.insert(pt, *r) {
                return Err(format!("({}, {}) is in P({other}) and P({r})", pt.p, pt.j));
            }
        }
    }
    Ok(())
}

fn run_points<S>(cx: &Context<S>) -> Check {
    for r in &cx.rs {
        let expected = r.len() / r.period - 1;
        let got = points_of_run(r).len();
        if got != expected || got == 0 {
            return Err(format!("|P({r})| = {got}, expected {expected}"));
        }
    }
    Ok(())
}

fn eprime(tax: &Taxonomy, lambda: usize) -> Vec<Point> {
    let mut pts: Vec<Point> = tax
        .primary
        .iter()
        .filter(|r| r.period >= lambda)
        .flat_map(|r| points_of_run(r).points)
        .collect();
    pts.sort();
    pts
}

fn equal_period_cover(tax: &Taxonomy) -> Check {
    let pts = eprime(tax, 1);
    for pair in pts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        // same p: the covered j-ranges [j - ⌊2p/3⌋, j] must be disjoint
        if a.p == b.p && b.j - 2 * b.p / 3 <= a.j {
            return Err(format!(
                "({}, {}) and ({}, {}) cover a common point",
                a.p, a.j, b.p, b.j
            ));
        }
    }
    Ok(())
}

fn cover_multiplicity_cap<S>(cx: &Context<S>, tax: &Taxonomy, lambdas: &[usize]) -> Check {
    for &lambda in lambdas {
        let m = cover_multiplicity(&eprime(tax, lambda), cx.w.len());
        if m > 2 {
            return Err(format!("lambda={lambda}: a point is covered {m} times"));
        }
    }
    Ok(())
}

fn lattice_containment<S>(cx: &Context<S>, tax: &Taxonomy) -> Check {
    let n = cx.w.len();
    for a in eprime(tax, 1) {
        let corner_lo = Point::new(4 * a.p / 3, a.j - 2 * a.p / 3);
        if !a.in_lattice(n) || !corner_lo.in_lattice(n) {
            return Err(format!("V({}, {}) leaves E(w)", a.p, a.j));
        }
    }
    Ok(())
}

fn density_bounds<S>(cx: &Context<S>, tax: &Taxonomy, lambdas: &[usize]) -> (Check, Check, Check) {
    let mut results = [Ok(()), Ok(()), Ok(())];
    for &lambda in lambdas {
        let stats = match lambda_stats(cx.w, tax, lambda) {
            Ok(s) => s,
            Err(e) => {
                let detail = format!("lambda={lambda}: {e}");
                return (Err(detail.clone()), Err(detail.clone()), Err(detail));
            }
        };
        let report = theorem_bounds_report(&stats);
        for c in &report.checks {
            let slot = match c.name.as_str() {
                "count_bound" => 0,
                "exponent_bound" | "secondary_exponent_bound" => 1,
                _ => 2,
            };
            if !c.satisfied && results[slot].is_ok() {
                results[slot] = Err(format!(
                    "lambda={lambda}: {} measured {} against {}",
                    c.name, c.measured, c.bound
                ));
            }
        }
    }
    let [a, b, c] = results;
    (a, b, c)
}

fn wk_structure<S>(cx: &Context<S>, tax: &Taxonomy, k: usize) -> Check {
    if cx.rs.len() != k + 2 {
        return Err(format!("|R(w_{k})| = {}, expected {}", cx.rs.len(), k + 2));
    }
    let middle = cx.rs.iter().filter(|r| r.contains_position(2 * k)).count();
    if middle != k + 1 {
        return Err(format!(
            "position {} lies in {middle} runs, expected {}",
            2 * k,
            k + 1
        ));
    }
    let expected: Vec<Run> = (3..k)
        .map(|alpha| {
            let p = 2 * alpha + 1;
            Run::new(2 * k + 1 - p, 2 * k + p, p)
        })
        .collect();
    let mut got: Vec<Run> = tax.secondary_runs().copied().collect();
    got.sort_by_key(|r| r.period);
    if got != expected {
        return Err(format!("secondary runs {got:?}, expected {expected:?}"));
    }
    let left = Run::new(1, 2 * k, 2);
    let right = Run::new(2 * k + 1, 4 * k, 2);
    for g in &tax.secondary {
        if g.pair.left != left || g.pair.right != right || g.pair.sigma != 1 {
            return Err(format!(
                "{} has pair ({}, {}) sigma {}",
                g.child, g.pair.left, g.pair.right, g.pair.sigma
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{gen_family, Family};

    #[test]
    fn alpha_count_values() {
        assert_eq!(alpha_count(&Run::new(1, 4, 2)), 0); // e = 2
        assert_eq!(alpha_count(&Run::new(1, 6, 2)), 0); // e = 3
        assert_eq!(alpha_count(&Run::new(1, 7, 2)), 1); // e = 7/2
        assert_eq!(alpha_count(&Run::new(1, 20, 2)), 7); // e = 10
    }

    #[test]
    fn wk_words_pass_everything() {
        for k in 2..=12 {
            let w = gen_family(Family::Wk, k as i64).unwrap();
            let out = check_word(
                &w,
                &w.to_string(),
                &[1, 2, 3, 4, 5, 6, 7, 8],
                GenerationFactor::DEFAULT,
                Some(k),
            );
            for o in &out {
                assert!(o.passed, "k={k}: {:?}", o);
            }
            assert!(out.iter().any(|o| o.check_id == CheckId::WkStructure));
        }
    }

    #[test]
    fn broken_run_set_is_reported() {
        let w = Word::from("aabaab");
        let mut cx = Context {
            w: &w,
            rs: find_runs(&w),
            pairs: Vec::new(),
            squares: Vec::new(),
        };
        let truth = find_runs_oracle(&w);
        assert!(runs_oracle(&cx, &truth).is_ok());
        cx.rs = RunSet::from_runs(vec![Run::new(1, 2, 1)], w.len());
        let err = runs_oracle(&cx, &truth).unwrap_err();
        assert!(err.contains("missing"));
        cx.rs = RunSet::from_runs(vec![Run::new(1, 3, 1)], w.len());
        assert!(run_invariants(&cx).is_err());
    }
}
