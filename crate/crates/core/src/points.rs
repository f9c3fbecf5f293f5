//! The lattice of points `(p, j)`, covering, and the weight `ρ(p, j) = 1/p²`.
//!
//! `(p', j')` covers `(p'', j'')` when `p' <= p'' <= 4p'/3` and
//! `j' - 2p'/3 <= j'' <= j'`. The fractions are compared after multiplying
//! through by 3.

use std::collections::{BTreeSet, HashMap};
use std::io;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::generation::Taxonomy;
use crate::runs::Run;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub p: i64,
    pub j: i64,
}

impl Point {
    pub fn new(p: i64, j: i64) -> Self {
        debug_assert!(p >= 1);
        Point { p, j }
    }

    pub fn weight(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.p * self.p))
    }

    /// Membership in `E(w)` for a word of length `n`: `1 <= p <= ⌊2n/3⌋`,
    /// `1 <= j <= n`.
    pub fn in_lattice(&self, n: usize) -> bool {
        let n = n as i64;
        1 <= self.p && 3 * self.p <= 2 * n && 1 <= self.j && self.j <= n
    }
}

/// A finite point set with its exact total weight.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedPointSet {
    pub points: BTreeSet<Point>,
    pub total_weight: BigRational,
}

impl WeightedPointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Writes `p,j,weight_num,weight_den` rows.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["p", "j", "weight_num", "weight_den"])?;
        for pt in &self.points {
            let den = pt.p * pt.p;
            wtr.write_record([
                pt.p.to_string(),
                pt.j.to_string(),
                "1".into(),
                den.to_string(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

impl FromIterator<Point> for WeightedPointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        let points: BTreeSet<Point> = iter.into_iter().collect();
        let mut per_p: Vec<(i64, i64)> = Vec::new();
        for pt in &points {
            match per_p.last_mut() {
                Some((p, c)) if *p == pt.p => *c += 1,
                _ => per_p.push((pt.p, 1)),
            }
        }
        let total_weight = per_p.into_iter().fold(BigRational::zero(), |acc, (p, c)| {
            acc + BigRational::new(BigInt::from(c), BigInt::from(p * p))
        });
        WeightedPointSet {
            points,
            total_weight,
        }
    }
}

pub fn covers(a: Point, b: Point) -> bool {
    b.p >= a.p && 3 * b.p <= 4 * a.p && 3 * b.j >= 3 * a.j - 2 * a.p && b.j <= a.j
}

/// Ranges of `p''` and `j''` covered by `a`, both inclusive.
fn region_bounds(a: Point) -> ((i64, i64), (i64, i64)) {
    ((a.p, 4 * a.p / 3), (a.j - 2 * a.p / 3, a.j))
}

/// `V(a)`, every point covered by `a`.
pub fn covered_region(a: Point) -> WeightedPointSet {
    let ((p_lo, p_hi), (j_lo, j_hi)) = region_bounds(a);
    (p_lo..=p_hi)
        .flat_map(|p| (j_lo..=j_hi).map(move |j| Point::new(p, j)))
        .collect()
}

/// `ρ(V(p, j))`, exactly. Independent of `j`.
pub fn region_weight(p: i64) -> BigRational {
    let ((p_lo, p_hi), (j_lo, j_hi)) = region_bounds(Point::new(p, 0));
    let columns = BigInt::from(j_hi - j_lo + 1);
    let mut sum = BigRational::zero();
    for i in p_lo..=p_hi {
        sum += BigRational::new(BigInt::one(), BigInt::from(i) * BigInt::from(i));
    }
    sum * BigRational::from_integer(columns)
}

/// A lower bound on `ρ(V(p, j))` from `1/i² > 1/i - 1/(i+1)`.
pub fn region_weight_lower_bound(p: i64) -> Ratio<i128> {
    let ((p_lo, p_hi), (j_lo, j_hi)) = region_bounds(Point::new(p, 0));
    let columns = (j_hi - j_lo + 1) as i128;
    let (lo, hi) = (p_lo as i128, p_hi as i128 + 1);
    Ratio::new(columns * (hi - lo), lo * hi)
}

/// Whether `ρ(V(p, j)) > 1/6`, decided exactly: by the telescoping lower
/// bound when it suffices, otherwise by summing.
pub fn region_weight_exceeds_sixth(p: i64) -> bool {
    let sixth = Ratio::new(1i128, 6);
    region_weight_lower_bound(p) > sixth
        || region_weight(p) > BigRational::new(BigInt::one(), BigInt::from(6))
}

/// `P(r)`: the points `(p(r), i + k·p(r) - 1)` for `k >= 2` inside `r`.
pub fn points_of_run(r: &Run) -> WeightedPointSet {
    let p = r.period as i64;
    (2..)
        .map(|k| r.start as i64 + k * p - 1)
        .take_while(|&j| j <= r.end as i64)
        .map(|j| Point::new(p, j))
        .collect()
}

/// `E'_λ(w)`: the union of `P(r)` over primary runs of period at least λ.
/// Two primary runs sharing a point is reported as a verification failure.
pub fn prime_points<S>(_w: &Word<S>, tax: &Taxonomy, lambda: usize) -> Result<WeightedPointSet> {
    let mut seen: HashMap<Point, Run> = HashMap::new();
    for r in tax.primary.iter().filter(|r| r.period >= lambda) {
        for pt in points_of_run(r).points {
            if let Some(other) = seen.insert(pt, *r) {
                return Err(Error::verification(
                    "disjoint_run_points",
                    format!("point ({}, {}) lies in P({other}) and P({r})", pt.p, pt.j),
                ));
            }
        }
    }
    Ok(seen.into_keys().collect())
}

/// Largest number of points of `E'_λ(w)` covering one point of `E(w)`.
pub fn max_cover_multiplicity<S>(w: &Word<S>, tax: &Taxonomy, lambda: usize) -> usize {
    let mut sources: Vec<Point> = tax
        .primary
        .iter()
        .filter(|r| r.period >= lambda)
        .flat_map(|r| points_of_run(r).points)
        .collect();
    sources.sort();
    sources.dedup();
    cover_multiplicity(&sources, w.len())
}

pub(crate) fn cover_multiplicity(sources: &[Point], n: usize) -> usize {
    let mut counts: HashMap<Point, u32> = HashMap::new();
    let mut best = 0;
    for &a in sources {
        let ((p_lo, p_hi), (j_lo, j_hi)) = region_bounds(a);
        for p in p_lo..=p_hi {
            for j in j_lo..=j_hi {
                let b = Point::new(p, j);
                if !b.in_lattice(n) {
                    continue;
                }
                let c = counts.entry(b).or_insert(0);
                *c += 1;
                best = best.max(*c as usize);
            }
        }
    }
    best
}
