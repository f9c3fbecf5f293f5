//! Periods, exponents and primitivity.
//!
//! Word-level functions take a [`Factor`] of a [`Word`]; the `*_of` variants
//! work directly on symbol slices and are what the rest of the crate uses in
//! inner loops.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::word::{Factor, Word};

/// Exponents and other per-run ratios. Always in lowest terms.
pub type ExactRational = Ratio<i64>;

/// Failure function: `border[i]` is the length of the longest proper border
/// of `s[..=i]`.
pub fn border_array<S: PartialEq>(s: &[S]) -> Vec<usize> {
    let mut border = vec![0; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = border[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        border[i] = k;
    }
    border
}

pub fn has_period_of<S: PartialEq>(s: &[S], p: usize) -> bool {
    p >= 1 && s.iter().zip(s.iter().skip(p)).all(|(a, b)| a == b)
}

/// Minimal period via the failure function. Returns 0 for an empty slice.
pub fn min_period_of<S: PartialEq>(s: &[S]) -> usize {
    match border_array(s).last() {
        Some(&b) => s.len() - b,
        None => 0,
    }
}

/// Minimal period by trying every shift in turn.
pub fn min_period_scan<S: PartialEq>(s: &[S]) -> usize {
    (1..=s.len()).find(|&p| has_period_of(s, p)).unwrap_or(0)
}

/// Every period of `s` in increasing order, `s.len()` included.
pub fn periods_of<S: PartialEq>(s: &[S]) -> Vec<usize> {
    let border = border_array(s);
    let mut out = Vec::new();
    let mut b = border.last().copied().unwrap_or(0);
    while b > 0 {
        out.push(s.len() - b);
        b = border[b - 1];
    }
    if !s.is_empty() {
        out.push(s.len());
    }
    out
}

pub fn is_primitive_of<S: PartialEq>(s: &[S]) -> bool {
    let p = min_period_of(s);
    !(p < s.len() && s.len().is_multiple_of(p))
}

pub fn has_period<S: PartialEq>(w: &Word<S>, f: Factor, p: usize) -> Result<bool> {
    if p == 0 {
        return Err(Error::InvalidArgument("period must be at least 1".into()));
    }
    Ok(has_period_of(w.slice(f)?, p))
}

pub fn minimal_period<S: PartialEq>(w: &Word<S>, f: Factor) -> Result<usize> {
    Ok(min_period_of(w.slice(f)?))
}

pub fn exponent<S: PartialEq>(w: &Word<S>, f: Factor) -> Result<ExactRational> {
    let s = w.slice(f)?;
    Ok(Ratio::new(s.len() as i64, min_period_of(s) as i64))
}

pub fn is_primitive<S: PartialEq>(w: &Word<S>, f: Factor) -> Result<bool> {
    Ok(is_primitive_of(w.slice(f)?))
}

/// The period promised by the Fine–Wilf theorem for a word of length `len`
/// with periods `p` and `q`, or `None` when `len < p + q`.
pub fn implied_gcd_period(len: usize, p: usize, q: usize) -> Option<usize> {
    (len >= p + q).then(|| p.gcd(&q))
}

/// All primitive squares `w[l..l+2q-1]` as `(l, q)`, sorted. Quadratic scan.
pub fn enumerate_primitive_squares<S: PartialEq>(w: &Word<S>) -> Vec<(usize, usize)> {
    let s = w.symbols();
    let n = s.len();
    let mut out = Vec::new();
    for l in 0..n {
        for q in 1..=(n - l) / 2 {
            if s[l..l + q] == s[l + q..l + 2 * q] && is_primitive_of(&s[l..l + q]) {
                out.push((l + 1, q));
            }
        }
    }
    out
}
