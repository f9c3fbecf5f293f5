//! Suffix array and constant-time longest-common-extension queries.

/// Suffix array by prefix doubling with counting sorts, `O(n log n)`. A
/// proper prefix sorts before its extensions.
pub(crate) fn suffix_array(s: &[u32]) -> Vec<usize> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let mut rank: Vec<usize> = s.iter().map(|&c| c as usize).collect();
    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_unstable_by_key(|&i| rank[i]);
    let mut by_second = Vec::with_capacity(n);
    let mut next = vec![0usize; n];
    let mut count = Vec::new();
    let mut k = 1;
    loop {
        // order by the second half: suffixes too short to have one first
        by_second.clear();
        by_second.extend(n.saturating_sub(k)..n);
        by_second.extend(sa.iter().filter(|&&i| i >= k).map(|&i| i - k));
        // stable counting sort by the first half
        let buckets = rank.iter().copied().max().unwrap_or(0) + 1;
        count.clear();
        count.resize(buckets, 0usize);
        for &r in &rank {
            count[r] += 1;
        }
        let mut total = 0;
        for c in count.iter_mut() {
            let here = *c;
            *c = total;
            total += here;
        }
        for &i in &by_second {
            sa[count[rank[i]]] = i;
            count[rank[i]] += 1;
        }
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        next[sa[0]] = 0;
        for w in 1..n {
            next[sa[w]] = next[sa[w - 1]] + usize::from(key(sa[w - 1]) != key(sa[w]));
        }
        std::mem::swap(&mut rank, &mut next);
        if rank[sa[n - 1]] == n - 1 || k >= n {
            break;
        }
        k *= 2;
    }
    sa
}

pub(crate) fn inverse(sa: &[usize]) -> Vec<usize> {
    let mut isa = vec![0; sa.len()];
    for (r, &i) in sa.iter().enumerate() {
        isa[i] = r;
    }
    isa
}

/// Longest common prefix of suffixes, answered from a sparse table over the
/// Kasai LCP array.
pub(crate) struct Lce {
    isa: Vec<usize>,
    levels: Vec<Vec<u32>>,
}

impl Lce {
    pub(crate) fn new(s: &[u32]) -> Self {
        Self::with_suffix_array(s, &suffix_array(s))
    }

    /// Builds from an already computed suffix array of `s`.
    pub(crate) fn with_suffix_array(s: &[u32], sa: &[usize]) -> Self {
        let n = s.len();
        let isa = inverse(sa);
        // lcp[r] = lcp(sa[r-1], sa[r])
        let mut lcp = vec![0u32; n];
        let mut h = 0usize;
        for i in 0..n {
            if isa[i] > 0 {
                let j = sa[isa[i] - 1];
                while i + h < n && j + h < n && s[i + h] == s[j + h] {
                    h += 1;
                }
                lcp[isa[i]] = h as u32;
                h = h.saturating_sub(1);
            } else {
                h = 0;
            }
        }
        let mut levels = vec![lcp];
        let mut width = 1;
        while 2 * width <= n {
            let prev = levels.last().unwrap();
            let cur: Vec<u32> = (0..=n - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(cur);
            width *= 2;
        }
        Lce { isa, levels }
    }

    /// Rank of the suffix at `i` among all suffixes.
    pub(crate) fn rank(&self) -> &[usize] {
        &self.isa
    }

    /// Length of the longest common prefix of the suffixes at `a` and `b`
    /// (0-based). Positions at or past the end have an empty suffix.
    pub(crate) fn lcp(&self, a: usize, b: usize) -> usize {
        let n = self.isa.len();
        if a >= n || b >= n {
            return 0;
        }
        if a == b {
            return n - a;
        }
        let (lo, hi) = {
            let (x, y) = (self.isa[a], self.isa[b]);
            (x.min(y) + 1, x.max(y))
        };
        let level = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let row = &self.levels[level];
        row[lo].min(row[hi + 1 - (1 << level)]) as usize
    }
}
