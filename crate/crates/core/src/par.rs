//! Data-parallel helpers. With the `parallel` feature off, every schedule
//! runs sequentially.

/// How independent work items are processed. Output order is the input
/// order in both cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    Sequential,
    #[default]
    Parallel,
}

impl Schedule {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Schedule::Sequential => items.iter().map(f).collect(),
            Schedule::Parallel => par_map(items, f),
        }
    }

    /// Like [`map`](Self::map) over an index range.
    pub fn map_range<R, F>(self, range: std::ops::Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            Schedule::Sequential => range.map(f).collect(),
            Schedule::Parallel => par_map_range(range, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
fn par_map_range<R: Send, F: Fn(usize) -> R + Sync + Send>(
    range: std::ops::Range<usize>,
    f: F,
) -> Vec<R> {
    use rayon::prelude::*;
    range.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map_range<R: Send, F: Fn(usize) -> R + Sync + Send>(
    range: std::ops::Range<usize>,
    f: F,
) -> Vec<R> {
    range.map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = Schedule::Sequential.map(&items, |x| x * x);
        let par = Schedule::Parallel.map(&items, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(
            Schedule::Parallel.map_range(0..50, |i| i + 1),
            (1..51).collect::<Vec<_>>()
        );
    }
}
