//! Index-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it everything runs on the calling thread. Results are always
//! returned in index order, so outputs do not depend on the schedule.

/// Evaluates `f(i)` for `i in 0..n` and collects the results in order.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        seq::map_range(n, f)
    }
}

/// Sum of `f(i)` over `i in 0..n`.
pub fn sum_range<F>(n: u64, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        seq::sum_range(n, f)
    }
}

/// Smallest `i in 0..n` with `pred(i)`.
pub fn find_first<F>(n: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().find_first(|&i| pred(i))
    }
    #[cfg(not(feature = "parallel"))]
    {
        seq::find_first(n, pred)
    }
}

/// Whether the parallel backend is compiled in.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Sequential versions, always available (used by the benchmarks).
pub mod seq {
    pub fn map_range<T, F: Fn(usize) -> T>(n: usize, f: F) -> Vec<T> {
        (0..n).map(f).collect()
    }

    pub fn sum_range<F: Fn(u64) -> u64>(n: u64, f: F) -> u64 {
        (0..n).map(f).sum()
    }

    pub fn find_first<F: Fn(u64) -> bool>(n: u64, pred: F) -> Option<u64> {
        (0..n).find(|&i| pred(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let f = |i: usize| (i * i) % 7;
        assert_eq!(map_range(1000, f), seq::map_range(1000, f));
        assert_eq!(sum_range(1000, |i| i % 5), seq::sum_range(1000, |i| i % 5));
        assert_eq!(find_first(1000, |i| i > 10 && i % 97 == 0), Some(97));
        assert_eq!(find_first(10, |_| false), None);
    }
}
