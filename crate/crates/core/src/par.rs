//! Data-parallel helpers. With the `parallel` feature (default) the hot scans
//! run on rayon; without it they fall back to the sequential loops below.
//! The `_seq` variants are always available so benchmarks can compare.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sum `f(i)` over `0..n`.
pub fn index_sum<F>(n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        index_sum_seq(n, f)
    }
}

pub fn index_sum_seq<F>(n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    (0..n).map(f).sum()
}

/// Map `f` over `0..n`, preserving index order.
pub fn index_map<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        index_map_seq(n, f)
    }
}

pub fn index_map_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Fold `0..n` into an accumulator vector of length `len`; `f` adds the
/// contribution of index `i` into the accumulator. Partial accumulators are
/// combined by elementwise addition, so `f` must be additive.
pub fn index_fold_vec<F>(n: usize, len: usize, f: F) -> Vec<i64>
where
    F: Fn(&mut [i64], usize) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .fold(
                || vec![0i64; len],
                |mut acc, i| {
                    f(&mut acc, i);
                    acc
                },
            )
            .reduce(
                || vec![0i64; len],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    }
    #[cfg(not(feature = "parallel"))]
    {
        index_fold_vec_seq(n, len, f)
    }
}

pub fn index_fold_vec_seq<F>(n: usize, len: usize, f: F) -> Vec<i64>
where
    F: Fn(&mut [i64], usize) + Sync + Send,
{
    let mut acc = vec![0i64; len];
    for i in 0..n {
        f(&mut acc, i);
    }
    acc
}
