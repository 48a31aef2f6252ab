//! Execution strategy for the data-parallel loops (prime scans, group
//! enumeration, residue sweeps).
//!
//! With the `parallel` feature the work is spread over rayon's pool; without
//! it, or when `Execution::Sequential` is requested explicitly, the same
//! closures run on the calling thread. Every reducer used with these helpers
//! is commutative and associative, so both strategies give identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Execution {
    #[cfg_attr(feature = "parallel", default)]
    Parallel,
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Order-preserving map.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Sum of `f(i)` over `0..n`.
pub fn sum_range<F>(exec: Execution, n: u64, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).sum();
    }
    let _ = exec;
    (0..n).map(f).sum()
}

/// Element-wise sum of the vectors `f(i)` for `i` in `0..n`; every vector has length `len`.
pub fn sum_vectors_range<F>(exec: Execution, n: u64, len: usize, f: F) -> Vec<u64>
where
    F: Fn(u64) -> Vec<u64> + Sync + Send,
{
    let add = |mut acc: Vec<u64>, v: Vec<u64>| {
        for (a, b) in acc.iter_mut().zip(v) {
            *a += b;
        }
        acc
    };
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n)
            .into_par_iter()
            .map(f)
            .reduce(|| vec![0; len], add);
    }
    let _ = exec;
    (0..n).map(f).fold(vec![0; len], add)
}

/// Run `f` inside a pool limited to `jobs` threads (0 = rayon default).
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if jobs > 0 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            return pool.install(f);
        }
    }
    let _ = jobs;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let a = map(Execution::Parallel, &items, |x| x * x);
        let b = map(Execution::Sequential, &items, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(
            sum_range(Execution::Parallel, 1000, |i| i),
            sum_range(Execution::Sequential, 1000, |i| i)
        );
        let v1 = sum_vectors_range(Execution::Parallel, 50, 3, |i| vec![i, 1, i % 2]);
        let v2 = sum_vectors_range(Execution::Sequential, 50, 3, |i| vec![i, 1, i % 2]);
        assert_eq!(v1, v2);
        assert_eq!(v1, vec![1225, 50, 25]);
    }
}
