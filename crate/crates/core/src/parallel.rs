//! Order-preserving map with an optional rayon backend.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Execution {
    Sequential,
    /// Data-parallel; `jobs = None` uses the global pool. Falls back to
    /// sequential when built without the `parallel` feature.
    #[default]
    Parallel,
    ParallelJobs(usize),
}

impl Execution {
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            Some(1) => Execution::Sequential,
            Some(n) if n > 1 => Execution::ParallelJobs(n),
            _ => Execution::Parallel,
        }
    }
}

/// `items.iter().map(f)` collected in input order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        Execution::Parallel => par_map(items, f, None),
        Execution::ParallelJobs(n) => par_map(items, f, Some(n)),
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F, jobs: Option<usize>) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match jobs {
        None => items.par_iter().map(f).collect(),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
            Err(_) => items.par_iter().map(f).collect(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F, _jobs: Option<usize>) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u64> = (0..1000).collect();
        let seq = map(Execution::Sequential, &v, |x| x * x);
        assert_eq!(map(Execution::Parallel, &v, |x| x * x), seq);
        assert_eq!(map(Execution::ParallelJobs(3), &v, |x| x * x), seq);
    }

    #[test]
    fn jobs_mapping() {
        assert_eq!(Execution::from_jobs(Some(1)), Execution::Sequential);
        assert_eq!(Execution::from_jobs(None), Execution::Parallel);
        assert_eq!(Execution::from_jobs(Some(4)), Execution::ParallelJobs(4));
    }
}
