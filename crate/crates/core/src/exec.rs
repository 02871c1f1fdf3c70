//! Trial scheduling. Results always come back in index order, so any
//! reduction over them is independent of the worker count.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon work-stealing; `workers: None` uses the global pool. Without the
    /// `parallel` feature this runs sequentially.
    #[default]
    Parallel,
    ParallelWith {
        workers: usize,
    },
}

impl Execution {
    /// `None` means the default pool; `Some(1)` means sequential.
    pub fn from_workers(workers: Option<usize>) -> Self {
        match workers {
            None => Execution::Parallel,
            Some(0) | Some(1) => Execution::Sequential,
            Some(w) => Execution::ParallelWith { workers: w },
        }
    }

    /// Evaluates `f(0), …, f(count-1)` and returns them in order.
    pub fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match *self {
            Execution::Sequential => (0..count).map(f).collect(),
            Execution::Parallel => par_map(count, f),
            Execution::ParallelWith { workers } => par_map_with(workers, count, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
fn par_map_with<T, F>(workers: usize, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| par_map(count, f)),
        Err(_) => par_map(count, f),
    }
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map_with<T, F>(_workers: usize, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    par_map(count, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let expected: Vec<usize> = (0..1000).map(|i| i * i).collect();
        for exec in [
            Execution::Sequential,
            Execution::Parallel,
            Execution::ParallelWith { workers: 3 },
        ] {
            assert_eq!(exec.map(1000, |i| i * i), expected);
        }
    }

    #[test]
    fn worker_counts() {
        assert_eq!(Execution::from_workers(Some(1)), Execution::Sequential);
        assert_eq!(Execution::from_workers(None), Execution::Parallel);
        assert_eq!(
            Execution::from_workers(Some(4)),
            Execution::ParallelWith { workers: 4 }
        );
    }
}
