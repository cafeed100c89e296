//! Execution policy for independent jobs (restarts, replicates, sweep
//! cells). Results always come back in index order, so the choice of
//! policy never changes an answer.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Rayon pool; `None` uses the global pool, `Some(t)` a dedicated pool of
    /// `t` threads. Falls back to sequential when built without `parallel`.
    #[default]
    Parallel,
    Threads(usize),
}

impl Exec {
    /// `0` means "use the global pool", `1` sequential.
    pub fn from_workers(workers: usize) -> Exec {
        match workers {
            0 => Exec::Parallel,
            1 => Exec::Sequential,
            t => Exec::Threads(t),
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self != Exec::Sequential
    }

    /// `f(0), …, f(len − 1)` in order.
    pub fn map_range<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            match self {
                Exec::Sequential => {}
                Exec::Parallel => return (0..len).into_par_iter().map(f).collect(),
                Exec::Threads(t) => {
                    if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(t).build() {
                        return pool.install(|| (0..len).into_par_iter().map(&f).collect());
                    }
                }
            }
        }
        (0..len).map(f).collect()
    }

    pub fn map_slice<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        self.map_range(items.len(), |i| f(&items[i]))
    }
}
