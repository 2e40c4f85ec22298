//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] fans work out
//! over rayon's pool; without it every call runs sequentially. Results are
//! always returned in input order, so output is identical either way.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

static DEFAULT: AtomicU8 = AtomicU8::new(if cfg!(feature = "parallel") { 1 } else { 0 });

impl Execution {
    /// Process-wide default used by the library's internal loops.
    pub fn current() -> Execution {
        if DEFAULT.load(Ordering::Relaxed) == 1 {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }

    pub fn set_default(mode: Execution) {
        DEFAULT.store((mode == Execution::Parallel) as u8, Ordering::Relaxed);
    }

    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Order-preserving map.
pub fn map<T, R, F>(mode: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Order-preserving fallible map; returns the first error in input order.
pub fn try_map<T, R, E, F>(mode: Execution, items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(mode, items, f).into_iter().collect()
}

/// `mode`, downgraded to sequential when already on a pool thread. Used
/// inside cache initializers: a worker that blocks on a pending cache entry
/// must not be able to steal the task that would fill it.
pub fn outermost(mode: Execution) -> Execution {
    #[cfg(feature = "parallel")]
    if rayon::current_thread_index().is_some() {
        return Execution::Sequential;
    }
    mode
}

/// Write-once concurrent map: each key is computed at most once.
pub struct OnceMap<K, V> {
    inner: Mutex<HashMap<K, Arc<OnceLock<V>>>>,
}

impl<K: Eq + Hash + Clone, V: Clone> OnceMap<K, V> {
    pub fn new() -> Self {
        OnceMap {
            inner: Mutex::new(HashMap::new()),
        }
    }

    pub fn get_or_init(&self, key: &K, init: impl FnOnce() -> V) -> V {
        let cell = self
            .inner
            .lock()
            .expect("cache poisoned")
            .entry(key.clone())
            .or_default()
            .clone();
        cell.get_or_init(init).clone()
    }
}

impl<K: Eq + Hash + Clone, V: Clone> Default for OnceMap<K, V> {
    fn default() -> Self {
        Self::new()
    }
}
