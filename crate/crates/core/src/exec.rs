//! Data-parallel fan-out with a sequential fallback.
//!
//! With the `parallel` feature (default) [`Strategy::Parallel`] maps over a
//! rayon pool; without it every strategy runs sequentially. Output order
//! always matches input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Strategy {
    /// `Parallel` when the crate was built with the `parallel` feature.
    pub const fn default_for_build() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Default for Strategy {
    fn default() -> Self {
        Self::default_for_build()
    }
}

pub fn map_with<T, R, F>(strategy: Strategy, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => items.into_par_iter().map(f).collect(),
        _ => items.into_iter().map(f).collect(),
    }
}

/// [`map_with`] using the build's default strategy.
pub fn map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    map_with(Strategy::default(), items, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..200).collect();
        let seq = map_with(Strategy::Sequential, items.clone(), |x| x * x);
        let par = map_with(Strategy::Parallel, items, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq[199], 199 * 199);
    }
}
