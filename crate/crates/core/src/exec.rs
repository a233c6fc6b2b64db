//! Data-parallel helpers. With the `parallel` feature off everything runs on the
//! calling thread and `Execution::Parallel` degrades to sequential.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Maps `f` over `items`; output order always matches input order.
pub fn map_ordered<T, U, F>(items: &[T], execution: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Sums per-chunk partial vectors. Chunk boundaries depend only on `chunk_len`
/// and partials are added in chunk order, so the result is bit-identical
/// between sequential and parallel execution.
pub fn chunked_sum<T, F>(items: &[T], chunk_len: usize, width: usize, execution: Execution, f: F) -> Vec<f64>
where
    T: Sync,
    F: Fn(&[T]) -> Vec<f64> + Sync + Send,
{
    let chunks: Vec<&[T]> = items.chunks(chunk_len.max(1)).collect();
    let partials = map_ordered(&chunks, execution, |c| f(c));
    let mut total = vec![0.0; width];
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    total
}
