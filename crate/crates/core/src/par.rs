//! Thin data-parallel layer: rayon when the `parallel` feature is on, plain loops otherwise.

/// Runs both closures, potentially in parallel.
#[cfg(feature = "parallel")]
pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    rayon::join(a, b)
}

#[cfg(not(feature = "parallel"))]
pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    (a(), b())
}

/// Order-preserving map over a slice.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Runs `f` on a pool with `jobs` workers (`None`: rayon's default).
#[cfg(feature = "parallel")]
pub fn with_jobs<R, F>(jobs: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match jobs {
        Some(j) => {
            rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build().expect("thread pool").install(f)
        }
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_jobs<R, F>(_jobs: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    f()
}

/// Like [`with_jobs`], but every worker (and the calling context) gets a stack of at least
/// `stack_bytes`, for deeply recursive work.
#[cfg(feature = "parallel")]
pub fn with_stack<R, F>(jobs: Option<usize>, stack_bytes: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    let mut builder = rayon::ThreadPoolBuilder::new().stack_size(stack_bytes);
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    builder.build().expect("thread pool").install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn with_stack<R, F>(_jobs: Option<usize>, stack_bytes: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(stack_bytes)
            .spawn_scoped(scope, f)
            .expect("worker thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

/// Whether work actually runs on more than one thread.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
