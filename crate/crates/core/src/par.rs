//! Scoped threads where the target has them, inline execution elsewhere.

/// Runs `f` on `n` workers and collects their results.
#[cfg(not(target_arch = "wasm32"))]
pub(crate) fn workers<R: Send>(n: usize, f: impl Fn() -> R + Sync) -> Vec<R> {
    std::thread::scope(|sc| {
        let hs: Vec<_> = (0..n.max(1)).map(|_| sc.spawn(&f)).collect();
        hs.into_iter().map(|h| h.join().unwrap_or_else(|e| std::panic::resume_unwind(e))).collect()
    })
}

#[cfg(target_arch = "wasm32")]
pub(crate) fn workers<R: Send>(_n: usize, f: impl Fn() -> R + Sync) -> Vec<R> {
    vec![f()]
}

/// `items.iter().map(f)`, one thread per item.
#[cfg(not(target_arch = "wasm32"))]
pub(crate) fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    std::thread::scope(|sc| {
        let f = &f;
        let hs: Vec<_> = items.iter().map(|it| sc.spawn(move || f(it))).collect();
        hs.into_iter().map(|h| h.join().unwrap_or_else(|e| std::panic::resume_unwind(e))).collect()
    })
}

#[cfg(target_arch = "wasm32")]
pub(crate) fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    items.iter().map(f).collect()
}

pub(crate) fn available() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).min(16)
}
