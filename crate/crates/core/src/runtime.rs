use alloc::vec::Vec;
use core::time::Duration;

/// Monotonic time source.
///
/// `now` only has to be consistent with itself; the engine only ever looks
/// at differences between two readings.
pub trait Clock: Sync {
    fn now(&self) -> Duration;

    fn elapsed_since(&self, start: Duration) -> Duration {
        self.now().saturating_sub(start)
    }
}

/// A clock that never advances. Timings recorded with it are all zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct NullClock;

impl Clock for NullClock {
    fn now(&self) -> Duration {
        Duration::ZERO
    }
}

/// Runs independent tasks, possibly concurrently.
///
/// Implementations must return results in input order.
pub trait Executor: Sync {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send;
}

/// Runs every task on the calling thread, in order.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        items.into_iter().map(f).collect()
    }
}
