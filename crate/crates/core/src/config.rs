//! Process-wide knobs set once by a front end before any computation starts.

use std::sync::atomic::{AtomicBool, AtomicU32, Ordering};

// 0 means "no guard".
static DEGREE_GUARD: AtomicU32 = AtomicU32::new(0);
static CERTIFY: AtomicBool = AtomicBool::new(false);

/// Abort any basis computation whose intermediate leading degree exceeds the
/// given bound. `None` removes the guard.
pub fn set_degree_guard(limit: Option<u32>) {
    DEGREE_GUARD.store(limit.unwrap_or(0), Ordering::Relaxed);
}

pub fn degree_guard() -> Option<u32> {
    match DEGREE_GUARD.load(Ordering::Relaxed) {
        0 => None,
        n => Some(n),
    }
}

/// When enabled, every computed basis is re-checked: all S-polynomials must
/// reduce to zero and the input generators must reduce to zero against it.
pub fn set_certify(on: bool) {
    CERTIFY.store(on, Ordering::Relaxed);
}

pub fn certify() -> bool {
    CERTIFY.load(Ordering::Relaxed)
}
