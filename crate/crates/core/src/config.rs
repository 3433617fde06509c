//! Process-wide numeric tolerances.

use std::sync::atomic::{AtomicU64, Ordering};

/// Relative tolerance used by postcondition checks unless a call site states its own.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Machine epsilon factor used by the numerical rank cutoff.
pub const RANK_EPS: f64 = 2.2e-16;

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0);

/// Current relative tolerance (defaults to [`DEFAULT_TOLERANCE`]).
pub fn tolerance() -> f64 {
    match TOLERANCE_BITS.load(Ordering::Relaxed) {
        0 => DEFAULT_TOLERANCE,
        bits => f64::from_bits(bits),
    }
}

/// Override the relative tolerance. Non-positive or non-finite values restore the default.
pub fn set_tolerance(tol: f64) {
    let bits = if tol.is_finite() && tol > 0.0 { tol.to_bits() } else { 0 };
    TOLERANCE_BITS.store(bits, Ordering::Relaxed);
}
