//! Resource bounds for the brute-force searches.
//!
//! Two knobs exist: the maximal group order considered by enumeration-style
//! searches (`STRATHOM_MAX_ORDER`, default 64) and the cyclotomic conductor
//! cap (default 720, settable programmatically). Exceeding either is a hard
//! error rather than a silent blowup.

use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_MAX_ORDER: u64 = 64;
pub const DEFAULT_MAX_CONDUCTOR: u64 = 720;

static MAX_CONDUCTOR: AtomicU64 = AtomicU64::new(DEFAULT_MAX_CONDUCTOR);

/// Maximal group order for enumeration searches. Read once per call site
/// from the `STRATHOM_MAX_ORDER` environment variable.
pub fn max_order() -> u64 {
    std::env::var("STRATHOM_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

/// Current cyclotomic conductor cap.
pub fn max_conductor() -> u64 {
    MAX_CONDUCTOR.load(Ordering::Relaxed)
}

/// Adjust the conductor cap. Mostly useful in tests probing the limit.
pub fn set_max_conductor(n: u64) {
    MAX_CONDUCTOR.store(n, Ordering::Relaxed);
}
