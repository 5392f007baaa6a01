//! Process-wide tunables. Defaults can be overridden by the CLI or tests.

use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;
pub const DEFAULT_SEARCH_BOUND: u64 = 10_000;
pub const DEFAULT_QSERIES_TERMS: u64 = 64;

static FACTOR_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_FACTOR_BOUND);
static SEARCH_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_SEARCH_BOUND);
static QSERIES_TERMS: AtomicU64 = AtomicU64::new(DEFAULT_QSERIES_TERMS);

pub fn factor_bound() -> u64 {
    FACTOR_BOUND.load(Ordering::Relaxed)
}

pub fn set_factor_bound(b: u64) {
    FACTOR_BOUND.store(b.max(2), Ordering::Relaxed);
}

pub fn search_bound() -> u64 {
    SEARCH_BOUND.load(Ordering::Relaxed)
}

pub fn set_search_bound(b: u64) {
    SEARCH_BOUND.store(b.max(1), Ordering::Relaxed);
}

pub fn qseries_terms() -> usize {
    QSERIES_TERMS.load(Ordering::Relaxed) as usize
}

pub fn set_qseries_terms(n: u64) {
    QSERIES_TERMS.store(n.max(1), Ordering::Relaxed);
}
