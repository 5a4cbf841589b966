//! Shared fixtures for the benchmarks in `benches/`.

use std::sync::Arc;

use deuring_core::{real_quadratic_characters, ExceptionalContext, SieveSystem};

/// Context for the first real quadratic character mod `q`.
pub fn context(q: u64) -> Arc<ExceptionalContext> {
    let chi1 = real_quadratic_characters(q).expect("positive modulus").remove(0);
    Arc::new(ExceptionalContext::new(chi1).expect("real character"))
}

pub fn sieve(q: u64, r: u64) -> SieveSystem {
    SieveSystem::build(context(q), r).expect("level within cap")
}
