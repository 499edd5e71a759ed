//! Division with cofactors, S-polynomials, Buchberger completion and
//! membership polling during completion.

mod division;
mod engine;
mod groebner;
mod traced;

pub use division::{reduce, ReductionResult};
pub use engine::CompletionStats;
pub use groebner::{
    buchberger, buchberger_untraced, incremental_membership_completion, CompletionOutcome,
    GroebnerBasis,
};
pub use traced::{s_polynomial, TracedPolynomial};

/// Default cap on the powers of the target tried while polling.
pub const DEFAULT_MAX_POWER: u32 = 6;

#[cfg(test)]
mod tests;
