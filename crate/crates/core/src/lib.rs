//! Periods, ranks and zero counts of second-order linear recurrences
//! reduced modulo `m`.
//!
//! The sequences are `F_0 = 0`, `F_1 = 1`, `F_n = a F_{n-1} + b F_{n-2}`.
//! K-Fibonacci sequences are the case `(a, b) = (K, 1)`.

pub mod arith;
pub mod classify;
pub mod error;
pub mod lab;
pub mod pisano;
pub mod report;
pub mod seq;

pub use classify::{classify_by_factors, omega_lcm_table, LcmPrediction, OeisId, OrderClass};
pub use error::{Error, Result};
pub use pisano::{profile, profile_fast, profile_oracle, PisanoProfile};
pub use report::{Counterexample, SweepReport};
pub use seq::{term_mod, RecurrenceParams};

/// Largest accepted modulus. Residues stay below `2^31`, so every product
/// formed while stepping or multiplying matrices fits in a `u64`.
pub const MAX_MODULUS: u64 = 2_147_483_647;
