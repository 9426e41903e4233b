//! Brute-force checks of the congruences, one report per parameter tuple,
//! and a parallel sweep runner with deterministic output order.

mod claims;
mod report;
mod sweep;

pub use claims::{
    observe_theorem_1_3, sum_weighted, verify_power2_lemmas, verify_sun_trinomial, verify_theorem_1_1,
    verify_theorem_1_2, verify_theorem_1_3, Observation, PowerParity, VerifyContext,
};
pub use report::{ClaimId, CongruenceReport, Params, Status, Summary};
pub use sweep::{
    odd_primes, parse_natural_range, parse_range, parse_signs, run_sweep, run_sweeps, SweepOptions,
    SweepSpec,
};
