//! Deleting derivations.
//!
//! For `A = B[x; alpha, delta]` with `delta` locally nilpotent and
//! `alpha delta = delta (alpha + s)`, the map
//! `theta(b) = sum_k (1/k!) (-1/s)^k delta^k(b) x^{-k}` identifies
//! `B[y^{±1}; alpha]` with `B[x^{±1}; alpha, delta]`. Iterating this over the
//! steps of an iterated extension yields the quadratic normal form of the
//! fraction field computed by [`gk_normalize`].

mod context;
mod identities;
mod normalize;

pub use context::{DeletionContext, DEFAULT_CUTOFF};
pub use identities::{
    verify_eq_3_2, verify_lemma_3_6, verify_round_trip, verify_theta_extension,
    verify_theta_poisson, IdentityReport,
};
pub use normalize::{
    gk_normalize, Case3Strategy, Certificate, GKResult, GkOptions, HypothesisReport, LogEntry,
    ShiftSource, StepVerdict,
};
