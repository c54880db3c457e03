//! Identity catalog, both sides of each identity, and the multi-path verifier.

pub mod catalog;
pub mod formulas;
pub mod verify;

pub use catalog::{CaseTag, IdentityCase, ALL_TAGS};
pub use formulas::{
    lhs_jet, lhs_moment_estimate, lhs_moment_expansion, product_identity_check, rhs_closed, rhs_example, rhs_limit,
    rhs_theorem, Estimate, DEFAULT_LIMIT_STEPS,
};
pub use verify::{
    admissible, default_paths, parse_paths, verify, PairDiff, PathKind, PathOutcome, PathResult,
    VerificationReport, Verdict, VerifyOptions, ALL_PATHS,
};
