//! Crate-wide error type.
//!
//! Every fallible operation returns [`enum@Error`]. Variants are grouped by
//! *what went wrong*, not by module, so callers can match on the failure mode:
//! numerical breakdown, inconsistent cross-checks, degenerate inputs, and so
//! on. Diagnostic payloads are plain strings — errors here are terminal for
//! the computation that raised them, never control flow (with one exception:
//! [`Error::AnchorOnBreakpoint`], which the sweep catches to retry with a
//! smaller probe step).

use alloc::string::String;

/// Unified error type for the analysis kernel.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Dimensions of operands do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Input exceeds a hard size bound of a combinatorial routine.
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    /// An iterative numeric kernel (SVD, Schur, simplex) failed to converge
    /// or produced unusable output even after the re-scaling retry.
    #[error("numeric failure: {0}")]
    NumericFailure(String),

    /// Two routes that must agree (eigenvalue path vs direct path, deflation
    /// residuals, anchor-value checks) disagree beyond tolerance.
    #[error("inconsistency: {0}")]
    Inconsistency(String),

    /// Input is degenerate for the requested operation (zero polynomial,
    /// empty support where one is required, …).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Evaluation of a rational function too close to a pole of its
    /// denominator.
    #[error("pole encountered: {0}")]
    Pole(String),

    /// The anchor λ₀ sits on (or numerically indistinguishably close to) an
    /// invariancy breakpoint, so no open interval around it exists. The sweep
    /// reacts by halving its probe offset and retrying.
    #[error("anchor lies on a breakpoint: {0}")]
    AnchorOnBreakpoint(String),

    /// A sweep probe could not be placed after exhausting the step-halving
    /// budget.
    #[error("probe failure: {0}")]
    ProbeFailure(String),

    /// The parametric LP is not solvable at the requested λ where an optimal
    /// solution is required.
    #[error("no optimum at the requested point: {0}")]
    NoOptimum(String),
}
