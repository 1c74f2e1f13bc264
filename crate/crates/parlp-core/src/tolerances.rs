//! Central registry of numeric tolerances.
//!
//! Every threshold used by the crate lives here with a note on what it guards
//! and how it scales. Rule of thumb: *relative* tolerances are applied as
//! `tol · (1 + scale)` with `scale` a norm of the data involved, so they
//! degrade gracefully for both tiny and huge inputs.

/// Residual bound for the four Moore–Penrose identities, relative to the
/// Frobenius norm of the matrix (respectively of the pseudo-inverse for the
/// second identity). The SVD route reaches ~1e-14 on well-scaled input; 1e-9
/// leaves headroom for ill-conditioned instances.
pub const TOL_MP: f64 = 1e-9;

/// Singular values below `σ_max · PINV_CUTOFF_REL` are treated as exact zeros
/// when forming pseudo-inverses and numerical ranks.
pub const PINV_CUTOFF_REL: f64 = 1e-10;

/// Eigenvalues with magnitude below `TOL_EIG · max(1, ‖M‖_F)` count as zero
/// when extracting nonzero-eigenvalue multisets.
pub const TOL_EIG: f64 = 1e-9;

/// Multiset closure under conjugation: an eigenvalue with nonreal part must
/// find a partner within `TOL_CONJ · (1 + |value|)` before polynomial
/// expansion.
pub const TOL_CONJ: f64 = 1e-8;

/// Polynomial coefficients below `TOL_TRIM` relative to the largest
/// coefficient magnitude are trimmed when normalizing degree.
pub const TOL_TRIM: f64 = 1e-12;

/// A companion-matrix eigenvalue is accepted as a real root when its
/// imaginary part satisfies `|im| ≤ TOL_ROOT_IMAG · (1 + |re|)`.
pub const TOL_ROOT_IMAG: f64 = 1e-8;

/// Double real roots surface from the companion matrix as conjugate pairs
/// with imaginary parts of order √ε. Eigenvalues with
/// `|im| ≤ NEAR_REAL_WINDOW · (1 + |re|)` are therefore also admitted as
/// real-root candidates, but only when the polished real point passes the
/// residual test below.
pub const NEAR_REAL_WINDOW: f64 = 1e-5;

/// Residual gate for the loose window: x is accepted as a real root when
/// `|p(x)| ≤ TOL_ROOT_RESID · Σ|c_k|·|x|^k`.
pub const TOL_ROOT_RESID: f64 = 1e-9;

/// Number of Newton refinement steps applied to each accepted real root.
pub const ROOT_NEWTON_STEPS: usize = 5;

/// Primal/dual feasibility residual bound, scaled by `1 + ‖b‖` (resp.
/// `1 + ‖c‖`).
pub const TOL_FEAS: f64 = 1e-7;

/// Complementarity residual bound `|xᵀs| ≤ TOL_COMP · (1 + |objective|)`.
pub const TOL_COMP: f64 = 1e-6;

/// Support classification threshold: a coordinate is "positive" when it
/// exceeds `TOL_SUPP · (1 + ‖x‖_∞)`.
pub const TOL_SUPP: f64 = 1e-6;

/// Deflation residual: removing the known root u = 0 from a numerator
/// requires the constant coefficient to be at most `TOL_DEFLATE` relative to
/// the largest coefficient. Larger residues signal inaccurate eigenvalues.
pub const TOL_DEFLATE: f64 = 1e-8;

/// Candidate breakpoints closer than `TOL_MERGE` (scaled by `1 + |λ|`) are
/// merged into one; also the matching distance for cancelling common
/// numerator/denominator roots during rational reduction.
pub const TOL_MERGE: f64 = 1e-7;

/// Pole guard for rational evaluation: `|den(λ)| < POLE_GUARD · (1+|num(λ)|)`
/// raises a pole error instead of returning a meaningless quotient.
pub const POLE_GUARD: f64 = 1e-12;

/// Oracle probes stay away from interval endpoints by this fraction of the
/// interval width.
pub const ORACLE_MARGIN: f64 = 1e-4;

/// Relative objective-value agreement required from oracle probes.
pub const ORACLE_REL_ERR: f64 = 1e-6;

/// Two reduced value functions are considered identical when their
/// cross-multiplied coefficients agree within this relative bound.
pub const TOL_Z_MATCH: f64 = 1e-8;

/// Maximum number of probe-offset halvings the sweep attempts when a probe
/// lands on a breakpoint.
pub const MAX_EPSILON_HALVINGS: usize = 20;

/// Iteration cap handed to iterative matrix decompositions (SVD, Schur).
/// Convergence normally takes a handful of sweeps per singular value or
/// eigenvalue; hitting this cap reports a numeric failure instead of
/// spinning forever on a pathological input.
pub const MAX_DECOMP_ITER: usize = 5000;

/// Sweep cap for the one-sided Jacobi SVD. Cyclic Jacobi converges
/// quadratically once off-diagonal mass is small; well-conditioned inputs of
/// the sizes seen here finish in well under twenty sweeps.
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// A column pair (i, j) in the Jacobi sweep is considered orthogonal when
/// |w_iᵀw_j| ≤ tol · ‖w_i‖·‖w_j‖; sweeps stop once every pair passes.
pub const JACOBI_OFF_TOL: f64 = 1e-14;

/// A numerator/denominator root pair closer than this (relative to root
/// magnitude) is treated as a shared factor and cancelled during rational
/// reduction, provided the synthetic-division remainders confirm it.
pub const TOL_CANCEL: f64 = 1e-7;

/// Relative residual ceiling for accepting a sampled rational reconstruction:
/// the candidate must reproduce held-out LP objectives this closely before it
/// is trusted as a value function.
pub const TOL_FIT: f64 = 1e-8;

/// A freshly built value function must reproduce the LP objective at its own
/// anchor within this relative error, or the sweep reports an inconsistency.
pub const TOL_VALUE_ANCHOR: f64 = 1e-7;
