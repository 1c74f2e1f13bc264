//! Analysis kernel for linear programs whose constraint data is perturbed
//! simultaneously on the left- and right-hand side:
//!
//! ```text
//!     P(λ):   min { cᵀx : (A + λ·ΔA) x = b + λ·Δb,  x ≥ 0 }
//! ```
//!
//! The crate enumerates the maximal intervals of the parameter λ on which the
//! *induced optimal partition* of an embedded problem stays constant, and on
//! each interval produces the optimal value function Z(λ) in closed rational
//! form. The pipeline is:
//!
//! 1. [`embedding`] — rewrite P(λ) with auxiliary variables z = ΔA·x − Δb so
//!    that only the coefficient matrix depends on λ, and classify variables
//!    into the five-set induced partition (B, B⁺, B⁻, N, N⁰) by probing the
//!    optimal face.
//! 2. [`invariancy`] — turn the invariance conditions into rational sign
//!    predicates whose coefficients come from small eigenvalue problems, and
//!    certify the maximal interval around an anchor λ₀.
//! 3. [`value_function`] — assemble Z(λ) as a ratio of eigenvalue products and
//!    reduce it to lowest terms.
//! 4. [`sweep`] — walk left and right from λ = 0, stitching intervals and
//!    classifying the boundary points between them.
//! 5. [`oracle`] — independently re-solve the LP on probe grids and compare
//!    partitions and objective values against the analytic output.
//!
//! Supporting layers: [`linalg`] (pseudo-inverses, eigenvalue multisets,
//! realization identities), [`poly`] (real polynomial arithmetic and root
//! finding), and [`lp`] (a self-contained two-phase revised simplex with
//! optimal-face probing).
//!
//! The crate is `no_std` (with `alloc`); anything involving files, clocks, or
//! command lines lives in the companion CLI crate. Wall-clock timing is
//! injected through the [`clock::SweepClock`] trait so the analysis code stays
//! platform-free.
//!
//! # Conventions
//!
//! * All index sets are 0-based and sorted ascending. Auxiliary variables are
//!   identified by their row index i ∈ {0..m}, corresponding to column n+i of
//!   the embedded program.
//! * Condition and value polynomials are represented *centered*: coefficients
//!   are in the local variable u = λ − λ₀. This keeps coefficients O(1) even
//!   when the anchor λ₀ is large; shifting to plain-λ form is done only for
//!   display purposes.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod clock;
pub mod embedding;
pub mod error;
pub mod invariancy;
pub mod linalg;
pub mod lp;
pub mod oracle;
pub mod poly;
pub mod sweep;
pub mod tolerances;
pub mod value_function;

mod scalar;
mod simplex;

pub use error::Error;

/// Dense column-major matrix of `f64`, the only matrix type used throughout.
pub type Matrix = nalgebra::DMatrix<f64>;
/// Dense vector of `f64`.
pub type Vector = nalgebra::DVector<f64>;
/// Complex scalar used for eigenvalue multisets.
pub type Complex = nalgebra::Complex<f64>;

/// Convenience result alias for fallible operations in this crate.
pub type Result<T> = core::result::Result<T, Error>;
