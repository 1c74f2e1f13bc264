//! Shared fixtures and assertion helpers for the integration tests.
//!
//! Each test binary compiles this module separately and uses a subset of
//! it, so unused-item lints are suppressed here.
#![allow(dead_code)]

use parlp_core::embedding::{InducedPartition, ParametricLp};
use parlp_core::sweep::SweepReport;
use parlp_core::{Matrix, Vector};

/// One-constraint program whose value function has a single hyperbolic
/// branch:
///
///     min −x₁ − x₂  s.t.  (1+λ)x₁ + (1−λ)x₂ + x₃ = 1 + λ,  x ≥ 0.
pub fn one_row() -> ParametricLp {
    let a = Matrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
    let b = Vector::from_column_slice(&[1.0]);
    let c = Vector::from_column_slice(&[-1.0, -1.0, 0.0]);
    let da = Matrix::from_row_slice(1, 3, &[1.0, -1.0, 0.0]);
    let db = Vector::from_column_slice(&[1.0]);
    ParametricLp::new(a, b, c, da, db).expect("shapes")
}

/// Two-constraint program exercising every boundary flavour: a closed
/// endpoint against infeasibility, a quadratic-over-quadratic branch, an
/// interior singleton, and an unbounded tail interval.
pub fn two_row() -> ParametricLp {
    let a = Matrix::from_row_slice(2, 4, &[0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0]);
    let b = Vector::from_column_slice(&[1.0, 1.0]);
    let c = Vector::from_column_slice(&[-1.0, -1.0, 0.0, 0.0]);
    let da = Matrix::from_row_slice(2, 4, &[1.0, 1.0, 0.0, 0.0, -1.0, -2.0, 0.0, 0.0]);
    let db = Vector::from_column_slice(&[2.0, -1.0]);
    ParametricLp::new(a, b, c, da, db).expect("shapes")
}

/// Build the five-set partition from slices (keeps call sites short).
pub fn partition(
    b: &[usize],
    n: &[usize],
    b_plus: &[usize],
    b_minus: &[usize],
    n_zero: &[usize],
) -> InducedPartition {
    InducedPartition {
        b: b.to_vec(),
        n: n.to_vec(),
        b_plus: b_plus.to_vec(),
        b_minus: b_minus.to_vec(),
        n_zero: n_zero.to_vec(),
    }
}

/// Compare interval bounds against expectations, tolerating root-polish
/// noise in the λ values but requiring inclusion flags to match exactly.
pub fn assert_bounds(report: &SweepReport, want: &[(f64, f64, bool, bool)]) {
    assert_eq!(
        report.intervals.len(),
        want.len(),
        "interval count mismatch: got {:?}",
        report
            .intervals
            .iter()
            .map(|iv| (iv.lo, iv.hi))
            .collect::<Vec<_>>()
    );
    for (iv, &(lo, hi, lo_inc, hi_inc)) in report.intervals.iter().zip(want) {
        assert_close_lambda(iv.lo, lo);
        assert_close_lambda(iv.hi, hi);
        assert_eq!((iv.lo_included, iv.hi_included), (lo_inc, hi_inc));
    }
}

/// λ comparison that treats infinities by sign and finite values to a
/// relative 1e-9.
pub fn assert_close_lambda(got: f64, want: f64) {
    if want.is_infinite() {
        assert_eq!(got, want, "expected infinite endpoint");
    } else {
        assert!(
            (got - want).abs() <= 1e-9 * (1.0 + want.abs()),
            "λ mismatch: got {got}, want {want}"
        );
    }
}
