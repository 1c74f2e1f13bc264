//! End-to-end enumeration of the two-constraint program
//!
//!     min −x₁ − x₂
//!     s.t.  λx₁ + (1+λ)x₂ + x₃          = 1 + 2λ
//!           (1−λ)x₁ + (1−2λ)x₂     + x₄ = 1 − λ
//!           x ≥ 0
//!
//! whose parameter line splits into eight pieces: a closed singleton at
//! −1 (the program is infeasible to its left), flat and curved open
//! intervals, interior singletons at 0 and 1/2, and an unbounded tail
//! (1, ∞).  This file pins the partitions and the closed-form value
//! functions piece by piece.

mod common;

use common::{assert_bounds, assert_close_lambda, partition, two_row};
use parlp_core::clock::NoClock;
use parlp_core::embedding::{embed, induced_partition, InducedOutcome};
use parlp_core::oracle::grid_verify;
use parlp_core::sweep::{sweep, BoundaryKind, SweepReport};

fn golden() -> SweepReport {
    sweep(&two_row(), 0.1, 10.0, &NoClock).expect("sweep")
}

/// Normalized λ-coefficients (denominator leading coefficient scaled to 1).
fn coeffs(report: &SweepReport, index: usize) -> (Vec<f64>, Vec<f64>) {
    let (num, den) = report.intervals[index].zf.lambda_coefficients();
    let s = den.leading();
    (
        num.coeffs().iter().map(|c| c / s).collect(),
        den.coeffs().iter().map(|c| c / s).collect(),
    )
}

fn assert_coeffs(got: &[f64], want: &[f64]) {
    assert_eq!(got.len(), want.len(), "got {got:?}, want {want:?}");
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < 1e-8, "got {got:?}, want {want:?}");
    }
}

#[test]
fn all_eight_pieces_with_exact_partitions() {
    let report = golden();
    assert_bounds(
        &report,
        &[
            (-1.0, -1.0, true, true),
            (-1.0, 0.0, false, false),
            (0.0, 0.0, true, true),
            (0.0, 0.5, false, false),
            (0.5, 0.5, true, true),
            (0.5, 1.0, false, false),
            (1.0, 1.0, true, true),
            (1.0, f64::INFINITY, false, false),
        ],
    );

    let want = [
        partition(&[0], &[1, 2, 3], &[], &[0], &[1]),
        partition(&[0, 2], &[1, 3], &[], &[0], &[1]),
        partition(&[0, 1, 2], &[3], &[], &[0, 1], &[]),
        partition(&[0, 1], &[2, 3], &[], &[0, 1], &[]),
        partition(&[0, 1], &[2, 3], &[], &[1], &[0]),
        partition(&[0, 1], &[2, 3], &[0], &[1], &[]),
        partition(&[0], &[1, 2, 3], &[0], &[1], &[]),
        partition(&[0, 3], &[1, 2], &[0], &[1], &[]),
    ];
    for (index, want) in want.iter().enumerate() {
        assert_eq!(
            &report.intervals[index].partition, want,
            "partition of piece {index}"
        );
    }
}

#[test]
fn value_functions_in_closed_form() {
    let report = golden();

    // Constant −1 on the first three pieces.
    for index in 0..3 {
        let (num, den) = coeffs(&report, index);
        assert_coeffs(&num, &[-1.0]);
        assert_coeffs(&den, &[1.0]);
    }

    // (−1 − 2λ²)/(λ² − λ + 1) on (0, 1/2), identical on (1/2, 1).
    let (num, den) = coeffs(&report, 3);
    assert_coeffs(&num, &[-1.0, 0.0, -2.0]);
    assert_coeffs(&den, &[1.0, -1.0, 1.0]);
    assert!(report.intervals[3]
        .zf
        .equivalent(&report.intervals[5].zf, 1e-8));

    // Singletons take the curve's values: Z(1/2) = −2 and Z(1) = −3.
    assert!((report.intervals[4].zf.evaluate(0.5).unwrap() - -2.0).abs() < 1e-9);
    assert!((report.intervals[6].zf.evaluate(1.0).unwrap() - -3.0).abs() < 1e-9);

    // (−1 − 2λ)/λ on the unbounded tail.
    let (num, den) = coeffs(&report, 7);
    assert_coeffs(&num, &[-1.0, -2.0]);
    assert_coeffs(&den, &[0.0, 1.0]);
}

#[test]
fn boundaries_classify_and_preserve_continuity() {
    let report = golden();
    let got: Vec<(f64, BoundaryKind)> =
        report.points.iter().map(|pt| (pt.lambda, pt.kind)).collect();
    assert_eq!(got.len(), 4, "points: {got:?}");
    let want = [
        (-1.0, BoundaryKind::Transition),
        (0.0, BoundaryKind::Both),
        (0.5, BoundaryKind::Change),
        (1.0, BoundaryKind::Transition),
    ];
    for ((lam, kind), (wlam, wkind)) in got.iter().zip(want) {
        assert_close_lambda(*lam, wlam);
        assert_eq!(*kind, wkind);
    }

    // The pure change point has matching one-sided derivatives.
    assert!(report.points[2].derivative_gap.expect("two-sided") <= 1e-8);

    // At the structural transitions the optimal value itself is continuous:
    // every adjacent piece evaluates to the point's value.
    for (point, adjacent) in [(1, &report.intervals[1..2]), (3, &report.intervals[5..8])] {
        let at = report.points[point].value_at.expect("solvable point");
        let lambda = report.points[point].lambda;
        for iv in adjacent {
            if iv.is_singleton() {
                continue;
            }
            let z = iv.zf.evaluate(lambda).expect("no pole at junction");
            assert!(
                (z - at).abs() <= 1e-6 * (1.0 + at.abs()),
                "discontinuity at λ={lambda}: piece gives {z}, point gives {at}"
            );
        }
    }
}

#[test]
fn infeasible_beyond_the_closed_left_end() {
    let p = two_row();
    let e = embed(&p);
    // Strictly left of −1 there is no feasible point at all.
    match induced_partition(&e, -1.25).expect("solve") {
        InducedOutcome::Infeasible => {}
        other => panic!("expected infeasibility left of −1, got {other:?}"),
    }
    // At −1 itself the program is solvable, matching the closed singleton.
    match induced_partition(&e, -1.0).expect("solve") {
        InducedOutcome::Optimal(point) => {
            assert!((point.solution.objective - -1.0).abs() < 1e-9);
        }
        other => panic!("expected optimum at −1, got {other:?}"),
    }
}

#[test]
fn oracle_confirms_every_piece() {
    let p = two_row();
    let report = golden();
    let oracle = grid_verify(&p, &report, 5).expect("oracle");
    assert!(
        oracle.pass(),
        "oracle failures: {:?}",
        oracle.failures().collect::<Vec<_>>()
    );
    // Eight verdicts, one per piece, all independent re-solves.
    assert_eq!(oracle.verdicts.len(), 8);
}
