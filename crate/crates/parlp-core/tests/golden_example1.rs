//! End-to-end enumeration of the one-constraint program
//!
//!     min −x₁ − x₂  s.t.  (1+λ)x₁ + (1−λ)x₂ + x₃ = 1 + λ,  x ≥ 0
//!
//! whose parameter line decomposes into (−1, 0), the singleton {0}, and
//! (0, 1), with the program unbounded at both ends of that range.  The
//! value function is −1 left of zero and (λ+1)/(λ−1) on (0, 1).  Every
//! claim the sweep makes is cross-checked by independent re-solving.

mod common;

use common::{assert_bounds, assert_close_lambda, one_row, partition};
use parlp_core::clock::NoClock;
use parlp_core::embedding::{embed, induced_partition, InducedOutcome};
use parlp_core::oracle::grid_verify;
use parlp_core::sweep::{sweep, BoundaryKind, EndState};

#[test]
fn full_decomposition_with_partitions_and_values() {
    let p = one_row();
    let report = sweep(&p, 0.1, 10.0, &NoClock).expect("sweep");

    assert_bounds(
        &report,
        &[
            (-1.0, 0.0, false, false),
            (0.0, 0.0, true, true),
            (0.0, 1.0, false, false),
        ],
    );

    assert_eq!(
        report.intervals[0].partition,
        partition(&[0], &[1, 2], &[], &[], &[0])
    );
    assert_eq!(
        report.intervals[1].partition,
        partition(&[0, 1], &[2], &[], &[0], &[])
    );
    assert_eq!(
        report.intervals[2].partition,
        partition(&[1], &[0, 2], &[], &[0], &[])
    );

    // Z ≡ −1 on (−1, 0) and at the singleton.
    for iv in &report.intervals[..2] {
        let (num, den) = iv.zf.lambda_coefficients();
        assert_eq!(den.degree(), 0);
        assert!((num.coeffs()[0] / den.coeffs()[0] - -1.0).abs() < 1e-8);
    }

    // Z = (λ+1)/(λ−1) on (0, 1): evaluate and compare coefficients after
    // normalizing the denominator's leading coefficient to one.
    let (num, den) = report.intervals[2].zf.lambda_coefficients();
    assert_eq!((num.degree(), den.degree()), (1, 1));
    let s = den.leading();
    let n: Vec<f64> = num.coeffs().iter().map(|c| c / s).collect();
    let d: Vec<f64> = den.coeffs().iter().map(|c| c / s).collect();
    for (got, want) in n.iter().zip([1.0, 1.0]) {
        assert!((got - want).abs() < 1e-8, "num {n:?}");
    }
    for (got, want) in d.iter().zip([-1.0, 1.0]) {
        assert!((got - want).abs() < 1e-8, "den {d:?}");
    }

    // Hand values on the hyperbolic branch: Z(1/2) = −3, Z′(1/2) = −8.
    let zf = &report.intervals[2].zf;
    assert!((zf.evaluate(0.5).unwrap() - -3.0).abs() < 1e-9);
    assert!((zf.derivative_at(0.5).unwrap() - -8.0).abs() < 1e-8);
}

#[test]
fn boundary_points_classify_ends_and_origin() {
    let report = sweep(&one_row(), 0.1, 10.0, &NoClock).expect("sweep");
    let got: Vec<(f64, BoundaryKind)> = report.points.iter().map(|pt| (pt.lambda, pt.kind)).collect();
    assert_eq!(got.len(), 3, "points: {got:?}");
    assert_close_lambda(got[0].0, -1.0);
    assert_eq!(got[0].1, BoundaryKind::Boundary(EndState::Unbounded));
    assert_close_lambda(got[1].0, 0.0);
    assert_eq!(got[1].1, BoundaryKind::Both);
    assert_close_lambda(got[2].0, 1.0);
    assert_eq!(got[2].1, BoundaryKind::Boundary(EndState::Unbounded));
}

#[test]
fn certificates_cover_their_intervals_and_survive_reverification() {
    let p = one_row();
    let report = sweep(&p, 0.1, 10.0, &NoClock).expect("sweep");

    // Certificates describe open neighborhoods, so only pieces with an
    // interior can be covered.
    for iv in report.intervals.iter().filter(|iv| !iv.is_singleton()) {
        let mid = 0.5 * (iv.lo + iv.hi);
        assert!(iv.cert.contains(mid), "certificate must cover {mid}");
    }

    // A fresh solve strictly inside each interval reproduces the partition.
    let e = embed(&p);
    for iv in report.intervals.iter().filter(|iv| !iv.is_singleton()) {
        let probe = 0.5 * (iv.lo + iv.hi);
        match induced_partition(&e, probe).expect("probe solve") {
            InducedOutcome::Optimal(point) => assert_eq!(point.partition, iv.partition),
            other => panic!("expected optimum at {probe}, got {other:?}"),
        }
    }

    let oracle = grid_verify(&p, &report, 5).expect("oracle");
    assert!(
        oracle.pass(),
        "oracle failures: {:?}",
        oracle.failures().collect::<Vec<_>>()
    );
}
