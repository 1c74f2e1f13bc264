//! Standard-form linear programs, their solutions, and the optimal partition.
//!
//! Everything downstream reasons about the *optimal partition* (B, N) of a
//! program min {cᵀx : Ax = b, x ≥ 0}: column j belongs to B when x_j > 0 in
//! **some** optimal solution and to N otherwise (equivalently, by strict
//! complementarity, s_j > 0 in some optimal dual). A single optimal vertex
//! does not reveal the partition under degeneracy, so [`optimal_partition`]
//! settles undecided columns by maximizing them over the optimal face.
//!
//! Solves are delegated to the internal two-phase simplex; results are
//! checked against explicit feasibility and complementarity invariants, with
//! one equilibration-and-retry pass before a numeric failure is reported.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::simplex::{self, SimplexResult};
use crate::tolerances::{TOL_COMP, TOL_FEAS, TOL_SUPP};
use crate::{Error, Matrix, Result, Vector};

/// min cᵀx subject to Ax = b, x ≥ 0 (rows may be linearly dependent).
#[derive(Debug, Clone, PartialEq)]
pub struct StandardLp {
    pub a: Matrix,
    pub b: Vector,
    pub c: Vector,
}

impl StandardLp {
    pub fn new(a: Matrix, b: Vector, c: Vector) -> Result<Self> {
        if b.len() != a.nrows() || c.len() != a.ncols() {
            return Err(Error::Shape(format!(
                "LP shapes disagree: A is {}×{}, b has {}, c has {}",
                a.nrows(),
                a.ncols(),
                b.len(),
                c.len()
            )));
        }
        Ok(Self { a, b, c })
    }
}

/// A primal–dual optimal pair.
///
/// # Invariants
///
/// Checked on construction (after an equilibration retry if needed):
/// * `‖A·x − b‖∞ ≤ 1e-7·(1 + ‖b‖∞)` and `x ≥ 0` (tiny negative roundoff is
///   clamped to exactly 0),
/// * `s = c − Aᵀy` with `min_j s_j` nonnegative up to the same scale,
/// * `|xᵀs| ≤ 1e-6·(1 + |objective|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimalDualSolution {
    pub x: Vector,
    pub y: Vector,
    pub s: Vector,
    pub objective: f64,
}

/// Outcome of a solve; `Optimal` carries the certified primal–dual pair.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveStatus {
    Optimal(PrimalDualSolution),
    Infeasible,
    Unbounded,
}

impl SolveStatus {
    /// The solution if optimal, `NoOptimum` otherwise.
    pub fn optimal(self, context: &str) -> Result<PrimalDualSolution> {
        match self {
            SolveStatus::Optimal(sol) => Ok(sol),
            SolveStatus::Infeasible => {
                Err(Error::NoOptimum(format!("{context}: the program is infeasible")))
            }
            SolveStatus::Unbounded => {
                Err(Error::NoOptimum(format!("{context}: the program is unbounded")))
            }
        }
    }
}

/// Optimal partition (B, N) of the column indices, both sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalPartition {
    /// Columns positive in some optimal solution.
    pub b: Vec<usize>,
    /// Columns zero in every optimal solution.
    pub n: Vec<usize>,
}

/// Solve the program; numeric failures trigger one equilibrated retry.
pub fn solve(lp: &StandardLp) -> Result<SolveStatus> {
    match attempt(&lp.a, &lp.b, &lp.c) {
        Ok(status) => Ok(status),
        Err(Error::NumericFailure(first)) => solve_equilibrated(lp, &first),
        Err(e) => Err(e),
    }
}

fn attempt(a: &Matrix, b: &Vector, c: &Vector) -> Result<SolveStatus> {
    match simplex::solve(a, b, c)? {
        SimplexResult::Infeasible => Ok(SolveStatus::Infeasible),
        SimplexResult::Unbounded => Ok(SolveStatus::Unbounded),
        SimplexResult::Optimal(raw) => {
            Ok(SolveStatus::Optimal(certify(a, b, c, raw.x, raw.y)?))
        }
    }
}

fn solve_equilibrated(lp: &StandardLp, first_failure: &str) -> Result<SolveStatus> {
    let (row_scale, col_scale) = equilibration(&lp.a);
    let (m, n) = lp.a.shape();
    let a2 = Matrix::from_fn(m, n, |i, j| lp.a[(i, j)] * row_scale[i] * col_scale[j]);
    let b2 = Vector::from_fn(m, |i, _| lp.b[i] * row_scale[i]);
    let c2 = Vector::from_fn(n, |j, _| lp.c[j] * col_scale[j]);
    let status = simplex::solve(&a2, &b2, &c2).map_err(|e| {
        Error::NumericFailure(format!("{first_failure}; equilibrated retry also failed: {e}"))
    })?;
    match status {
        SimplexResult::Infeasible => Ok(SolveStatus::Infeasible),
        SimplexResult::Unbounded => Ok(SolveStatus::Unbounded),
        SimplexResult::Optimal(raw) => {
            // Map back to the original variables and certify against the
            // original, unscaled data.
            let x = Vector::from_fn(n, |j, _| raw.x[j] * col_scale[j]);
            let y = Vector::from_fn(m, |i, _| raw.y[i] * row_scale[i]);
            let sol = certify(&lp.a, &lp.b, &lp.c, x, y).map_err(|e| {
                Error::NumericFailure(format!(
                    "{first_failure}; equilibrated retry produced an uncertifiable solution: {e}"
                ))
            })?;
            Ok(SolveStatus::Optimal(sol))
        }
    }
}

/// Row/column inf-norm scaling factors, clamped to [1e-8, 1e8].
fn equilibration(a: &Matrix) -> (Vec<f64>, Vec<f64>) {
    let (m, n) = a.shape();
    let clamp = |v: f64| {
        if v <= 0.0 {
            1.0
        } else {
            (1.0 / v).clamp(1e-8, 1e8)
        }
    };
    let row_scale: Vec<f64> = (0..m)
        .map(|i| clamp((0..n).fold(0.0_f64, |s, j| s.max(a[(i, j)].abs()))))
        .collect();
    let col_scale: Vec<f64> = (0..n)
        .map(|j| clamp((0..m).fold(0.0_f64, |s, i| s.max(a[(i, j)].abs() * row_scale[i]))))
        .collect();
    (row_scale, col_scale)
}

/// Validate the solution invariants and clamp roundoff-negative entries.
fn certify(a: &Matrix, b: &Vector, c: &Vector, mut x: Vector, y: Vector) -> Result<PrimalDualSolution> {
    let feas_tol = TOL_FEAS * (1.0 + b.amax());
    let x_floor = -TOL_FEAS * (1.0 + x.amax());
    if let Some(j) = (0..x.len()).find(|&j| x[j] < x_floor) {
        return Err(Error::NumericFailure(format!(
            "solution has x[{j}] = {} below the roundoff floor",
            x[j]
        )));
    }
    for v in x.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let primal_residual = (a * &x - b).amax();
    if primal_residual > feas_tol {
        return Err(Error::NumericFailure(format!(
            "primal residual {primal_residual:.3e} exceeds {feas_tol:.3e}"
        )));
    }
    let s = c - a.transpose() * &y;
    let dual_scale = 1.0 + c.amax() + (a.transpose() * &y).amax();
    let s_min = s.iter().fold(0.0_f64, |m, &v| m.min(v));
    if s_min < -TOL_FEAS * dual_scale {
        return Err(Error::NumericFailure(format!(
            "dual residual {s_min:.3e} exceeds the feasibility tolerance"
        )));
    }
    let objective = c.dot(&x);
    let comp = x.dot(&s).abs();
    if comp > TOL_COMP * (1.0 + objective.abs()) {
        return Err(Error::NumericFailure(format!(
            "complementarity gap {comp:.3e} exceeds tolerance at objective {objective}"
        )));
    }
    Ok(PrimalDualSolution { x, y, s, objective })
}

/// Extremum of wᵀx over the optimal face {x feasible : cᵀx = objective}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FaceExtremum {
    Finite(f64),
    Unbounded,
}

/// Maximize (or minimize) `wᵀx` over the optimal face of `lp`, obtained by
/// appending the row cᵀx = objective and re-solving. The face contains the
/// optimal solutions, so an infeasible outcome means the face is numerically
/// empty — reported as a failure, never as a partition answer.
pub fn face_extremum(
    lp: &StandardLp,
    objective: f64,
    w: &Vector,
    maximize: bool,
) -> Result<FaceExtremum> {
    let (m, n) = lp.a.shape();
    if w.len() != n {
        return Err(Error::Shape(format!(
            "face direction has length {}, expected {n}",
            w.len()
        )));
    }
    let mut a2 = lp.a.clone().insert_row(m, 0.0);
    for j in 0..n {
        a2[(m, j)] = lp.c[j];
    }
    let b2 = lp.b.clone().insert_row(m, objective);
    let cost = if maximize { -w } else { w.clone() };
    let face = StandardLp { a: a2, b: b2, c: cost };
    match solve(&face)? {
        SolveStatus::Infeasible => Err(Error::NumericFailure(String::from(
            "optimal face is empty within tolerance",
        ))),
        SolveStatus::Unbounded => Ok(FaceExtremum::Unbounded),
        SolveStatus::Optimal(sol) => Ok(FaceExtremum::Finite(w.dot(&sol.x))),
    }
}

/// Compute the optimal partition (B, N) given one optimal solution.
///
/// Cheap certificates first: x_j above tolerance puts j in B outright, and
/// s_j above tolerance puts j in N (a positive dual slack in one optimum
/// forces x_j = 0 in all optima). Only columns with both x_j ≈ 0 and
/// s_j ≈ 0 need a face probe.
pub fn optimal_partition(lp: &StandardLp, sol: &PrimalDualSolution) -> Result<OptimalPartition> {
    let n = lp.c.len();
    let tol_x = TOL_SUPP * (1.0 + sol.x.amax());
    let tol_s = TOL_SUPP * (1.0 + sol.s.amax());
    let mut b_set = Vec::new();
    let mut n_set = Vec::new();
    for j in 0..n {
        if sol.x[j] > tol_x {
            b_set.push(j);
            continue;
        }
        if sol.s[j] > tol_s {
            n_set.push(j);
            continue;
        }
        let mut w = Vector::zeros(n);
        w[j] = 1.0;
        match face_extremum(lp, sol.objective, &w, true)? {
            FaceExtremum::Unbounded => b_set.push(j),
            FaceExtremum::Finite(v) => {
                if v > tol_x {
                    b_set.push(j);
                } else {
                    n_set.push(j);
                }
            }
        }
    }
    Ok(OptimalPartition { b: b_set, n: n_set })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lp(a: &[f64], m: usize, n: usize, b: &[f64], c: &[f64]) -> StandardLp {
        StandardLp::new(
            Matrix::from_row_slice(m, n, a),
            Vector::from_row_slice(b),
            Vector::from_row_slice(c),
        )
        .expect("shapes")
    }

    #[test]
    fn solve_reports_duals_and_slacks() {
        let p = lp(&[1.0, 1.0, 1.0], 1, 3, &[1.0], &[-1.0, -1.0, 0.0]);
        let sol = solve(&p).expect("solve").optimal("test").expect("optimal");
        assert_relative_eq!(sol.objective, -1.0, epsilon = 1e-9);
        assert_relative_eq!(sol.y[0], -1.0, epsilon = 1e-9);
        assert_relative_eq!(sol.s[2], 1.0, epsilon = 1e-9);
        assert!(sol.x.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn statuses_propagate() {
        let infeasible = lp(&[1.0], 1, 1, &[-1.0], &[0.0]);
        assert_eq!(solve(&infeasible).expect("solve"), SolveStatus::Infeasible);
        let unbounded = lp(&[1.0, -1.0], 1, 2, &[0.0], &[-1.0, 0.0]);
        assert_eq!(solve(&unbounded).expect("solve"), SolveStatus::Unbounded);
    }

    #[test]
    fn partition_reads_off_strict_vertex() {
        // Unique nondegenerate optimum: no face probes needed, B = {0, 1}.
        let p = lp(&[1.0, 1.0, 1.0], 1, 3, &[1.0], &[-1.0, -1.0, 0.0]);
        let sol = solve(&p).expect("solve").optimal("test").expect("optimal");
        let part = optimal_partition(&p, &sol).expect("partition");
        assert_eq!(part.b, alloc::vec![0, 1]);
        assert_eq!(part.n, alloc::vec![2]);
    }

    #[test]
    fn partition_probes_degenerate_face() {
        // Zero objective: every feasible point of x1 + x2 = 1 is optimal.
        // Whatever vertex the solver lands on, the partition must report
        // both columns as positive-somewhere.
        let p = lp(&[1.0, 1.0], 1, 2, &[1.0], &[0.0, 0.0]);
        let sol = solve(&p).expect("solve").optimal("test").expect("optimal");
        let part = optimal_partition(&p, &sol).expect("partition");
        assert_eq!(part.b, alloc::vec![0, 1]);
        assert!(part.n.is_empty());
    }

    #[test]
    fn partition_uses_dual_slack_shortcut() {
        // min x1 over x1 + x2 = 1: s = (1, 0) decides x1 ∈ N with no probe.
        let p = lp(&[1.0, 1.0], 1, 2, &[1.0], &[1.0, 0.0]);
        let sol = solve(&p).expect("solve").optimal("test").expect("optimal");
        let part = optimal_partition(&p, &sol).expect("partition");
        assert_eq!(part.b, alloc::vec![1]);
        assert_eq!(part.n, alloc::vec![0]);
    }

    #[test]
    fn face_extremum_ranges_over_optimal_set() {
        let p = lp(&[1.0, 1.0, 1.0], 1, 3, &[1.0], &[-1.0, -1.0, 0.0]);
        let sol = solve(&p).expect("solve").optimal("test").expect("optimal");
        let mut w = Vector::zeros(3);
        w[0] = 1.0;
        let hi = face_extremum(&p, sol.objective, &w, true).expect("max");
        let lo = face_extremum(&p, sol.objective, &w, false).expect("min");
        assert_eq!(hi, FaceExtremum::Finite(1.0));
        match lo {
            FaceExtremum::Finite(v) => assert_relative_eq!(v, 0.0, epsilon = 1e-8),
            other => panic!("expected a finite minimum, got {other:?}"),
        }
    }

    #[test]
    fn face_extremum_detects_unbounded_direction() {
        // min 0 over x1 − x2 = 0: the face is the whole feasible ray.
        let p = lp(&[1.0, -1.0], 1, 2, &[0.0], &[0.0, 0.0]);
        let sol = solve(&p).expect("solve").optimal("test").expect("optimal");
        let mut w = Vector::zeros(2);
        w[0] = 1.0;
        let hi = face_extremum(&p, sol.objective, &w, true).expect("max");
        assert_eq!(hi, FaceExtremum::Unbounded);
    }

    #[test]
    fn badly_scaled_problem_still_certifies() {
        let p = lp(
            &[1e7, 1.0, 0.0, 3e-6, 1e-7, 2e6],
            2,
            3,
            &[1e7, 2e6],
            &[-1.0, -1e-5, 0.0],
        );
        let status = solve(&p).expect("solve");
        let sol = status.optimal("test").expect("optimal");
        assert!((p.a.clone() * &sol.x - &p.b).amax() <= 1e-7 * (1.0 + p.b.amax()));
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let p = lp(&[1.0, 1.0, 1.0, 1.0], 2, 2, &[1.0, 1.0], &[1.0, 0.0]);
        let sol = solve(&p).expect("solve").optimal("test").expect("optimal");
        assert_relative_eq!(sol.objective, 0.0, epsilon = 1e-9);
        let part = optimal_partition(&p, &sol).expect("partition");
        assert_eq!(part.b, alloc::vec![1]);
        assert_eq!(part.n, alloc::vec![0]);
    }
}
