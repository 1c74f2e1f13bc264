//! Embedding of a parametric LP and the induced optimal partition.
//!
//! The object under study is
//!
//! ```text
//!     min { cᵀx : (A + λ·ΔA)x = b + λ·Δb, x ≥ 0 }
//! ```
//!
//! Introducing the perturbation image z = ΔA·x − Δb as explicit free
//! variables turns this into a program whose matrix depends on λ only
//! through a fixed direction:
//!
//! ```text
//!     min (c; 0)ᵀ(x; z)   s.t.   [ A   λI ] (x)   ( b  )
//!                                [ ΔA  −I ] (z) = ( Δb ),   x ≥ 0, z free.
//! ```
//!
//! The optimal partition of this embedded program *induces* a five-set
//! partition: (B, N) splits the structural columns as usual, while each
//! auxiliary row i lands in B⁺, B⁻ or N⁰ according to the sign of z_i over
//! the optimal face (positive somewhere / negative somewhere / identically
//! zero). Interval analysis is driven entirely by this induced partition.
//!
//! z is handled internally by the standard split z = z⁺ − z⁻. The split
//! makes the optimal face unbounded along (z⁺, z⁻) → (z⁺+t, z⁻+t), so sign
//! probes always use the difference direction e_{z⁺} − e_{z⁻}, which that
//! ray leaves invariant.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::linalg;
use crate::lp::{self, FaceExtremum, PrimalDualSolution, SolveStatus, StandardLp};
use crate::tolerances::TOL_SUPP;
use crate::{Error, Matrix, Result, Vector};

/// Parametric program data: min cᵀx over (A + λΔA)x = b + λΔb, x ≥ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricLp {
    pub a: Matrix,
    pub b: Vector,
    pub c: Vector,
    pub delta_a: Matrix,
    pub delta_b: Vector,
}

impl ParametricLp {
    pub fn new(a: Matrix, b: Vector, c: Vector, delta_a: Matrix, delta_b: Vector) -> Result<Self> {
        let (m, n) = a.shape();
        if delta_a.shape() != (m, n) || b.len() != m || delta_b.len() != m || c.len() != n {
            return Err(Error::Shape(format!(
                "parametric data disagrees: A {}×{}, ΔA {}×{}, b {}, Δb {}, c {}",
                m,
                n,
                delta_a.nrows(),
                delta_a.ncols(),
                b.len(),
                delta_b.len(),
                c.len()
            )));
        }
        Ok(Self { a, b, c, delta_a, delta_b })
    }

    /// The plain (un-embedded) program at a fixed λ.
    pub fn instance_at(&self, lambda: f64) -> StandardLp {
        StandardLp {
            a: &self.a + &self.delta_a * lambda,
            b: &self.b + &self.delta_b * lambda,
            c: self.c.clone(),
        }
    }
}

/// The embedded program: matrix A₀ + λ·D with a fixed direction D.
///
/// Columns 0..n are the structural x, columns n..n+m the auxiliary z (one
/// per original row). Auxiliary index i always refers to original row i and
/// to embedded column n + i.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedLp {
    /// [[A, 0], [ΔA, −I]], size 2m × (n+m).
    pub a0: Matrix,
    /// [[0, I], [0, 0]], same size — the full matrix at λ is a0 + λ·direction.
    pub direction: Matrix,
    /// (b; Δb).
    pub b: Vector,
    /// (c; 0).
    pub c: Vector,
    /// Original row count.
    pub m: usize,
    /// Structural column count.
    pub n: usize,
}

/// Build the embedded program from parametric data.
pub fn embed(p: &ParametricLp) -> EmbeddedLp {
    let (m, n) = p.a.shape();
    let mut a0 = Matrix::zeros(2 * m, n + m);
    let mut direction = Matrix::zeros(2 * m, n + m);
    for i in 0..m {
        for j in 0..n {
            a0[(i, j)] = p.a[(i, j)];
            a0[(m + i, j)] = p.delta_a[(i, j)];
        }
        a0[(m + i, n + i)] = -1.0;
        direction[(i, n + i)] = 1.0;
    }
    let mut b = Vector::zeros(2 * m);
    let mut c = Vector::zeros(n + m);
    for i in 0..m {
        b[i] = p.b[i];
        b[m + i] = p.delta_b[i];
    }
    for j in 0..n {
        c[j] = p.c[j];
    }
    EmbeddedLp { a0, direction, b, c, m, n }
}

impl EmbeddedLp {
    /// Embedded coefficient matrix at λ (z unsplit: n+m columns).
    pub fn matrix_at(&self, lambda: f64) -> Matrix {
        &self.a0 + &self.direction * lambda
    }

    /// Solvable standard form at λ with z = z⁺ − z⁻:
    /// columns [x (n) | z⁺ (m) | z⁻ (m)].
    pub fn instantiate(&self, lambda: f64) -> StandardLp {
        let full = self.matrix_at(lambda);
        let (rows, n, m) = (2 * self.m, self.n, self.m);
        let mut a = Matrix::zeros(rows, n + 2 * m);
        for i in 0..rows {
            for j in 0..n {
                a[(i, j)] = full[(i, j)];
            }
            for k in 0..m {
                a[(i, n + k)] = full[(i, n + k)];
                a[(i, n + m + k)] = -full[(i, n + k)];
            }
        }
        let mut c = Vector::zeros(n + 2 * m);
        for j in 0..n {
            c[j] = self.c[j];
        }
        StandardLp { a, b: self.b.clone(), c }
    }

    /// Recombine a split solution into the structural part x and the
    /// auxiliary values z = z⁺ − z⁻.
    pub fn split_solution(&self, sol: &PrimalDualSolution) -> (Vector, Vector) {
        let x = Vector::from_fn(self.n, |j, _| sol.x[j]);
        let z = Vector::from_fn(self.m, |i, _| sol.x[self.n + i] - sol.x[self.n + self.m + i]);
        (x, z)
    }

    /// Original structural matrix A + λ·ΔA (m×n), recovered from the blocks.
    pub fn structural_at(&self, lambda: f64) -> Matrix {
        Matrix::from_fn(self.m, self.n, |i, j| {
            self.a0[(i, j)] + lambda * self.a0[(self.m + i, j)]
        })
    }

    /// Original structural costs c (length n).
    pub fn structural_cost(&self) -> Vector {
        Vector::from_fn(self.n, |j, _| self.c[j])
    }
}

/// The five-set partition induced by the embedded program's optimal face.
///
/// # Invariants
///
/// All sets are sorted ascending. `b ∪ n = {0..n_cols}` and
/// `b_plus ∪ b_minus ∪ n_zero = {0..m}` as disjoint unions (an auxiliary row
/// whose value attains both signs over the face is recorded in `b_plus`,
/// with a warning attached by [`induced_partition`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedPartition {
    /// Structural columns positive in some optimum.
    pub b: Vec<usize>,
    /// Structural columns zero in every optimum.
    pub n: Vec<usize>,
    /// Auxiliary rows with z_i > 0 in some optimum.
    pub b_plus: Vec<usize>,
    /// Auxiliary rows with z_i < 0 in some optimum.
    pub b_minus: Vec<usize>,
    /// Auxiliary rows with z_i = 0 in every optimum.
    pub n_zero: Vec<usize>,
}

impl InducedPartition {
    /// Support columns of the embedded program: B together with the embedded
    /// columns n + i of every auxiliary row of nonzero sign. Sorted.
    pub fn tau_bar(&self, n_cols: usize) -> Vec<usize> {
        let mut out = self.b.clone();
        let mut aux: Vec<usize> = Vec::with_capacity(self.b_plus.len() + self.b_minus.len());
        let (mut p, mut q) = (0, 0);
        while p < self.b_plus.len() || q < self.b_minus.len() {
            let take_plus = match (self.b_plus.get(p), self.b_minus.get(q)) {
                (Some(&a), Some(&b)) => a < b,
                (Some(_), None) => true,
                _ => false,
            };
            if take_plus {
                aux.push(self.b_plus[p]);
                p += 1;
            } else {
                aux.push(self.b_minus[q]);
                q += 1;
            }
        }
        out.extend(aux.into_iter().map(|i| n_cols + i));
        out
    }

    /// Structural support τ = B.
    pub fn tau(&self) -> &[usize] {
        &self.b
    }

    /// True when the structural split (B, N) agrees.
    pub fn same_structural(&self, other: &Self) -> bool {
        self.b == other.b && self.n == other.n
    }

    /// True when the auxiliary triple (B⁺, B⁻, N⁰) agrees.
    pub fn same_aux(&self, other: &Self) -> bool {
        self.b_plus == other.b_plus
            && self.b_minus == other.b_minus
            && self.n_zero == other.n_zero
    }
}

/// A solved anchor: the induced partition plus the certifying solution.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedPoint {
    pub partition: InducedPartition,
    /// Solution of the split embedded program at the probed λ.
    pub solution: PrimalDualSolution,
    pub warnings: Vec<String>,
}

/// Outcome of probing the embedded program at a fixed λ.
#[derive(Debug, Clone, PartialEq)]
pub enum InducedOutcome {
    Optimal(InducedPoint),
    Infeasible,
    Unbounded,
}

/// Solve the embedded program at λ and classify every structural column and
/// auxiliary row.
///
/// Cheap certificates are used first — a positive structural value or dual
/// slack decides membership outright, and a positive split component
/// witnesses one sign of z_i. Only genuinely undecided quantities are probed
/// by optimizing them over the optimal face.
pub fn induced_partition(e: &EmbeddedLp, lambda: f64) -> Result<InducedOutcome> {
    let lp = e.instantiate(lambda);
    let sol = match lp::solve(&lp)? {
        SolveStatus::Infeasible => return Ok(InducedOutcome::Infeasible),
        SolveStatus::Unbounded => return Ok(InducedOutcome::Unbounded),
        SolveStatus::Optimal(sol) => sol,
    };
    let (n, m) = (e.n, e.m);
    let tol_x = TOL_SUPP * (1.0 + sol.x.amax());
    let tol_s = TOL_SUPP * (1.0 + sol.s.amax());
    let mut warnings = Vec::new();

    let mut b_set = Vec::new();
    let mut n_set = Vec::new();
    for j in 0..n {
        if sol.x[j] > tol_x {
            b_set.push(j);
        } else if sol.s[j] > tol_s {
            n_set.push(j);
        } else {
            let mut w = Vector::zeros(lp.c.len());
            w[j] = 1.0;
            let positive = match lp::face_extremum(&lp, sol.objective, &w, true)? {
                FaceExtremum::Unbounded => true,
                FaceExtremum::Finite(v) => v > tol_x,
            };
            if positive {
                b_set.push(j);
            } else {
                n_set.push(j);
            }
        }
    }

    let mut b_plus = Vec::new();
    let mut b_minus = Vec::new();
    let mut n_zero = Vec::new();
    for i in 0..m {
        let jp = n + i;
        let jm = n + m + i;
        // Sign probes use the direction z_i = z⁺_i − z⁻_i, which is
        // invariant under the split's free ray.
        let mut w = Vector::zeros(lp.c.len());
        w[jp] = 1.0;
        w[jm] = -1.0;
        let positive = if sol.x[jp] > tol_x && sol.x[jm] <= tol_x {
            true
        } else {
            match lp::face_extremum(&lp, sol.objective, &w, true)? {
                FaceExtremum::Unbounded => true,
                FaceExtremum::Finite(v) => v > tol_x,
            }
        };
        let negative = if sol.x[jm] > tol_x && sol.x[jp] <= tol_x {
            true
        } else {
            match lp::face_extremum(&lp, sol.objective, &w, false)? {
                FaceExtremum::Unbounded => true,
                FaceExtremum::Finite(v) => v < -tol_x,
            }
        };
        match (positive, negative) {
            (true, true) => {
                warnings.push(format!(
                    "auxiliary row {i} attains both signs over the optimal face at λ = {lambda}; \
                     recorded as positive"
                ));
                b_plus.push(i);
            }
            (true, false) => b_plus.push(i),
            (false, true) => b_minus.push(i),
            (false, false) => n_zero.push(i),
        }
    }

    Ok(InducedOutcome::Optimal(InducedPoint {
        partition: InducedPartition { b: b_set, n: n_set, b_plus, b_minus, n_zero },
        solution: sol,
        warnings,
    }))
}

/// Evaluate the three invariancy conditions for `partition` (anchored at
/// `lambda0`) directly at a trial `lambda`, without any eigenvalue
/// machinery. Returns (rank unchanged, support signs correct, reduced costs
/// positive) — the trial point keeps the induced partition iff all three
/// hold.
///
/// This is the slow reference path the closed-form route is checked against.
pub fn check_induced_conditions(
    e: &EmbeddedLp,
    partition: &InducedPartition,
    lambda0: f64,
    lambda: f64,
) -> Result<(bool, bool, bool)> {
    let tau_bar = partition.tau_bar(e.n);
    let at = |l: f64| e.matrix_at(l).select_columns(tau_bar.iter());
    let cond1 =
        linalg::numerical_rank(&at(lambda))? == linalg::numerical_rank(&at(lambda0))?;

    // Support signs: components of the least-squares support solution must
    // stay positive on B ∪ B⁺ positions and negative on B⁻ positions.
    let pinv = linalg::pseudo_inverse(&at(lambda))?;
    let w = pinv * &e.b;
    let mut cond2 = true;
    for (k, &col) in tau_bar.iter().enumerate() {
        let want_negative = col >= e.n && partition.b_minus.binary_search(&(col - e.n)).is_ok();
        let ok = if want_negative { w[k] < 0.0 } else { w[k] > 0.0 };
        if !ok {
            cond2 = false;
            break;
        }
    }

    // Reduced costs on the original data: s_p(λ) = c_p − c_τᵀ A_τ(λ)† A_p(λ)
    // must stay strictly positive for every nonsupport column p.
    let full = e.structural_at(lambda);
    let cost = e.structural_cost();
    let a_tau = full.select_columns(partition.b.iter());
    let pinv_tau = linalg::pseudo_inverse(&a_tau)?;
    let c_tau = Vector::from_fn(partition.b.len(), |k, _| cost[partition.b[k]]);
    let y = pinv_tau.transpose() * &c_tau;
    let mut cond3 = true;
    for &col in &partition.n {
        let a_col = full.column(col);
        let s = cost[col] - y.dot(&a_col.into_owned());
        if !(s > 0.0) {
            cond3 = false;
            break;
        }
    }

    Ok((cond1, cond2, cond3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// min −x1 − x2 with x1 + x2 ≤ 1 (x3 slack), perturbed by
    /// ΔA = [1, −1, 0], Δb = 1.
    fn tiny() -> ParametricLp {
        ParametricLp::new(
            Matrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]),
            Vector::from_row_slice(&[1.0]),
            Vector::from_row_slice(&[-1.0, -1.0, 0.0]),
            Matrix::from_row_slice(1, 3, &[1.0, -1.0, 0.0]),
            Vector::from_row_slice(&[1.0]),
        )
        .expect("shapes")
    }

    fn partition_at(p: &ParametricLp, lambda: f64) -> InducedPoint {
        let e = embed(p);
        match induced_partition(&e, lambda).expect("probe") {
            InducedOutcome::Optimal(pt) => pt,
            other => panic!("expected an optimum at λ = {lambda}, got {other:?}"),
        }
    }

    #[test]
    fn embedding_reproduces_the_instance() {
        let p = tiny();
        let e = embed(&p);
        assert_eq!(e.a0.shape(), (2, 4));
        // At any λ, eliminating z from the embedded system must reproduce
        // the plain instance: feed a feasible x through both forms.
        let lambda = 0.3;
        let inst = p.instance_at(lambda);
        let x = Vector::from_row_slice(&[0.2, 0.5, 0.0]);
        let r_plain = &inst.a * &x - &inst.b;
        let z = &p.delta_a * &x - &p.delta_b;
        let mut xz = Vector::zeros(4);
        for j in 0..3 {
            xz[j] = x[j];
        }
        xz[3] = z[0];
        let r_emb = e.matrix_at(lambda) * &xz - &e.b;
        assert_relative_eq!(r_emb[0], r_plain[0], epsilon = 1e-12);
        assert_relative_eq!(r_emb[1], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn split_columns_are_negatives() {
        let e = embed(&tiny());
        let lp = e.instantiate(0.4);
        // z⁺ column (index 3) and z⁻ column (index 4) must be exact
        // negatives of each other.
        for i in 0..2 {
            assert_eq!(lp.a[(i, 3)], -lp.a[(i, 4)]);
        }
    }

    #[test]
    fn interior_point_right_of_center() {
        // At λ = 0.1 the optimum is x = (0, (1+λ)/(1−λ), 0) with
        // z = −x2 − 1 < 0.
        let p = tiny();
        let pt = partition_at(&p, 0.1);
        assert_eq!(pt.partition.b, alloc::vec![1]);
        assert_eq!(pt.partition.n, alloc::vec![0, 2]);
        assert_eq!(pt.partition.b_minus, alloc::vec![0]);
        assert!(pt.partition.b_plus.is_empty());
        assert!(pt.partition.n_zero.is_empty());
        let e = embed(&p);
        let (x, z) = e.split_solution(&pt.solution);
        assert_relative_eq!(x[1], 1.1 / 0.9, epsilon = 1e-8);
        assert_relative_eq!(z[0], -1.1 / 0.9 - 1.0, epsilon = 1e-8);
        assert_relative_eq!(pt.solution.objective, -1.1 / 0.9, epsilon = 1e-8);
    }

    #[test]
    fn degenerate_center_needs_face_probes() {
        // At λ = 0 the optimal face is the whole edge x1 + x2 = 1, so both
        // structural columns are positive somewhere, and z = 2x1 − 2 ranges
        // over [−2, 0]: negative somewhere, never positive.
        let pt = partition_at(&tiny(), 0.0);
        assert_eq!(pt.partition.b, alloc::vec![0, 1]);
        assert_eq!(pt.partition.n, alloc::vec![2]);
        assert_eq!(pt.partition.b_minus, alloc::vec![0]);
        assert!(pt.partition.b_plus.is_empty());
        assert!(pt.partition.n_zero.is_empty());
        assert!(pt.warnings.is_empty());
    }

    #[test]
    fn interior_point_left_of_center() {
        // At λ = −0.1 the optimum is the unique vertex x = (1, 0, 0) with
        // z ≡ 0 on the (singleton) face.
        let pt = partition_at(&tiny(), -0.1);
        assert_eq!(pt.partition.b, alloc::vec![0]);
        assert_eq!(pt.partition.n, alloc::vec![1, 2]);
        assert_eq!(pt.partition.n_zero, alloc::vec![0]);
        assert!(pt.partition.b_plus.is_empty());
        assert!(pt.partition.b_minus.is_empty());
    }

    #[test]
    fn unbounded_beyond_the_domain() {
        let e = embed(&tiny());
        assert_eq!(induced_partition(&e, 1.0).expect("probe"), InducedOutcome::Unbounded);
        assert_eq!(induced_partition(&e, -1.0).expect("probe"), InducedOutcome::Unbounded);
    }

    #[test]
    fn tau_bar_interleaves_auxiliaries() {
        let part = InducedPartition {
            b: alloc::vec![0, 2],
            n: alloc::vec![1],
            b_plus: alloc::vec![1],
            b_minus: alloc::vec![0, 2],
            n_zero: alloc::vec![],
        };
        assert_eq!(part.tau_bar(3), alloc::vec![0, 2, 3, 4, 5]);
    }

    #[test]
    fn conditions_hold_inside_and_fail_outside() {
        let p = tiny();
        let e = embed(&p);
        let pt = partition_at(&p, 0.1);
        // The partition anchored at 0.1 is invariant exactly on (0, 1).
        let inside = check_induced_conditions(&e, &pt.partition, 0.1, 0.5).expect("check");
        assert_eq!(inside, (true, true, true));
        let (_, cond2_right, _) =
            check_induced_conditions(&e, &pt.partition, 0.1, 1.2).expect("check");
        assert!(!cond2_right, "support signs must break beyond λ = 1");
        let (_, _, cond3_left) =
            check_induced_conditions(&e, &pt.partition, 0.1, -0.05).expect("check");
        assert!(!cond3_left, "reduced costs must break left of λ = 0");
    }

    #[test]
    fn conditions_at_the_anchor_are_true() {
        let p = tiny();
        let e = embed(&p);
        for lambda0 in [-0.5, -0.1, 0.35, 0.9] {
            let pt = partition_at(&p, lambda0);
            let checks =
                check_induced_conditions(&e, &pt.partition, lambda0, lambda0).expect("check");
            assert_eq!(checks, (true, true, true), "anchor λ = {lambda0}");
        }
    }

    #[test]
    fn structural_views_recover_original_data() {
        let p = tiny();
        let e = embed(&p);
        let lambda = 0.7;
        let expect = &p.a + &p.delta_a * lambda;
        assert_relative_eq!((e.structural_at(lambda) - expect).norm(), 0.0, epsilon = 1e-12);
        assert_relative_eq!((e.structural_cost() - &p.c).norm(), 0.0, epsilon = 1e-12);
    }
}
