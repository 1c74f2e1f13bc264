//! Dense two-phase revised simplex — the workhorse behind every LP solve in
//! this crate.
//!
//! Scope: minimization over {x ≥ 0 : Ax = b} at the sizes this analysis
//! meets (tens of rows, low hundreds of columns). Each iteration
//! refactorizes the basis with a fresh LU decomposition; simplicity and
//! numerical transparency are worth more here than sparse update tricks.
//!
//! Anti-cycling: pricing starts with Dantzig's rule and switches permanently
//! to Bland's rule once the iteration count suggests degenerate stalling.
//! Redundant equality rows are detected during phase-1 cleanup and dropped;
//! their multipliers are reported as zero, which stays dual-feasible because
//! a dropped row is a linear combination of the others.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::linalg::LU;

use crate::tolerances::TOL_FEAS;
use crate::{Error, Matrix, Result, Vector};

/// Pivot magnitude below which a column entry is unusable.
const TOL_PIVOT: f64 = 1e-9;
/// Reduced-cost threshold (relative to cost magnitude) for entering columns.
const TOL_REDUCED: f64 = 1e-9;

pub(crate) enum SimplexResult {
    Optimal(SimplexSolution),
    Infeasible,
    Unbounded,
}

pub(crate) struct SimplexSolution {
    /// Primal point, length n.
    pub x: Vector,
    /// Row multipliers in the original row order (dropped rows get 0).
    pub y: Vector,
    /// cᵀx at the returned point.
    pub objective: f64,
}

/// Solve min cᵀx subject to Ax = b, x ≥ 0.
pub(crate) fn solve(a: &Matrix, b: &Vector, c: &Vector) -> Result<SimplexResult> {
    let (m, n) = a.shape();
    if b.len() != m || c.len() != n {
        return Err(Error::Shape(format!(
            "simplex needs A {m}×{n} with b of length {} = {m} and c of length {} = {n}",
            b.len(),
            c.len()
        )));
    }
    if m == 0 {
        if (0..n).any(|j| c[j] < -TOL_REDUCED * (1.0 + c.amax())) {
            return Ok(SimplexResult::Unbounded);
        }
        return Ok(SimplexResult::Optimal(SimplexSolution {
            x: Vector::zeros(n),
            y: Vector::zeros(0),
            objective: 0.0,
        }));
    }

    // Flip rows until the right-hand side is nonnegative; remember the signs
    // so the multipliers can be mapped back (y_original = sign · y_flipped).
    let signs: Vec<f64> = (0..m).map(|i| if b[i] < 0.0 { -1.0 } else { 1.0 }).collect();
    let mut a_hat = a.clone();
    let mut b_hat = b.clone();
    for i in 0..m {
        if signs[i] < 0.0 {
            for j in 0..n {
                a_hat[(i, j)] = -a_hat[(i, j)];
            }
            b_hat[i] = -b_hat[i];
        }
    }

    let mut w = Worker {
        a: a_hat,
        b: b_hat,
        row_ids: (0..m).collect(),
        art_row: (0..m).collect(),
        basis: (n..n + m).collect(),
        n,
    };

    // Phase 1: minimize the total artificial mass.
    let phase1 = w.optimize(&|_| 0.0, 1.0)?;
    let LoopOutcome::Optimal { x_basic, .. } = phase1 else {
        return Err(Error::NumericFailure(
            "phase-1 subproblem reported unbounded, which is impossible for nonnegative costs"
                .into(),
        ));
    };
    let infeasibility: f64 = w
        .basis
        .iter()
        .zip(x_basic.iter())
        .filter(|(&j, _)| j >= n)
        .map(|(_, &v)| v.max(0.0))
        .sum();
    if infeasibility > TOL_FEAS * (1.0 + b.amax()) {
        return Ok(SimplexResult::Infeasible);
    }
    w.evict_artificials()?;

    // Phase 2 on the cleaned system with the real costs.
    let phase2 = w.optimize(&|j| c[j], 0.0)?;
    let LoopOutcome::Optimal { x_basic, y } = phase2 else {
        return Ok(SimplexResult::Unbounded);
    };

    let mut x = Vector::zeros(n);
    for (i, &j) in w.basis.iter().enumerate() {
        debug_assert!(j < n, "artificial survived phase-1 cleanup");
        x[j] = x_basic[i];
    }
    let mut y_full = Vector::zeros(m);
    for (p, &orig) in w.row_ids.iter().enumerate() {
        y_full[orig] = signs[orig] * y[p];
    }
    Ok(SimplexResult::Optimal(SimplexSolution {
        objective: c.dot(&x),
        x,
        y: y_full,
    }))
}

enum LoopOutcome {
    Optimal { x_basic: Vector, y: Vector },
    Unbounded,
}

struct Worker {
    /// Current structural columns (rows may shrink as redundancy is removed).
    a: Matrix,
    b: Vector,
    /// Original index of each current row.
    row_ids: Vec<usize>,
    /// Original row each artificial variable was created for.
    art_row: Vec<usize>,
    /// Basic column per basis slot; values ≥ n are artificials.
    basis: Vec<usize>,
    n: usize,
}

impl Worker {
    fn rows(&self) -> usize {
        self.a.nrows()
    }

    fn column(&self, j: usize) -> Vector {
        if j < self.n {
            self.a.column(j).into_owned()
        } else {
            let target = self.art_row[j - self.n];
            let p = self
                .row_ids
                .iter()
                .position(|&r| r == target)
                .expect("artificial refers to a dropped row");
            let mut e = Vector::zeros(self.rows());
            e[p] = 1.0;
            e
        }
    }

    fn basis_matrix(&self) -> Matrix {
        let m = self.rows();
        Matrix::from_fn(m, m, |i, slot| self.column(self.basis[slot])[i])
    }

    /// Run the simplex loop with the given structural cost and artificial
    /// cost. Artificial columns never (re-)enter the basis.
    fn optimize(&mut self, cost: &dyn Fn(usize) -> f64, art_cost: f64) -> Result<LoopOutcome> {
        let m = self.rows();
        let bland_after = 3 * (m + self.n) + 20;
        let cap = 500 + 60 * (m + self.n);
        let cost_scale = 1.0 + (0..self.n).fold(art_cost.abs(), |s, j| s.max(cost(j).abs()));
        let tol_enter = TOL_REDUCED * cost_scale;

        for iter in 0..=cap {
            let bmat = self.basis_matrix();
            let lu = LU::new(bmat.clone());
            let x_basic = lu.solve(&self.b).ok_or_else(|| singular(m))?;
            let c_basic = Vector::from_fn(m, |slot, _| {
                let j = self.basis[slot];
                if j < self.n {
                    cost(j)
                } else {
                    art_cost
                }
            });
            let y = LU::new(bmat.transpose())
                .solve(&c_basic)
                .ok_or_else(|| singular(m))?;

            let mut basic = alloc::vec![false; self.n];
            for &j in &self.basis {
                if j < self.n {
                    basic[j] = true;
                }
            }
            let a_t_y = self.a.transpose() * &y;
            let use_bland = iter >= bland_after;
            let mut entering: Option<(usize, f64)> = None;
            for j in 0..self.n {
                if basic[j] {
                    continue;
                }
                let reduced = cost(j) - a_t_y[j];
                if reduced < -tol_enter {
                    if use_bland {
                        entering = Some((j, reduced));
                        break;
                    }
                    match entering {
                        Some((_, best)) if reduced >= best => {}
                        _ => entering = Some((j, reduced)),
                    }
                }
            }
            let Some((enter, _)) = entering else {
                return Ok(LoopOutcome::Optimal { x_basic, y });
            };

            let direction = lu
                .solve(&self.column(enter))
                .ok_or_else(|| singular(m))?;
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..m {
                if direction[i] > TOL_PIVOT {
                    let ratio = x_basic[i].max(0.0) / direction[i];
                    let replace = match leave {
                        None => true,
                        Some((best_i, best)) => {
                            ratio < best - 1e-12
                                || (ratio <= best + 1e-12 && prefer_leaving(self, i, best_i))
                        }
                    };
                    if replace {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((leave, _)) = leave else {
                return Ok(LoopOutcome::Unbounded);
            };
            self.basis[leave] = enter;
        }
        Err(Error::NumericFailure(format!(
            "simplex exceeded the iteration cap ({cap}) — likely severe degeneracy"
        )))
    }

    /// After phase 1: pivot every basic artificial onto a structural column,
    /// or prove its row redundant and drop the row.
    fn evict_artificials(&mut self) -> Result<()> {
        loop {
            let Some(slot) = self.basis.iter().position(|&j| j >= self.n) else {
                return Ok(());
            };
            let m = self.rows();
            let bmat = self.basis_matrix();
            let lu_t = LU::new(bmat.transpose());
            let mut e = Vector::zeros(m);
            e[slot] = 1.0;
            // v = B⁻ᵀe_slot; vᵀÂ is the basis-relative row of the tableau.
            let v = lu_t.solve(&e).ok_or_else(|| singular(m))?;
            let tableau_row = self.a.transpose() * &v;
            let scale = 1.0 + self.a.amax();
            let mut basic = alloc::vec![false; self.n];
            for &j in &self.basis {
                if j < self.n {
                    basic[j] = true;
                }
            }
            let pivot = (0..self.n)
                .find(|&j| !basic[j] && tableau_row[j].abs() > TOL_PIVOT * scale);
            match pivot {
                Some(j) => self.basis[slot] = j,
                None => {
                    // Row is a combination of the others: drop the row the
                    // artificial was created for, together with its slot.
                    let own = self.art_row[self.basis[slot] - self.n];
                    let p = self
                        .row_ids
                        .iter()
                        .position(|&r| r == own)
                        .expect("artificial refers to a dropped row");
                    self.a = self.a.clone().remove_row(p);
                    self.b = self.b.clone().remove_row(p);
                    self.row_ids.remove(p);
                    self.basis.remove(slot);
                }
            }
        }
    }
}

/// Tie-break for the ratio test: kick artificials out first, then lowest
/// column index (Bland-compatible, finite even under degeneracy).
fn prefer_leaving(w: &Worker, candidate: usize, incumbent: usize) -> bool {
    let cand_art = w.basis[candidate] >= w.n;
    let inc_art = w.basis[incumbent] >= w.n;
    if cand_art != inc_art {
        return cand_art;
    }
    w.basis[candidate] < w.basis[incumbent]
}

fn singular(m: usize) -> Error {
    Error::NumericFailure(format!("basis matrix of order {m} became numerically singular"))
}
