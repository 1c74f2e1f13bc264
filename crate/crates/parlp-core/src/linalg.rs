//! Pseudo-inverses, eigenvalue multisets, and the realization identity.
//!
//! Production pseudo-inverses go through the SVD with a relative singular
//! value cutoff. A combinatorial alternative — the convex combination of
//! padded submatrix inverses weighted by squared subdeterminants — is kept as
//! an independent oracle for small matrices ([`pinv_volume_oracle`]); the two
//! routes are never merged, so tests can always cross-check them.
//!
//! Eigenvalue extraction is dense real Schur. The analysis only ever needs
//! *nonzero* eigenvalues of products T·Q, and uses whichever of T·Q / Q·T is
//! smaller ([`smaller_product_eigenvalues`]) — their nonzero spectra agree.
//!
//! [`realization_pair`] packages the scalar identity
//!
//! ```text
//!     1 + λ·cᵀ(I + λC)⁻¹ b  =  ∏_j (1 + λ·α×_j) / ∏_j (1 + λ·α_j)
//! ```
//!
//! with α the eigenvalues of C and α× the eigenvalues of C + b·cᵀ — the
//! engine behind every closed-form function this crate produces.

use alloc::format;
use alloc::vec::Vec;

use crate::scalar;
use crate::tolerances::{
    JACOBI_OFF_TOL, MAX_DECOMP_ITER, MAX_JACOBI_SWEEPS, PINV_CUTOFF_REL, TOL_EIG, TOL_MP,
};
use crate::{Complex, Error, Matrix, Result, Vector};

/// Moore–Penrose pseudo-inverse via SVD.
///
/// Singular values below `σ_max · PINV_CUTOFF_REL` are treated as zero. The
/// four Penrose identities are verified on the result (relative Frobenius
/// residuals ≤ `TOL_MP`); violation reports a numeric failure rather than
/// returning a silently wrong inverse.
pub fn pseudo_inverse(m: &Matrix) -> Result<Matrix> {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Ok(Matrix::zeros(c, r));
    }
    // Decompose on the tall side so the Jacobi sweep orthogonalizes the fewer
    // of the two column sets; the pseudo-inverse is assembled directly from
    // the kept singular triplets, so orientation only changes which factor
    // supplies rows and which supplies columns.
    let transpose = r < c;
    let tall = if transpose { m.transpose() } else { m.clone() };
    let (sigma, w, v) = jacobi_svd_tall(&tall)?;
    let sigma_max = sigma.iter().fold(0.0_f64, |acc, &s| acc.max(s));
    let cutoff = sigma_max * PINV_CUTOFF_REL;
    let mut pinv = Matrix::zeros(c, r);
    for i in 0..sigma.len() {
        let s = sigma[i];
        if !(s > cutoff && s > 0.0) {
            continue;
        }
        // tall = W·Vᵀ with W = U·Σ, so tall† accumulates v_i·w_iᵀ/σ_i².
        let scale = 1.0 / (s * s);
        if transpose {
            // m = tallᵀ = V·Wᵀ ⇒ m† = (tall†)ᵀ with rows/cols swapped.
            pinv += w.column(i) * (v.column(i).transpose() * scale);
        } else {
            pinv += v.column(i) * (w.column(i).transpose() * scale);
        }
    }
    verify_penrose(m, &pinv)?;
    Ok(pinv)
}

/// Thin SVD of a tall matrix by one-sided Jacobi rotations.
///
/// Returns `(σ, W, V)` with `W = U·Σ` (columns mutually orthogonal,
/// `σ_i = ‖w_i‖`) and `tall = W·Vᵀ` maintained exactly through every
/// rotation. One-sided Jacobi is chosen for the production path because it is
/// unconditionally deterministic, keeps singular vectors paired with their
/// values by construction, and delivers high relative accuracy on the small
/// singular values that drive rank decisions.
fn jacobi_svd_tall(tall: &Matrix) -> Result<(Vector, Matrix, Matrix)> {
    let (rows, cols) = tall.shape();
    debug_assert!(rows >= cols);
    let mut w = tall.clone();
    let mut v = Matrix::identity(cols, cols);
    let mut converged = false;
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        // A column annihilated by an earlier rotation is left with rounding
        // noise of order ε·‖W‖ pointing in an arbitrary direction. Its angle
        // to other columns is random, so a purely pair-relative convergence
        // test keeps rotating it forever. Freeze such columns: their singular
        // values sit far below every downstream cutoff.
        let max_sq = (0..cols)
            .map(|i| w.column(i).norm_squared())
            .fold(0.0_f64, f64::max);
        let noise = cols as f64 * f64::EPSILON;
        let dead = noise * noise * max_sq;
        for i in 0..cols {
            for j in (i + 1)..cols {
                let a = w.column(i).norm_squared();
                let b = w.column(j).norm_squared();
                let g = w.column(i).dot(&w.column(j));
                if a <= dead || b <= dead || scalar::abs(g) <= JACOBI_OFF_TOL * scalar::sqrt(a * b)
                {
                    continue;
                }
                rotated = true;
                // Rotation angle zeroing the (i,j) entry of WᵀW, with the
                // root of t² + 2ζt − 1 chosen for stability (|t| ≤ 1).
                let zeta = (b - a) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + scalar::sqrt(1.0 + zeta * zeta))
                } else {
                    -1.0 / (-zeta + scalar::sqrt(1.0 + zeta * zeta))
                };
                let cs = 1.0 / scalar::sqrt(1.0 + t * t);
                let sn = cs * t;
                for row in 0..rows {
                    let x = w[(row, i)];
                    let y = w[(row, j)];
                    w[(row, i)] = cs * x - sn * y;
                    w[(row, j)] = sn * x + cs * y;
                }
                for row in 0..cols {
                    let x = v[(row, i)];
                    let y = v[(row, j)];
                    v[(row, i)] = cs * x - sn * y;
                    v[(row, j)] = sn * x + cs * y;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NumericFailure(format!(
            "Jacobi SVD did not converge within {MAX_JACOBI_SWEEPS} sweeps on a {rows}×{cols} matrix"
        )));
    }
    let sigma = Vector::from_fn(cols, |i, _| w.column(i).norm());
    Ok((sigma, w, v))
}

/// Check the four Penrose identities with relative Frobenius residuals.
fn verify_penrose(m: &Matrix, x: &Matrix) -> Result<()> {
    let mx = m * x;
    let xm = x * m;
    let checks = [
        ((&mx * m) - m, 1.0 + m.norm(), "M·X·M = M"),
        ((&xm * x) - x, 1.0 + x.norm(), "X·M·X = X"),
        (mx.transpose() - &mx, 1.0 + mx.norm(), "(M·X)ᵀ = M·X"),
        (xm.transpose() - &xm, 1.0 + xm.norm(), "(X·M)ᵀ = X·M"),
    ];
    for (resid, scale, name) in checks {
        let rel = resid.norm() / scale;
        if !(rel <= TOL_MP) {
            return Err(Error::NumericFailure(format!(
                "pseudo-inverse violates {name}: relative residual {rel:.3e} (> {TOL_MP:.0e})"
            )));
        }
    }
    Ok(())
}

/// Numerical rank with the same cutoff convention as [`pseudo_inverse`].
pub fn numerical_rank(m: &Matrix) -> Result<usize> {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Ok(0);
    }
    let tall = if r < c { m.transpose() } else { m.clone() };
    let (sigma, _, _) = jacobi_svd_tall(&tall)?;
    let sigma_max = sigma.iter().fold(0.0_f64, |acc, &s| acc.max(s));
    let cutoff = sigma_max * PINV_CUTOFF_REL;
    Ok(sigma.iter().filter(|&&s| s > cutoff && s > 0.0).count())
}

/// Pseudo-inverse assembled combinatorially from nonsingular r×r submatrices:
///
/// ```text
///     M† = Σ_{I,J} t_IJ · pad(M_IJ⁻¹)   with   t_IJ = det²M_IJ / Σ det²
/// ```
///
/// where I, J range over row/column subsets of size r = rank(M) and
/// `pad(·)` places the inverse at positions (J, I) of an n×m zero matrix.
/// Exponential in the dimensions, hence restricted to at most 6×6; exists
/// purely as an SVD-independent oracle (rank here comes from Gaussian
/// elimination, determinants from cofactor expansion).
pub fn pinv_volume_oracle(m: &Matrix) -> Result<Matrix> {
    let (rows, cols) = m.shape();
    if rows > 6 || cols > 6 {
        return Err(Error::UnsupportedSize(format!(
            "volume oracle supports at most 6×6 matrices, got {rows}×{cols}"
        )));
    }
    if rows == 0 || cols == 0 {
        return Ok(Matrix::zeros(cols, rows));
    }
    let r = elimination_rank(m);
    if r == 0 {
        return Ok(Matrix::zeros(cols, rows));
    }
    let mut total_weight = 0.0;
    let mut acc = Matrix::zeros(cols, rows);
    let row_sets = combinations(rows, r);
    let col_sets = combinations(cols, r);
    for i_set in &row_sets {
        for j_set in &col_sets {
            let sub = m.select_rows(i_set.iter()).select_columns(j_set.iter());
            let d = determinant(&sub);
            total_weight += d * d;
            if d == 0.0 {
                continue;
            }
            // t_IJ · M_IJ⁻¹ = d² · adj/d = d · adj — no division, so exactly
            // singular submatrices contribute nothing instead of NaN.
            let scaled_inv = adjugate(&sub) * d;
            for (a, &jj) in j_set.iter().enumerate() {
                for (b, &ii) in i_set.iter().enumerate() {
                    acc[(jj, ii)] += scaled_inv[(a, b)];
                }
            }
        }
    }
    if total_weight <= 0.0 {
        return Err(Error::NumericFailure(
            "volume oracle: all rank-sized subdeterminants vanish".into(),
        ));
    }
    Ok(acc / total_weight)
}

/// Rank by Gaussian elimination with partial pivoting — deliberately not the
/// SVD, so the oracle's rank decision is independent of the production path.
fn elimination_rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let threshold = 1e-10 * a.amax().max(1e-300);
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        // Find pivot in this column at or below `rank`.
        let (mut piv_row, mut piv_val) = (rank, scalar::abs(a[(rank, col)]));
        for i in rank + 1..rows {
            let v = scalar::abs(a[(i, col)]);
            if v > piv_val {
                piv_row = i;
                piv_val = v;
            }
        }
        if piv_val <= threshold {
            col += 1;
            continue;
        }
        a.swap_rows(rank, piv_row);
        for i in rank + 1..rows {
            let f = a[(i, col)] / a[(rank, col)];
            for j in col..cols {
                let upd = a[(rank, j)] * f;
                a[(i, j)] -= upd;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Determinant by cofactor expansion along the first row (sizes ≤ 6).
fn determinant(m: &Matrix) -> f64 {
    let n = m.nrows();
    debug_assert_eq!(n, m.ncols());
    match n {
        0 => 1.0,
        1 => m[(0, 0)],
        2 => m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        _ => {
            let mut det = 0.0;
            for j in 0..n {
                let minor = strike(m, 0, j);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                det += sign * m[(0, j)] * determinant(&minor);
            }
            det
        }
    }
}

/// Adjugate (transpose of the cofactor matrix): M · adj(M) = det(M) · I.
fn adjugate(m: &Matrix) -> Matrix {
    let n = m.nrows();
    if n == 1 {
        return Matrix::from_element(1, 1, 1.0);
    }
    let mut adj = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            adj[(j, i)] = sign * determinant(&strike(m, i, j));
        }
    }
    adj
}

/// Copy of `m` with row `i` and column `j` removed.
fn strike(m: &Matrix, i: usize, j: usize) -> Matrix {
    let (rows, cols) = m.shape();
    Matrix::from_fn(rows - 1, cols - 1, |r, c| {
        m[(r + usize::from(r >= i), c + usize::from(c >= j))]
    })
}

/// All k-element subsets of {0..n}, lexicographic.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// All eigenvalues of a square matrix (full multiset, `n` values), via real
/// Schur decomposition.
pub fn eigenvalues(m: &Matrix) -> Result<Vec<Complex>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::Shape(format!(
            "eigenvalues need a square matrix, got {}×{}",
            m.nrows(),
            m.ncols()
        )));
    }
    match n {
        0 => Ok(Vec::new()),
        1 => Ok([Complex::new(m[(0, 0)], 0.0)].into()),
        // Exactly triangular matrices (the zero matrix in particular, which
        // appears whenever a perturbation touches only the right-hand side)
        // are read off the diagonal: QR iteration can stall on them.
        _ if is_triangular(m) => Ok((0..n).map(|i| Complex::new(m[(i, i)], 0.0)).collect()),
        _ => {
            let schur = nalgebra::linalg::Schur::try_new(m.clone(), f64::EPSILON, MAX_DECOMP_ITER)
                .ok_or_else(|| {
                    Error::NumericFailure(format!("Schur iteration failed on a {n}×{n} matrix"))
                })?;
            Ok(schur.complex_eigenvalues().iter().copied().collect())
        }
    }
}

/// True when every entry strictly below or every entry strictly above the
/// diagonal is exactly zero.
fn is_triangular(m: &Matrix) -> bool {
    let n = m.nrows();
    let mut lower_zero = true;
    let mut upper_zero = true;
    for i in 0..n {
        for j in 0..i {
            if m[(i, j)] != 0.0 {
                lower_zero = false;
            }
            if m[(j, i)] != 0.0 {
                upper_zero = false;
            }
        }
        if !lower_zero && !upper_zero {
            return false;
        }
    }
    lower_zero || upper_zero
}

/// Eigenvalues of `m` with magnitude ≥ `TOL_EIG · max(1, ‖m‖_F)`, padded
/// with exact zeros up to `pad_to` entries (padding never removes genuine
/// nonzeros; if more than `pad_to` survive the filter, all are returned).
pub fn nonzero_eigenvalues(m: &Matrix, pad_to: usize) -> Result<Vec<Complex>> {
    let tol = TOL_EIG * m.norm().max(1.0);
    let mut out: Vec<Complex> = eigenvalues(m)?
        .into_iter()
        .filter(|&e| scalar::cabs(e) >= tol)
        .collect();
    while out.len() < pad_to {
        out.push(Complex::new(0.0, 0.0));
    }
    Ok(out)
}

/// Nonzero eigenvalues of T·Q (equivalently Q·T), computed from whichever
/// product has the smaller dimension, padded with zeros to `pad_to`.
pub fn smaller_product_eigenvalues(t: &Matrix, q: &Matrix, pad_to: usize) -> Result<Vec<Complex>> {
    let (a, b) = t.shape();
    let (b2, a2) = q.shape();
    if b != b2 || a != a2 {
        return Err(Error::Shape(format!(
            "product eigenvalues need T (a×b) and Q (b×a), got {a}×{b} and {b2}×{a2}"
        )));
    }
    let product = if a <= b { t * q } else { q * t };
    nonzero_eigenvalues(&product, pad_to)
}

/// Eigenvalue pair (α, α×) realizing f(λ) = 1 + λ·cᵀ(I+λC)⁻¹b as the ratio
/// ∏(1+λα×)/∏(1+λα): α are the eigenvalues of C, α× those of C + b·cᵀ. Both
/// lists have length l (full multisets including zeros).
pub fn realization_pair(c: &Matrix, b: &Vector, cv: &Vector) -> Result<(Vec<Complex>, Vec<Complex>)> {
    let l = c.nrows();
    if c.ncols() != l || b.len() != l || cv.len() != l {
        return Err(Error::Shape(format!(
            "realization_pair needs square C with matching vectors, got C {}×{}, b {}, c {}",
            c.nrows(),
            c.ncols(),
            b.len(),
            cv.len()
        )));
    }
    let alphas = eigenvalues(c)?;
    let cross = c + b * cv.transpose();
    let alpha_cross = eigenvalues(&cross)?;
    Ok((alphas, alpha_cross))
}
