//! Real polynomial arithmetic and root extraction.
//!
//! Polynomials carry their coefficients in ascending degree order. Most
//! polynomials in this crate are *centered*: they live in the local variable
//! u = λ − λ₀ of some anchor λ₀ (the center is tracked by whoever owns the
//! polynomial, not here). Centering matters numerically — the eigenvalue
//! products ∏(1 + u·α_j) have O(1) coefficients in u, while their expanded
//! plain-λ counterparts lose dozens of digits to cancellation once λ₀ is
//! large. [`Polynomial::shifted`] converts between centers when a plain form
//! is genuinely needed (display, cross-center comparison).
//!
//! Root finding goes through the companion matrix: eigenvalues of the
//! companion of the monic normalization, acceptance of near-real eigenvalues,
//! then a few Newton polish steps. Multiple roots are collapsed to distinct
//! values with recorded multiplicity.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::scalar;
use crate::tolerances::{
    NEAR_REAL_WINDOW, ROOT_NEWTON_STEPS, TOL_CONJ, TOL_ROOT_IMAG, TOL_ROOT_RESID, TOL_TRIM,
};
use crate::{Complex, Error, Matrix, Result};

/// Dense univariate polynomial with real coefficients, ascending degree.
///
/// # Invariants
///
/// * `coeffs` is non-empty; the zero polynomial is represented as `[0.0]`.
/// * After [`Polynomial::trim`], the leading coefficient is nonzero unless
///   the polynomial is zero, and no retained coefficient is below `TOL_TRIM`
///   relative to the largest magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

/// A distinct real root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: usize,
}

impl Polynomial {
    /// Build from ascending coefficients, trimming trailing near-zeros.
    pub fn new(coeffs: impl Into<Vec<f64>>) -> Self {
        let mut p = Self { coeffs: coeffs.into() };
        if p.coeffs.is_empty() {
            p.coeffs.push(0.0);
        }
        p.trim();
        p
    }

    /// The constant polynomial `c`.
    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(1.0)
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// Ascending coefficients (never empty).
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree after trimming; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True when every coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Leading (highest-degree) coefficient.
    pub fn leading(&self) -> f64 {
        *self.coeffs.last().expect("coeffs nonempty")
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> f64 {
        self.coeffs[0]
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, &c| m.max(scalar::abs(c)))
    }

    /// Drop trailing coefficients below `TOL_TRIM` relative to the largest
    /// magnitude, so `degree` reflects the numerically meaningful degree.
    pub fn trim(&mut self) {
        let scale = self.max_coeff();
        let cut = TOL_TRIM * scale;
        while self.coeffs.len() > 1 {
            let last = *self.coeffs.last().expect("nonempty");
            if scalar::abs(last) <= cut {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        if self.coeffs.len() == 1 && scalar::abs(self.coeffs[0]) <= cut {
            self.coeffs[0] = 0.0;
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a complex point.
    pub fn eval_complex(&self, x: Complex) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// First derivative.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::zero();
        }
        let d: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Polynomial::new(d)
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.coeffs.get(k).copied().unwrap_or(0.0)
                + other.coeffs.get(k).copied().unwrap_or(0.0);
        }
        Polynomial::new(out)
    }

    /// Difference `self − other`.
    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(-1.0))
    }

    /// Product of two polynomials (naive convolution; degrees stay small).
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&c| c * s).collect::<Vec<_>>())
    }

    /// Taylor shift: returns q with q(x) = p(x + s), via repeated synthetic
    /// division (Shaw–Traub). Exact in exact arithmetic; backward stable for
    /// the small degrees used here.
    pub fn shifted(&self, s: f64) -> Polynomial {
        let mut c = self.coeffs.clone();
        let n = c.len();
        // In-place Horner cascade: pass k fixes c[k] = p^(k)(s)/k!.
        for k in 0..n {
            for i in (k..n - 1).rev() {
                let bump = c[i + 1] * s;
                c[i] += bump;
            }
        }
        Polynomial::new(c)
    }

    /// Divide by the linear factor `(x − r)`: returns (quotient, remainder).
    pub fn div_linear(&self, r: f64) -> (Polynomial, f64) {
        if self.coeffs.len() == 1 {
            return (Polynomial::zero(), self.coeffs[0]);
        }
        let n = self.coeffs.len();
        let mut q = vec![0.0; n - 1];
        let mut carry = 0.0;
        for k in (0..n).rev() {
            let acc = self.coeffs[k] + carry;
            if k == 0 {
                return (Polynomial::new(q), acc);
            }
            q[k - 1] = acc;
            carry = acc * r;
        }
        unreachable!("loop returns at k == 0");
    }

    /// Divide by the monic quadratic `x² + px + q`: returns
    /// (quotient, (rem1, rem0)) with remainder `rem1·x + rem0`.
    pub fn div_quadratic(&self, p: f64, q: f64) -> (Polynomial, (f64, f64)) {
        let n = self.coeffs.len();
        if n <= 2 {
            let r1 = self.coeffs.get(1).copied().unwrap_or(0.0);
            return (Polynomial::zero(), (r1, self.coeffs[0]));
        }
        let mut quot = vec![0.0; n - 2];
        let mut b_k1 = 0.0; // quotient coefficient one degree above current
        let mut b_k2 = 0.0; // two degrees above
        for k in (2..n).rev() {
            let b = self.coeffs[k] - p * b_k1 - q * b_k2;
            quot[k - 2] = b;
            b_k2 = b_k1;
            b_k1 = b;
        }
        let r1 = self.coeffs[1] - p * b_k1 - q * b_k2;
        let r0 = self.coeffs[0] - q * b_k1;
        (Polynomial::new(quot), (r1, r0))
    }

    /// Remove the known root at x = 0: requires the constant coefficient to
    /// be ≤ `residual_tol` relative to the largest coefficient, then shifts
    /// all coefficients down one degree. Used to cancel the removable
    /// (λ − λ₀) factor in condition and value functions.
    pub fn deflate_at_zero(&self, residual_tol: f64) -> Result<Polynomial> {
        if self.is_zero() {
            return Ok(Polynomial::zero());
        }
        let scale = self.max_coeff().max(1e-300);
        let resid = scalar::abs(self.constant_term()) / scale;
        if resid > residual_tol {
            return Err(Error::Inconsistency(alloc::format!(
                "deflation residual {resid:.3e} exceeds {residual_tol:.3e}; \
                 constant term {:.6e} is not a numerical zero",
                self.constant_term()
            )));
        }
        if self.coeffs.len() == 1 {
            return Ok(Polynomial::zero());
        }
        Ok(Polynomial::new(self.coeffs[1..].to_vec()))
    }

    /// All real roots, distinct, ascending, with multiplicities.
    ///
    /// Route: trim → monic companion matrix → Schur eigenvalues → accept
    /// near-real ones (|im| ≤ `TOL_ROOT_IMAG`·(1+|re|)) → a few Newton steps
    /// on the original polynomial → cluster into distinct values.
    pub fn real_roots(&self) -> Result<Vec<RealRoot>> {
        if self.is_zero() {
            return Err(Error::DegenerateInput(String::from(
                "real_roots of the zero polynomial",
            )));
        }
        let deg = self.degree();
        if deg == 0 {
            return Ok(Vec::new());
        }
        let mut accepted: Vec<f64> = Vec::new();
        for z in self.complex_roots()? {
            let im = scalar::abs(z.im);
            if im <= TOL_ROOT_IMAG * (1.0 + scalar::abs(z.re)) {
                accepted.push(self.polish(z.re));
            } else if im <= NEAR_REAL_WINDOW * (1.0 + scalar::abs(z.re)) {
                // Double real roots come back as conjugate pairs with
                // imaginary parts of order √ε, which can exceed the strict
                // threshold. Admit them when the real part truly is a root.
                let x = self.polish(z.re);
                if scalar::abs(self.eval(x)) <= TOL_ROOT_RESID * self.coefficient_scale_at(x) {
                    accepted.push(x);
                }
            }
        }
        accepted.sort_by(|a, b| a.partial_cmp(b).expect("roots are finite"));
        // Cluster numerically coincident roots into one entry with multiplicity.
        let mut out: Vec<RealRoot> = Vec::new();
        for r in accepted {
            match out.last_mut() {
                Some(last) if scalar::abs(r - last.value) <= 1e-8 * (1.0 + scalar::abs(r)) => {
                    last.multiplicity += 1;
                }
                _ => out.push(RealRoot { value: r, multiplicity: 1 }),
            }
        }
        Ok(out)
    }

    /// All complex roots (full multiset, degree many), unpolished except for
    /// near-real ones. Degree 1 and 2 use closed forms; higher degrees use
    /// the companion matrix.
    pub fn complex_roots(&self) -> Result<Vec<Complex>> {
        if self.is_zero() {
            return Err(Error::DegenerateInput(String::from(
                "complex_roots of the zero polynomial",
            )));
        }
        let deg = self.degree();
        match deg {
            0 => Ok(Vec::new()),
            1 => Ok(vec![Complex::new(-self.coeffs[0] / self.coeffs[1], 0.0)]),
            2 => {
                let (c, b, a) = (self.coeffs[0], self.coeffs[1], self.coeffs[2]);
                let disc = b * b - 4.0 * a * c;
                if disc >= 0.0 {
                    let sq = scalar::sqrt(disc);
                    // Numerically stable split: avoid cancellation in −b ± √disc.
                    let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
                    let r1 = q / a;
                    let r2 = if q != 0.0 { c / q } else { -b / a - r1 };
                    Ok(vec![Complex::new(r1, 0.0), Complex::new(r2, 0.0)])
                } else {
                    let re = -b / (2.0 * a);
                    let im = scalar::sqrt(-disc) / (2.0 * a);
                    Ok(vec![Complex::new(re, im), Complex::new(re, -im)])
                }
            }
            _ => {
                // The QR iteration underneath can cycle without converging
                // when the spectrum is symmetric about the origin (roots
                // ±2, ±3 reproducibly stall it). Re-centering the
                // polynomial breaks the symmetry, and the roots translate
                // back exactly, so retry a few fixed offsets before giving
                // up. Offsets are binary-exact so the retried coefficients
                // are reproducible.
                const RECENTERS: [f64; 3] = [0.71875, -1.3125, 2.421875];
                match self.companion_eigenvalues() {
                    Ok(roots) => Ok(roots),
                    Err(first) => {
                        for s in RECENTERS {
                            if let Ok(roots) = self.shifted(s).companion_eigenvalues() {
                                return Ok(roots.into_iter().map(|z| z + s).collect());
                            }
                        }
                        Err(first)
                    }
                }
            }
        }
    }

    /// Eigenvalues of the monic companion matrix (degree ≥ 1 assumed).
    fn companion_eigenvalues(&self) -> Result<Vec<Complex>> {
        let lead = self.leading();
        let n = self.degree();
        let mut comp = Matrix::zeros(n, n);
        for i in 1..n {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            comp[(i, n - 1)] = -self.coeffs[i] / lead;
        }
        let schur =
            nalgebra::linalg::Schur::try_new(comp, f64::EPSILON, crate::tolerances::MAX_DECOMP_ITER)
                .ok_or_else(|| {
                    Error::NumericFailure(alloc::format!(
                        "companion Schur iteration failed for degree {n}"
                    ))
                })?;
        Ok(schur.complex_eigenvalues().iter().copied().collect())
    }

    /// Σ|c_k|·|x|^k — the natural magnitude scale of evaluating this
    /// polynomial at x, used to turn |p(x)| into a relative residual.
    fn coefficient_scale_at(&self, x: f64) -> f64 {
        let ax = scalar::abs(x);
        let mut pow = 1.0;
        let mut scale = 0.0;
        for &c in &self.coeffs {
            scale += scalar::abs(c) * pow;
            pow *= ax;
        }
        scale.max(f64::MIN_POSITIVE)
    }

    /// A few guarded Newton steps from `x0` on this polynomial.
    fn polish(&self, mut x: f64) -> f64 {
        let d = self.derivative();
        for _ in 0..ROOT_NEWTON_STEPS {
            let fx = self.eval(x);
            let dx = d.eval(x);
            if dx == 0.0 || !fx.is_finite() {
                break;
            }
            let step = fx / dx;
            if !step.is_finite() {
                break;
            }
            let next = x - step;
            // Reject wild steps (derivative nearly flat at a multiple root).
            if scalar::abs(next - x) > 1.0 + scalar::abs(x) {
                break;
            }
            x = next;
        }
        x
    }
}

/// Expand ∏_j (1 + u·e_j) over a conjugation-closed eigenvalue multiset into
/// a real polynomial in u. Near-real eigenvalues (|im| ≤ `TOL_CONJ`·(1+|e|))
/// contribute linear factors from their real part; the rest are matched into
/// conjugate pairs and contribute the real quadratic
/// `1 + 2·Re(e)·u + |e|²·u²`. Unmatched nonreal eigenvalues are an error.
pub fn product_from_eigenvalues(eigs: &[Complex]) -> Result<Polynomial> {
    let mut acc = Polynomial::one();
    let mut pending: Vec<Complex> = Vec::new();
    for &e in eigs {
        if scalar::abs(e.im) <= TOL_CONJ * (1.0 + scalar::cabs(e)) {
            acc = acc.mul(&Polynomial::new(vec![1.0, e.re]));
        } else {
            // Try to match with a previously seen conjugate.
            let partner = pending.iter().position(|&p| {
                scalar::hypot(p.re - e.re, p.im + e.im) <= TOL_CONJ * (1.0 + scalar::cabs(e))
            });
            match partner {
                Some(idx) => {
                    let p = pending.swap_remove(idx);
                    // Average the pair for symmetry before expanding.
                    let re = 0.5 * (p.re + e.re);
                    let im = 0.5 * (scalar::abs(p.im) + scalar::abs(e.im));
                    let norm2 = re * re + im * im;
                    acc = acc.mul(&Polynomial::new(vec![1.0, 2.0 * re, norm2]));
                }
                None => pending.push(e),
            }
        }
    }
    if !pending.is_empty() {
        return Err(Error::Inconsistency(alloc::format!(
            "eigenvalue multiset is not conjugation-closed: {} unmatched nonreal value(s), \
             first = {:.6e} + {:.6e}i",
            pending.len(),
            pending[0].re,
            pending[0].im
        )));
    }
    Ok(acc)
}

/// Expand ∏_j (1 + (λ−λ₀)·e_j) as a polynomial in plain λ.
///
/// This is the uncentered convenience form; internal computations keep the
/// centered polynomial from [`product_from_eigenvalues`] and shift only at
/// the edge.
pub fn poly_from_factors(eigs: &[Complex], lambda0: f64) -> Result<Polynomial> {
    let centered = product_from_eigenvalues(eigs)?;
    Ok(centered.shifted(-lambda0))
}
