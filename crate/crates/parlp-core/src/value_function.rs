//! Closed-form rational optimal value functions on invariancy intervals.
//!
//! On an interval where the induced partition is constant, the optimal value
//! Z(λ) of the parametric program is a rational function of λ. It is realized
//! from two eigenvalue families taken at the anchor λ₀ — with M = **A**†_τ̄(λ₀),
//! D the perturbation columns on the support τ̄, and **c**_τ̄ the embedded costs:
//!
//! ```text
//!     α_j  = eig( M·D )                 α×_j = eig( M·D + (M·b)·c_τ̄ᵀ )
//!
//!     1 + (λ−λ₀)·Z(λ) = ∏_j (1 + (λ−λ₀)·α×_j) / ∏_j (1 + (λ−λ₀)·α_j)
//! ```
//!
//! so Z = (∏ − 1)/(λ−λ₀) after symbolically deflating the removable root at
//! λ₀. Everything is expanded centered in u = λ−λ₀ (coefficients stay O(1)
//! even for large anchors) and shifted to plain λ only at the edges.
//!
//! When the support matrix is column-rank-deficient the eigenvalue
//! realization is not available; [`build_value_function`] then reconstructs
//! the same rational function by sampling the instantiated LP inside the
//! certified interval and fitting numerator/denominator coefficients of
//! increasing degree, accepting only a fit that reproduces held-out
//! objectives to high relative accuracy.
//!
//! Reduction cancels matched numerator/denominator root pairs (real linear
//! factors and conjugate quadratic factors) via synthetic division with
//! remainder verification, then normalizes the denominator to leading
//! coefficient one. A denominator root strictly inside the certified
//! interval is impossible for a true value function and reports an
//! inconsistency.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::embedding::{EmbeddedLp, InducedPartition};
use crate::linalg::{nonzero_eigenvalues, numerical_rank, pseudo_inverse};
use crate::invariancy::IntervalCertificate;
use crate::poly::{product_from_eigenvalues, Polynomial};
use crate::scalar;
use crate::simplex::{self, SimplexResult};
use crate::tolerances::{POLE_GUARD, TOL_CANCEL, TOL_CONJ, TOL_DEFLATE, TOL_FIT};
use crate::{Error, Matrix, Result, Vector};

/// A reduced rational function Z(λ) = num(u)/den(u), u = λ − center.
///
/// # Invariants
/// - `den(0) ≠ 0` and the leading coefficient of `den` is 1.
/// - `den` has no real root strictly inside the open domain interval.
/// - `num` and `den` share no root pair closer than the cancellation
///   tolerance (the pair is reduced).
///
/// The invariants are established by [`build_value_function`] and
/// [`RationalFunction::constant`]; treat the fields as read-only.
#[derive(Debug, Clone)]
pub struct RationalFunction {
    /// Numerator coefficients in u = λ − center, ascending degree.
    pub num: Polynomial,
    /// Denominator coefficients in u = λ − center, ascending degree.
    pub den: Polynomial,
    /// Expansion center (the anchor the function was built at).
    pub center: f64,
    /// The certified interval this function is valid on.
    pub domain: IntervalCertificate,
}

impl RationalFunction {
    /// The constant function Z ≡ value (used for single-point intervals and
    /// unperturbed programs).
    pub fn constant(value: f64, center: f64, domain: IntervalCertificate) -> Self {
        RationalFunction {
            num: Polynomial::constant(value),
            den: Polynomial::one(),
            center,
            domain,
        }
    }

    /// Evaluate at λ. A denominator magnitude below
    /// `POLE_GUARD · (1 + |num(λ)|)` reports a pole error instead of an
    /// arbitrarily large quotient.
    pub fn evaluate(&self, lambda: f64) -> Result<f64> {
        let u = lambda - self.center;
        let nv = self.num.eval(u);
        let dv = self.den.eval(u);
        if scalar::abs(dv) < POLE_GUARD * (1.0 + scalar::abs(nv)) {
            return Err(Error::Pole(format!("value function pole at λ = {lambda:.12e}")));
        }
        Ok(nv / dv)
    }

    /// First derivative at λ via the symbolic quotient rule
    /// (num′·den − num·den′)/den², with the same pole guard as
    /// [`RationalFunction::evaluate`].
    pub fn derivative_at(&self, lambda: f64) -> Result<f64> {
        let u = lambda - self.center;
        let nv = self.num.eval(u);
        let dv = self.den.eval(u);
        if scalar::abs(dv) < POLE_GUARD * (1.0 + scalar::abs(nv)) {
            return Err(Error::Pole(format!("value function pole at λ = {lambda:.12e}")));
        }
        let dn = self.num.derivative().eval(u);
        let dd = self.den.derivative().eval(u);
        Ok((dn * dv - nv * dd) / (dv * dv))
    }

    /// Numerator and denominator re-expanded in plain λ (denominator keeps
    /// leading coefficient 1; shifting does not change leading coefficients).
    pub fn lambda_coefficients(&self) -> (Polynomial, Polynomial) {
        (self.num.shifted(-self.center), self.den.shifted(-self.center))
    }

    /// Whether two reduced functions represent the same rational function:
    /// cross-multiplied coefficient comparison in plain λ, tolerance relative
    /// to the largest product coefficient. Centers may differ.
    pub fn equivalent(&self, other: &RationalFunction, tol: f64) -> bool {
        let (an, ad) = self.lambda_coefficients();
        let (bn, bd) = other.lambda_coefficients();
        let left = an.mul(&bd);
        let right = bn.mul(&ad);
        let scale = left.max_coeff().max(right.max_coeff()).max(f64::MIN_POSITIVE);
        left.sub(&right).max_coeff() <= tol * scale
    }
}

/// Absolute gap |Z′_left(at) − Z′_right(at)| between one-sided derivatives of
/// the value functions joining at a shared endpoint. Zero (up to numerics)
/// means the optimal value stays differentiable through the point; a genuine
/// gap marks a kink.
pub fn derivative_mismatch(
    left: &RationalFunction,
    right: &RationalFunction,
    at: f64,
) -> Result<f64> {
    Ok(scalar::abs(left.derivative_at(at)? - right.derivative_at(at)?))
}

/// Construct the reduced value function for a certified invariancy interval,
/// anchored at λ₀ (any point with the interval's partition; typically the
/// probe the certificate was built from).
///
/// The eigenvalue realization is used whenever the support matrix
/// **A**_τ̄(λ₀) has full column rank; otherwise — and on any numerical failure
/// of that route — the function falls back to verified rational
/// reconstruction from LP samples inside the interval.
pub fn build_value_function(
    e: &EmbeddedLp,
    part: &InducedPartition,
    lambda0: f64,
    cert: &IntervalCertificate,
) -> Result<RationalFunction> {
    match eigen_value_function(e, part, lambda0, cert) {
        Ok(zf) => Ok(zf),
        Err(Error::Shape(msg)) => Err(Error::Shape(msg)),
        Err(_) => fitted_value_function(e, part, lambda0, cert),
    }
}

/// Eigenvalue-realization route: exact under a full-column-rank support.
fn eigen_value_function(
    e: &EmbeddedLp,
    part: &InducedPartition,
    lambda0: f64,
    cert: &IntervalCertificate,
) -> Result<RationalFunction> {
    let tau_bar = part.tau_bar(e.n);
    let l_bar = tau_bar.len();
    if l_bar == 0 {
        // Empty support: the only feasible point on the interval is x = 0.
        return Ok(RationalFunction::constant(0.0, lambda0, cert.clone()));
    }
    let a_tau = e.matrix_at(lambda0).select_columns(tau_bar.iter());
    if numerical_rank(&a_tau)? < l_bar {
        return Err(Error::DegenerateInput(format!(
            "support matrix at λ₀ = {lambda0} is column-rank-deficient; \
             eigenvalue realization unavailable"
        )));
    }
    let mp = pseudo_inverse(&a_tau)?;
    let d_tau = e.direction.select_columns(tau_bar.iter());
    let mpd = &mp * &d_tau;
    let mpb = &mp * &e.b;
    let c_bar = Vector::from_fn(l_bar, |i, _| e.c[tau_bar[i]]);

    // Smaller-side products: M·D and M·D + (M·b)·c_τ̄ᵀ are l̄×l̄; zero
    // eigenvalues contribute unit factors and are filtered.
    let alpha = nonzero_eigenvalues(&mpd, 0)?;
    let cross = &mpd + &mpb * c_bar.transpose();
    let alpha_cross = nonzero_eigenvalues(&cross, 0)?;

    let den = product_from_eigenvalues(&alpha)?;
    let ncross = product_from_eigenvalues(&alpha_cross)?;
    let shifted = ncross.sub(&den);
    let num = shifted.deflate_at_zero(TOL_DEFLATE)?;

    // Trace identity: the deflated constant term must equal c_τ̄ᵀ·M·b, the
    // objective predicted at the anchor. A violation means the eigenvalue
    // products are too inaccurate to trust.
    let predicted = c_bar.dot(&mpb);
    let got = num.constant_term();
    let scale = 1.0 + scalar::abs(predicted) + shifted.max_coeff();
    if scalar::abs(got - predicted) > TOL_DEFLATE * scale {
        return Err(Error::Inconsistency(format!(
            "deflation residual: value function predicts {got:.12e} at its anchor, \
             support solve gives {predicted:.12e}"
        )));
    }

    let (num, den) = reduce(num, den)?;
    assert_no_interior_pole(&den, lambda0, cert)?;
    debug_assert!(num.degree() <= l_bar && den.degree() <= l_bar);
    Ok(RationalFunction { num, den, center: lambda0, domain: cert.clone() })
}

/// Cancel matched numerator/denominator factors and normalize.
///
/// Repeatedly finds the closest numerator/denominator root pair; if the pair
/// is within `TOL_CANCEL` (relative to root magnitude) it is divided out —
/// linear factors for real pairs, conjugate quadratics for complex pairs —
/// but only when both synthetic-division remainders are negligible.
/// Finally the denominator's leading coefficient is scaled to 1.
fn reduce(num: Polynomial, den: Polynomial) -> Result<(Polynomial, Polynomial)> {
    if num.is_zero() {
        return Ok((Polynomial::zero(), Polynomial::one()));
    }
    let mut num = num;
    let mut den = den;
    while num.degree() >= 1 && den.degree() >= 1 {
        let nr = num.complex_roots()?;
        let dr = den.complex_roots()?;
        let mut best: Option<(usize, usize, f64)> = None;
        for (i, &a) in nr.iter().enumerate() {
            for (j, &b) in dr.iter().enumerate() {
                let d = scalar::hypot(a.re - b.re, a.im - b.im);
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
        let Some((i, j, dist)) = best else { break };
        let zi = nr[i];
        let zj = dr[j];
        let scale = 1.0 + scalar::cabs(zi).max(scalar::cabs(zj));
        if dist > TOL_CANCEL * scale {
            break;
        }
        let real_i = scalar::abs(zi.im) <= TOL_CONJ * (1.0 + scalar::cabs(zi));
        let real_j = scalar::abs(zj.im) <= TOL_CONJ * (1.0 + scalar::cabs(zj));
        if real_i != real_j {
            break;
        }
        if real_i {
            let (qn, rn) = num.div_linear(zi.re);
            let (qd, rd) = den.div_linear(zj.re);
            if !remainder_ok(rn, &num) || !remainder_ok(rd, &den) {
                break;
            }
            num = qn;
            den = qd;
        } else {
            if num.degree() < 2 || den.degree() < 2 {
                break;
            }
            let (qn, (rn1, rn0)) =
                num.div_quadratic(-2.0 * zi.re, zi.re * zi.re + zi.im * zi.im);
            let (qd, (rd1, rd0)) =
                den.div_quadratic(-2.0 * zj.re, zj.re * zj.re + zj.im * zj.im);
            if !remainder_ok(rn1, &num)
                || !remainder_ok(rn0, &num)
                || !remainder_ok(rd1, &den)
                || !remainder_ok(rd0, &den)
            {
                break;
            }
            num = qn;
            den = qd;
        }
        if num.is_zero() {
            return Ok((Polynomial::zero(), Polynomial::one()));
        }
    }
    if den.is_zero() {
        return Err(Error::Inconsistency(String::from(
            "denominator vanished during rational reduction",
        )));
    }
    let lead = den.leading();
    Ok((num.scale(1.0 / lead), den.scale(1.0 / lead)))
}

/// A synthetic-division remainder counts as zero relative to the divided
/// polynomial's largest coefficient.
fn remainder_ok(rem: f64, p: &Polynomial) -> bool {
    scalar::abs(rem) <= TOL_DEFLATE * p.max_coeff().max(f64::MIN_POSITIVE)
}

/// A real denominator root strictly inside the certified open interval would
/// contradict optimality of a finite LP value there.
fn assert_no_interior_pole(
    den: &Polynomial,
    center: f64,
    cert: &IntervalCertificate,
) -> Result<()> {
    if den.degree() == 0 {
        return Ok(());
    }
    for root in den.real_roots()? {
        let lam = root.value + center;
        let inside_lo = if cert.lo.is_finite() {
            lam > cert.lo + 1e-9 * (1.0 + scalar::abs(cert.lo))
        } else {
            true
        };
        let inside_hi = if cert.hi.is_finite() {
            lam < cert.hi - 1e-9 * (1.0 + scalar::abs(cert.hi))
        } else {
            true
        };
        if inside_lo && inside_hi {
            return Err(Error::Inconsistency(format!(
                "value function pole at λ = {lam:.12e} lies strictly inside the \
                 certified interval ({:.6e}, {:.6e})",
                cert.lo, cert.hi
            )));
        }
    }
    Ok(())
}

/// Optimal objective of the instantiated program at λ, which must exist for
/// any λ inside a certified interval.
fn objective_at(e: &EmbeddedLp, lambda: f64) -> Result<f64> {
    let lp = e.instantiate(lambda);
    match simplex::solve(&lp.a, &lp.b, &lp.c)? {
        SimplexResult::Optimal(sol) => Ok(sol.objective),
        SimplexResult::Infeasible => Err(Error::Inconsistency(format!(
            "program infeasible at λ = {lambda:.12e} inside a certified interval"
        ))),
        SimplexResult::Unbounded => Err(Error::Inconsistency(format!(
            "program unbounded at λ = {lambda:.12e} inside a certified interval"
        ))),
    }
}

/// Verified rational reconstruction from LP samples — the fallback when the
/// eigenvalue realization is unavailable (rank-deficient support) or failed.
///
/// Samples the optimal objective at interior points, then fits
/// num/den coefficient vectors of increasing degree d (denominator
/// normalized to den(0) = 1 and the abscissa rescaled to [−1, 1] for
/// conditioning). The first candidate that reproduces both the samples and
/// interleaved held-out probes within `TOL_FIT` relative error — and has no
/// pole inside the interval — is accepted.
fn fitted_value_function(
    e: &EmbeddedLp,
    part: &InducedPartition,
    lambda0: f64,
    cert: &IntervalCertificate,
) -> Result<RationalFunction> {
    let l_bar = part.tau_bar(e.n).len();
    let (win_lo, win_hi) = sampling_window(cert, lambda0);
    let width = win_hi - win_lo;
    if !(width > 1e-12 * (1.0 + scalar::abs(lambda0))) {
        let z0 = objective_at(e, lambda0)?;
        return Ok(RationalFunction::constant(z0, lambda0, cert.clone()));
    }

    let sample_count = 4 * l_bar + 9;
    let mut fit_pts: Vec<(f64, f64)> = Vec::with_capacity(sample_count);
    for i in 0..sample_count {
        let lam = win_lo + width * (i as f64 + 1.0) / (sample_count as f64 + 1.0);
        fit_pts.push((lam, objective_at(e, lam)?));
    }
    let mut holdout: Vec<(f64, f64)> = Vec::with_capacity(sample_count - 1);
    for w in fit_pts.windows(2) {
        let lam = 0.5 * (w[0].0 + w[1].0);
        holdout.push((lam, objective_at(e, lam)?));
    }

    let spread = fit_pts
        .iter()
        .fold(0.0_f64, |m, &(lam, _)| m.max(scalar::abs(lam - lambda0)))
        .max(f64::MIN_POSITIVE);

    for d in 0..=l_bar {
        match try_fit_degree(&fit_pts, &holdout, lambda0, spread, d, cert) {
            Ok(zf) => return Ok(zf),
            Err(_) => continue,
        }
    }
    Err(Error::Inconsistency(format!(
        "no rational function with numerator and denominator degree ≤ {l_bar} \
         reproduces the sampled objective on ({win_lo:.6e}, {win_hi:.6e})"
    )))
}

/// One degree attempt of the sampled reconstruction.
fn try_fit_degree(
    fit_pts: &[(f64, f64)],
    holdout: &[(f64, f64)],
    lambda0: f64,
    spread: f64,
    d: usize,
    cert: &IntervalCertificate,
) -> Result<RationalFunction> {
    let unknowns = 2 * d + 1;
    let rows = fit_pts.len();
    // Row for sample (λ_i, z_i), in t = (λ_i − λ₀)/spread:
    //     Σ_k n_k t^k − z_i Σ_{k≥1} d_k t^k = z_i.
    let mut a = Matrix::zeros(rows, unknowns);
    let mut rhs = Vector::zeros(rows);
    for (r, &(lam, z)) in fit_pts.iter().enumerate() {
        let t = (lam - lambda0) / spread;
        let mut pw = 1.0;
        for k in 0..=d {
            a[(r, k)] = pw;
            if k >= 1 {
                a[(r, d + k)] = -z * pw;
            }
            pw *= t;
        }
        rhs[r] = z;
    }
    let beta = pseudo_inverse(&a)? * rhs;
    // Unscale from t back to u = λ − λ₀: degree-k coefficient picks 1/spread^k.
    let mut num_c = Vec::with_capacity(d + 1);
    let mut den_c = Vec::with_capacity(d + 1);
    den_c.push(1.0);
    let mut sc = 1.0;
    for k in 0..=d {
        num_c.push(beta[k] / sc);
        if k >= 1 {
            den_c.push(beta[d + k] / sc);
        }
        sc *= spread;
    }
    let (num, den) = reduce(Polynomial::new(num_c), Polynomial::new(den_c))?;
    assert_no_interior_pole(&den, lambda0, cert)?;
    let zf = RationalFunction { num, den, center: lambda0, domain: cert.clone() };
    for &(lam, z) in fit_pts.iter().chain(holdout.iter()) {
        let zhat = zf.evaluate(lam)?;
        if scalar::abs(zhat - z) > TOL_FIT * (1.0 + scalar::abs(z)) {
            return Err(Error::Inconsistency(format!(
                "degree-{d} reconstruction misses the objective at λ = {lam:.6e}: \
                 fit {zhat:.12e} vs LP {z:.12e}"
            )));
        }
    }
    Ok(zf)
}

/// Finite open sampling window inside a certified interval: unbounded sides
/// are clipped to unit-scale distance from the anchor.
fn sampling_window(cert: &IntervalCertificate, lambda0: f64) -> (f64, f64) {
    let span = 1.0 + 0.1 * scalar::abs(lambda0);
    let lo = if cert.lo.is_finite() { cert.lo } else { lambda0 - span };
    let hi = if cert.hi.is_finite() { cert.hi } else { lambda0 + span };
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::{NoClock, PhaseTimings};
    use crate::embedding::{embed, induced_partition, InducedOutcome, InducedPoint, ParametricLp};
    use crate::invariancy::invariancy_interval;
    use approx::assert_relative_eq;

    /// One equality row, three structural columns; perturbation moves both
    /// the row and the right-hand side.
    fn tiny() -> EmbeddedLp {
        let a = Matrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let b = Vector::from_column_slice(&[1.0]);
        let c = Vector::from_column_slice(&[-1.0, -1.0, 0.0]);
        let da = Matrix::from_row_slice(1, 3, &[1.0, -1.0, 0.0]);
        let db = Vector::from_column_slice(&[1.0]);
        embed(&ParametricLp::new(a, b, c, da, db).expect("shapes"))
    }

    /// Two equality rows, four structural columns.
    fn two_row() -> EmbeddedLp {
        let a = Matrix::from_row_slice(2, 4, &[0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0]);
        let b = Vector::from_column_slice(&[1.0, 1.0]);
        let c = Vector::from_column_slice(&[-1.0, -1.0, 0.0, 0.0]);
        let da = Matrix::from_row_slice(2, 4, &[1.0, 1.0, 0.0, 0.0, -1.0, -2.0, 0.0, 0.0]);
        let db = Vector::from_column_slice(&[2.0, -1.0]);
        embed(&ParametricLp::new(a, b, c, da, db).expect("shapes"))
    }

    fn anchor(e: &EmbeddedLp, lambda0: f64) -> InducedPoint {
        match induced_partition(e, lambda0).expect("solve") {
            InducedOutcome::Optimal(pt) => pt,
            other => panic!("expected an optimum at λ = {lambda0}, got {other:?}"),
        }
    }

    fn built(e: &EmbeddedLp, lambda0: f64) -> RationalFunction {
        let pt = anchor(e, lambda0);
        let mut t = PhaseTimings::new();
        let cert = invariancy_interval(e, &pt, lambda0, &NoClock, &mut t).expect("certificate");
        build_value_function(e, &pt.partition, lambda0, &cert).expect("value function")
    }

    fn assert_lambda_coeffs(zf: &RationalFunction, num: &[f64], den: &[f64]) {
        let (n, d) = zf.lambda_coefficients();
        assert_eq!(n.degree(), num.len() - 1, "numerator degree, got {:?}", n.coeffs());
        assert_eq!(d.degree(), den.len() - 1, "denominator degree, got {:?}", d.coeffs());
        for (k, &want) in num.iter().enumerate() {
            assert_relative_eq!(n.coeffs()[k], want, epsilon = 1e-8, max_relative = 1e-8);
        }
        for (k, &want) in den.iter().enumerate() {
            assert_relative_eq!(d.coeffs()[k], want, epsilon = 1e-8, max_relative = 1e-8);
        }
    }

    #[test]
    fn tiny_hyperbolic_branch() {
        // On (0, 1) the optimal value is (λ+1)/(λ−1).
        let e = tiny();
        let zf = built(&e, 0.1);
        assert_lambda_coeffs(&zf, &[1.0, 1.0], &[-1.0, 1.0]);
        assert_relative_eq!(zf.evaluate(0.5).expect("inside"), -3.0, max_relative = 1e-9);
    }

    #[test]
    fn tiny_constant_branch() {
        // On (−1, 0) the optimal value is identically −1.
        let e = tiny();
        let zf = built(&e, -0.5);
        assert_lambda_coeffs(&zf, &[-1.0], &[1.0]);
        assert_relative_eq!(zf.evaluate(-0.25).expect("inside"), -1.0, max_relative = 1e-12);
    }

    #[test]
    fn evaluate_refuses_pole() {
        let e = tiny();
        let zf = built(&e, 0.1);
        assert!(matches!(zf.evaluate(1.0), Err(Error::Pole(_))));
        let partner = built(&e, 0.1);
        assert!(matches!(derivative_mismatch(&zf, &partner, 1.0), Err(Error::Pole(_))));
    }

    #[test]
    fn two_row_quadratic_branch_and_reduction() {
        // On (0, 0.5): Z = (−1 − 2λ²)/(λ² − λ + 1). The raw products have
        // degree 4; matching factors must cancel down to 2/2.
        let e = two_row();
        let zf = built(&e, 0.25);
        assert_lambda_coeffs(&zf, &[-1.0, 0.0, -2.0], &[1.0, -1.0, 1.0]);
        assert_relative_eq!(
            zf.evaluate(0.25).expect("inside"),
            -1.125 / 0.8125,
            max_relative = 1e-10
        );
    }

    #[test]
    fn two_row_unbounded_branch() {
        // On (1, ∞): Z = (−1 − 2λ)/λ.
        let e = two_row();
        let zf = built(&e, 2.0);
        assert_lambda_coeffs(&zf, &[-1.0, -2.0], &[0.0, 1.0]);
        assert_relative_eq!(zf.evaluate(2.0).expect("inside"), -2.5, max_relative = 1e-10);
    }

    #[test]
    fn change_point_joins_identical_functions() {
        // (0, 0.5) and (0.5, 1) carry the same formula: equivalent reduced
        // functions, zero derivative gap at the join.
        let e = two_row();
        let left = built(&e, 0.25);
        let right = built(&e, 0.75);
        assert!(left.equivalent(&right, 1e-8));
        let gap = derivative_mismatch(&left, &right, 0.5).expect("no pole at 0.5");
        assert!(gap <= 1e-8, "derivative gap {gap}");
    }

    #[test]
    fn distinct_branches_are_not_equivalent() {
        let e = two_row();
        let quad = built(&e, 0.25);
        let hyper = built(&e, 2.0);
        assert!(!quad.equivalent(&hyper, 1e-8));
    }

    #[test]
    fn unperturbed_program_gives_constant_value() {
        let a = Matrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let b = Vector::from_column_slice(&[1.0]);
        let c = Vector::from_column_slice(&[-1.0, -1.0, 0.0]);
        let da = Matrix::zeros(1, 3);
        let db = Vector::zeros(1);
        let e = embed(&ParametricLp::new(a, b, c, da, db).expect("shapes"));
        let zf = built(&e, 0.0);
        assert_lambda_coeffs(&zf, &[-1.0], &[1.0]);
        for lam in [-3.0, 0.0, 7.5] {
            assert_relative_eq!(zf.evaluate(lam).expect("total"), -1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn sampled_reconstruction_matches_eigen_route() {
        // Force the fallback on a healthy interval and compare end to end.
        let e = tiny();
        let pt = anchor(&e, 0.1);
        let mut t = PhaseTimings::new();
        let cert = invariancy_interval(&e, &pt, 0.1, &NoClock, &mut t).expect("certificate");
        let eigen = eigen_value_function(&e, &pt.partition, 0.1, &cert).expect("eigen");
        let fitted = fitted_value_function(&e, &pt.partition, 0.1, &cert).expect("fit");
        assert!(eigen.equivalent(&fitted, 1e-7));
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let e = two_row();
        let zf = built(&e, 0.25);
        let h = 1e-6;
        let fd = (zf.evaluate(0.25 + h).unwrap() - zf.evaluate(0.25 - h).unwrap()) / (2.0 * h);
        let sym = zf.derivative_at(0.25).expect("inside");
        assert_relative_eq!(sym, fd, max_relative = 1e-6);
    }
}
