//! Brute-force verification of sweep output by independent re-solving.
//!
//! The sweep derives interval endpoints and value functions analytically
//! (eigenvalue products, polynomial root finding).  This module checks
//! that output the slow, trustworthy way: pick λ values inside each
//! claimed interval, solve the instantiated LP from scratch, read off the
//! induced partition and objective, and compare.
//!
//! For every probe λ in an interval claiming partition π and value
//! function Z:
//!
//! ```text
//! resolve      π̂(λ), ẑ(λ)  from a fresh LP solve
//! require      π̂(λ) == π                          (exact set equality)
//! require      |Z(λ) − ẑ(λ)| / max(1, |ẑ(λ)|) ≤ ORACLE_REL_ERR
//! ```
//!
//! Probe placement:
//!
//! * finite interval `(lo, hi)` — `probes_per_interval` Chebyshev points
//!   of the subinterval shrunk by `ORACLE_MARGIN · (hi − lo)` on each
//!   side, so probes cluster near (but never touch) the endpoints where
//!   the analytic machinery is most likely to be wrong;
//! * half-unbounded interval — offsets {1, 2, 4, 8} from the finite
//!   endpoint, clipped to the sweep's λ cap;
//! * singleton `{λ}` — the point itself.
//!
//! # Invariants
//!
//! * Independence: probing uses only [`crate::embedding::induced_partition`]
//!   (LP solve + support classification) and evaluation of the already-built
//!   rational function.  No invariancy-certificate or value-function
//!   *construction* code runs here, so a bug in those paths cannot hide.
//! * A verdict is `false` iff some probe in that interval has a partition
//!   mismatch, an objective error above [`ORACLE_REL_ERR`], or a solve
//!   that did not come back optimal.
//! * Determinism: probe λ's are a pure function of the interval bounds,
//!   the probe count, and the λ cap.

use alloc::format;
use alloc::vec::Vec;

use crate::embedding::{embed, induced_partition, EmbeddedLp, InducedOutcome, ParametricLp};
use crate::error::Error;
use crate::sweep::{InvariancyInterval, SweepReport};
use crate::Result;
use crate::tolerances::{ORACLE_MARGIN, ORACLE_REL_ERR};

/// Offsets walked outward from the finite endpoint of a half-unbounded
/// interval.
const UNBOUNDED_OFFSETS: [f64; 4] = [1.0, 2.0, 4.0, 8.0];

/// One independent check of a claimed interval at a single λ.
#[derive(Debug, Clone)]
pub struct ProbeRecord {
    /// Index into `SweepReport::intervals` of the claim under test.
    pub interval_index: usize,
    pub lambda: f64,
    /// Objective from the fresh solve; NaN when the solve failed.
    pub oracle_value: f64,
    /// Claimed value function evaluated at `lambda`; NaN on a pole.
    pub analytic_value: f64,
    /// Fresh induced partition equals the claimed one, as sets, exactly.
    pub partitions_equal: bool,
    /// |analytic − oracle| / max(1, |oracle|); ∞ when either side is NaN.
    pub abs_rel_error: f64,
    /// The instantiated LP solved to optimality at this λ.
    pub solved: bool,
}

impl ProbeRecord {
    /// A probe passes when the solve worked, the partitions agree, and
    /// the objective error is within tolerance.
    pub fn pass(&self) -> bool {
        self.solved && self.partitions_equal && self.abs_rel_error <= ORACLE_REL_ERR
    }
}

/// Everything the verification pass found.
#[derive(Debug, Clone)]
pub struct OracleReport {
    /// All probes, grouped by interval in report order, ascending λ within
    /// each interval.
    pub probes: Vec<ProbeRecord>,
    /// One entry per interval in `SweepReport::intervals`: did every probe
    /// of that interval pass?
    pub verdicts: Vec<bool>,
}

impl OracleReport {
    /// Overall verdict: every interval passed.
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|&v| v)
    }

    /// Probes that failed, for diagnostics.
    pub fn failures(&self) -> impl Iterator<Item = &ProbeRecord> {
        self.probes.iter().filter(|p| !p.pass())
    }
}

/// Re-solve the parametric LP at grid points inside every claimed interval
/// and compare partitions and objectives against the claims.
///
/// `probes_per_interval` applies to finite non-singleton intervals;
/// half-unbounded intervals get up to four probes at fixed offsets and
/// singletons exactly one.
pub fn grid_verify(
    p: &ParametricLp,
    report: &SweepReport,
    probes_per_interval: usize,
) -> Result<OracleReport> {
    if probes_per_interval == 0 {
        return Err(Error::DegenerateInput(format!(
            "grid verification needs at least one probe per interval, got {probes_per_interval}"
        )));
    }
    let e = embed(p);
    let mut probes = Vec::new();
    let mut verdicts = Vec::with_capacity(report.intervals.len());
    for (index, interval) in report.intervals.iter().enumerate() {
        let lambdas = probe_lambdas(interval, probes_per_interval, report.lambda_cap);
        let mut all_pass = true;
        for lambda in lambdas {
            let record = run_probe(&e, interval, index, lambda);
            all_pass &= record.pass();
            probes.push(record);
        }
        verdicts.push(all_pass);
    }
    Ok(OracleReport { probes, verdicts })
}

/// Deterministic probe locations for one interval, ascending.
fn probe_lambdas(interval: &InvariancyInterval, count: usize, lambda_cap: f64) -> Vec<f64> {
    if interval.is_singleton() {
        return alloc::vec![interval.lo];
    }
    match (interval.lo.is_finite(), interval.hi.is_finite()) {
        (true, true) => chebyshev_interior(interval.lo, interval.hi, count),
        (true, false) => offsets_from(interval.lo, 1.0, lambda_cap),
        (false, true) => offsets_from(interval.hi, -1.0, lambda_cap),
        // Both ends unbounded: a single partition covers the whole line.
        // Walk outward from the anchor in both directions.
        (false, false) => {
            let mut lambdas = offsets_from(interval.lambda_ref, -1.0, lambda_cap);
            lambdas.push(interval.lambda_ref);
            lambdas.extend(offsets_from(interval.lambda_ref, 1.0, lambda_cap));
            lambdas
        }
    }
}

/// Chebyshev nodes of the margin-shrunk interval, sorted ascending.
///
/// The margin keeps probes off the endpoints, where the claimed partition
/// legitimately stops holding; Chebyshev spacing still pushes most probes
/// close to them.
fn chebyshev_interior(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let margin = ORACLE_MARGIN * (hi - lo);
    let (a, b) = (lo + margin, hi - margin);
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut lambdas: Vec<f64> = (0..count)
        .map(|k| {
            let angle = core::f64::consts::PI * (2.0 * k as f64 + 1.0) / (2.0 * count as f64);
            center + half * crate::scalar::cos(angle)
        })
        .collect();
    lambdas.sort_by(f64::total_cmp);
    lambdas
}

/// Probes at `endpoint + dir·{1,2,4,8}`, clipped to `±lambda_cap`, strictly
/// beyond the endpoint, deduplicated, ascending.
fn offsets_from(endpoint: f64, dir: f64, lambda_cap: f64) -> Vec<f64> {
    let mut lambdas: Vec<f64> = UNBOUNDED_OFFSETS
        .iter()
        .map(|&step| (endpoint + dir * step).clamp(-lambda_cap, lambda_cap))
        .filter(|&lambda| dir * (lambda - endpoint) > 0.0)
        .collect();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();
    lambdas
}

/// Solve at one λ and compare against the claim.
fn run_probe(
    e: &EmbeddedLp,
    interval: &InvariancyInterval,
    index: usize,
    lambda: f64,
) -> ProbeRecord {
    let analytic_value = interval.zf.evaluate(lambda).unwrap_or(f64::NAN);
    let (oracle_value, partitions_equal, solved) = match induced_partition(e, lambda) {
        Ok(InducedOutcome::Optimal(point)) => (
            point.solution.objective,
            point.partition == interval.partition,
            true,
        ),
        Ok(_) | Err(_) => (f64::NAN, false, false),
    };
    let abs_rel_error = if oracle_value.is_nan() || analytic_value.is_nan() {
        f64::INFINITY
    } else {
        (analytic_value - oracle_value).abs() / f64::max(1.0, oracle_value.abs())
    };
    ProbeRecord {
        interval_index: index,
        lambda,
        oracle_value,
        analytic_value,
        partitions_equal,
        abs_rel_error,
        solved,
    }
}
