//! Enumerate every invariancy interval along the λ axis and classify the
//! points joining them.
//!
//! The sweep starts from λ = 0 and walks outward in both directions. Each
//! step anchors strictly inside unexplored territory, certifies the
//! surrounding interval ([`crate::invariancy::invariancy_interval`]), builds
//! its value function, then probes the interval's far endpoint:
//!
//! ```text
//!     certify ──► emit interval ──► solve at far endpoint
//!                                       │ Optimal: record the point's own
//!                                       │          partition, step ε beyond,
//!                                       │          repeat
//!                                       │ Infeasible / Unbounded: record a
//!                                       │          halting boundary, stop
//!                                       │ far = ±∞ or beyond the cap: stop
//! ```
//!
//! A probe that lands on a breakpoint (certification refuses the anchor) is
//! pulled halfway back toward explored territory and retried — narrow
//! intervals are found by this step shrinking. Gaps between a new
//! certificate and the explored frontier are filled by anchoring in the gap
//! first.
//!
//! Every accepted certificate is cross-checked by re-solving the program at
//! one interior point per side of the anchor. The certifying conditions read
//! the candidate solution through the support pseudo-inverse, so an anchor
//! that happens to land where the support system is solvable only at
//! isolated λ (a measure-zero seeding accident) can produce an interval
//! that algebraically extends past the true boundary. A side whose probe
//! disagrees with the anchored partition is trimmed back by bisection; an
//! anchor contradicted on both sides is retried like a breakpoint hit.
//!
//! After both directions finish, the stitched chain is cleaned up: intervals
//! with the same partition and the same reduced value function joined by a
//! phantom breakpoint are fused; endpoint partitions that match no adjacent
//! interval become single-point intervals of their own; every remaining
//! joining point is classified by comparing the partition at the point with
//! its two neighbors — structural (B, N) movement marks a transition, aux
//! (B⁺, B⁻, N⁰) movement marks a change, either can happen alone or
//! together.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::clock::{PhaseTimings, SweepClock};
use crate::embedding::{
    embed, induced_partition, EmbeddedLp, InducedOutcome, InducedPartition, ParametricLp,
};
use crate::invariancy::{invariancy_interval, IntervalCertificate};
use crate::scalar;
use crate::tolerances::{MAX_EPSILON_HALVINGS, TOL_VALUE_ANCHOR, TOL_Z_MATCH};
use crate::value_function::{build_value_function, derivative_mismatch, RationalFunction};
use crate::{Error, Result};

/// Two λ values within `SNAP_REL · (1 + |λ|)` are the same breakpoint.
const SNAP_REL: f64 = 1e-6;
/// Most gap-filling insertions one directional chain will attempt.
const MAX_GAP_FILLS: usize = 40;
/// Hard iteration guard per directional chain.
const MAX_CHAIN_STEPS: usize = 10_000;

/// Why enumeration halted at a finite λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndState {
    Infeasible,
    Unbounded,
}

/// Classification of a boundary point between (or terminating) intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// The structural partition (B, N) differs from a neighboring interval.
    Transition,
    /// The auxiliary triple (B⁺, B⁻, N⁰) differs from a neighboring interval.
    Change,
    /// Both of the above.
    Both,
    /// The program stops being solvable here; nothing lies beyond.
    Boundary(EndState),
}

/// A classified point on the λ axis.
///
/// # Invariants
/// - `kind` ∈ {Transition, Change, Both} ⇒ `partition_at` and `value_at`
///   are present.
#[derive(Debug, Clone)]
pub struct BoundaryPoint {
    pub lambda: f64,
    pub kind: BoundaryKind,
    /// Induced partition at the point itself (absent for halting boundaries).
    pub partition_at: Option<InducedPartition>,
    /// LP objective at the point (absent for halting boundaries).
    pub value_at: Option<f64>,
    /// |Z′_left − Z′_right| across the point when both one-sided value
    /// functions exist and are pole-free here.
    pub derivative_gap: Option<f64>,
}

/// One enumerated interval: λ-range, inclusion flags, constant partition,
/// and the reduced value function.
///
/// # Invariants
/// - `lo < hi`, or `lo == hi` with both ends included (single-point
///   interval).
/// - The partition is constant on the open interior (oracle-checkable).
#[derive(Debug, Clone)]
pub struct InvariancyInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_included: bool,
    pub hi_included: bool,
    pub partition: InducedPartition,
    pub zf: RationalFunction,
    /// Anchor λ the certificate and value function were built at.
    pub lambda_ref: f64,
    /// LP objective at the anchor.
    pub anchor_objective: f64,
    pub cert: IntervalCertificate,
}

impl InvariancyInterval {
    /// Single-point interval membership counts its one λ.
    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }
}

/// Everything one sweep produced.
#[derive(Debug, Clone)]
pub struct SweepReport {
    /// Ascending, endpoint-sharing intervals.
    pub intervals: Vec<InvariancyInterval>,
    /// Ascending classified points.
    pub points: Vec<BoundaryPoint>,
    /// Initial probe step the sweep was asked to use.
    pub epsilon: f64,
    /// Enumeration stops once |λ| exceeds this.
    pub lambda_cap: f64,
    pub timings: PhaseTimings,
    pub warnings: Vec<String>,
}

/// Partition/objective information collected at candidate boundary λ's
/// during the walk, resolved into points and single-point intervals by the
/// stitching pass.
#[derive(Debug, Clone)]
struct PendingPoint {
    lambda: f64,
    partition: Option<InducedPartition>,
    value: Option<f64>,
    halt: Option<EndState>,
}

/// Enumerate all invariancy intervals of the parametric program reachable
/// from λ = 0 with probe step `epsilon`, stopping beyond `|λ| > lambda_cap`.
pub fn sweep(
    p: &ParametricLp,
    epsilon: f64,
    lambda_cap: f64,
    clock: &dyn SweepClock,
) -> Result<SweepReport> {
    if !(epsilon > 0.0) || !(lambda_cap > 0.0) {
        return Err(Error::DegenerateInput(format!(
            "sweep needs positive epsilon and lambda cap, got ε = {epsilon}, cap = {lambda_cap}"
        )));
    }
    if p.delta_a.iter().all(|&v| v == 0.0) && p.delta_b.iter().all(|&v| v == 0.0) {
        return Err(Error::DegenerateInput(String::from(
            "perturbation is identically zero; nothing varies with λ",
        )));
    }

    let e = embed(p);
    let mut timings = PhaseTimings::new();
    let mut warnings: Vec<String> = Vec::new();

    let pt0 = match induced_partition(&e, 0.0)? {
        InducedOutcome::Optimal(pt) => pt,
        InducedOutcome::Infeasible => {
            return Ok(halted_report(EndState::Infeasible, epsilon, lambda_cap, timings));
        }
        InducedOutcome::Unbounded => {
            return Ok(halted_report(EndState::Unbounded, epsilon, lambda_cap, timings));
        }
    };

    let mut intervals: Vec<InvariancyInterval> = Vec::new();
    let mut pendings: Vec<PendingPoint> = vec![PendingPoint {
        lambda: 0.0,
        partition: Some(pt0.partition.clone()),
        value: Some(pt0.solution.objective),
        halt: None,
    }];

    for dir in [1.0, -1.0] {
        chain(
            &e,
            dir,
            epsilon,
            lambda_cap,
            clock,
            &mut timings,
            &mut intervals,
            &mut pendings,
            &mut warnings,
        )?;
    }

    stitch(&e, intervals, pendings, epsilon, lambda_cap, timings, warnings)
}

/// Report for a program with no optimum at λ = 0: a single halting boundary
/// at the origin.
fn halted_report(
    state: EndState,
    epsilon: f64,
    lambda_cap: f64,
    timings: PhaseTimings,
) -> SweepReport {
    SweepReport {
        intervals: Vec::new(),
        points: vec![BoundaryPoint {
            lambda: 0.0,
            kind: BoundaryKind::Boundary(state),
            partition_at: None,
            value_at: None,
            derivative_gap: None,
        }],
        epsilon,
        lambda_cap,
        timings,
        warnings: vec![format!(
            "program has no optimum at λ = 0 ({}); nothing to sweep",
            match state {
                EndState::Infeasible => "infeasible",
                EndState::Unbounded => "unbounded",
            }
        )],
    }
}

/// Walk one direction (`dir` = ±1) from the origin, emitting certified
/// intervals and pending boundary information.
#[allow(clippy::too_many_arguments)]
fn chain(
    e: &EmbeddedLp,
    dir: f64,
    epsilon: f64,
    lambda_cap: f64,
    clock: &dyn SweepClock,
    timings: &mut PhaseTimings,
    intervals: &mut Vec<InvariancyInterval>,
    pendings: &mut Vec<PendingPoint>,
    warnings: &mut Vec<String>,
) -> Result<()> {
    let mut frontier = 0.0_f64;
    let mut seed = dir * epsilon;
    let mut gap_fills = 0usize;

    for _ in 0..MAX_CHAIN_STEPS {
        if scalar::abs(seed) > lambda_cap {
            return Ok(());
        }

        // Resolve an anchor at or behind the seed: a probe refused as a
        // breakpoint is pulled halfway toward the frontier and retried.
        let mut a = seed;
        let mut halvings = 0usize;
        let resolved = loop {
            match induced_partition(e, a)? {
                InducedOutcome::Optimal(pt) => {
                    match invariancy_interval(e, &pt, a, clock, timings) {
                        Ok(mut cert) => {
                            match validate_certificate(e, &pt.partition, a, &mut cert, warnings)? {
                                Validation::Sound => break Some((cert, pt, a)),
                                Validation::Isolated => {
                                    halvings += 1;
                                    if halvings > MAX_EPSILON_HALVINGS {
                                        return Err(Error::ProbeFailure(format!(
                                            "anchor at λ = {a:.12e} is contradicted on both \
                                             sides and still is after {MAX_EPSILON_HALVINGS} \
                                             step halvings"
                                        )));
                                    }
                                    a = frontier + (a - frontier) * 0.5;
                                }
                            }
                        }
                        Err(Error::AnchorOnBreakpoint(_)) => {
                            halvings += 1;
                            if halvings > MAX_EPSILON_HALVINGS {
                                return Err(Error::ProbeFailure(format!(
                                    "probe at λ = {a:.12e} still lands on a breakpoint after \
                                     {MAX_EPSILON_HALVINGS} step halvings"
                                )));
                            }
                            a = frontier + (a - frontier) * 0.5;
                        }
                        Err(err) => return Err(err),
                    }
                }
                // Nothing solvable beyond the frontier: the walk ends here.
                // (Any Optimal endpoint at the frontier is already pending.)
                InducedOutcome::Infeasible | InducedOutcome::Unbounded => break None,
            }
        };
        if halvings > 0 {
            warnings.push(format!(
                "probe step from λ = {frontier:.12e} shrank {halvings} time(s) to reach an \
                 interior anchor at λ = {a:.12e}"
            ));
        }
        let Some((cert, pt, a)) = resolved else {
            return Ok(());
        };

        // Gap check: the certificate must reach back to the frontier.
        let (near, far) = if dir > 0.0 { (cert.lo, cert.hi) } else { (cert.hi, cert.lo) };
        let snap_tol = SNAP_REL * (1.0 + scalar::abs(frontier));
        if dir * (near - frontier) > snap_tol {
            gap_fills += 1;
            if gap_fills > MAX_GAP_FILLS {
                return Err(Error::ProbeFailure(format!(
                    "could not connect the interval chain across ({:.12e}, {:.12e})",
                    frontier.min(near),
                    frontier.max(near)
                )));
            }
            seed = 0.5 * (frontier + near);
            continue;
        }

        // Emit the interval with its value function, verified at the anchor.
        let zf = build_value_function(e, &pt.partition, a, &cert)?;
        let z0 = zf.evaluate(a)?;
        let obj = pt.solution.objective;
        if scalar::abs(z0 - obj) > TOL_VALUE_ANCHOR * (1.0 + scalar::abs(obj)) {
            return Err(Error::Inconsistency(format!(
                "value function evaluates to {z0:.12e} at its anchor λ = {a:.12e}, \
                 but the program's optimum there is {obj:.12e}"
            )));
        }
        let (mut lo, mut hi) = (cert.lo, cert.hi);
        if dir > 0.0 {
            if scalar::abs(lo - frontier) <= snap_tol {
                lo = frontier;
            }
        } else if scalar::abs(hi - frontier) <= snap_tol {
            hi = frontier;
        }
        intervals.push(InvariancyInterval {
            lo,
            hi,
            lo_included: false,
            hi_included: false,
            partition: pt.partition.clone(),
            zf,
            lambda_ref: a,
            anchor_objective: obj,
            cert,
        });

        // Far endpoint: decide between stepping on and stopping.
        if !far.is_finite() {
            return Ok(());
        }
        if scalar::abs(far) >= lambda_cap {
            return Ok(());
        }
        match induced_partition(e, far)? {
            InducedOutcome::Optimal(fp) => {
                pendings.push(PendingPoint {
                    lambda: far,
                    partition: Some(fp.partition.clone()),
                    value: Some(fp.solution.objective),
                    halt: None,
                });
            }
            InducedOutcome::Infeasible => {
                pendings.push(PendingPoint {
                    lambda: far,
                    partition: None,
                    value: None,
                    halt: Some(EndState::Infeasible),
                });
                return Ok(());
            }
            InducedOutcome::Unbounded => {
                pendings.push(PendingPoint {
                    lambda: far,
                    partition: None,
                    value: None,
                    halt: Some(EndState::Unbounded),
                });
                return Ok(());
            }
        }
        frontier = far;
        seed = far + dir * epsilon;
    }
    Err(Error::ProbeFailure(String::from(
        "directional walk exceeded its iteration guard",
    )))
}

/// Outcome of probing a certificate's interior against fresh solves.
enum Validation {
    /// Both side probes reproduce the anchored partition (the certificate
    /// may have been trimmed on a contradicted side).
    Sound,
    /// Both side probes contradict the anchor: its partition holds only at
    /// an isolated point and the anchor must be moved.
    Isolated,
}

/// Cross-check a certificate by re-solving the program strictly inside it,
/// once on each side of the anchor. The certifying conditions evaluate the
/// candidate solution through the support pseudo-inverse, which silently
/// turns into a least-squares residual once the support system stops being
/// solvable — something that happens only on a measure-zero set of anchors,
/// but is invisible to the conditions themselves. A contradicted side is
/// trimmed back to the empirically verified range by bisection.
fn validate_certificate(
    e: &EmbeddedLp,
    partition: &InducedPartition,
    a: f64,
    cert: &mut IntervalCertificate,
    warnings: &mut Vec<String>,
) -> Result<Validation> {
    let lo_probe = side_probe(cert.lo, a, -1.0);
    let hi_probe = side_probe(cert.hi, a, 1.0);
    let lo_ok = probe_matches(e, lo_probe, partition)?;
    let hi_ok = probe_matches(e, hi_probe, partition)?;
    match (lo_ok, hi_ok) {
        (true, true) => Ok(Validation::Sound),
        (false, false) => Ok(Validation::Isolated),
        (true, false) => {
            let trimmed = trim_boundary(e, partition, a, hi_probe)?;
            warnings.push(format!(
                "certified upper end λ = {:.12e} is contradicted by a fresh solve at \
                 λ = {hi_probe:.12e}; trimmed to λ = {trimmed:.12e}",
                cert.hi
            ));
            cert.hi = trimmed;
            Ok(Validation::Sound)
        }
        (false, true) => {
            let trimmed = trim_boundary(e, partition, a, lo_probe)?;
            warnings.push(format!(
                "certified lower end λ = {:.12e} is contradicted by a fresh solve at \
                 λ = {lo_probe:.12e}; trimmed to λ = {trimmed:.12e}",
                cert.lo
            ));
            cert.lo = trimmed;
            Ok(Validation::Sound)
        }
    }
}

/// Interior point between the anchor and one certificate end: the midpoint
/// for a finite end, a unit-scaled offset for an unbounded one.
fn side_probe(bound: f64, a: f64, dir: f64) -> f64 {
    if bound.is_finite() {
        0.5 * (bound + a)
    } else {
        a + dir * f64::max(1.0, 0.5 * (1.0 + scalar::abs(a)))
    }
}

/// Does a fresh solve at `lambda` reproduce the anchored partition?
fn probe_matches(e: &EmbeddedLp, lambda: f64, partition: &InducedPartition) -> Result<bool> {
    Ok(match induced_partition(e, lambda)? {
        InducedOutcome::Optimal(pt) => pt.partition == *partition,
        _ => false,
    })
}

/// Bisect the bracket between a λ that reproduces the anchored partition
/// and one that does not, returning the last reproducing λ found.
fn trim_boundary(
    e: &EmbeddedLp,
    partition: &InducedPartition,
    good: f64,
    bad: f64,
) -> Result<f64> {
    let mut good = good;
    let mut bad = bad;
    while scalar::abs(bad - good) > 1e-12 * (1.0 + scalar::abs(good)) {
        let mid = 0.5 * (good + bad);
        if mid == good || mid == bad {
            break;
        }
        if probe_matches(e, mid, partition)? {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(good)
}

/// λ-identity tolerance at the magnitude of `x`.
fn near_tol(x: f64) -> f64 {
    SNAP_REL * (1.0 + scalar::abs(x))
}

/// Snap endpoint values that agree within the join tolerance onto one
/// canonical float, so a breakpoint located independently by both chains
/// (whose root polishes differ in the last bits) sorts and touches
/// consistently.  The representative of a cluster is the λ of a
/// single-point interval when one is present — its partition and value
/// were resolved exactly there — and the smallest member otherwise.
fn unify_bounds(intervals: &mut [InvariancyInterval]) {
    let mut values: Vec<(f64, bool)> = Vec::new();
    for iv in intervals.iter() {
        if iv.lo.is_finite() {
            values.push((iv.lo, iv.is_singleton()));
        }
        if iv.hi.is_finite() {
            values.push((iv.hi, iv.is_singleton()));
        }
    }
    if values.is_empty() {
        return;
    }
    values.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite bounds"));

    // Greedy clustering of the sorted bound values; (low, high, canonical).
    let mut clusters: Vec<(f64, f64, f64)> = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k < values.len() && values[k].0 - values[k - 1].0 <= near_tol(values[k].0) {
            continue;
        }
        let members = &values[start..k];
        let canonical = members
            .iter()
            .find(|(_, from_singleton)| *from_singleton)
            .map_or(members[0].0, |(v, _)| *v);
        clusters.push((members[0].0, members[members.len() - 1].0, canonical));
        start = k;
    }

    let snap = |v: f64| {
        if v.is_finite() {
            for &(lo, hi, canonical) in &clusters {
                if lo <= v && v <= hi {
                    return canonical;
                }
            }
        }
        v
    };
    for iv in intervals.iter_mut() {
        iv.lo = snap(iv.lo);
        iv.hi = snap(iv.hi);
    }
}

/// Partition and objective at a candidate boundary point, from pending data
/// when available, otherwise by a fresh solve. `(None, None)` means the
/// program has no optimum there.
fn point_data(
    e: &EmbeddedLp,
    pendings: &[PendingPoint],
    lambda: f64,
) -> Result<(Option<InducedPartition>, Option<f64>)> {
    for p in pendings {
        if scalar::abs(p.lambda - lambda) <= near_tol(lambda) {
            return Ok((p.partition.clone(), p.value));
        }
    }
    match induced_partition(e, lambda)? {
        InducedOutcome::Optimal(pt) => Ok((Some(pt.partition), Some(pt.solution.objective))),
        _ => Ok((None, None)),
    }
}

/// Merge both directional chains into the final report: fuse phantom splits,
/// promote isolated endpoint partitions to single-point intervals, set
/// inclusion flags, and classify every joining point.
fn stitch(
    e: &EmbeddedLp,
    mut intervals: Vec<InvariancyInterval>,
    pendings: Vec<PendingPoint>,
    epsilon: f64,
    lambda_cap: f64,
    timings: PhaseTimings,
    mut warnings: Vec<String>,
) -> Result<SweepReport> {
    intervals.sort_by(|x, y| {
        (x.lo, x.hi)
            .partial_cmp(&(y.lo, y.hi))
            .expect("interval endpoints are never NaN")
    });

    // Fuse overlapping duplicates (the interval containing 0 can be found by
    // both chains) and phantom splits: same partition, same reduced value
    // function, and — for a touching pair — the shared point's partition
    // matches too, so no boundary actually exists there.
    let mut i = 0;
    while i + 1 < intervals.len() {
        let fuse = {
            let (a, b) = (&intervals[i], &intervals[i + 1]);
            if a.partition != b.partition || !a.zf.equivalent(&b.zf, TOL_Z_MATCH) {
                false
            } else if b.lo < a.hi - near_tol(a.hi) {
                true // genuine overlap: duplicate certification
            } else if scalar::abs(b.lo - a.hi) <= near_tol(a.hi) {
                let (pi, _) = point_data(e, &pendings, a.hi)?;
                pi.as_ref() == Some(&a.partition)
            } else {
                false
            }
        };
        if fuse {
            let b = intervals.remove(i + 1);
            if b.hi > intervals[i].hi {
                intervals[i].hi = b.hi;
            }
        } else {
            i += 1;
        }
    }

    // Canonicalize junctions so consecutive intervals share endpoint values
    // exactly; surviving genuine gaps are reported, not hidden.
    for k in 1..intervals.len() {
        let prev_hi = intervals[k - 1].hi;
        let gap = intervals[k].lo - prev_hi;
        if gap != 0.0 && scalar::abs(gap) <= near_tol(prev_hi) {
            intervals[k].lo = prev_hi;
        } else if gap > 0.0 {
            warnings.push(format!(
                "unexplored gap between λ = {prev_hi:.12e} and λ = {:.12e}",
                intervals[k].lo
            ));
        }
    }

    // Resolve pending boundary partitions: a point whose partition matches a
    // neighboring interval closes that interval's endpoint; one matching
    // neither becomes a single-point interval.
    let mut halts: Vec<(f64, EndState)> = Vec::new();
    let mut singletons: Vec<InvariancyInterval> = Vec::new();
    for p in &pendings {
        if let Some(state) = p.halt {
            halts.push((p.lambda, state));
            continue;
        }
        let lam = p.lambda;
        if intervals
            .iter()
            .any(|iv| iv.lo + near_tol(lam) < lam && lam < iv.hi - near_tol(lam))
        {
            continue; // interior probe artifact; no boundary here
        }
        let Some(pi) = p.partition.clone() else { continue };
        let mut matched = false;
        for iv in intervals.iter_mut() {
            if scalar::abs(iv.hi - lam) <= near_tol(lam) && iv.partition == pi {
                iv.hi_included = true;
                matched = true;
            }
            if scalar::abs(iv.lo - lam) <= near_tol(lam) && iv.partition == pi {
                iv.lo_included = true;
                matched = true;
            }
        }
        let duplicate = singletons
            .iter()
            .any(|s| scalar::abs(s.lo - lam) <= near_tol(lam) && s.partition == pi);
        if !matched && !duplicate {
            let value = p.value.expect("optimal pending points carry objectives");
            let cert = IntervalCertificate {
                lo: lam,
                hi: lam,
                breakpoint_lo: None,
                breakpoint_hi: None,
                lambda0: lam,
                candidates: Vec::new(),
                used_fallback: false,
                warnings: Vec::new(),
            };
            singletons.push(InvariancyInterval {
                lo: lam,
                hi: lam,
                lo_included: true,
                hi_included: true,
                partition: pi,
                zf: RationalFunction::constant(value, lam, cert.clone()),
                lambda_ref: lam,
                anchor_objective: value,
                cert,
            });
        }
    }
    intervals.extend(singletons);
    unify_bounds(&mut intervals);
    intervals.sort_by(|x, y| {
        (x.lo, x.hi)
            .partial_cmp(&(y.lo, y.hi))
            .expect("interval endpoints are never NaN")
    });

    let points = classify_all(e, &intervals, &pendings, &halts)?;
    Ok(SweepReport { intervals, points, epsilon, lambda_cap, timings, warnings })
}

/// Classify every distinct joining λ plus the halting boundaries.
fn classify_all(
    e: &EmbeddedLp,
    intervals: &[InvariancyInterval],
    pendings: &[PendingPoint],
    halts: &[(f64, EndState)],
) -> Result<Vec<BoundaryPoint>> {
    let mut points: Vec<BoundaryPoint> = Vec::new();

    // Joining λ's: every finite endpoint shared by consecutive entries or
    // belonging to a single-point interval.
    let mut join_lambdas: Vec<f64> = Vec::new();
    for (k, iv) in intervals.iter().enumerate() {
        if iv.is_singleton() {
            join_lambdas.push(iv.lo);
        } else if k + 1 < intervals.len()
            && scalar::abs(intervals[k + 1].lo - iv.hi) <= near_tol(iv.hi)
        {
            join_lambdas.push(iv.hi);
        }
    }
    join_lambdas.dedup_by(|a, b| scalar::abs(*a - *b) <= near_tol(*b));

    for &lam in &join_lambdas {
        // The point's own partition: a singleton's partition if one sits
        // here, otherwise pending/solved data.
        let singleton = intervals
            .iter()
            .find(|iv| iv.is_singleton() && scalar::abs(iv.lo - lam) <= near_tol(lam));
        let (pi, value) = match singleton {
            Some(s) => (Some(s.partition.clone()), Some(s.anchor_objective)),
            None => point_data(e, pendings, lam)?,
        };
        let Some(pi) = pi else { continue };

        let left = intervals
            .iter()
            .find(|iv| !iv.is_singleton() && scalar::abs(iv.hi - lam) <= near_tol(lam));
        let right = intervals
            .iter()
            .find(|iv| !iv.is_singleton() && scalar::abs(iv.lo - lam) <= near_tol(lam));
        let kind = classify_sides(
            left.map(|iv| &iv.partition),
            &pi,
            right.map(|iv| &iv.partition),
        );
        let Some(kind) = kind else { continue };
        let derivative_gap = match (left, right) {
            (Some(l), Some(r)) => derivative_mismatch(&l.zf, &r.zf, lam).ok(),
            _ => None,
        };
        points.push(BoundaryPoint {
            lambda: lam,
            kind,
            partition_at: Some(pi),
            value_at: value,
            derivative_gap,
        });
    }

    for &(lam, state) in halts {
        points.push(BoundaryPoint {
            lambda: lam,
            kind: BoundaryKind::Boundary(state),
            partition_at: None,
            value_at: None,
            derivative_gap: None,
        });
    }
    points.sort_by(|a, b| a.lambda.partial_cmp(&b.lambda).expect("finite point λ"));
    Ok(points)
}

/// Compare a point's partition with whichever neighbors exist.
fn classify_sides(
    before: Option<&InducedPartition>,
    at: &InducedPartition,
    after: Option<&InducedPartition>,
) -> Option<BoundaryKind> {
    let differs = |f: &dyn Fn(&InducedPartition) -> bool| {
        before.map(f).unwrap_or(false) || after.map(f).unwrap_or(false)
    };
    let transition = differs(&|p| !p.same_structural(at));
    let change = differs(&|p| !p.same_aux(at));
    match (transition, change) {
        (true, true) => Some(BoundaryKind::Both),
        (true, false) => Some(BoundaryKind::Transition),
        (false, true) => Some(BoundaryKind::Change),
        (false, false) => None,
    }
}

/// Classify a boundary point from the partitions before, at, and after it:
/// structural (B, N) movement against either neighbor is a transition,
/// auxiliary (B⁺, B⁻, N⁰) movement is a change, both together are both.
/// `None` when all three partitions agree (no boundary at all).
pub fn classify_point(
    before: &InducedPartition,
    at: &InducedPartition,
    after: &InducedPartition,
) -> Option<BoundaryKind> {
    classify_sides(Some(before), at, Some(after))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::NoClock;
    use crate::{Matrix, Vector};
    use approx::assert_relative_eq;

    fn tiny() -> ParametricLp {
        let a = Matrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let b = Vector::from_column_slice(&[1.0]);
        let c = Vector::from_column_slice(&[-1.0, -1.0, 0.0]);
        let da = Matrix::from_row_slice(1, 3, &[1.0, -1.0, 0.0]);
        let db = Vector::from_column_slice(&[1.0]);
        ParametricLp::new(a, b, c, da, db).expect("shapes")
    }

    fn two_row() -> ParametricLp {
        let a = Matrix::from_row_slice(2, 4, &[0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0]);
        let b = Vector::from_column_slice(&[1.0, 1.0]);
        let c = Vector::from_column_slice(&[-1.0, -1.0, 0.0, 0.0]);
        let da = Matrix::from_row_slice(2, 4, &[1.0, 1.0, 0.0, 0.0, -1.0, -2.0, 0.0, 0.0]);
        let db = Vector::from_column_slice(&[2.0, -1.0]);
        ParametricLp::new(a, b, c, da, db).expect("shapes")
    }

    fn bounds(report: &SweepReport) -> Vec<(f64, f64, bool, bool)> {
        report
            .intervals
            .iter()
            .map(|iv| (iv.lo, iv.hi, iv.lo_included, iv.hi_included))
            .collect()
    }

    fn assert_points(report: &SweepReport, want: &[(f64, BoundaryKind)]) {
        let got: Vec<(f64, BoundaryKind)> =
            report.points.iter().map(|p| (p.lambda, p.kind)).collect();
        assert_eq!(got.len(), want.len(), "points: {got:?}");
        for (g, w) in got.iter().zip(want) {
            assert!(
                (g.0 - w.0).abs() <= 1e-9 * (1.0 + w.0.abs()) && g.1 == w.1,
                "point mismatch: got {g:?}, want {w:?}"
            );
        }
    }

    /// Endpoint λ's are numerical roots: compare to 1e-9, flags exactly.
    fn assert_bounds(got: &[(f64, f64, bool, bool)], want: &[(f64, f64, bool, bool)]) {
        assert_eq!(got.len(), want.len(), "interval count: {got:?}");
        for (g, w) in got.iter().zip(want) {
            let close = |a: f64, b: f64| {
                (a.is_infinite() && b.is_infinite() && a.signum() == b.signum())
                    || (a - b).abs() <= 1e-9 * (1.0 + b.abs())
            };
            assert!(
                close(g.0, w.0) && close(g.1, w.1) && g.2 == w.2 && g.3 == w.3,
                "interval mismatch: got {g:?}, want {w:?}"
            );
        }
    }

    #[test]
    fn one_row_example_full_enumeration() {
        let report = sweep(&tiny(), 0.1, 10.0, &NoClock).expect("sweep");

        assert_bounds(
            &bounds(&report),
            &[
                (-1.0, 0.0, false, false),
                (0.0, 0.0, true, true),
                (0.0, 1.0, false, false),
            ],
        );

        // Constant −1 left of 0 and on the singleton; hyperbola on (0, 1).
        assert_relative_eq!(
            report.intervals[0].zf.evaluate(-0.5).unwrap(),
            -1.0,
            max_relative = 1e-9
        );
        assert_relative_eq!(report.intervals[1].zf.evaluate(0.0).unwrap(), -1.0);
        assert_relative_eq!(
            report.intervals[2].zf.evaluate(0.5).unwrap(),
            -3.0,
            max_relative = 1e-9
        );

        assert_points(
            &report,
            &[
                (-1.0, BoundaryKind::Boundary(EndState::Unbounded)),
                (0.0, BoundaryKind::Both),
                (1.0, BoundaryKind::Boundary(EndState::Unbounded)),
            ],
        );
    }

    #[test]
    fn two_row_example_full_enumeration() {
        let report = sweep(&two_row(), 0.1, 10.0, &NoClock).expect("sweep");

        assert_bounds(
            &bounds(&report),
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

        // Spot values along the chain.
        assert_relative_eq!(report.intervals[0].anchor_objective, -1.0, epsilon = 1e-9);
        assert_relative_eq!(report.intervals[4].anchor_objective, -2.0, epsilon = 1e-9);
        assert_relative_eq!(report.intervals[6].anchor_objective, -3.0, epsilon = 1e-9);
        assert_relative_eq!(
            report.intervals[3].zf.evaluate(0.25).unwrap(),
            -1.125 / 0.8125,
            max_relative = 1e-9
        );
        assert_relative_eq!(
            report.intervals[7].zf.evaluate(2.0).unwrap(),
            -2.5,
            max_relative = 1e-9
        );

        assert_points(
            &report,
            &[
                (-1.0, BoundaryKind::Transition),
                (0.0, BoundaryKind::Both),
                (0.5, BoundaryKind::Change),
                (1.0, BoundaryKind::Transition),
            ],
        );

        // The change point joins identical value functions: no kink.
        let p05 = &report.points[2];
        assert!(p05.derivative_gap.expect("both sides exist") <= 1e-8);
        assert!(report.intervals[3].zf.equivalent(&report.intervals[5].zf, 1e-8));
    }

    #[test]
    fn rhs_only_perturbation_is_piecewise_linear() {
        // Only the right-hand side moves: every value function reduces to a
        // polynomial of degree ≤ 1 and the optimal value stays continuous.
        let a = Matrix::from_row_slice(
            3,
            5,
            &[
                1.0, 0.0, 0.0, 2.0, -1.0, //
                0.0, 1.0, 0.0, 1.0, 1.0, //
                0.0, 0.0, 1.0, -1.0, 2.0,
            ],
        );
        let b = Vector::from_column_slice(&[4.0, 3.0, 5.0]);
        let c = Vector::from_column_slice(&[1.0, 2.0, 0.5, -1.0, -0.5]);
        let da = Matrix::zeros(3, 5);
        let db = Vector::from_column_slice(&[1.0, -2.0, 0.5]);
        let p = ParametricLp::new(a, b, c, da, db).expect("shapes");

        let report = sweep(&p, 0.1, 50.0, &NoClock).expect("sweep");
        assert!(report.intervals.len() >= 2, "expected several pieces");
        for iv in &report.intervals {
            let (n, d) = iv.zf.lambda_coefficients();
            assert_eq!(d.degree(), 0, "denominator must be constant, got {:?}", d.coeffs());
            assert!(n.degree() <= 1, "numerator must be linear, got {:?}", n.coeffs());
        }
        for pair in report.intervals.windows(2) {
            let lam = pair[0].hi;
            if !lam.is_finite() || pair[0].is_singleton() || pair[1].is_singleton() {
                continue;
            }
            let zl = pair[0].zf.evaluate(lam).expect("finite");
            let zr = pair[1].zf.evaluate(lam).expect("finite");
            assert_relative_eq!(zl, zr, max_relative = 1e-7, epsilon = 1e-9);
        }
    }

    #[test]
    fn zero_perturbation_is_rejected() {
        let a = Matrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let b = Vector::from_column_slice(&[1.0]);
        let c = Vector::from_column_slice(&[1.0, 0.0]);
        let p =
            ParametricLp::new(a, b, c, Matrix::zeros(1, 2), Vector::zeros(1)).expect("shapes");
        assert!(matches!(
            sweep(&p, 0.1, 10.0, &NoClock),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn infeasible_origin_reports_and_stops() {
        let a = Matrix::from_row_slice(1, 2, &[1.0, 1.0]);
        let b = Vector::from_column_slice(&[-1.0]);
        let c = Vector::from_column_slice(&[1.0, 1.0]);
        let da = Matrix::from_row_slice(1, 2, &[0.5, 0.0]);
        let db = Vector::from_column_slice(&[1.0]);
        let p = ParametricLp::new(a, b, c, da, db).expect("shapes");
        let report = sweep(&p, 0.1, 10.0, &NoClock).expect("sweep");
        assert!(report.intervals.is_empty());
        assert_eq!(report.points.len(), 1);
        assert_eq!(report.points[0].kind, BoundaryKind::Boundary(EndState::Infeasible));
        assert!(!report.warnings.is_empty());
    }

    #[test]
    fn classification_triples() {
        let report = sweep(&two_row(), 0.1, 10.0, &NoClock).expect("sweep");
        // Rebuild the classifications from the emitted partitions.
        let at_05 = report.intervals[4].partition.clone();
        let before = report.intervals[3].partition.clone();
        let after = report.intervals[5].partition.clone();
        assert_eq!(classify_point(&before, &at_05, &after), Some(BoundaryKind::Change));
        assert_eq!(classify_point(&before, &before, &before), None);
        let at_1 = report.intervals[6].partition.clone();
        assert_eq!(
            classify_point(&report.intervals[5].partition, &at_1, &report.intervals[7].partition),
            Some(BoundaryKind::Transition)
        );
    }
}
