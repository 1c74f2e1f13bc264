//! Timing instrumentation without a platform clock.
//!
//! The sweep reports per-phase wall times (eigenvalue extraction and the
//! three invariance-condition phases), but this crate is `no_std` and owns no
//! clock. Callers inject one through [`SweepClock`]; the default [`NoClock`]
//! reports zero durations, so analysis results never depend on timing.

use alloc::vec::Vec;

/// Monotonic time source. Implementations must be monotone non-decreasing;
/// absolute origin is irrelevant (only differences are used).
pub trait SweepClock {
    /// Current time in nanoseconds from an arbitrary fixed origin.
    fn now_nanos(&self) -> u64;
}

/// Clock that always reads zero — the `no_std` default. All recorded
/// durations come out as zero.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoClock;

impl SweepClock for NoClock {
    fn now_nanos(&self) -> u64 {
        0
    }
}

/// Instrumented phases of interval certification.
///
/// The split mirrors the cost structure of the analysis: `Eigen` covers the
/// shared eigenvalue work at the anchor (the α, α′ and α× families), while
/// `Cond1`/`Cond2`/`Cond3` cover the per-condition assembly on top of it
/// (exclusion points, per-q sign functions, per-p reduced-cost functions).
/// The four phases are disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Eigen,
    Cond1,
    Cond2,
    Cond3,
}

const PHASE_COUNT: usize = 4;

impl Phase {
    fn slot(self) -> usize {
        match self {
            Phase::Eigen => 0,
            Phase::Cond1 => 1,
            Phase::Cond2 => 2,
            Phase::Cond3 => 3,
        }
    }

    /// All phases in reporting order.
    pub const ALL: [Phase; PHASE_COUNT] = [Phase::Eigen, Phase::Cond1, Phase::Cond2, Phase::Cond3];

    /// Stable lowercase name used in reports.
    pub fn name(self) -> &'static str {
        match self {
            Phase::Eigen => "eigen",
            Phase::Cond1 => "cond1",
            Phase::Cond2 => "cond2",
            Phase::Cond3 => "cond3",
        }
    }
}

/// Aggregated duration statistics for one phase, in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StatLine {
    /// Number of recorded samples.
    pub count: usize,
    /// Shortest sample.
    pub min: f64,
    /// Mean of all samples.
    pub mean: f64,
    /// Longest sample.
    pub max: f64,
    /// Sum of all samples.
    pub total: f64,
}

/// Per-phase timing accumulator. Samples are recorded in nanoseconds and
/// reported in seconds.
#[derive(Debug, Clone, Default)]
pub struct PhaseTimings {
    samples: [Vec<u64>; PHASE_COUNT],
}

impl PhaseTimings {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record one sample of `nanos` for `phase`.
    pub fn record(&mut self, phase: Phase, nanos: u64) {
        self.samples[phase.slot()].push(nanos);
    }

    /// Fold another accumulator's samples into this one.
    pub fn absorb(&mut self, other: &PhaseTimings) {
        for (mine, theirs) in self.samples.iter_mut().zip(other.samples.iter()) {
            mine.extend_from_slice(theirs);
        }
    }

    /// Summary statistics for one phase.
    pub fn stat(&self, phase: Phase) -> StatLine {
        let s = &self.samples[phase.slot()];
        if s.is_empty() {
            return StatLine::default();
        }
        let to_sec = |n: u64| n as f64 * 1e-9;
        let total: u64 = s.iter().sum();
        StatLine {
            count: s.len(),
            min: to_sec(*s.iter().min().expect("nonempty")),
            mean: to_sec(total) / s.len() as f64,
            max: to_sec(*s.iter().max().expect("nonempty")),
            total: to_sec(total),
        }
    }
}

/// Measure one closure invocation and record it under `phase`.
pub fn timed<T>(
    clock: &dyn SweepClock,
    timings: &mut PhaseTimings,
    phase: Phase,
    f: impl FnOnce() -> T,
) -> T {
    let start = clock.now_nanos();
    let out = f();
    let stop = clock.now_nanos();
    timings.record(phase, stop.saturating_sub(start));
    out
}
