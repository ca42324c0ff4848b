//! Fixed-point eigenvalue solver with a-priori error certificates.
//!
//! Each sector's eigenvalue is the fixed point of `λ = center + g(λ)` on
//! the localization interval `[center - M, center + M]`, where `g` is the
//! truncated contraction map from the series module.  Under the strict
//! applicability conditions the map is a contraction with an explicit
//! Lipschitz constant, and the distance from the computed iterate to the
//! true eigenvalue is bounded by the sum of a truncation bound (depth and
//! window tails) and an iteration bound (geometric in the contraction
//! constant).  Under the relaxed conditions the same iteration runs but
//! the certificates do not apply and the bounds are reported as NaN.

use crate::potential::KroneckerPotential;
use crate::series::{g_map, SectorIndex, SectorKind, SeriesError, TruncationParams};
use std::f64::consts::PI;
use thiserror::Error;

/// Which applicability hypothesis the potential satisfies for a sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// The strict smallness hypothesis holds; bounds are certified.
    Strict,
    /// Only the weaker empirical threshold holds; the iteration runs but
    /// bounds are uncertified.
    Relaxed,
    /// Neither threshold holds; the solver refuses to iterate.
    Violated,
}

/// Interval `[center - M, center + M]` that localizes one sector's
/// eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizationInterval {
    center: f64,
    half_width: f64,
}

impl LocalizationInterval {
    /// Interval for `sector`, centered at its unperturbed eigenvalue with
    /// half-width `M = max(|a|, b)`.
    pub fn new(p: &KroneckerPotential, sector: SectorIndex) -> Self {
        Self {
            center: sector.center(),
            half_width: p.m(),
        }
    }

    /// Interval center.
    pub fn center(&self) -> f64 {
        self.center
    }

    /// Interval half-width (the potential sup norm).
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Lower endpoint.
    pub fn lower(&self) -> f64 {
        self.center - self.half_width
    }

    /// Upper endpoint.
    pub fn upper(&self) -> f64 {
        self.center + self.half_width
    }

    /// Closed-interval membership.
    pub fn contains(&self, x: f64) -> bool {
        (x - self.center).abs() <= self.half_width
    }
}

/// One solved eigenvalue with its convergence record and certificates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSolution {
    /// Sector the eigenvalue belongs to; for paired sectors `j = 1` labels
    /// the smaller of the two values.
    pub sector: SectorIndex,
    /// Computed eigenvalue (energy units).
    pub value: f64,
    /// Number of fixed-point steps taken.
    pub iterations: u32,
    /// Absolute size of the final step.  At most `tol`, except when the
    /// step reaches the double-precision granularity `8·ε·|value|` first,
    /// which at energies beyond ~150 is larger than 1e-14.
    pub last_step: f64,
    /// Certified distance of the truncated fixed point from the true
    /// eigenvalue; NaN when uncertified.
    pub truncation_bound: f64,
    /// Certified distance of the final iterate from the truncated fixed
    /// point; NaN when uncertified.
    pub iteration_bound: f64,
    /// Sum of the two bounds; NaN when uncertified.
    pub total_bound: f64,
    /// Which applicability hypothesis held.
    pub condition: Condition,
}

impl EigenSolution {
    /// True when the strict hypothesis held and both bounds are finite, so
    /// `|value - true eigenvalue| ≤ total_bound` is certified.
    pub fn certified(&self) -> bool {
        self.condition == Condition::Strict && self.total_bound.is_finite()
    }
}

/// Errors from the solver module.
#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    /// Neither the strict nor the requested relaxed threshold holds.
    #[error("hypotheses violated for {sector}: M = {m} exceeds the threshold {threshold}")]
    ConditionViolated {
        sector: SectorIndex,
        m: f64,
        threshold: f64,
    },
    /// The Lipschitz constant is not below 1.
    #[error("contraction constant C = {c} is not below 1; refusing to iterate")]
    NotContractive { c: f64 },
    /// The window-tail factor of the truncation bound is nonpositive, so
    /// the closed form certifies nothing at this `s`.
    #[error(
        "window tail degenerate at s = {s} for resonant index {resonant}: \
         4pi^2(s+1)|s+1-K| - M = {factor}; enlarge the window"
    )]
    TailDegenerate { s: u32, resonant: i64, factor: f64 },
    /// A bound denominator `π·sep - (b - a)` is nonpositive.
    #[error(
        "bound prefactor degenerate: pi*separation = {pi_sep} does not \
         exceed the potential span b - a = {span}"
    )]
    PrefactorDegenerate { span: f64, pi_sep: f64 },
    /// The iteration cap was reached before the step shrank below
    /// tolerance.
    #[error("no convergence after {iterations} iterations; last step {last_step:.3e}")]
    NonConvergence { iterations: u32, last_step: f64 },
    /// An iterate left the localization interval, violating the fixed
    /// point hypothesis.
    #[error("iterate {iterate} escaped the localization interval [{lower}, {upper}]")]
    IterateEscaped {
        iterate: f64,
        lower: f64,
        upper: f64,
    },
    /// Error propagated from the series evaluation.
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Strict applicability threshold on `M` for a sector.
fn strict_threshold(sector: SectorIndex) -> f64 {
    let n = f64::from(sector.n());
    match sector.kind() {
        SectorKind::First => 4.0 * PI * PI / 3.0,
        SectorKind::Periodic => 4.0 * PI * PI * (2.0 * n - 1.0) / 3.0,
        SectorKind::Antiperiodic => {
            if sector.n() == 1 {
                8.0 * PI * PI / 3.0
            } else {
                8.0 * PI * PI * (n - 1.0) / 3.0
            }
        }
    }
}

/// Relaxed applicability threshold on `M` for a sector.
fn relaxed_threshold(sector: SectorIndex) -> f64 {
    let n = f64::from(sector.n());
    match sector.kind() {
        SectorKind::First => 2.0 * PI * PI,
        SectorKind::Periodic => 2.0 * PI * PI * (2.0 * n - 1.0),
        SectorKind::Antiperiodic => {
            if sector.n() == 1 {
                4.0 * PI * PI
            } else {
                4.0 * PI * PI * (n - 1.0)
            }
        }
    }
}

/// Classifies the potential against the sector's applicability conditions.
/// The strict threshold is inclusive; the relaxed one is strict and only
/// consulted when `relaxed` is set.
pub fn check_applicability(p: &KroneckerPotential, sector: SectorIndex, relaxed: bool) -> Condition {
    let m = p.m();
    if m <= strict_threshold(sector) {
        Condition::Strict
    } else if relaxed && m < relaxed_threshold(sector) {
        Condition::Relaxed
    } else {
        Condition::Violated
    }
}

/// Separation `4π²(2n-1) - M` (periodic) or its antiperiodic analogue
/// between the sector center and the nearest foreign resonance.
fn separation(p: &KroneckerPotential, sector: SectorIndex) -> f64 {
    let n = f64::from(sector.n());
    match sector.kind() {
        SectorKind::First => unreachable!("the first sector has its own constant"),
        SectorKind::Periodic => 4.0 * PI * PI * (2.0 * n - 1.0) - p.m(),
        SectorKind::Antiperiodic => {
            if sector.n() == 1 {
                8.0 * PI * PI - p.m()
            } else {
                4.0 * PI * PI * (2.0 * n - 2.0) - p.m()
            }
        }
    }
}

/// Contraction constant of the sector map `g` on the localization
/// interval.  Must be below 1 for the fixed-point certificates to hold.
pub fn lipschitz_constant(
    p: &KroneckerPotential,
    sector: SectorIndex,
) -> Result<f64, SolverError> {
    assert!(
        check_applicability(p, sector, true) != Condition::Violated,
        "applicability must not be violated for {sector}"
    );
    let span = p.b() - p.a();
    let c = if sector.kind() == SectorKind::First {
        let f1 = 2.0 * PI * PI - p.m();
        let f2 = PI * (4.0 * PI * PI - p.m()) - span;
        if f1 <= 0.0 || f2 <= 0.0 {
            return Err(SolverError::PrefactorDegenerate {
                span,
                pi_sep: PI * (4.0 * PI * PI - p.m()),
            });
        }
        3.0 * span * span / (4.0 * PI * f1 * f2)
    } else {
        let sep = separation(p, sector);
        let pi_sep = PI * sep;
        if sep <= 0.0 || pi_sep - span <= 0.0 {
            return Err(SolverError::PrefactorDegenerate { span, pi_sep });
        }
        4.0 * span * span / (pi_sep * (pi_sep - span))
    };
    if c >= 1.0 {
        return Err(SolverError::NotContractive { c });
    }
    Ok(c)
}

/// Closed-form bound on the distance between the truncated map's fixed
/// point and the true eigenvalue: a depth tail geometric in `r` plus a
/// window tail decaying in `s`.
pub fn truncation_bound(
    p: &KroneckerPotential,
    t: &TruncationParams,
    sector: SectorIndex,
) -> Result<f64, SolverError> {
    let c = lipschitz_constant(p, sector)?;
    let span = p.b() - p.a();
    let m = p.m();
    let r = i32::try_from(t.r()).expect("depth exceeds i32");
    let s1 = f64::from(t.s()) + 1.0;
    if sector.kind() == SectorKind::First {
        let depth_tail = 9.0 * span.powi(r + 2)
            / (16.0
                * PI.powi(r + 1)
                * (4.0 * PI * PI - m).powi(r - 1)
                * (2.0 * PI * PI - m)
                * (PI * (4.0 * PI * PI - m) - span)
                * (1.0 - c));
        let window_tail =
            3.0 * span * span / (PI * PI * s1 * s1 * (4.0 * PI * PI * s1 * s1 - m) * (1.0 - c));
        return Ok(depth_tail + window_tail);
    }
    let sep = separation(p, sector);
    let resonant = sector.resonant_index();
    let depth_tail = 3.0 * span.powi(r + 2)
        / (2.0 * PI.powi(r + 1) * sep.powi(r) * (PI * sep - span) * (1.0 - c));
    let tail_factor = 4.0 * PI * PI * s1 * (s1 - resonant as f64).abs() - m;
    if tail_factor <= 0.0 {
        return Err(SolverError::TailDegenerate {
            s: t.s(),
            resonant,
            factor: tail_factor,
        });
    }
    let window_tail = 6.0 * span * span / (PI * PI * s1 * s1 * tail_factor * (1.0 - c));
    Ok(depth_tail + window_tail)
}

/// Closed-form bound on the distance of the `i`-th iterate from the
/// truncated map's fixed point: `C^i` times an explicit prefactor.
pub fn iteration_bound(
    p: &KroneckerPotential,
    sector: SectorIndex,
    i: u32,
) -> Result<f64, SolverError> {
    let c = lipschitz_constant(p, sector)?;
    let span = p.b() - p.a();
    let geometric = c.powi(i32::try_from(i).expect("iteration count exceeds i32"));
    let n = f64::from(sector.n());
    let prefactor = match sector.kind() {
        SectorKind::First => {
            let den = 2.0 * PI.powi(3) - span;
            if den <= 0.0 {
                return Err(SolverError::PrefactorDegenerate {
                    span,
                    pi_sep: 2.0 * PI.powi(3),
                });
            }
            span * span / (2.0 * PI * den * (1.0 - c))
        }
        SectorKind::Periodic => {
            let sep0 = 4.0 * PI * PI * (2.0 * n - 1.0);
            let den = PI * sep0 - span;
            if den <= 0.0 {
                return Err(SolverError::PrefactorDegenerate {
                    span,
                    pi_sep: PI * sep0,
                });
            }
            span / (2.0 * PI * n * (1.0 - c)) + 3.0 * span * span / (2.0 * PI * den * (1.0 - c))
        }
        SectorKind::Antiperiodic => {
            let sep0 = if sector.n() == 1 {
                8.0 * PI * PI
            } else {
                4.0 * PI * PI * (2.0 * n - 2.0)
            };
            let den = PI * sep0 - span;
            if den <= 0.0 {
                return Err(SolverError::PrefactorDegenerate {
                    span,
                    pi_sep: PI * sep0,
                });
            }
            span / (PI * (2.0 * n - 1.0) * (1.0 - c))
                + 3.0 * span * span / (2.0 * PI * den * (1.0 - c))
        }
    };
    Ok(geometric * prefactor)
}

/// Solves one sector by fixed-point iteration from the sector center,
/// attaching certified bounds under the strict hypothesis and NaN bounds
/// under the relaxed one.
pub fn solve(
    p: &KroneckerPotential,
    t: &TruncationParams,
    sector: SectorIndex,
    relaxed: bool,
) -> Result<EigenSolution, SolverError> {
    let condition = check_applicability(p, sector, relaxed);
    if condition == Condition::Violated {
        let threshold = if relaxed {
            relaxed_threshold(sector)
        } else {
            strict_threshold(sector)
        };
        return Err(SolverError::ConditionViolated {
            sector,
            m: p.m(),
            threshold,
        });
    }
    if condition == Condition::Strict {
        lipschitz_constant(p, sector)?;
    }
    let interval = LocalizationInterval::new(p, sector);
    let center = sector.center();
    let mut x = center;
    let mut iterations = 0u32;
    let last_step;
    loop {
        if !interval.contains(x) {
            return Err(SolverError::IterateEscaped {
                iterate: x,
                lower: interval.lower(),
                upper: interval.upper(),
            });
        }
        let next = center + g_map(p, t, sector, x)?;
        iterations += 1;
        let step = (next - x).abs();
        x = next;
        // The step cannot shrink below the floating-point granularity of
        // the iterate, so the granularity caps the effective tolerance.
        if step <= t.tol().max(8.0 * f64::EPSILON * x.abs()) {
            last_step = step;
            break;
        }
        if iterations >= t.max_iter() {
            return Err(SolverError::NonConvergence {
                iterations,
                last_step: step,
            });
        }
    }
    if !interval.contains(x) {
        return Err(SolverError::IterateEscaped {
            iterate: x,
            lower: interval.lower(),
            upper: interval.upper(),
        });
    }
    let (truncation, iteration) = match condition {
        Condition::Strict => {
            let tb = match truncation_bound(p, t, sector) {
                Ok(v) => v,
                Err(SolverError::TailDegenerate { .. }) => f64::NAN,
                Err(e) => return Err(e),
            };
            let ib = iteration_bound(p, sector, iterations)?;
            (tb, ib)
        }
        Condition::Relaxed => (f64::NAN, f64::NAN),
        Condition::Violated => unreachable!("handled above"),
    };
    Ok(EigenSolution {
        sector,
        value: x,
        iterations,
        last_step,
        truncation_bound: truncation,
        iteration_bound: iteration,
        total_bound: truncation + iteration,
        condition,
    })
}

/// Solves both branches of a paired sector and returns them ordered by
/// value, relabeling `j` so that `j = 1` is the smaller eigenvalue.
pub fn solve_pair(
    p: &KroneckerPotential,
    t: &TruncationParams,
    n: u32,
    kind: SectorKind,
    relaxed: bool,
) -> Result<(EigenSolution, EigenSolution), SolverError> {
    assert!(
        kind != SectorKind::First,
        "the first sector is unpaired; call solve directly"
    );
    let build = |j: u8| -> Result<SectorIndex, SolverError> {
        Ok(match kind {
            SectorKind::Periodic => SectorIndex::periodic(n, j)?,
            SectorKind::Antiperiodic => SectorIndex::antiperiodic(n, j)?,
            SectorKind::First => unreachable!(),
        })
    };
    let first = solve(p, t, build(1)?, relaxed)?;
    let second = solve(p, t, build(2)?, relaxed)?;
    let (mut lo, mut hi) = if first.value <= second.value {
        (first, second)
    } else {
        (second, first)
    };
    lo.sector = build(1)?;
    hi.sector = build(2)?;
    Ok((lo, hi))
}
