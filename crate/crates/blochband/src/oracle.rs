//! Independent ground truth from the one-period transfer matrix.
//!
//! For a piecewise-constant potential the fundamental solution over one
//! period is the product of two closed-form single-piece propagators, and
//! the Hill discriminant is its trace.  Periodic eigenvalues solve
//! `discriminant = 2`, antiperiodic ones `discriminant = -2`; scanning
//! the discriminant and bisecting the crossings yields eigenvalues, band
//! edges, and gap lengths with no shared code or constants with the
//! series solver, which is what makes the comparison between the two a
//! genuine certificate check.

use crate::potential::KroneckerPotential;
use std::f64::consts::PI;
use std::ops::Mul;
use thiserror::Error;

/// Scan step for discriminant bracketing.
const SCAN_STEP: f64 = PI * PI / 8.0;

/// Peak height above which a no-sign-change excursion is split into two
/// simple roots; at or below it the peak is reported as a double root.
const TANGENCY_TOL: f64 = 1e-10;

/// Switchover distance to the series form of the propagator near the
/// turning energy `λ = piece value`.
const SERIES_SWITCH: f64 = 1e-6;

/// Errors from the oracle module.
#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    /// The scan reached its ceiling before finding the requested number
    /// of eigenvalues.
    #[error(
        "found only {found} of {requested} {kind:?} eigenvalues below the \
         scan ceiling {ceiling}"
    )]
    BracketExhaustion {
        kind: BoundaryCondition,
        requested: usize,
        found: usize,
        ceiling: f64,
    },
}

/// Boundary condition selecting which discriminant level is a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    /// `y(1) = y(0)`: discriminant `= +2`.
    Periodic,
    /// `y(1) = -y(0)`: discriminant `= -2`.
    Antiperiodic,
}

/// Transfer matrix of the fundamental solution over one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monodromy {
    /// Entry (1,1).
    pub m11: f64,
    /// Entry (1,2).
    pub m12: f64,
    /// Entry (2,1).
    pub m21: f64,
    /// Entry (2,2).
    pub m22: f64,
}

impl Monodromy {
    /// Trace, the Hill discriminant.
    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    /// Determinant; equals 1 for any energy by Wronskian constancy.
    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }
}

impl Mul for Monodromy {
    type Output = Monodromy;

    fn mul(self, rhs: Monodromy) -> Monodromy {
        Monodromy {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }
}

/// Propagator of `-y'' + v y = λ y` across a piece of constant value `v`
/// and length `len`: trigonometric for `λ > v`, hyperbolic for `λ < v`,
/// and a series in `u = (λ - v)·len²` within [`SERIES_SWITCH`] of the
/// turning energy so the entries stay smooth through it.
pub fn piece_propagator(v: f64, len: f64, lambda: f64) -> Monodromy {
    assert!(len > 0.0, "piece length must be positive, got {len}");
    let w = lambda - v;
    if w.abs() < SERIES_SWITCH {
        let u = w * len * len;
        let cc = 1.0 - u / 2.0 + u * u / 24.0 - u * u * u / 720.0;
        let ss = len * (1.0 - u / 6.0 + u * u / 120.0 - u * u * u / 5040.0);
        let ks = -w * len * (1.0 - u / 6.0 + u * u / 120.0);
        return Monodromy {
            m11: cc,
            m12: ss,
            m21: ks,
            m22: cc,
        };
    }
    if w > 0.0 {
        let k = w.sqrt();
        Monodromy {
            m11: (k * len).cos(),
            m12: (k * len).sin() / k,
            m21: -k * (k * len).sin(),
            m22: (k * len).cos(),
        }
    } else {
        let k = (-w).sqrt();
        Monodromy {
            m11: (k * len).cosh(),
            m12: (k * len).sinh() / k,
            m21: k * (k * len).sinh(),
            m22: (k * len).cosh(),
        }
    }
}

/// One-period transfer matrix: the `[c, 1]` piece applied after the
/// `[0, c]` piece.
pub fn monodromy(p: &KroneckerPotential, lambda: f64) -> Monodromy {
    piece_propagator(p.b(), 1.0 - p.c(), lambda) * piece_propagator(p.a(), p.c(), lambda)
}

/// Hill discriminant: trace of the one-period transfer matrix.
pub fn discriminant(p: &KroneckerPotential, lambda: f64) -> f64 {
    monodromy(p, lambda).trace()
}

/// Bisects a bracketed sign change of `f`; `flo` is `f` at `lo`.
fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..200 {
        let atol = 1e-12f64.max((lo.abs() + hi.abs()) * 1e-15);
        if hi - lo <= atol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if flo * fm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section search for an interior extremum of `f` on `[lo, hi]`;
/// returns the abscissa and the value there.
fn extremum(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, maximize: bool) -> (f64, f64) {
    let sign = if maximize { 1.0 } else { -1.0 };
    let gr = 0.5 * (5.0f64.sqrt() - 1.0);
    let (mut x1, mut x4) = (lo, hi);
    let mut x2 = x4 - gr * (x4 - x1);
    let mut x3 = x1 + gr * (x4 - x1);
    let mut f2 = sign * f(x2);
    let mut f3 = sign * f(x3);
    for _ in 0..200 {
        if x4 - x1 <= 1e-12f64.max((x1.abs() + x4.abs()) * 1e-15) {
            break;
        }
        if f2 >= f3 {
            x4 = x3;
            x3 = x2;
            f3 = f2;
            x2 = x4 - gr * (x4 - x1);
            f2 = sign * f(x2);
        } else {
            x1 = x2;
            x2 = x3;
            f2 = f3;
            x3 = x1 + gr * (x4 - x1);
            f3 = sign * f(x3);
        }
    }
    let xm = 0.5 * (x1 + x4);
    (xm, f(xm))
}

/// Scans `f` on a uniform grid and collects its roots: sign changes are
/// bisected, and grid-local extrema pointing toward zero are resolved by
/// golden section, splitting into two roots on overshoot and into a
/// double root at a tangency.  `maximize` is true when roots sit at local
/// maxima of `f` (periodic levels) and false for local minima.
fn scan_roots(
    f: &dyn Fn(f64) -> f64,
    lo_start: f64,
    ceiling: f64,
    step: f64,
    maximize: bool,
) -> Vec<f64> {
    let mut xs = Vec::new();
    let mut x = lo_start;
    while x <= ceiling {
        xs.push(x);
        x += step;
    }
    let fv: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..xs.len() - 1 {
        if fv[i] == 0.0 {
            roots.push(xs[i]);
        } else if fv[i] * fv[i + 1] < 0.0 {
            roots.push(bisect(f, xs[i], xs[i + 1], fv[i]));
        }
    }
    for i in 1..xs.len() - 1 {
        let interior_peak = if maximize {
            fv[i - 1] < fv[i] && fv[i] > fv[i + 1] && fv[i] < 0.0
        } else {
            fv[i - 1] > fv[i] && fv[i] < fv[i + 1] && fv[i] > 0.0
        };
        if !interior_peak {
            continue;
        }
        let (xm, fm) = extremum(f, xs[i - 1], xs[i + 1], maximize);
        let overshoot = if maximize {
            fm > TANGENCY_TOL
        } else {
            fm < -TANGENCY_TOL
        };
        if overshoot {
            roots.push(bisect(f, xs[i - 1], xm, fv[i - 1]));
            roots.push(bisect(f, xm, xs[i + 1], fm));
        } else if fm.abs() <= TANGENCY_TOL {
            roots.push(xm);
            roots.push(xm);
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("discriminant is finite"));
    roots
}

/// First `count` eigenvalues under the given boundary condition, in
/// increasing order with multiplicity; double eigenvalues appear as two
/// equal entries.
pub fn find_eigen(
    p: &KroneckerPotential,
    kind: BoundaryCondition,
    count: usize,
) -> Result<Vec<f64>, OracleError> {
    assert!(count >= 1, "count must be at least 1, got {count}");
    let periodic = kind == BoundaryCondition::Periodic;
    let target = if periodic { 2.0 } else { -2.0 };
    let f = move |x: f64| discriminant(p, x) - target;
    let npairs = count.div_ceil(2);
    let center = if periodic {
        (2.0 * PI * npairs as f64).powi(2)
    } else {
        ((2.0 * npairs as f64 - 1.0) * PI).powi(2)
    };
    let ceiling = center + p.m() + 2.0 * PI * PI;
    let lo_start = -p.m() - 1.0;
    let mut step = SCAN_STEP;
    let mut roots = scan_roots(&f, lo_start, ceiling, step, periodic);
    for _ in 0..8 {
        let finer = scan_roots(&f, lo_start, ceiling, step / 2.0, periodic);
        if finer.len() == roots.len() && roots.len() >= count {
            roots = finer;
            break;
        }
        roots = finer;
        step /= 2.0;
    }
    if roots.len() < count {
        return Err(OracleError::BracketExhaustion {
            kind,
            requested: count,
            found: roots.len(),
            ceiling,
        });
    }
    roots.truncate(count);
    Ok(roots)
}

/// Band and gap table assembled from both boundary conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTable {
    /// Lowest periodic eigenvalue (bottom of the spectrum).
    pub lambda0: f64,
    /// Periodic pairs `(n, λ_{n,1}, λ_{n,2})`.
    pub periodic: Vec<(u32, f64, f64)>,
    /// Antiperiodic pairs `(n, μ_{n,1}, μ_{n,2})`.
    pub antiperiodic: Vec<(u32, f64, f64)>,
    /// Gap lengths `(k, |Δ_k|)`; odd `k` lies inside an antiperiodic
    /// pair, even `k` inside a periodic pair.
    pub gaps: Vec<(u32, f64)>,
    /// Bands `(k, left edge, right edge)`.
    pub bands: Vec<(u32, f64, f64)>,
}

/// Computes the first `count` bands and gaps by merging the two
/// eigenvalue lists in their interlacing order.
pub fn bands_and_gaps(p: &KroneckerPotential, count: usize) -> Result<SpectralTable, OracleError> {
    assert!(count >= 1, "count must be at least 1, got {count}");
    let per_pairs = count / 2;
    let anti_pairs = count - per_pairs;
    let per = find_eigen(p, BoundaryCondition::Periodic, 1 + 2 * per_pairs)?;
    let anti = find_eigen(p, BoundaryCondition::Antiperiodic, 2 * anti_pairs)?;
    let lambda0 = per[0];
    let mut edges = vec![lambda0];
    for n in 0..anti_pairs {
        edges.push(anti[2 * n]);
        edges.push(anti[2 * n + 1]);
        if n < per_pairs {
            edges.push(per[1 + 2 * n]);
            edges.push(per[2 + 2 * n]);
        }
    }
    let mut bands = Vec::with_capacity(count);
    let mut gaps = Vec::with_capacity(count);
    for k in 1..=count {
        let kk = u32::try_from(k).expect("band index exceeds u32");
        bands.push((kk, edges[2 * k - 2], edges[2 * k - 1]));
        gaps.push((kk, edges[2 * k] - edges[2 * k - 1]));
    }
    let periodic = (1..=per_pairs)
        .map(|n| {
            (
                u32::try_from(n).expect("pair index exceeds u32"),
                per[2 * n - 1],
                per[2 * n],
            )
        })
        .collect();
    let antiperiodic = (1..=anti_pairs)
        .map(|n| {
            (
                u32::try_from(n).expect("pair index exceeds u32"),
                anti[2 * n - 2],
                anti[2 * n - 1],
            )
        })
        .collect();
    Ok(SpectralTable {
        lambda0,
        periodic,
        antiperiodic,
        gaps,
        bands,
    })
}
