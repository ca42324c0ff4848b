//! Truncated multi-index window sums and the contraction maps built on them.
//!
//! Each eigenvalue sector (the first periodic eigenvalue, a periodic pair
//! near `(2πn)²`, or an antiperiodic pair near `((2n-1)π)²`) comes with a
//! family of depth-`k` sums over index tuples `(n₁, …, n_k)` drawn from the
//! window `[-s, s] \ {0}`, with every partial sum excluded from `{0, K}`
//! where `K` is the sector's resonant index (`2n` periodic, `2n-1`
//! antiperiodic).  The diagonal family (`a` periodic, `η` antiperiodic)
//! closes each tuple with `q_{-p}`, the off-diagonal family (`b`, `ν`)
//! with `q_{K-p}`, where `p` is the full index sum.  The map `g` combines
//! both families with a phase rotation that makes the off-diagonal part
//! real; its fixed point, shifted by the sector center, is the eigenvalue
//! approximation certified by the solver module.
//!
//! Sums are evaluated by dynamic programming over partial-sum states with
//! compensated (Kahan) accumulation, so window widths in the hundreds stay
//! cheap and reproducible; a raw recursive enumeration is kept behind the
//! test flag as an independence oracle.

use crate::potential::{cispi, KroneckerPotential};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use thiserror::Error;

/// Relative tolerance on the imaginary part of quantities that are real in
/// exact arithmetic (diagonal sums and phase-rotated off-diagonal sums).
pub const REALITY_RTOL: f64 = 1e-9;

/// Absolute threshold below which a denominator `λ - ((K-2p)π)²` is
/// treated as degenerate.  Inside any localization interval the true
/// denominators stay bounded away from zero by the sector separation, so a
/// smaller value signals misuse.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Errors from the series module.
#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    /// Series depth `r` must be at least 1.
    #[error("series depth r must be at least 1, got {0}")]
    InvalidR(u32),
    /// Window half-width `s` must be at least 1.
    #[error("window half-width s must be at least 1, got {0}")]
    InvalidS(u32),
    /// Fixed-point tolerance must lie in (0, 1).
    #[error("tolerance must be in (0,1), got {0}")]
    InvalidTol(f64),
    /// Iteration cap must be at least 1.
    #[error("max_iter must be at least 1, got {0}")]
    InvalidMaxIter(u32),
    /// Sector index `n` must be at least 1 for paired sectors.
    #[error("sector index n must be at least 1, got {0}")]
    InvalidSectorN(u32),
    /// Branch label `j` must be 1 or 2.
    #[error("branch j must be 1 or 2, got {0}")]
    InvalidSectorJ(u8),
    /// A reached partial-sum state has a denominator within
    /// [`DEGENERACY_TOL`] of zero.
    #[error(
        "degenerate denominator {denominator:.3e} at partial sum {partial_sum} \
         for lambda = {lambda}: spectral parameter sits on a foreign resonance"
    )]
    DegenerateDenominator {
        partial_sum: i64,
        denominator: f64,
        lambda: f64,
    },
    /// A quantity that must be real carries a non-negligible imaginary
    /// part, indicating an inconsistent phase convention or a bug.
    #[error(
        "{context} must be real: imaginary part {imag:.3e} exceeds \
         tolerance relative to real part {real:.3e}"
    )]
    RealityViolation {
        context: &'static str,
        imag: f64,
        real: f64,
    },
}

/// Truncation and iteration parameters shared by the series and solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationParams {
    r: u32,
    s: u32,
    tol: f64,
    max_iter: u32,
}

impl TruncationParams {
    /// Validates `r ≥ 1`, `s ≥ 1`, `tol ∈ (0,1)`, `max_iter ≥ 1`.
    pub fn new(r: u32, s: u32, tol: f64, max_iter: u32) -> Result<Self, SeriesError> {
        if r < 1 {
            return Err(SeriesError::InvalidR(r));
        }
        if s < 1 {
            return Err(SeriesError::InvalidS(s));
        }
        if !(tol > 0.0 && tol < 1.0) {
            return Err(SeriesError::InvalidTol(tol));
        }
        if max_iter < 1 {
            return Err(SeriesError::InvalidMaxIter(max_iter));
        }
        Ok(Self {
            r,
            s,
            tol,
            max_iter,
        })
    }

    /// Series depth (number of nested index sums).
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Index window half-width.
    pub fn s(&self) -> u32 {
        self.s
    }

    /// Fixed-point stop threshold on the iterate step.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Iteration cap.
    pub fn max_iter(&self) -> u32 {
        self.max_iter
    }
}

/// Which eigenvalue family a sector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectorKind {
    /// The lowest periodic eigenvalue, centered at 0.
    First,
    /// A periodic pair centered at `(2πn)²`, `n ≥ 1`.
    Periodic,
    /// An antiperiodic pair centered at `((2n-1)π)²`, `n ≥ 1`.
    Antiperiodic,
}

/// Address of one eigenvalue: family, pair index `n`, branch `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SectorIndex {
    kind: SectorKind,
    n: u32,
    j: u8,
}

impl SectorIndex {
    /// The first periodic eigenvalue (unpaired; `n = 0`).
    pub fn first() -> Self {
        Self {
            kind: SectorKind::First,
            n: 0,
            j: 1,
        }
    }

    /// Periodic sector `n ≥ 1` with branch `j ∈ {1, 2}`.
    pub fn periodic(n: u32, j: u8) -> Result<Self, SeriesError> {
        if n < 1 {
            return Err(SeriesError::InvalidSectorN(n));
        }
        if j != 1 && j != 2 {
            return Err(SeriesError::InvalidSectorJ(j));
        }
        Ok(Self {
            kind: SectorKind::Periodic,
            n,
            j,
        })
    }

    /// Antiperiodic sector `n ≥ 1` with branch `j ∈ {1, 2}`.
    pub fn antiperiodic(n: u32, j: u8) -> Result<Self, SeriesError> {
        if n < 1 {
            return Err(SeriesError::InvalidSectorN(n));
        }
        if j != 1 && j != 2 {
            return Err(SeriesError::InvalidSectorJ(j));
        }
        Ok(Self {
            kind: SectorKind::Antiperiodic,
            n,
            j,
        })
    }

    /// Eigenvalue family.
    pub fn kind(&self) -> SectorKind {
        self.kind
    }

    /// Pair index (0 for the first sector).
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Branch label within the pair (1 for the first sector).
    pub fn j(&self) -> u8 {
        self.j
    }

    /// Unperturbed eigenvalue the sector is centered at: 0, `(2πn)²`, or
    /// `((2n-1)π)²`.
    pub fn center(&self) -> f64 {
        match self.kind {
            SectorKind::First => 0.0,
            SectorKind::Periodic => (2.0 * PI * f64::from(self.n)).powi(2),
            SectorKind::Antiperiodic => ((2.0 * f64::from(self.n) - 1.0) * PI).powi(2),
        }
    }

    /// Resonant Fourier index `K` excluded from partial sums: 0, `2n`, or
    /// `2n - 1`.
    pub fn resonant_index(&self) -> i64 {
        match self.kind {
            SectorKind::First => 0,
            SectorKind::Periodic => 2 * i64::from(self.n),
            SectorKind::Antiperiodic => 2 * i64::from(self.n) - 1,
        }
    }
}

impl fmt::Display for SectorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SectorKind::First => write!(f, "first sector"),
            SectorKind::Periodic => write!(f, "periodic sector (n={}, j={})", self.n, self.j),
            SectorKind::Antiperiodic => {
                write!(f, "antiperiodic sector (n={}, j={})", self.n, self.j)
            }
        }
    }
}

/// Kahan compensated accumulator.
#[derive(Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

/// Componentwise Kahan accumulator for complex values.
#[derive(Clone, Copy, Default)]
struct KahanC {
    re: Kahan,
    im: Kahan,
}

impl KahanC {
    fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Depth-indexed window sums: `a[k-1]` and `b[k-1]` are the depth-`k`
/// diagonal and off-diagonal sums.
#[derive(Debug)]
struct DepthSums {
    a: Vec<Complex64>,
    b: Vec<Complex64>,
}

/// Evaluates all depth sums for the sector with resonant index `K` by
/// dynamic programming over partial-sum states.  `reverse` flips the step
/// iteration order; results must agree up to rounding, which the tests
/// assert as an associativity sanity check.
fn window_sums(
    p: &KroneckerPotential,
    resonant: i64,
    lambda: f64,
    depth: u32,
    s: u32,
    reverse: bool,
) -> Result<DepthSums, SeriesError> {
    let cap = i64::from(depth) * i64::from(s);
    let qmax = cap + resonant.abs();
    let zero = Complex64::new(0.0, 0.0);
    let q: Vec<Complex64> = (-qmax..=qmax)
        .map(|k| {
            if k == 0 {
                zero
            } else {
                p.q_fourier(i32::try_from(k).expect("Fourier index exceeds i32"))
            }
        })
        .collect();
    let qat = |k: i64| q[usize::try_from(k + qmax).expect("index out of table")];
    let dens: Vec<f64> = (-cap..=cap)
        .map(|pp| lambda - (((resonant - 2 * pp) as f64) * PI).powi(2))
        .collect();
    let width = usize::try_from(2 * cap + 1).expect("window too large");
    let idx = |pp: i64| usize::try_from(pp + cap).expect("state out of range");

    let mut steps: Vec<i64> = (-i64::from(s)..=i64::from(s)).filter(|&k| k != 0).collect();
    if reverse {
        steps.reverse();
    }

    let mut cur = vec![zero; width];
    cur[idx(0)] = Complex64::new(1.0, 0.0);
    let mut a_terms = Vec::with_capacity(depth as usize);
    let mut b_terms = Vec::with_capacity(depth as usize);
    for _ in 0..depth {
        let mut next = vec![KahanC::default(); width];
        for p0 in -cap..=cap {
            let amp = cur[idx(p0)];
            if amp == zero {
                continue;
            }
            for &step in &steps {
                let pd = p0 + step;
                if pd == 0 || pd == resonant {
                    continue;
                }
                debug_assert!(pd.abs() <= cap);
                let den = dens[idx(pd)];
                if den.abs() <= DEGENERACY_TOL {
                    return Err(SeriesError::DegenerateDenominator {
                        partial_sum: pd,
                        denominator: den,
                        lambda,
                    });
                }
                next[idx(pd)].add(amp * qat(step) / den);
            }
        }
        for (slot, acc) in cur.iter_mut().zip(next.iter()) {
            *slot = acc.value();
        }
        let mut ak = KahanC::default();
        let mut bk = KahanC::default();
        for pd in -cap..=cap {
            let amp = cur[idx(pd)];
            if amp == zero {
                continue;
            }
            ak.add(amp * qat(-pd));
            bk.add(amp * qat(resonant - pd));
        }
        a_terms.push(ak.value());
        b_terms.push(bk.value());
    }
    Ok(DepthSums {
        a: a_terms,
        b: b_terms,
    })
}

/// Checks that a nominally real quantity has negligible imaginary part.
fn check_reality(context: &'static str, z: Complex64) -> Result<f64, SeriesError> {
    if z.im.abs() > REALITY_RTOL * (1.0 + z.re.abs()) {
        return Err(SeriesError::RealityViolation {
            context,
            imag: z.im,
            real: z.re,
        });
    }
    Ok(z.re)
}

/// Depth-`k` diagonal sum for the periodic sector `n ≥ 0` (exclusion set
/// `{0, 2n}`); real up to rounding.
pub fn a_trunc(
    p: &KroneckerPotential,
    t: &TruncationParams,
    n: u32,
    k: u32,
    lambda: f64,
) -> Result<f64, SeriesError> {
    assert!(k >= 1 && k <= t.r(), "depth k must be in [1, r], got {k}");
    let sums = window_sums(p, 2 * i64::from(n), lambda, k, t.s(), false)?;
    check_reality("diagonal sum", sums.a[(k - 1) as usize])
}

/// Depth-`k` off-diagonal sum for the periodic sector `n ≥ 1`; complex,
/// real only after the `e^{i2πnc}` rotation applied in [`g_map`].
pub fn b_trunc(
    p: &KroneckerPotential,
    t: &TruncationParams,
    n: u32,
    k: u32,
    lambda: f64,
) -> Result<Complex64, SeriesError> {
    assert!(n >= 1, "off-diagonal sums need n >= 1, got {n}");
    assert!(k >= 1 && k <= t.r(), "depth k must be in [1, r], got {k}");
    let sums = window_sums(p, 2 * i64::from(n), lambda, k, t.s(), false)?;
    Ok(sums.b[(k - 1) as usize])
}

/// Depth-`k` diagonal sum for the antiperiodic sector `n ≥ 1` (exclusion
/// set `{0, 2n-1}`); real up to rounding.
pub fn eta_trunc(
    p: &KroneckerPotential,
    t: &TruncationParams,
    n: u32,
    k: u32,
    mu: f64,
) -> Result<f64, SeriesError> {
    assert!(n >= 1, "antiperiodic sums need n >= 1, got {n}");
    assert!(k >= 1 && k <= t.r(), "depth k must be in [1, r], got {k}");
    let sums = window_sums(p, 2 * i64::from(n) - 1, mu, k, t.s(), false)?;
    check_reality("antiperiodic diagonal sum", sums.a[(k - 1) as usize])
}

/// Depth-`k` off-diagonal sum for the antiperiodic sector `n ≥ 1`;
/// complex, real only after the `e^{iπ(2n-1)c}` rotation.
pub fn nu_trunc(
    p: &KroneckerPotential,
    t: &TruncationParams,
    n: u32,
    k: u32,
    mu: f64,
) -> Result<Complex64, SeriesError> {
    assert!(n >= 1, "antiperiodic sums need n >= 1, got {n}");
    assert!(k >= 1 && k <= t.r(), "depth k must be in [1, r], got {k}");
    let sums = window_sums(p, 2 * i64::from(n) - 1, mu, k, t.s(), false)?;
    Ok(sums.b[(k - 1) as usize])
}

/// The contraction map `g` whose fixed point, shifted by the sector
/// center, approximates the eigenvalue.  For the first sector it is the
/// plain diagonal sum; for paired sectors the phase-rotated off-diagonal
/// part enters with the sign selected by the branch `j`.
pub fn g_map(
    p: &KroneckerPotential,
    t: &TruncationParams,
    sector: SectorIndex,
    lambda: f64,
) -> Result<f64, SeriesError> {
    assert!(
        (lambda - sector.center()).abs() <= p.m(),
        "lambda = {lambda} lies outside the localization interval of the {sector}"
    );
    let resonant = sector.resonant_index();
    let sums = window_sums(p, resonant, lambda, t.r(), t.s(), false)?;
    let mut a_total = KahanC::default();
    for &term in &sums.a {
        a_total.add(term);
    }
    let a_total = check_reality("diagonal sum", a_total.value())?;
    if sector.kind() == SectorKind::First {
        return Ok(a_total);
    }
    let mut b_total = KahanC::default();
    for &term in &sums.b {
        b_total.add(term);
    }
    let rot = cispi((resonant as f64) * p.c());
    let q_res = p.q_fourier(i32::try_from(resonant).expect("resonant index exceeds i32"));
    let coupling = check_reality("rotated off-diagonal sum", rot * (q_res + b_total.value()))?;
    let sign = if sector.j() == 1 { -1.0 } else { 1.0 };
    Ok(a_total - sign * coupling)
}

/// Closed forms of the depth-1 sums at the periodic center `(2πn)²`:
/// returns `(a₁, coupling₁)` where `coupling₁` is the already-rotated real
/// off-diagonal term `e^{i2πnc}(q_{2n} + b₁)`.
pub fn closed_first_order(p: &KroneckerPotential, n: u32) -> (f64, f64) {
    assert!(n >= 1, "closed forms are for paired sectors, n >= 1");
    let (a, b, c) = (p.a(), p.b(), p.c());
    let nf = f64::from(n);
    let span = b - a;
    let a1 = -a * b / (16.0 * PI.powi(2) * nf.powi(2))
        + (b * b - a * a) * (4.0 * PI * nf * c).sin() / (64.0 * PI.powi(3) * nf.powi(3))
        + 3.0 * span * span * ((4.0 * PI * nf * c).cos() - 1.0) / (128.0 * PI.powi(4) * nf.powi(4));
    let coupling = (a - b) * (2.0 * PI * nf * c).sin() / (2.0 * PI * nf)
        + a * b * (2.0 * PI * nf * c).cos() / (8.0 * PI.powi(2) * nf.powi(2))
        + (a * a - b * b) * (2.0 * PI * nf * c).sin() / (16.0 * PI.powi(3) * nf.powi(3));
    (a1, coupling)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> KroneckerPotential {
        KroneckerPotential::new(-PI * PI, 0.5).unwrap()
    }

    /// Raw recursive enumeration of the depth sums, with loop nesting
    /// opposite to the DP's state order; independence oracle.
    fn enumerated_depth_sums(
        p: &KroneckerPotential,
        resonant: i64,
        lambda: f64,
        depth: u32,
        s: u32,
    ) -> (Complex64, Complex64) {
        fn q(p: &KroneckerPotential, k: i64) -> Complex64 {
            if k == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                p.q_fourier(k as i32)
            }
        }
        #[allow(clippy::too_many_arguments)]
        fn go(
            p: &KroneckerPotential,
            resonant: i64,
            lambda: f64,
            s: i64,
            remaining: u32,
            partial: i64,
            weight: Complex64,
            acc: &mut (Complex64, Complex64),
        ) {
            if remaining == 0 {
                acc.0 += weight * q(p, -partial);
                acc.1 += weight * q(p, resonant - partial);
                return;
            }
            for step in -s..=s {
                if step == 0 {
                    continue;
                }
                let pd = partial + step;
                if pd == 0 || pd == resonant {
                    continue;
                }
                let den = lambda - (((resonant - 2 * pd) as f64) * PI).powi(2);
                go(
                    p,
                    resonant,
                    lambda,
                    s,
                    remaining - 1,
                    pd,
                    weight * q(p, step) / den,
                    acc,
                );
            }
        }
        let mut acc = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        go(
            p,
            resonant,
            lambda,
            i64::from(s),
            depth,
            0,
            Complex64::new(1.0, 0.0),
            &mut acc,
        );
        acc
    }

    #[test]
    fn params_and_sectors_validate() {
        assert!(TruncationParams::new(5, 5, 1e-14, 100).is_ok());
        assert_eq!(
            TruncationParams::new(0, 5, 1e-14, 100),
            Err(SeriesError::InvalidR(0))
        );
        assert_eq!(
            TruncationParams::new(5, 0, 1e-14, 100),
            Err(SeriesError::InvalidS(0))
        );
        assert!(matches!(
            TruncationParams::new(5, 5, 0.0, 100),
            Err(SeriesError::InvalidTol(_))
        ));
        assert!(matches!(
            TruncationParams::new(5, 5, 1.5, 100),
            Err(SeriesError::InvalidTol(_))
        ));
        assert_eq!(
            TruncationParams::new(5, 5, 1e-14, 0),
            Err(SeriesError::InvalidMaxIter(0))
        );
        assert_eq!(
            SectorIndex::periodic(0, 1),
            Err(SeriesError::InvalidSectorN(0))
        );
        assert_eq!(
            SectorIndex::antiperiodic(1, 3),
            Err(SeriesError::InvalidSectorJ(3))
        );
        let s = SectorIndex::periodic(2, 1).unwrap();
        assert_eq!(s.resonant_index(), 4);
        assert!((s.center() - (4.0 * PI).powi(2)).abs() < 1e-12);
        let m = SectorIndex::antiperiodic(3, 2).unwrap();
        assert_eq!(m.resonant_index(), 5);
        assert!((m.center() - 25.0 * PI * PI).abs() < 1e-12);
        assert_eq!(SectorIndex::first().resonant_index(), 0);
    }

    #[test]
    fn dp_matches_raw_enumeration() {
        let p = example();
        for (resonant, lambda) in [
            (0, 0.3),
            (2, (2.0 * PI).powi(2) + 0.7),
            (1, PI * PI - 1.3),
            (3, 9.0 * PI * PI + 2.1),
        ] {
            let dp = window_sums(&p, resonant, lambda, 3, 3, false).unwrap();
            for depth in 1..=3u32 {
                let (ea, eb) = enumerated_depth_sums(&p, resonant, lambda, depth, 3);
                let da = dp.a[(depth - 1) as usize];
                let db = dp.b[(depth - 1) as usize];
                let scale_a = 1.0 + ea.norm();
                let scale_b = 1.0 + eb.norm();
                assert!(
                    (da - ea).norm() <= 1e-12 * scale_a,
                    "diagonal depth {depth} resonant {resonant}: {da} vs {ea}"
                );
                assert!(
                    (db - eb).norm() <= 1e-12 * scale_b,
                    "off-diagonal depth {depth} resonant {resonant}: {db} vs {eb}"
                );
            }
        }
    }

    #[test]
    fn summation_order_is_immaterial() {
        let p = example();
        let lam = (2.0 * PI).powi(2) + 0.5;
        let fwd = window_sums(&p, 2, lam, 5, 5, false).unwrap();
        let rev = window_sums(&p, 2, lam, 5, 5, true).unwrap();
        for k in 0..5 {
            let scale = 1.0 + fwd.a[k].norm();
            assert!((fwd.a[k] - rev.a[k]).norm() <= 1e-12 * scale);
            assert!((fwd.b[k] - rev.b[k]).norm() <= 1e-12 * (1.0 + fwd.b[k].norm()));
        }
    }

    #[test]
    fn depth_one_diagonal_matches_exact_value_at_zero() {
        let p = example();
        let t = TruncationParams::new(1, 500, 1e-14, 10).unwrap();
        let a1 = a_trunc(&p, &t, 0, 1, 0.0).unwrap();
        let exact = -PI.powi(4) / 48.0;
        assert!(
            (a1 - exact).abs() < 1e-6,
            "a1(0) = {a1}, exact {exact}"
        );
    }

    #[test]
    fn closed_first_order_anchors() {
        let p = example();
        let (a1, coupling) = closed_first_order(&p, 1);
        assert!((a1 - PI * PI / 16.0).abs() < 1e-12);
        assert!((coupling - PI * PI / 8.0).abs() < 1e-12);
    }

    #[test]
    fn g_map_assembles_the_per_depth_sums() {
        let p = example();
        let t = TruncationParams::new(4, 5, 1e-14, 10).unwrap();
        let sector = SectorIndex::periodic(1, 2).unwrap();
        let lam = sector.center() + 1.0;
        let g = g_map(&p, &t, sector, lam).unwrap();
        let mut a_sum = 0.0;
        let mut b_sum = Complex64::new(0.0, 0.0);
        for k in 1..=4 {
            a_sum += a_trunc(&p, &t, 1, k, lam).unwrap();
            b_sum += b_trunc(&p, &t, 1, k, lam).unwrap();
        }
        let rot = cispi(2.0 * p.c());
        let coupling = (rot * (p.q_fourier(2) + b_sum)).re;
        assert!((g - (a_sum - coupling)).abs() < 1e-12);
    }

    #[test]
    fn degenerate_denominator_is_reported() {
        let p = example();
        // lambda exactly at the n=2 periodic resonance while summing in the
        // n=1 sector window: the state p = -1 has denominator
        // lambda - (2pi(1-(-1)))^2 = 0.
        let err = window_sums(&p, 2, (4.0 * PI).powi(2), 2, 3, false).unwrap_err();
        assert!(matches!(err, SeriesError::DegenerateDenominator { .. }));
    }
}
