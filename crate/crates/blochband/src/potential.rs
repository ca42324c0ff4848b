//! The mean-zero step potential and its closed-form Fourier data.
//!
//! The potential equals `a` on `[0, c]` and `b` on `(c, 1]`, extended
//! 1-periodically, with `a < 0 < b` and zero mean: `a c + (1 - c) b = 0`.
//! Every Fourier-side quantity consumed by the series solver and the
//! asymptotic formulas is available in closed form: the potential
//! coefficients `q_k`, the coefficients `Q_k` and mean `Q_0` of the
//! primitive `Q(x) = ∫_0^x q`, the coefficients `S_k` and mean `S_0` of
//! its square `Q(x)^2`, the twisted primitive `Q(x, k)` together with
//! its mean, and the real correction term `D(k)` entering the refined
//! band-edge expansion.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use thiserror::Error;

/// Fourier coefficient of the potential at index zero; vanishes by the
/// mean-zero normalization.
pub const Q_FOURIER_ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative tolerance accepted for the mean-zero constraint when `b` is
/// supplied explicitly.
pub const MEAN_ZERO_RTOL: f64 = 1e-12;

/// Relative imaginary-part tolerance for `d_term`, which is real up to
/// rounding; a violation indicates an implementation bug.
const D_TERM_RTOL: f64 = 1e-8;

/// Errors from constructing a [`KroneckerPotential`].
#[derive(Debug, Error, PartialEq)]
pub enum PotentialError {
    /// `a` must be strictly negative.
    #[error("a must be negative, got {0}")]
    InvalidA(f64),
    /// `b` must be strictly positive.
    #[error("b must be positive, got {0}")]
    InvalidB(f64),
    /// `c` must be in (0,1).
    #[error("c must be in (0,1), got {0}")]
    InvalidC(f64),
    /// `a c + (1 - c) b` must vanish to relative precision.
    #[error(
        "mean-zero constraint violated: |a*c + (1-c)*b| = {residual:.3e} exceeds {tol:.3e} \
         (a = {a}, b = {b}, c = {c})"
    )]
    MeanZero {
        a: f64,
        b: f64,
        c: f64,
        residual: f64,
        tol: f64,
    },
}

/// 1-periodic mean-zero step potential: `a` on `[0, c]`, `b` on `(c, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KroneckerPotential {
    a: f64,
    b: f64,
    c: f64,
    m: f64,
}

/// Unit complex number `e^{i π t}`, with the angle reduced modulo 2
/// before scaling by π so that integer and half-integer `t` land exactly
/// on the axes.
pub(crate) fn cispi(t: f64) -> Complex64 {
    let mut r = t - 2.0 * (t / 2.0).round();
    if r == -1.0 {
        r = 1.0;
    }
    if r == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if r == 1.0 {
        Complex64::new(-1.0, 0.0)
    } else if r == 0.5 {
        Complex64::new(0.0, 1.0)
    } else if r == -0.5 {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::from_polar(1.0, PI * r)
    }
}

impl KroneckerPotential {
    /// Builds the potential from the well depth `a < 0` and the step
    /// location `c ∈ (0,1)`, deriving `b = -a c / (1 - c)` so the mean
    /// vanishes exactly.
    pub fn new(a: f64, c: f64) -> Result<Self, PotentialError> {
        if a >= 0.0 || a.is_nan() {
            return Err(PotentialError::InvalidA(a));
        }
        if !(0.0 < c && c < 1.0) {
            return Err(PotentialError::InvalidC(c));
        }
        let b = -a * c / (1.0 - c);
        Ok(Self {
            a,
            b,
            c,
            m: a.abs().max(b),
        })
    }

    /// Builds the potential from explicit `a < 0 < b` and `c ∈ (0,1)`,
    /// validating the mean-zero constraint `a c + (1 - c) b = 0` to
    /// [`MEAN_ZERO_RTOL`] relative precision.
    pub fn with_b(a: f64, b: f64, c: f64) -> Result<Self, PotentialError> {
        if a >= 0.0 || a.is_nan() {
            return Err(PotentialError::InvalidA(a));
        }
        if b <= 0.0 || b.is_nan() {
            return Err(PotentialError::InvalidB(b));
        }
        if !(0.0 < c && c < 1.0) {
            return Err(PotentialError::InvalidC(c));
        }
        let residual = (a * c + (1.0 - c) * b).abs();
        let scale = (a.abs() * c).max(b * (1.0 - c));
        let tol = MEAN_ZERO_RTOL * scale;
        if residual > tol {
            return Err(PotentialError::MeanZero {
                a,
                b,
                c,
                residual,
                tol,
            });
        }
        Ok(Self {
            a,
            b,
            c,
            m: a.abs().max(b),
        })
    }

    /// Value on the left piece (negative).
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Value on the right piece (positive).
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Step location inside the unit period.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Sup norm `M = max(|a|, b)`, the half-width of every localization
    /// interval.
    pub fn m(&self) -> f64 {
        self.m
    }

    /// Pointwise value at `x ∈ [0, 1)`; the left piece is closed, so
    /// `eval(c) = a`.
    pub fn eval(&self, x: f64) -> f64 {
        assert!(
            (0.0..1.0).contains(&x),
            "x must be in [0,1), got {x}"
        );
        if x <= self.c {
            self.a
        } else {
            self.b
        }
    }

    /// Fourier coefficient `q_k = ∫_0^1 q(x) e^{-2πikx} dx` for `k ≠ 0`;
    /// the `k = 0` coefficient is the constant [`Q_FOURIER_ZERO`].
    pub fn q_fourier(&self, k: i32) -> Complex64 {
        assert!(k != 0, "k must be nonzero; q_0 is Q_FOURIER_ZERO");
        let kf = f64::from(k);
        let i2pk = Complex64::new(0.0, TAU * kf);
        (self.a - self.b) * (1.0 - cispi(-2.0 * kf * self.c)) / i2pk
    }

    /// Fourier coefficient `Q_k = q_k / (2πki)` of the primitive
    /// `Q(x) = ∫_0^x q`, for `k ≠ 0`.
    pub fn primitive_fourier(&self, k: i32) -> Complex64 {
        assert!(k != 0, "k must be nonzero; the mean is primitive_mean()");
        let kf = f64::from(k);
        (self.a - self.b) / (TAU * kf).powi(2) * (cispi(-2.0 * kf * self.c) - 1.0)
    }

    /// Mean `Q_0 = ∫_0^1 Q(x) dx = b (c - 1) / 2`.
    pub fn primitive_mean(&self) -> f64 {
        self.b * (self.c - 1.0) / 2.0
    }

    /// Fourier coefficient `S_k` of `Q(x)^2`, for `k ≠ 0`.
    pub fn square_fourier(&self, k: i32) -> Complex64 {
        assert!(k != 0, "k must be nonzero; the mean is square_mean()");
        let kf = f64::from(k);
        let e = cispi(-2.0 * kf * self.c);
        let inv_ipk = Complex64::new(0.0, -1.0 / (PI * kf));
        let inv_i2pk = Complex64::new(0.0, -1.0 / (TAU * kf));
        let sq = (TAU * kf).powi(2);
        let t1 = self.a * self.a * inv_ipk * ((e - 1.0) / sq - self.c * e * inv_i2pk);
        let t2 = self.b * self.b * inv_ipk * ((1.0 - e) / sq + (self.c * e - 1.0) * inv_i2pk);
        let t3 = -self.b * self.b * inv_ipk * ((e - 1.0) * inv_i2pk);
        t1 + t2 + t3
    }

    /// Mean `S_0 = ∫_0^1 Q(x)^2 dx = a² c² / 3`.
    pub fn square_mean(&self) -> f64 {
        self.a * self.a * self.c * self.c / 3.0
    }

    /// Twisted primitive `Q(x, k) = ∫_0^x q(t) e^{2πikt} dt - q_{-k} x`
    /// for `x ∈ [0, 1]`, `k ≠ 0`.
    pub fn twisted_primitive(&self, x: f64, k: i32) -> Complex64 {
        assert!(k != 0, "k must be nonzero");
        assert!(
            (0.0..=1.0).contains(&x),
            "x must be in [0,1], got {x}"
        );
        let kf = f64::from(k);
        let i2pk = Complex64::new(0.0, TAU * kf);
        let qmk = self.q_fourier(-k);
        if x <= self.c {
            self.a * (cispi(2.0 * kf * x) - 1.0) / i2pk - qmk * x
        } else {
            self.b * (cispi(2.0 * kf * x) - 1.0) / i2pk - qmk * x + qmk
        }
    }

    /// Mean `Q_{k,0} = ∫_0^1 Q(x, k) dx` of the twisted primitive.
    pub fn twisted_mean(&self, k: i32) -> Complex64 {
        assert!(k != 0, "k must be nonzero");
        let kf = f64::from(k);
        let ep = cispi(2.0 * kf * self.c) - 1.0;
        (self.b - self.a) * ep / (TAU * kf).powi(2)
            + (self.a + self.b) * ep / Complex64::new(0.0, 2.0 * TAU * kf)
    }

    /// Correction term
    /// `D(k) = (i / 2πk) ∫_0^1 q(x) (Q(x,k) - Q_{k,0}) e^{-2πikx} dx`,
    /// evaluated in closed form.  The value is real up to rounding; a
    /// larger imaginary part indicates an implementation bug and panics.
    pub fn d_term(&self, k: i32) -> f64 {
        assert!(k != 0, "k must be nonzero");
        let kf = f64::from(k);
        let (a, b, c) = (self.a, self.b, self.c);
        let e = cispi(-2.0 * kf * c);
        let i2pk = Complex64::new(0.0, TAU * kf);
        let qmk = self.q_fourier(-k);
        let int_left = a * a / i2pk * (c + (e - 1.0) / i2pk)
            + a * qmk / i2pk * (c * e + (e - 1.0) / i2pk);
        let int_right = b * b / i2pk * (1.0 - c - (e - 1.0) / i2pk)
            + b * qmk / i2pk * (1.0 - c * e - (e - 1.0) / i2pk)
            + b * qmk / i2pk * (e - 1.0);
        let i_over = Complex64::new(0.0, 1.0 / (TAU * kf));
        let d = i_over * (int_left + int_right) - i_over * self.twisted_mean(k) * self.q_fourier(k);
        assert!(
            d.im.abs() <= D_TERM_RTOL * (1.0 + d.re.abs()),
            "d_term({k}) has non-negligible imaginary part {:.3e}; implementation bug",
            d.im
        );
        d.re
    }
}
