//! Kaiser-Bessel window for gridding on an oversampled FFT grid.
//!
//! In grid units `t = n x` the window is
//! `φ(t) = sinh(b √(m² - t²)) / (π √(m² - t²))` for `|t| <= m`, with shape
//! `b = π(2 - 1/σ)` for oversampling `σ = n/N`. Its Fourier transform at
//! frequency `k` is `I_0(m √(b² - (2πk/n)²)) / n`.

use std::f64::consts::PI;

/// Largest supported half-width.
pub const MAX_HALF_WIDTH: usize = 16;

/// Aliasing plus truncation bound of the Kaiser-Bessel window, relative to
/// the l1 norm of the coefficients.
pub fn error_bound(half_width: usize, oversampling: f64) -> f64 {
    let m = half_width as f64;
    let root = (1.0 - 1.0 / oversampling).sqrt();
    4.0 * PI * (m.sqrt() + m) * root.sqrt() * (-2.0 * PI * m * root).exp()
}

/// Smallest half-width `m >= 2` whose error bound does not exceed `tolerance`.
pub fn half_width_for(tolerance: f64, oversampling: f64) -> usize {
    (2..=MAX_HALF_WIDTH)
        .find(|&m| error_bound(m, oversampling) <= tolerance)
        .unwrap_or(MAX_HALF_WIDTH)
}

/// Modified Bessel function of the first kind, order zero, by its power
/// series. All terms are positive, so the sum is accurate to rounding for the
/// arguments used here (`x < 2π·MAX_HALF_WIDTH`).
pub fn bessel_i0(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while term > f64::EPSILON * 1e-2 * sum {
        term *= q / (k * k);
        sum += term;
        k += 1.0;
    }
    sum
}

#[derive(Debug, Clone, Copy)]
pub struct KaiserBessel {
    half_width: f64,
    shape: f64,
    grid: usize,
}

impl KaiserBessel {
    pub fn new(half_width: usize, grid: usize, modes: usize) -> Self {
        let sigma = grid as f64 / modes as f64;
        Self {
            half_width: half_width as f64,
            shape: PI * (2.0 - 1.0 / sigma),
            grid,
        }
    }

    /// Window value at offset `t` in grid units; zero outside `[-m, m]`.
    #[inline]
    pub fn window(&self, t: f64) -> f64 {
        let arg = self.half_width * self.half_width - t * t;
        if arg < 0.0 {
            return 0.0;
        }
        let s = arg.sqrt();
        if s < 1e-8 {
            self.shape / PI
        } else {
            (self.shape * s).sinh() / (PI * s)
        }
    }

    /// `n φ̂(k)`; its reciprocal is the deconvolution factor for mode `k`.
    pub fn scaled_transform(&self, k: i64) -> f64 {
        let omega = 2.0 * PI * k as f64 / self.grid as f64;
        bessel_i0(self.half_width * (self.shape * self.shape - omega * omega).sqrt())
    }
}
