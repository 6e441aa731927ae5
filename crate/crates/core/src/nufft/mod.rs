//! One-dimensional type-2 non-uniform FFT:
//! `f̂_j = Σ_{k ∈ I_N} f_k e^{-2πi k x_j}`, `x_j ∈ [-1/2, 1/2)`,
//! `I_N = {-N/2, …, N/2-1}`.
//!
//! The transform deconvolves the coefficients by the Kaiser-Bessel window's
//! Fourier transform, runs one FFT on a grid oversampled by at least two, and
//! interpolates the grid at the sample points with the window.
//! [`nudft_direct`] evaluates the same sum exactly and serves as the oracle.

pub mod kaiser_bessel;

use crate::error::{CosError, Result};
use kaiser_bessel::{half_width_for, KaiserBessel};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Coefficients over `I_N`, stored from `k = -N/2` up to `k = N/2 - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    coefficients: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.is_empty() || !coefficients.len().is_multiple_of(2) {
            return Err(CosError::OddTransformSize(coefficients.len()));
        }
        Ok(Self { coefficients })
    }

    pub fn zeros(modes: usize) -> Result<Self> {
        Self::new(vec![Complex64::new(0.0, 0.0); modes])
    }

    /// Transform size `N`.
    pub fn modes(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// Storage position of frequency `k`.
    #[inline]
    pub fn index_of(&self, k: i64) -> usize {
        let half = (self.modes() / 2) as i64;
        assert!((-half..half).contains(&k), "frequency {k} outside I_N");
        (k + half) as usize
    }

    pub fn get(&self, k: i64) -> Complex64 {
        self.coefficients[self.index_of(k)]
    }

    pub fn set(&mut self, k: i64, value: Complex64) {
        let i = self.index_of(k);
        self.coefficients[i] = value;
    }

    /// Iterates `(k, f_k)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let half = (self.modes() / 2) as i64;
        self.coefficients
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - half, c))
    }

    pub fn l2_norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Places `f_k` at FFT position `k mod grid`.
    pub fn to_fft_layout(&self, grid: usize) -> Vec<Complex64> {
        assert!(grid >= self.modes());
        let mut out = vec![Complex64::new(0.0, 0.0); grid];
        for (k, c) in self.iter() {
            out[k.rem_euclid(grid as i64) as usize] = c;
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NufftOptions {
    /// Target accuracy, relative to the spectrum's l2 norm.
    pub tolerance: f64,
    pub oversampling: f64,
    /// Plans with `J·N` below this evaluate the sum directly.
    pub direct_crossover: usize,
    /// Interpolate sample points on the rayon pool.
    pub parallel: bool,
}

impl Default for NufftOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            oversampling: 2.0,
            direct_crossover: 1 << 14,
            parallel: false,
        }
    }
}

impl NufftOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        Self {
            tolerance,
            ..Self::default()
        }
    }
}

struct Gridding {
    fft: Arc<dyn Fft<f64>>,
    /// `1/(n φ̂(k))` in spectrum storage order.
    deconvolution: Vec<f64>,
    /// First grid index touched by each point, reduced mod n.
    starts: Vec<usize>,
    /// `2m + 1` window values per point.
    weights: Vec<f64>,
}

/// Precomputed type-2 transform for a fixed set of points and size `N`.
/// Immutable once built; [`execute_type2`](Self::execute_type2) may run
/// concurrently on a shared plan.
pub struct NufftPlan {
    modes: usize,
    points: Vec<f64>,
    options: NufftOptions,
    half_width: usize,
    grid_size: usize,
    gridding: Option<Gridding>,
}

impl fmt::Debug for NufftPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NufftPlan")
            .field("modes", &self.modes)
            .field("samples", &self.points.len())
            .field("tolerance", &self.options.tolerance)
            .field("half_width", &self.half_width)
            .field("grid_size", &self.grid_size)
            .field("direct", &self.uses_direct())
            .finish()
    }
}

pub(crate) fn check_points(points: &[f64]) -> Result<()> {
    match points
        .iter()
        .position(|x| !(-0.5..0.5).contains(x))
    {
        Some(index) => Err(CosError::PointOutOfRange {
            index,
            value: points[index],
        }),
        None => Ok(()),
    }
}

impl NufftPlan {
    pub fn new(points: &[f64], modes: usize, tolerance: f64) -> Result<Self> {
        Self::with_options(points, modes, NufftOptions::with_tolerance(tolerance))
    }

    pub fn with_options(points: &[f64], modes: usize, options: NufftOptions) -> Result<Self> {
        check_points(points)?;
        if modes == 0 || !modes.is_multiple_of(2) {
            return Err(CosError::OddTransformSize(modes));
        }
        if !(1e-16..=1e-4).contains(&options.tolerance) {
            return Err(CosError::InvalidTolerance(options.tolerance));
        }
        if !(options.oversampling >= 2.0 && options.oversampling.is_finite()) {
            return Err(CosError::InvalidOversampling(options.oversampling));
        }
        let half_width = half_width_for(options.tolerance, options.oversampling);
        let taps = 2 * half_width + 1;
        let grid_size = ((options.oversampling * modes as f64).ceil() as usize)
            .max(2 * taps)
            .next_power_of_two();
        let mut plan = Self {
            modes,
            points: points.to_vec(),
            options,
            half_width,
            grid_size,
            gridding: None,
        };
        if points.len().saturating_mul(modes) >= options.direct_crossover {
            plan.gridding = Some(plan.build_gridding());
        }
        Ok(plan)
    }

    fn build_gridding(&self) -> Gridding {
        let n = self.grid_size;
        let m = self.half_width as f64;
        let taps = 2 * self.half_width + 1;
        let kernel = KaiserBessel::new(self.half_width, n, self.modes);
        let half = (self.modes / 2) as i64;
        let deconvolution = (-half..half)
            .map(|k| 1.0 / kernel.scaled_transform(k))
            .collect();
        let mut starts = Vec::with_capacity(self.points.len());
        let mut weights = Vec::with_capacity(self.points.len() * taps);
        for &x in &self.points {
            let u = x * n as f64;
            let first = (u - m).ceil();
            starts.push((first as i64).rem_euclid(n as i64) as usize);
            weights.extend((0..taps).map(|t| kernel.window(u - (first + t as f64))));
        }
        Gridding {
            fft: FftPlanner::new().plan_fft_forward(n),
            deconvolution,
            starts,
            weights,
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn samples(&self) -> usize {
        self.points.len()
    }

    pub fn tolerance(&self) -> f64 {
        self.options.tolerance
    }

    pub fn oversampling(&self) -> f64 {
        self.options.oversampling
    }

    /// Kernel half-width `m` in grid points.
    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Size of the oversampled FFT grid.
    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    /// Whether execution falls back to the direct sum (small `J·N`).
    pub fn uses_direct(&self) -> bool {
        self.gridding.is_none()
    }

    pub fn execute_type2(&self, spectrum: &Spectrum) -> Result<Vec<Complex64>> {
        if spectrum.modes() != self.modes {
            return Err(CosError::SizeMismatch {
                expected: self.modes,
                actual: spectrum.modes(),
            });
        }
        let Some(g) = &self.gridding else {
            return Ok(direct_sum(&self.points, spectrum, self.options.parallel));
        };
        let n = self.grid_size;
        let half = (self.modes / 2) as i64;
        let mut grid = vec![Complex64::new(0.0, 0.0); n];
        for (i, (c, d)) in spectrum.coefficients().iter().zip(&g.deconvolution).enumerate() {
            grid[(i as i64 - half).rem_euclid(n as i64) as usize] = c * d;
        }
        g.fft.process(&mut grid);

        let taps = 2 * self.half_width + 1;
        let interpolate = |j: usize| {
            let start = g.starts[j];
            let w = &g.weights[j * taps..(j + 1) * taps];
            if start + taps <= n {
                grid[start..start + taps]
                    .iter()
                    .zip(w)
                    .fold(Complex64::new(0.0, 0.0), |acc, (v, w)| acc + v * w)
            } else {
                w.iter()
                    .enumerate()
                    .fold(Complex64::new(0.0, 0.0), |acc, (t, w)| {
                        acc + grid[(start + t) % n] * w
                    })
            }
        };
        Ok(if self.options.parallel {
            (0..self.points.len()).into_par_iter().map(interpolate).collect()
        } else {
            (0..self.points.len()).map(interpolate).collect()
        })
    }
}

/// `e^{-2πi k x}` with the phase `k x` reduced modulo one without rounding
/// loss: the product's rounding error is recovered with a fused multiply-add.
#[inline]
fn unit_phase(k: f64, x: f64) -> Complex64 {
    let p = k * x;
    let err = k.mul_add(x, -p);
    let r = (p - p.round()) + err;
    Complex64::from_polar(1.0, -2.0 * PI * r)
}

fn direct_sum(points: &[f64], spectrum: &Spectrum, parallel: bool) -> Vec<Complex64> {
    let eval = |x: f64| {
        spectrum
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, c)| acc + c * unit_phase(k as f64, x))
    };
    if parallel {
        points.par_iter().map(|&x| eval(x)).collect()
    } else {
        points.iter().map(|&x| eval(x)).collect()
    }
}

/// Exact `O(N·J)` evaluation of the type-2 sum.
pub fn nudft_direct(points: &[f64], spectrum: &Spectrum) -> Result<Vec<Complex64>> {
    check_points(points)?;
    Ok(direct_sum(points, spectrum, false))
}
