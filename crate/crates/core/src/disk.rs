//! `SU(1,1)` acting on the unit disk, its weight-`k` representations on
//! boundary functions, and the function theory they generate.
//!
//! Boundary functions are sampled at `N` equispaced points of `S¹` with the
//! measure `dθ/2π`. The weight-`k` action is
//!
//! ```text
//! [π(g)f](z) = (-conj(β)z + α)^{-k} f((conj(α)z - β)/(-conj(β)z + α)),
//! ```
//!
//! unitary on `L²(S¹)` for `k = 1`. Pairing a Hardy function with the
//! coherent state `π(g_w)1` gives `(1 - |w|²)^{1/2} f(w)`, the Cauchy integral;
//! the weight-2 coherent states integrated over the group give the Bergman
//! kernel `π/(1 - x conj(y))²`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::quadrature::gauss_legendre;

pub const MIN_GRID: usize = 64;
pub const MAX_GRID: usize = 65536;

/// Relative size of negative-frequency content tolerated in a [`HardyFunction`].
pub const HARDY_TOL: f64 = 1e-12;

/// Evaluation points of the disk Cauchy integral beyond this radius are flagged.
pub const CAUCHY_RADIUS_GUARD: f64 = 0.95;

/// Kernel arguments must lie in the closed disk of this radius.
pub const KERNEL_MAX_ARG: f64 = 0.8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiskError {
    #[error("grid size {0} is not a power of two in [{MIN_GRID}, {MAX_GRID}]")]
    InvalidGridSize(usize),
    #[error("|alpha|^2 - |beta|^2 = {0} is not positive")]
    NotInGroup(f64),
    #[error("point {0} lies outside the admissible disk of radius {1}")]
    OutsideDisk(Complex64, f64),
    #[error("pole of the fractional-linear map at {0}")]
    Pole(Complex64),
    #[error("weight {0} not supported (1 or 2)")]
    InvalidWeight(u8),
    #[error("negative-frequency content {0:e} exceeds the Hardy tolerance")]
    NotHardy(f64),
    #[error("requested {k} coefficients from a grid of {n}")]
    TooManyCoefficients { k: usize, n: usize },
    #[error("sampler needs a positive size and 0 < r_max < 1")]
    InvalidSampler,
}

/// `[[α, β], [conj(β), conj(α)]]` with `|α|² - |β|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU11Element {
    alpha: Complex64,
    beta: Complex64,
}

impl SU11Element {
    /// Rescales `(α, β)` to unit determinant.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self, DiskError> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        if !(det > 0.0) || !det.is_finite() {
            return Err(DiskError::NotInGroup(det));
        }
        let s = det.sqrt();
        Ok(Self {
            alpha: alpha / s,
            beta: beta / s,
        })
    }

    pub fn identity() -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// `g_w` with `α = (1 - |w|²)^{-1/2} > 0` and `β = αw`, so `g_w·0 = w`.
    pub fn section(w: Complex64) -> Result<Self, DiskError> {
        if w.norm() >= 1.0 {
            return Err(DiskError::OutsideDisk(w, 1.0));
        }
        let alpha = 1.0 / (1.0 - w.norm_sqr()).sqrt();
        Ok(Self {
            alpha: Complex64::new(alpha, 0.0),
            beta: w * alpha,
        })
    }

    /// `z ↦ e^{iθ} z`.
    pub fn rotation(theta: f64) -> Self {
        Self {
            alpha: Complex64::from_polar(1.0, theta / 2.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn determinant(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    /// Matrix product `self·other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            alpha: self.alpha * other.alpha + self.beta * other.beta.conj(),
            beta: self.alpha * other.beta + self.beta * other.alpha.conj(),
        }
    }
}

/// `(αz + β)/(conj(β)z + conj(α))` for `|z| ≤ 1`.
pub fn mobius_disk(g: &SU11Element, z: Complex64) -> Result<Complex64, DiskError> {
    if z.norm() > 1.0 + 1e-12 {
        return Err(DiskError::OutsideDisk(z, 1.0));
    }
    let den = g.beta.conj() * z + g.alpha.conj();
    if den.norm() < 1e-14 {
        return Err(DiskError::Pole(z));
    }
    Ok((g.alpha * z + g.beta) / den)
}

/// Samples at `z_k = e^{2πik/N}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleGrid {
    values: Vec<Complex64>,
}

fn check_size(n: usize) -> Result<(), DiskError> {
    if n.is_power_of_two() && (MIN_GRID..=MAX_GRID).contains(&n) {
        Ok(())
    } else {
        Err(DiskError::InvalidGridSize(n))
    }
}

/// `z_k = e^{2πik/N}`.
pub fn grid_node(n: usize, k: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

impl CircleGrid {
    pub fn new(values: Vec<Complex64>) -> Result<Self, DiskError> {
        check_size(values.len())?;
        Ok(Self { values })
    }

    pub fn from_fn<F: Fn(Complex64) -> Complex64>(n: usize, f: F) -> Result<Self, DiskError> {
        check_size(n)?;
        Ok(Self {
            values: (0..n).map(|k| f(grid_node(n, k))).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn node(&self, k: usize) -> Complex64 {
        grid_node(self.len(), k)
    }

    /// `(1/N) Σ f_k conj(g_k)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.len(), other.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            / self.len() as f64
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        }
    }

    /// Fourier coefficients `c_m = (1/N) Σ f_k z_k^{-m}`, indexed as the DFT
    /// (`m` and `m - N` share a slot).
    pub fn coefficients(&self) -> Vec<Complex64> {
        let n = self.len();
        let mut buf = self.values.clone();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        buf.iter_mut().for_each(|c| *c /= n as f64);
        buf
    }

    fn from_coefficients(mut coeffs: Vec<Complex64>) -> Self {
        let n = coeffs.len();
        FftPlanner::new().plan_fft_inverse(n).process(&mut coeffs);
        Self { values: coeffs }
    }

    /// Trigonometric interpolant at `ζ` on the unit circle; the Nyquist
    /// coefficient is split evenly between `ζ^{N/2}` and `ζ^{-N/2}`.
    pub fn interpolate(&self, zeta: Complex64) -> Complex64 {
        interpolate_coefficients(&self.coefficients(), zeta)
    }
}

fn interpolate_coefficients(c: &[Complex64], zeta: Complex64) -> Complex64 {
    let n = c.len();
    let half = n / 2;
    let inv = zeta.conj() / zeta.norm_sqr();
    let mut pos = Complex64::new(0.0, 0.0);
    for m in (0..half).rev() {
        pos = pos * zeta + c[m];
    }
    let mut neg = Complex64::new(0.0, 0.0);
    for m in (1..half).rev() {
        neg = neg * inv + c[n - m];
    }
    let nyq = c[half] * 0.5 * (zeta.powu(half as u32) + inv.powu(half as u32));
    pos + neg * inv + nyq
}

/// A grid function without negative frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyFunction {
    grid: CircleGrid,
}

impl HardyFunction {
    /// Accepts `f` if its negative-frequency part (Nyquist included) is at
    /// most [`HARDY_TOL`] relative to its norm.
    pub fn new(grid: CircleGrid) -> Result<Self, DiskError> {
        let c = grid.coefficients();
        let n = c.len();
        let neg: f64 = c[n / 2..].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let total: f64 = c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if neg > HARDY_TOL * total.max(f64::MIN_POSITIVE) {
            return Err(DiskError::NotHardy(neg / total));
        }
        Ok(Self { grid })
    }

    pub fn grid(&self) -> &CircleGrid {
        &self.grid
    }

    pub fn into_grid(self) -> CircleGrid {
        self.grid
    }
}

/// Zeroes the negative frequencies and the Nyquist bin.
pub fn hardy_project(f: &CircleGrid) -> HardyFunction {
    let mut c = f.coefficients();
    let n = c.len();
    c[n / 2..].iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
    HardyFunction {
        grid: CircleGrid::from_coefficients(c),
    }
}

/// `π(g)f` of the given weight, resampled on the grid.
pub fn pi_action(g: &SU11Element, f: &CircleGrid, weight: u8) -> Result<CircleGrid, DiskError> {
    if !(1..=2).contains(&weight) {
        return Err(DiskError::InvalidWeight(weight));
    }
    let c = f.coefficients();
    let n = f.len();
    let ginv = g.inverse();
    let values = (0..n)
        .into_par_iter()
        .map(|k| {
            let z = grid_node(n, k);
            let den = -g.beta.conj() * z + g.alpha;
            // ginv maps the circle to itself; renormalize away rounding
            let zeta = (ginv.alpha * z + ginv.beta) / den;
            let zeta = zeta / zeta.norm();
            interpolate_coefficients(&c, zeta) * den.powi(-(weight as i32))
        })
        .collect();
    Ok(CircleGrid { values })
}

/// `π(g)1` of the given weight, in closed form.
pub fn coherent_state(g: &SU11Element, n: usize, weight: u8) -> Result<CircleGrid, DiskError> {
    if !(1..=2).contains(&weight) {
        return Err(DiskError::InvalidWeight(weight));
    }
    CircleGrid::from_fn(n, |z| (-g.beta.conj() * z + g.alpha).powi(-(weight as i32)))
}

/// `⟨f, π(g)1⟩` with the weight-1 action; `(1 - |w|²)^{1/2} f(w)` for `g = g_w`.
pub fn wavelet_transform(f: &HardyFunction, g: &SU11Element) -> Complex64 {
    let vacuum = coherent_state(g, f.grid.len(), 1).expect("grid size already validated");
    f.grid.inner(&vacuum)
}

/// A disk Cauchy integral with the accuracy flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskCauchyValue {
    pub value: Complex64,
    /// Set when `|y|` exceeds [`CAUCHY_RADIUS_GUARD`].
    pub near_boundary: bool,
}

/// Trapezoid rule for `(1/2πi)∮ f(t)/(t - y) dt = (1/N) Σ f_k z_k/(z_k - y)`.
pub fn cauchy_integral_disk(f: &CircleGrid, y: Complex64) -> Result<DiskCauchyValue, DiskError> {
    if y.norm() >= 1.0 {
        return Err(DiskError::OutsideDisk(y, 1.0));
    }
    let n = f.len();
    let value = f
        .values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let z = grid_node(n, k);
            v * z / (z - y)
        })
        .sum::<Complex64>()
        / n as f64;
    Ok(DiskCauchyValue {
        value,
        near_boundary: y.norm() > CAUCHY_RADIUS_GUARD,
    })
}

/// `c_0, …, c_{K-1}`.
pub fn taylor_coefficients(f: &HardyFunction, k: usize) -> Result<Vec<Complex64>, DiskError> {
    let n = f.grid.len();
    if k > n / 2 {
        return Err(DiskError::TooManyCoefficients { k, n });
    }
    let mut c = f.grid.coefficients();
    c.truncate(k);
    Ok(c)
}

/// `Σ_{m<K} c_m y^m`.
pub fn taylor_sum(coeffs: &[Complex64], y: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * y + c)
}

/// How the group integral over the section `|w| ≤ r_max` is discretized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSampler {
    /// Gauss–Legendre in `|w|` times the trapezoid rule in `arg w`.
    Grid {
        radial: usize,
        angular: usize,
        r_max: f64,
    },
    /// `size` points uniform in the disk of radius `r_max`.
    MonteCarlo {
        size: usize,
        seed: u64,
        stream: u64,
        r_max: f64,
    },
}

impl KernelSampler {
    pub fn r_max(&self) -> f64 {
        match *self {
            KernelSampler::Grid { r_max, .. } | KernelSampler::MonteCarlo { r_max, .. } => r_max,
        }
    }

    /// Nodes with area weights summing to `π r_max²`.
    fn nodes(&self) -> Result<(Vec<Complex64>, Vec<f64>), DiskError> {
        let r_max = self.r_max();
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(DiskError::InvalidSampler);
        }
        match *self {
            KernelSampler::Grid { radial, angular, .. } => {
                if radial == 0 || angular == 0 {
                    return Err(DiskError::InvalidSampler);
                }
                let (x, w) = gauss_legendre(radial);
                let mut nodes = Vec::with_capacity(radial * angular);
                let mut weights = Vec::with_capacity(radial * angular);
                let dt = 2.0 * PI / angular as f64;
                for (xi, wi) in x.iter().zip(&w) {
                    let rho = 0.5 * r_max * (xi + 1.0);
                    for j in 0..angular {
                        nodes.push(Complex64::from_polar(rho, j as f64 * dt));
                        weights.push(0.5 * r_max * wi * rho * dt);
                    }
                }
                Ok((nodes, weights))
            }
            KernelSampler::MonteCarlo {
                size, seed, stream, ..
            } => {
                if size == 0 {
                    return Err(DiskError::InvalidSampler);
                }
                let mut rng = crate::rng::stream(seed, stream);
                let nodes = (0..size)
                    .map(|_| {
                        let u: f64 = rng.gen();
                        let t: f64 = rng.gen();
                        Complex64::from_polar(r_max * u.sqrt(), 2.0 * PI * t)
                    })
                    .collect();
                let w = PI * r_max * r_max / size as f64;
                Ok((nodes, vec![w; size]))
            }
        }
    }
}

/// A group-integral value, with the Monte Carlo standard error when sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEstimate {
    pub value: Complex64,
    pub std_error: Option<f64>,
}

/// `[π(g_w)1](x) · conj([π(g_w)1](y)) / (1 - |w|²)²`.
fn kernel_integrand(weight: u8, w: Complex64, x: Complex64, y: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let a = one - w.conj() * x;
    let b = one - w * y.conj();
    match weight {
        1 => one / ((1.0 - w.norm_sqr()) * a * b),
        _ => one / (a * a * b * b),
    }
}

/// Group integrals of the weight-`k` coherent-state products for several
/// `(x, y)` pairs, all on the same nodes.
pub fn group_kernel_integrals(
    pairs: &[(Complex64, Complex64)],
    weight: u8,
    sampler: &KernelSampler,
) -> Result<Vec<KernelEstimate>, DiskError> {
    if !(1..=2).contains(&weight) {
        return Err(DiskError::InvalidWeight(weight));
    }
    for &(x, y) in pairs {
        for p in [x, y] {
            if p.norm() > KERNEL_MAX_ARG {
                return Err(DiskError::OutsideDisk(p, KERNEL_MAX_ARG));
            }
        }
    }
    let (nodes, weights) = sampler.nodes()?;
    let monte_carlo = matches!(sampler, KernelSampler::MonteCarlo { .. });
    Ok(pairs
        .iter()
        .map(|&(x, y)| {
            let terms: Vec<Complex64> = nodes
                .iter()
                .zip(&weights)
                .map(|(&w, &a)| kernel_integrand(weight, w, x, y) * a)
                .collect();
            let value: Complex64 = terms.iter().sum();
            let std_error = monte_carlo.then(|| {
                let m = terms.len() as f64;
                let mean = value / m;
                let var = terms.iter().map(|t| (t - mean).norm_sqr()).sum::<f64>() / (m - 1.0).max(1.0);
                (var / m).sqrt() * m
            });
            KernelEstimate { value, std_error }
        })
        .collect())
}

/// `∫_{|w| ≤ r_max} [π(g_w)1](x) conj([π(g_w)1](y)) dA(w)/(1 - |w|²)²` at weight 2.
pub fn bergman_kernel_group_integral(
    x: Complex64,
    y: Complex64,
    sampler: &KernelSampler,
) -> Result<KernelEstimate, DiskError> {
    Ok(group_kernel_integrals(&[(x, y)], 2, sampler)?[0])
}

/// Exact weight-2 group integral: `π r²/(1 - r² x conj(y))²`, or
/// `π/(1 - x conj(y))²` over the whole disk.
pub fn bergman_oracle(x: Complex64, y: Complex64, r_max: Option<f64>) -> Complex64 {
    let r2 = r_max.map_or(1.0, |r| r * r);
    let d = Complex64::new(1.0, 0.0) - x * y.conj() * r2;
    PI * r2 / (d * d)
}

/// Exact weight-1 group integral at `x = y = 0`: `-π ln(1 - r²)`, unbounded
/// as `r → 1`.
pub fn weight_one_oracle_at_origin(r_max: f64) -> f64 {
    -PI * (1.0 - r_max * r_max).ln()
}
