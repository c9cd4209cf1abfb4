//! The Bergman kernel as a group integral of weight-2 coherent states, and
//! the divergence of the weight-1 integral.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Ctx, KERNEL_SAMPLES};
use crate::disk::{
    bergman_oracle, group_kernel_integrals, weight_one_oracle_at_origin, KernelEstimate, KernelSampler,
};
use crate::field::fitted_order;
use crate::report::VerificationRecord;

const STREAM: u64 = 0xbe59;
const R_MAX: f64 = 0.99;
const R_MAX_FINE: f64 = 0.999;
const REPLICATES: u64 = 24;
const EXPONENT_SIZES: [usize; 3] = [1_000, 10_000, 100_000];
const WEIGHT_ONE_RADII: [f64; 3] = [0.9, 0.99, 0.999];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid_points() -> [Complex64; 5] {
    [c(0.0, 0.0), c(0.4, 0.0), c(0.0, 0.4), c(-0.3, 0.2), c(0.25, -0.35)]
}

/// The off-diagonal pair used for the convergence and sensitivity runs.
fn reference_pair() -> (Complex64, Complex64) {
    (c(0.4, 0.0), c(-0.3, 0.2))
}

fn mc(size: usize, seed: u64, stream: u64, r_max: f64) -> KernelSampler {
    KernelSampler::MonteCarlo { size, seed, stream, r_max }
}

fn values(est: Result<Vec<KernelEstimate>, impl std::fmt::Debug>) -> Option<Vec<Complex64>> {
    est.ok().map(|v| v.into_iter().map(|e| e.value).collect())
}

pub(super) fn run(ctx: &Ctx) -> VerificationRecord {
    let mut rec = VerificationRecord::new();
    let pts = grid_points();
    let pairs: Vec<(Complex64, Complex64)> =
        pts.iter().flat_map(|&x| pts.iter().map(move |&y| (x, y))).collect();
    let swapped: Vec<(Complex64, Complex64)> = pairs.iter().map(|&(x, y)| (y, x)).collect();
    let one = c(1.0, 0.0);

    let sampler = mc(KERNEL_SAMPLES, ctx.seed, STREAM, R_MAX);
    let k = values(group_kernel_integrals(&pairs, 2, &sampler));
    let kt = values(group_kernel_integrals(&swapped, 2, &sampler));

    let (spread, hermitian, oracle, constant) = match (&k, &kt) {
        (Some(k), Some(kt)) => {
            let ratios: Vec<Complex64> = pairs
                .iter()
                .zip(k)
                .map(|(&(x, y), v)| v * (one - x * y.conj()).powi(2))
                .collect();
            let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
            let spread = ratios.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max) / mean.norm();
            let hermitian = k.iter().zip(kt).map(|(a, b)| (a - b.conj()).norm()).fold(0.0, f64::max);
            let oracle = pairs
                .iter()
                .zip(k)
                .map(|(&(x, y), v)| {
                    let o = bergman_oracle(x, y, Some(R_MAX));
                    (v - o).norm() / o.norm()
                })
                .fold(0.0, f64::max);
            // c K(x, y) is the reproducing kernel 1/(π(1 - x conj(y))²) of dA
            let estimates: Vec<f64> = pairs
                .iter()
                .zip(k)
                .map(|(&(x, y), v)| (one / ((one - x * y.conj()).powi(2) * PI) / v).re)
                .collect();
            let c_hat = estimates.iter().sum::<f64>() / estimates.len() as f64;
            let c_exact = 1.0 / (PI * PI * R_MAX * R_MAX);
            (spread, hermitian, oracle, (c_hat - c_exact).abs() / c_exact)
        }
        _ => (f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::INFINITY),
    };
    ctx.at_most(&mut rec, "kernel.spread", "", spread);
    ctx.at_most(&mut rec, "kernel.hermitian", "", hermitian);
    ctx.at_most(&mut rec, "kernel.oracle", "", oracle);
    ctx.at_most(&mut rec, "kernel.constant_c", "", constant);

    let grid = KernelSampler::Grid {
        radial: 64,
        angular: 128,
        r_max: R_MAX,
    };
    let grid_err = values(group_kernel_integrals(&pairs, 2, &grid)).map_or(f64::INFINITY, |k| {
        pairs
            .iter()
            .zip(&k)
            .map(|(&(x, y), v)| {
                let o = bergman_oracle(x, y, Some(R_MAX));
                (v - o).norm() / o.norm()
            })
            .fold(0.0, f64::max)
    });
    ctx.at_most(&mut rec, "kernel.grid_oracle", "", grid_err);

    let (x, y) = reference_pair();
    let truth = bergman_oracle(x, y, Some(R_MAX));
    let mut samples = Vec::new();
    for (i, &size) in EXPONENT_SIZES.iter().enumerate() {
        let mut sq = 0.0;
        for r in 0..REPLICATES {
            let s = mc(size, ctx.seed, STREAM + 0x100 * (i as u64 + 1) + r, R_MAX);
            sq += values(group_kernel_integrals(&[(x, y)], 2, &s))
                .map_or(f64::INFINITY, |v| (v[0] - truth).norm_sqr());
        }
        samples.push((size as f64, (sq / REPLICATES as f64).sqrt()));
    }
    let exponent = fitted_order(&samples);
    ctx.at_most(&mut rec, "kernel.exponent", "", (exponent + 0.5).abs());

    let coarse = values(group_kernel_integrals(&[(x, y)], 2, &mc(KERNEL_SAMPLES, ctx.seed, STREAM + 1, R_MAX)));
    let fine = values(group_kernel_integrals(&[(x, y)], 2, &mc(KERNEL_SAMPLES, ctx.seed, STREAM + 1, R_MAX_FINE)));
    let sensitivity = match (coarse, fine) {
        (Some(a), Some(b)) => (a[0] - b[0]).norm() / b[0].norm(),
        _ => f64::INFINITY,
    };
    ctx.at_most(&mut rec, "kernel.rmax_sensitivity", "", sensitivity);

    let origin = (c(0.0, 0.0), c(0.0, 0.0));
    let weight_one: Vec<f64> = WEIGHT_ONE_RADII
        .iter()
        .map(|&r| {
            let s = KernelSampler::Grid {
                radial: 512,
                angular: 8,
                r_max: r,
            };
            values(group_kernel_integrals(&[origin], 1, &s)).map_or(f64::NAN, |v| v[0].re)
        })
        .collect();
    let oracle_err = WEIGHT_ONE_RADII
        .iter()
        .zip(&weight_one)
        .map(|(&r, v)| {
            let o = weight_one_oracle_at_origin(r);
            let e = (v - o).abs() / o;
            if e.is_nan() { f64::INFINITY } else { e }
        })
        .fold(0.0, f64::max);
    ctx.at_most(&mut rec, "kernel.weight1_oracle", "", oracle_err);
    let growth = if weight_one.iter().all(|v| v.is_finite()) {
        weight_one.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    } else {
        f64::NEG_INFINITY
    };
    ctx.at_least(&mut rec, "kernel.weight1_growth", "", growth);
    rec
}
