//! Sphere quadrature, the Cauchy theorem and the Cauchy integral formula.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::fields::fueter_corpus;
use super::{or_inf, Ctx};
use crate::cauchy::{
    cauchy_integral, cauchy_integral_with, cauchy_kernel, cauchy_theorem_integral, cauchy_theorem_residual,
    kernel_from_fundamental, mean_value, mean_value_constant,
};
use crate::clifford::{Multivector, Paravector, Signature};
use crate::field::{CliffordField, Domain, StencilSpec};
use crate::quadrature::{ball_volume, make_ball_quadrature, make_sphere_quadrature, sphere_area, SphereQuadrature};
use crate::report::VerificationRecord;
use crate::rng::{ball_points, shell_points};

const STREAM: u64 = 0xca0c;
pub(super) const DEFAULT_DIM: usize = 2;
/// Interior test points stay within this radius of the center.
pub(super) const INTERIOR_RADIUS: f64 = 0.7;
pub(super) const TEST_POINTS: usize = 20;
const MAX_DEGREE: u32 = 4;
/// Level of the circle rule with 256 nodes.
const COMPLEX_LEVEL: u32 = 4;
/// Ball rules at this level already integrate degree-4 polynomials exactly.
pub(super) const BALL_LEVEL: u32 = 2;
/// Corpus members used at every interior and exterior point.
pub(super) const POINT_CORPUS: usize = 8;

/// `count` members spread evenly over `corpus`, first and last included.
pub(super) fn spread<T: Clone>(corpus: &[T], count: usize) -> Vec<T> {
    if corpus.len() <= count || count < 2 {
        return corpus.to_vec();
    }
    (0..count)
        .map(|i| corpus[i * (corpus.len() - 1) / (count - 1)].clone())
        .collect()
}

fn para(sig: Signature, c: &[f64]) -> Paravector {
    Paravector::new(sig, c).expect("length matches")
}

fn unit_sphere(sig: Signature, level: u32, ctx: &Ctx) -> Option<SphereQuadrature> {
    make_sphere_quadrature(para(sig, &vec![0.0; sig.n() + 1]), 1.0, level)
        .ok()
        .map(|q| q.with_execution(ctx.exec))
}

/// Largest `|C f(x) - target(f, x)|` over the points and the corpus.
fn integral_error<T>(q: &SphereQuadrature, corpus: &[CliffordField], points: &[Vec<f64>], target: T) -> f64
where
    T: Fn(&CliffordField, &[f64]) -> Multivector,
{
    let sig = q.signature();
    let mut worst = 0.0f64;
    for f in corpus {
        let values: Vec<Multivector> = q.nodes().iter().map(|y| f.eval(y.coords())).collect();
        for x in points {
            worst = worst.max(or_inf(
                cauchy_integral_with(q, &para(sig, x), |i| values[i]).map(|v| (v.value - target(f, x)).norm()),
            ));
        }
    }
    worst
}

fn interior_error(q: &SphereQuadrature, corpus: &[CliffordField], points: &[Vec<f64>]) -> f64 {
    integral_error(q, corpus, points, |f, x| f.eval(x))
}

fn quadrature_checks(ctx: &Ctx, rec: &mut VerificationRecord, q: &SphereQuadrature, tag: &str) {
    let sig = q.signature();
    let n = sig.n();
    let area = sphere_area(n, 1.0);
    let volume = ball_volume(n, 1.0);
    let total: f64 = q.weights().iter().sum();
    ctx.at_most(rec, "cauchy.quadrature_area", tag, (total - area).abs() / area);

    let ball = make_ball_quadrature(para(sig, &vec![0.0; n + 1]), 1.0, ctx.level.min(BALL_LEVEL));
    let vol_err = ball
        .map(|b| (b.weights().iter().sum::<f64>() - volume).abs() / volume)
        .unwrap_or(f64::INFINITY);
    ctx.at_most(rec, "cauchy.quadrature_volume", tag, vol_err);

    let mut normal_sum = Multivector::zero(sig);
    let mut flux = 0.0;
    for ((y, nu), w) in q.nodes().iter().zip(q.normals()).zip(q.weights()) {
        normal_sum += nu.to_multivector().scale(*w);
        flux += w * y.coords().iter().zip(nu.coords()).map(|(a, b)| a * b).sum::<f64>();
    }
    ctx.at_most(rec, "cauchy.normal_sum", tag, normal_sum.norm());
    let div = (n as f64 + 1.0) * volume;
    ctx.at_most(rec, "cauchy.divergence", tag, (flux - div).abs() / div);

    let y0 = CliffordField::new(sig, Domain::Paravector, "y0", move |y| Multivector::scalar(sig, y[0]));
    let stokes = cauchy_theorem_integral(&y0, q) - Multivector::scalar(sig, volume);
    ctx.at_most(rec, "cauchy.stokes", tag, stokes.norm());
}

fn clifford_checks(ctx: &Ctx, rec: &mut VerificationRecord, n: usize) {
    let sig = Signature::negative(n).expect("validated dimension");
    let tag = format!("n{n}");
    let Some(q) = unit_sphere(sig, ctx.level, ctx) else {
        ctx.at_most(rec, "cauchy.quadrature_area", &tag, f64::INFINITY);
        return;
    };
    quadrature_checks(ctx, rec, &q, &tag);

    let corpus = fueter_corpus(sig, MAX_DEGREE);
    let theorem = corpus.iter().map(|f| cauchy_theorem_residual(f, &q)).fold(0.0, f64::max);
    ctx.at_most(rec, "cauchy.theorem", &tag, theorem);

    let sample = spread(&corpus, POINT_CORPUS);
    let inside = ball_points(ctx.seed, STREAM + n as u64, n + 1, TEST_POINTS, INTERIOR_RADIUS);
    ctx.at_most(rec, "cauchy.interior", &tag, interior_error(&q, &sample, &inside));

    let outside = shell_points(ctx.seed, STREAM + 0x10 + n as u64, n + 1, TEST_POINTS, 1.5, 2.0);
    let exterior = integral_error(&q, &sample, &outside, |_, _| Multivector::zero(sig));
    ctx.at_most(rec, "cauchy.exterior", &tag, exterior);

    let mut mean = 0.0f64;
    let centers = [vec![0.0; n + 1], (0..=n).map(|i| 0.1 * (i as f64 + 1.0)).collect::<Vec<_>>()];
    for (c, r) in centers.iter().zip([1.0, 0.5]) {
        match make_ball_quadrature(para(sig, c), r, ctx.level.min(BALL_LEVEL)) {
            Ok(b) => {
                let b = b.with_execution(ctx.exec);
                for f in &corpus {
                    mean = mean.max((mean_value(f, &b) - f.eval(c)).norm());
                }
            }
            Err(_) => mean = f64::INFINITY,
        }
    }
    ctx.at_most(rec, "cauchy.mean_value", &tag, mean);

    let mut constant = 0.0f64;
    for r in [0.5, 1.0, 2.0] {
        let inv = 1.0 / ball_volume(n, r);
        constant = constant.max((mean_value_constant(n, r) - inv).abs() / inv);
    }
    ctx.at_most(rec, "cauchy.mean_value_constant", &tag, constant);

    let probe = shell_points(ctx.seed, STREAM + 0x20 + n as u64, n + 1, TEST_POINTS, 0.5, 1.5);
    let mut kernel = 0.0f64;
    for x in &probe {
        let x = para(sig, x);
        kernel = kernel.max(or_inf(
            cauchy_kernel(&x)
                .and_then(|e| kernel_from_fundamental(&x, StencilSpec::default()).map(|d| (e - d).norm())),
        ));
    }
    ctx.at_most(rec, "cauchy.kernel_fundamental", &tag, kernel);

    let x = &inside[..4];
    let few = spread(&corpus, 4);
    let errors: Vec<f64> = (1..=ctx.level)
        .map(|l| unit_sphere(sig, l, ctx).map_or(f64::INFINITY, |q| interior_error(&q, &few, x)))
        .collect();
    let increase = errors.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    ctx.at_most(rec, "cauchy.refinement", &tag, increase);
}

/// `n = 1` against `(1/2πi)∮ ζ^k/(ζ - x) dζ` on 256 equally spaced nodes.
fn complex_reduction(ctx: &Ctx, rec: &mut VerificationRecord) {
    let sig = Signature::negative(1).expect("valid");
    let Some(q) = unit_sphere(sig, COMPLEX_LEVEL, ctx) else {
        ctx.at_most(rec, "cauchy.complex_reduction", "", f64::INFINITY);
        return;
    };
    let nodes = q.len();
    let points = ball_points(ctx.seed, STREAM + 0x30, 2, TEST_POINTS, INTERIOR_RADIUS);
    let mut worst = 0.0f64;
    for k in 0..=5i32 {
        let f = CliffordField::new(sig, Domain::Paravector, format!("z^{k}"), move |y| {
            let z = Complex64::new(y[0], y[1]).powi(k);
            Multivector::from_coeffs(sig, &[z.re, z.im]).expect("length matches")
        });
        for x in &points {
            let xc = Complex64::new(x[0], x[1]);
            let classical = (0..nodes)
                .map(|j| {
                    let zeta = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / nodes as f64);
                    zeta.powi(k) * zeta / (zeta - xc)
                })
                .sum::<Complex64>()
                / nodes as f64;
            let clifford = or_inf(cauchy_integral(&f, &q, &para(sig, x)).map(|v| {
                let c = Complex64::new(v.value.coeff(0), v.value.coeff(1));
                (c - classical).norm().max((c - xc.powi(k)).norm())
            }));
            worst = worst.max(clifford);
        }
    }
    ctx.at_most(rec, "cauchy.complex_reduction", "n1", worst);
}

pub(super) fn run(ctx: &Ctx) -> VerificationRecord {
    let mut rec = VerificationRecord::new();
    let n = ctx.dim.unwrap_or(DEFAULT_DIM);
    clifford_checks(ctx, &mut rec, n);
    complex_reduction(ctx, &mut rec);
    rec
}
