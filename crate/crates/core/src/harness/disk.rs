//! The Hardy space of the unit disk under `SU(1,1)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use super::{Ctx, DISK_GRID};
use crate::disk::{
    cauchy_integral_disk, coherent_state, hardy_project, mobius_disk, pi_action, taylor_coefficients,
    taylor_sum, wavelet_transform, CircleGrid, HardyFunction, SU11Element,
};
use crate::report::VerificationRecord;
use crate::rng::stream;

const STREAM: u64 = 0xd15c;
const CORPUS: usize = 20;
/// Frequencies used by the random corpus; well below `N/4`.
const BAND: usize = 32;
const TAYLOR_TERMS: usize = 21;
const RECONSTRUCTION_TERMS: usize = 30;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn disk_point<R: Rng>(rng: &mut R, r_max: f64) -> Complex64 {
    let r = r_max * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, 2.0 * PI * rng.gen::<f64>())
}

/// A Hardy function with its closed-form extension to the disk.
struct Member {
    f: HardyFunction,
    eval: Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
}

fn member<F>(f: F) -> Option<Member>
where
    F: Fn(Complex64) -> Complex64 + Clone + Send + Sync + 'static,
{
    let grid = CircleGrid::from_fn(DISK_GRID, f.clone()).ok()?;
    Some(Member {
        f: HardyFunction::new(grid).ok()?,
        eval: Box::new(f),
    })
}

/// `1/(2 - z)`, `z³` and random polynomials of degree below [`BAND`].
fn corpus(seed: u64) -> Vec<Member> {
    let mut rng = stream(seed, STREAM);
    let mut out = Vec::new();
    out.extend(member(|z| 1.0 / (c(2.0, 0.0) - z)));
    out.extend(member(|z| z * z * z));
    while out.len() < CORPUS {
        let coeffs: Vec<Complex64> = (0..BAND)
            .map(|m| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * 0.8f64.powi(m as i32))
            .collect();
        out.extend(member(move |z| taylor_sum(&coeffs, z)));
    }
    out
}

fn random_grid<R: Rng>(rng: &mut R) -> Option<CircleGrid> {
    CircleGrid::new(
        (0..DISK_GRID)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .ok()
}

fn random_group_element<R: Rng>(rng: &mut R, r_max: f64) -> Option<SU11Element> {
    let g = SU11Element::section(disk_point(rng, r_max)).ok()?;
    Some(g.compose(&SU11Element::rotation(rng.gen_range(0.0..2.0 * PI))))
}

pub(super) fn run(ctx: &Ctx) -> VerificationRecord {
    let mut rec = VerificationRecord::new();
    let mut rng = stream(ctx.seed, STREAM + 1);
    let ws: Vec<Complex64> = (0..CORPUS).map(|_| disk_point(&mut rng, 0.8)).collect();

    let mut section = 0.0f64;
    let mut circle = 0.0f64;
    for &w in &ws {
        section = section.max(
            SU11Element::section(w)
                .and_then(|g| mobius_disk(&g, c(0.0, 0.0)))
                .map_or(f64::INFINITY, |v| (v - w).norm()),
        );
        let g = random_group_element(&mut rng, 0.8);
        for k in 0..16 {
            let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 16.0);
            circle = circle.max(
                g.as_ref()
                    .and_then(|g| mobius_disk(g, z).ok())
                    .map_or(f64::INFINITY, |v| (v.norm() - 1.0).abs()),
            );
        }
    }
    ctx.at_most(&mut rec, "disk.section", "", section);
    ctx.at_most(&mut rec, "disk.circle", "", circle);

    let corpus = corpus(ctx.seed);
    let (mut vs_cauchy, mut vs_oracle) = (0.0f64, 0.0f64);
    for m in &corpus {
        for &w in &ws {
            let Ok(g) = SU11Element::section(w) else {
                vs_cauchy = f64::INFINITY;
                continue;
            };
            let wt = wavelet_transform(&m.f, &g);
            let scale = (1.0 - w.norm_sqr()).sqrt();
            vs_cauchy = vs_cauchy.max(
                cauchy_integral_disk(m.f.grid(), w).map_or(f64::INFINITY, |v| (wt - v.value * scale).norm()),
            );
            vs_oracle = vs_oracle.max((wt - (m.eval)(w) * scale).norm());
        }
    }
    ctx.at_most(&mut rec, "disk.wavelet_cauchy", "", vs_cauchy);
    ctx.at_most(&mut rec, "disk.wavelet_oracle", "", vs_oracle);

    let geometric = &corpus[0];
    let taylor = taylor_coefficients(&geometric.f, TAYLOR_TERMS).map_or(f64::INFINITY, |cs| {
        cs.iter()
            .enumerate()
            .map(|(m, v)| (v - c(0.5f64.powi(m as i32 + 1), 0.0)).norm())
            .fold(0.0, f64::max)
    });
    let cube = taylor_coefficients(&corpus[1].f, TAYLOR_TERMS).map_or(f64::INFINITY, |cs| {
        cs.iter()
            .enumerate()
            .map(|(m, v)| (v - c(if m == 3 { 1.0 } else { 0.0 }, 0.0)).norm())
            .fold(0.0, f64::max)
    });
    ctx.at_most(&mut rec, "disk.taylor", "", taylor.max(cube));

    let y = c(0.5, 0.0);
    let reconstruction = match (
        taylor_coefficients(&geometric.f, RECONSTRUCTION_TERMS),
        cauchy_integral_disk(geometric.f.grid(), y),
    ) {
        (Ok(cs), Ok(v)) => (taylor_sum(&cs, y) - v.value).norm(),
        _ => f64::INFINITY,
    };
    ctx.at_most(&mut rec, "disk.reconstruction", "", reconstruction);

    let mut unitarity = 0.0f64;
    for m in corpus.iter().skip(2).take(6) {
        for _ in 0..3 {
            let dev = random_group_element(&mut rng, 0.6)
                .and_then(|g| pi_action(&g, m.f.grid(), 1).ok())
                .map_or(f64::INFINITY, |h| (h.norm() - m.f.grid().norm()).abs());
            unitarity = unitarity.max(dev);
        }
    }
    ctx.at_most(&mut rec, "disk.unitarity", "", unitarity);

    let (mut idem, mut contraction, mut adjoint) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..4 {
        let (Some(f), Some(h)) = (random_grid(&mut rng), random_grid(&mut rng)) else {
            idem = f64::INFINITY;
            continue;
        };
        let pf = hardy_project(&f).into_grid();
        let ph = hardy_project(&h).into_grid();
        idem = idem.max(hardy_project(&pf).into_grid().sub(&pf).norm());
        contraction = contraction.max(pf.norm() - f.norm());
        adjoint = adjoint.max((pf.inner(&h) - f.inner(&ph)).norm());
    }
    ctx.at_most(&mut rec, "disk.hardy_idempotent", "", idem);
    ctx.at_most(&mut rec, "disk.hardy_contraction", "", contraction);
    ctx.at_most(&mut rec, "disk.hardy_selfadjoint", "", adjoint);

    let mut covariance = 0.0f64;
    for &w in ws.iter().take(6) {
        let w = w * 0.6;
        let dev = (|| {
            let g = random_group_element(&mut rng, 0.5)?;
            let sw = SU11Element::section(w).ok()?;
            let moved = pi_action(&g, &coherent_state(&sw, DISK_GRID, 1).ok()?, 1).ok()?;
            let target = SU11Element::section(mobius_disk(&g, w).ok()?).ok()?;
            let expect = coherent_state(&target, DISK_GRID, 1).ok()?;
            Some(1.0 - moved.inner(&expect).norm() / (moved.norm() * expect.norm()))
        })();
        covariance = covariance.max(dev.unwrap_or(f64::INFINITY));
    }
    ctx.at_most(&mut rec, "disk.covariance", "", covariance);

    let one = CircleGrid::from_fn(DISK_GRID, |_| c(1.0, 0.0));
    let mut vacuum = 0.0f64;
    for k in 0..8 {
        let r = SU11Element::rotation(2.0 * PI * k as f64 / 8.0 + 0.3);
        vacuum = vacuum.max(one.as_ref().ok().and_then(|f| pi_action(&r, f, 1).ok()).map_or(
            f64::INFINITY,
            |h| h.values().iter().map(|v| (v.norm() - 1.0).abs()).fold(0.0, f64::max),
        ));
    }
    ctx.at_most(&mut rec, "disk.rotation_vacuum", "", vacuum);
    rec
}
