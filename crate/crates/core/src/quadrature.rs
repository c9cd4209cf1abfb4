//! Quadrature rules on spheres `S^n ⊂ ℝ^{n+1}` and balls, `n ∈ {1, 2, 3}`.
//!
//! - `n = 1`: trapezoid rule on the circle, `16·2^level` nodes.
//! - `n = 2`: Gauss–Legendre in `cos θ` times trapezoid in `φ`, with
//!   `2^(level+1) × 2^(level+2)` nodes.
//! - `n = 3`: Gauss–Chebyshev (second kind) in `cos χ`, Gauss–Legendre in
//!   `cos θ`, trapezoid in `φ`.
//!
//! Ball rules are radial Gauss–Legendre with weight `r^n` times the sphere rule.

use std::f64::consts::PI;

use thiserror::Error;

use crate::clifford::{AlgebraError, Paravector, Signature};
use crate::exec::Execution;

pub const MIN_LEVEL: u32 = 0;
pub const MAX_LEVEL: u32 = 7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("sphere quadrature supports n in 1..=3, got {0}")]
    UnsupportedDimension(usize),
    #[error("quadrature level {0} outside {MIN_LEVEL}..={MAX_LEVEL}")]
    InvalidLevel(u32),
    #[error("radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, pm1) = legendre_pair(n, x);
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (p, pm1) = legendre_pair(n, x);
        dp = if p.is_finite() {
            n as f64 * (x * p - pm1) / (x * x - 1.0)
        } else {
            dp
        };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_{n-1}(x))`.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// `Γ(m/2)` for a positive integer `m`, by the recurrence from `Γ(1) = 1`
/// and `Γ(1/2) = √π`.
pub fn gamma_half(m: u32) -> f64 {
    assert!(m > 0, "gamma pole at 0");
    let (mut x, mut g) = if m % 2 == 0 { (1.0, 1.0) } else { (0.5, PI.sqrt()) };
    while 2.0 * x < m as f64 {
        g *= x;
        x += 1.0;
    }
    g
}

/// Area of the sphere of radius `r` in `ℝ^{n+1}`: `2π^{(n+1)/2} r^n / Γ((n+1)/2)`.
pub fn sphere_area(n: usize, r: f64) -> f64 {
    let h = (n as f64 + 1.0) / 2.0;
    2.0 * PI.powf(h) / gamma_half(n as u32 + 1) * r.powi(n as i32)
}

/// Volume of the ball of radius `r` in `ℝ^{n+1}`: `π^{(n+1)/2} r^{n+1} / Γ((n+3)/2)`.
pub fn ball_volume(n: usize, r: f64) -> f64 {
    let h = (n as f64 + 1.0) / 2.0;
    PI.powf(h) / gamma_half(n as u32 + 3) * r.powi(n as i32 + 1)
}

/// Unit-sphere nodes as coordinate vectors, with weights.
fn unit_sphere_rule(n: usize, level: u32) -> Result<(Vec<Vec<f64>>, Vec<f64>), QuadratureError> {
    if level > MAX_LEVEL {
        return Err(QuadratureError::InvalidLevel(level));
    }
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    match n {
        1 => {
            let m = 16usize << level;
            let w = 2.0 * PI / m as f64;
            for k in 0..m {
                let t = 2.0 * PI * k as f64 / m as f64;
                nodes.push(vec![t.cos(), t.sin()]);
                weights.push(w);
            }
        }
        2 => {
            let nt = 2usize << level;
            let np = 2 * nt;
            let (ct, wt) = gauss_legendre(nt);
            let wp = 2.0 * PI / np as f64;
            for (c, w) in ct.iter().zip(&wt) {
                let s = (1.0 - c * c).sqrt();
                for k in 0..np {
                    let phi = 2.0 * PI * k as f64 / np as f64;
                    nodes.push(vec![*c, s * phi.cos(), s * phi.sin()]);
                    weights.push(w * wp);
                }
            }
        }
        3 => {
            let nc = 2usize << level;
            let nt = nc;
            let np = 2 * nt;
            let (ct, wt) = gauss_legendre(nt);
            let wp = 2.0 * PI / np as f64;
            for k in 1..=nc {
                let ang = k as f64 * PI / (nc as f64 + 1.0);
                let (sc, cc) = ang.sin_cos();
                let wc = PI / (nc as f64 + 1.0) * sc * sc;
                for (t, w) in ct.iter().zip(&wt) {
                    let st = (1.0 - t * t).sqrt();
                    for j in 0..np {
                        let phi = 2.0 * PI * j as f64 / np as f64;
                        nodes.push(vec![
                            cc,
                            sc * t,
                            sc * st * phi.cos(),
                            sc * st * phi.sin(),
                        ]);
                        weights.push(wc * w * wp);
                    }
                }
            }
        }
        other => return Err(QuadratureError::UnsupportedDimension(other)),
    }
    Ok((nodes, weights))
}

/// Nodes, weights and outward unit normals on a sphere `|y - c| = R` in `ℝ^{n+1}`.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    center: Paravector,
    radius: f64,
    level: u32,
    nodes: Vec<Paravector>,
    normals: Vec<Paravector>,
    weights: Vec<f64>,
    exec: Execution,
}

pub fn make_sphere_quadrature(
    center: Paravector,
    radius: f64,
    level: u32,
) -> Result<SphereQuadrature, QuadratureError> {
    let sig = center.signature();
    let n = sig.n();
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(QuadratureError::InvalidRadius(radius));
    }
    let (unit, w) = unit_sphere_rule(n, level)?;
    let scale = radius.powi(n as i32);
    let mut nodes = Vec::with_capacity(unit.len());
    let mut normals = Vec::with_capacity(unit.len());
    for u in &unit {
        let pos: Vec<f64> = u
            .iter()
            .zip(center.coords())
            .map(|(ui, ci)| ci + radius * ui)
            .collect();
        nodes.push(Paravector::new(sig, &pos)?);
        normals.push(Paravector::new(sig, u)?);
    }
    Ok(SphereQuadrature {
        center,
        radius,
        level,
        nodes,
        normals,
        weights: w.into_iter().map(|x| x * scale).collect(),
        exec: Execution::default(),
    })
}

impl SphereQuadrature {
    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn signature(&self) -> Signature {
        self.center.signature()
    }

    pub fn n(&self) -> usize {
        self.center.signature().n()
    }

    pub fn center(&self) -> &Paravector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn nodes(&self) -> &[Paravector] {
        &self.nodes
    }

    pub fn normals(&self) -> &[Paravector] {
        &self.normals
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Typical distance between neighbouring nodes: `(area / N)^{1/n}`.
    pub fn spacing(&self) -> f64 {
        let n = self.n() as f64;
        (sphere_area(self.n(), self.radius) / self.len() as f64).powf(1.0 / n)
    }
}

/// Interior nodes and positive weights on a ball `|y - c| < R` in `ℝ^{n+1}`.
#[derive(Debug, Clone)]
pub struct BallQuadrature {
    center: Paravector,
    radius: f64,
    nodes: Vec<Paravector>,
    weights: Vec<f64>,
    exec: Execution,
}

pub fn make_ball_quadrature(
    center: Paravector,
    radius: f64,
    level: u32,
) -> Result<BallQuadrature, QuadratureError> {
    let sig = center.signature();
    let n = sig.n();
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(QuadratureError::InvalidRadius(radius));
    }
    let (unit, w) = unit_sphere_rule(n, level)?;
    let (rt, rw) = gauss_legendre(2usize << level);
    let mut nodes = Vec::with_capacity(unit.len() * rt.len());
    let mut weights = Vec::with_capacity(unit.len() * rt.len());
    for (t, wr) in rt.iter().zip(&rw) {
        let r = radius * (1.0 + t) / 2.0;
        let radial = radius / 2.0 * wr * r.powi(n as i32);
        for (u, wu) in unit.iter().zip(&w) {
            let pos: Vec<f64> = u
                .iter()
                .zip(center.coords())
                .map(|(ui, ci)| ci + r * ui)
                .collect();
            nodes.push(Paravector::new(sig, &pos)?);
            weights.push(radial * wu);
        }
    }
    Ok(BallQuadrature {
        center,
        radius,
        nodes,
        weights,
        exec: Execution::default(),
    })
}

impl BallQuadrature {
    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn signature(&self) -> Signature {
        self.center.signature()
    }

    pub fn n(&self) -> usize {
        self.center.signature().n()
    }

    pub fn center(&self) -> &Paravector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn nodes(&self) -> &[Paravector] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn origin(n: usize) -> Paravector {
        Paravector::new(Signature::negative(n).unwrap(), &vec![0.0; n + 1]).unwrap()
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // ∫ x^18 = 2/19, degree 19 is the exactness limit
        let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((v - 2.0 / 19.0).abs() < 1e-14);
        let (x1, w1) = gauss_legendre(1);
        assert_eq!((x1[0], w1[0]), (0.0, 2.0));
    }

    #[test]
    fn half_integer_gamma() {
        assert_eq!(gamma_half(2), 1.0);
        assert_eq!(gamma_half(8), 6.0);
        assert_eq!(gamma_half(1), PI.sqrt());
        assert_eq!(gamma_half(3), PI.sqrt() / 2.0);
        assert!((gamma_half(5) - 0.75 * PI.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn closed_forms_by_hand() {
        assert!((sphere_area(1, 1.0) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(2, 1.0) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3, 1.0) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((ball_volume(1, 2.0) - 4.0 * PI).abs() < 1e-13);
        assert!((ball_volume(2, 1.0) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((ball_volume(3, 1.0) - PI * PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn sphere_invariants() {
        for n in 1..=3 {
            let c = Paravector::new(
                Signature::negative(n).unwrap(),
                &(0..=n).map(|i| 0.1 * i as f64).collect::<Vec<_>>(),
            )
            .unwrap();
            let q = make_sphere_quadrature(c, 0.7, 2).unwrap();
            let total: f64 = q.weights().iter().sum();
            let area = sphere_area(n, 0.7);
            assert!(((total - area) / area).abs() <= 1e-10, "n={n}");
            assert!(q.weights().iter().all(|&w| w > 0.0));
            for (node, normal) in q.nodes().iter().zip(q.normals()) {
                for k in 0..=n {
                    let expected = (node.coords()[k] - c.coords()[k]) / 0.7;
                    assert!((normal.coords()[k] - expected).abs() <= 1e-14);
                }
            }
            // Σ w ν = 0
            for k in 0..=n {
                let s: f64 = q
                    .weights()
                    .iter()
                    .zip(q.normals())
                    .map(|(w, v)| w * v.coords()[k])
                    .sum();
                assert!(s.abs() < 1e-12, "n={n} k={k} {s}");
            }
            // divergence theorem: ∫ ⟨ν, y - c⟩ dS = (n+1) |B|
            let flux: f64 = q
                .weights()
                .iter()
                .zip(q.nodes().iter().zip(q.normals()))
                .map(|(w, (y, v))| {
                    w * (0..=n)
                        .map(|k| v.coords()[k] * (y.coords()[k] - c.coords()[k]))
                        .sum::<f64>()
                })
                .sum();
            let expected = (n as f64 + 1.0) * ball_volume(n, 0.7);
            assert!(((flux - expected) / expected).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_sphere_area_level4() {
        let q = make_sphere_quadrature(origin(2), 1.0, 4).unwrap();
        assert_eq!(q.len(), 32 * 64);
        let total: f64 = q.weights().iter().sum();
        assert!(((total - 4.0 * PI) / (4.0 * PI)).abs() <= 1e-10);
        assert_eq!(make_sphere_quadrature(origin(1), 1.0, 4).unwrap().len(), 256);
    }

    #[test]
    fn ball_volume_invariant() {
        for n in 1..=3 {
            let b = make_ball_quadrature(origin(n), 1.3, 2).unwrap();
            let total: f64 = b.weights().iter().sum();
            let vol = ball_volume(n, 1.3);
            assert!(((total - vol) / vol).abs() <= 1e-10);
            assert!(b
                .nodes()
                .iter()
                .all(|p| p.norm() < 1.3 && b.weights().iter().all(|&w| w > 0.0)));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            make_sphere_quadrature(origin(4), 1.0, 2).unwrap_err(),
            QuadratureError::UnsupportedDimension(4)
        );
        assert!(make_sphere_quadrature(origin(2), 0.0, 2).is_err());
        assert!(make_sphere_quadrature(origin(2), 1.0, 9).is_err());
    }
}
