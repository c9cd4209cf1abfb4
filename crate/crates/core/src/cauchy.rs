//! Cauchy kernel, fundamental solution, and the quadrature forms of the
//! Cauchy theorem, Cauchy integral formula and mean value property for
//! left-monogenic functions (`D f = 0`, `e_j² = -1`).
//!
//! The oriented surface element is realized as `ν(y) dS(y)`, with `ν` the
//! outward unit normal paravector. Integrands are ordered `E · ν · f`.

use std::f64::consts::PI;

use thiserror::Error;

use crate::clifford::{AlgebraError, Multivector, Paravector};
use crate::exec::sum_multivectors;
use crate::field::{partial, CliffordField, StencilSpec};
use crate::quadrature::{ball_volume, gamma_half, BallQuadrature, SphereQuadrature};

/// `|x|` at or below which the kernel is treated as singular.
pub const KERNEL_EPS: f64 = 1e-12;

/// Evaluation points closer to the sphere than this many node spacings are
/// flagged as near-boundary.
pub const NEAR_BOUNDARY_SPACINGS: f64 = 10.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CauchyError {
    #[error("kernel singularity: |x| = {0:e}")]
    Singular(f64),
    #[error("|x| = {norm} is closer than 10h = {min} to the singularity")]
    TooCloseForStencil { norm: f64, min: f64 },
    #[error("requires e_j^2 = -1")]
    WrongSignature,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `Γ((n+1)/2) / (2π^{(n+1)/2})`, the reciprocal area of the unit sphere in `ℝ^{n+1}`.
pub fn cauchy_constant(n: usize) -> f64 {
    let h = (n as f64 + 1.0) / 2.0;
    gamma_half(n as u32 + 1) / (2.0 * PI.powf(h))
}

/// The constant `(n+1)Γ((n+1)/2) / (2R^{n+1}π^{(n+1)/2})` of the mean value formula.
pub fn mean_value_constant(n: usize, radius: f64) -> f64 {
    (n as f64 + 1.0) * cauchy_constant(n) / radius.powi(n as i32 + 1)
}

/// `E(x) = c_n · conj(x) / |x|^{n+1}`.
pub fn cauchy_kernel(x: &Paravector) -> Result<Multivector, CauchyError> {
    if x.signature().sign() != -1 {
        return Err(CauchyError::WrongSignature);
    }
    let n = x.signature().n();
    let r = x.norm();
    if r <= KERNEL_EPS {
        return Err(CauchyError::Singular(r));
    }
    Ok(x
        .conj()
        .to_multivector()
        .scale(cauchy_constant(n) / r.powi(n as i32 + 1)))
}

/// Fundamental solution of the Laplacian on `ℝ^{n+1}` as a function of `|x|`.
fn fundamental_radial(n: usize, r: f64) -> f64 {
    if n == 1 {
        r.ln() / (2.0 * PI)
    } else {
        -cauchy_constant(n) / (n as f64 - 1.0) * r.powi(1 - n as i32)
    }
}

/// `F(x)` with `ΔF = δ` on `ℝ^{n+1}`.
pub fn fundamental_solution(x: &Paravector) -> Result<f64, CauchyError> {
    let r = x.norm();
    if r <= KERNEL_EPS {
        return Err(CauchyError::Singular(r));
    }
    Ok(fundamental_radial(x.signature().n(), r))
}

/// `D̄F = (∂_0 - Σ e_j ∂_j) F` by central differences.
pub fn kernel_from_fundamental(x: &Paravector, s: StencilSpec) -> Result<Multivector, CauchyError> {
    let sig = x.signature();
    if sig.sign() != -1 {
        return Err(CauchyError::WrongSignature);
    }
    let norm = x.norm();
    let min = 10.0 * s.h();
    if norm < min {
        return Err(CauchyError::TooCloseForStencil { norm, min });
    }
    let n = sig.n();
    let f = move |y: &[f64]| {
        let r = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        Multivector::scalar(sig, fundamental_radial(n, r))
    };
    let coords = x.coords();
    let mut out = partial(&f, coords, 0, s);
    for j in 1..=n {
        let e = Multivector::generator(sig, j)?;
        out -= e * partial(&f, coords, j, s);
    }
    Ok(out)
}

/// `Σ_i w_i ν_i f(y_i)`; vanishes for monogenic `f` by the Cauchy theorem.
pub fn cauchy_theorem_integral(f: &CliffordField, q: &SphereQuadrature) -> Multivector {
    let nodes = q.nodes();
    let normals = q.normals();
    let w = q.weights();
    sum_multivectors(q.execution(), q.len(), Multivector::zero(q.signature()), |i| {
        (normals[i].to_multivector() * f.eval(nodes[i].coords())).scale(w[i])
    })
}

/// Norm of [`cauchy_theorem_integral`].
pub fn cauchy_theorem_residual(f: &CliffordField, q: &SphereQuadrature) -> f64 {
    cauchy_theorem_integral(f, q).norm()
}

/// A Cauchy-integral value with its distance to the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyValue {
    pub value: Multivector,
    pub boundary_distance: f64,
    /// Set when `boundary_distance` is under ten node spacings, where the
    /// quadrature no longer resolves the kernel.
    pub near_boundary: bool,
}

pub(crate) fn boundary_info(q: &SphereQuadrature, x: &Paravector) -> (f64, bool) {
    let d = (x.sub(q.center()).norm() - q.radius()).abs();
    (d, d < NEAR_BOUNDARY_SPACINGS * q.spacing())
}

/// `Σ_i w_i E(y_i - x) ν_i f(y_i)`: `f(x)` inside, `0` outside for monogenic `f`.
pub fn cauchy_integral(
    f: &CliffordField,
    q: &SphereQuadrature,
    x: &Paravector,
) -> Result<CauchyValue, CauchyError> {
    cauchy_integral_with(q, x, |i| f.eval(q.nodes()[i].coords()))
}

/// Shared core: `values(i)` supplies the boundary data at node `i`.
pub(crate) fn cauchy_integral_with<V>(
    q: &SphereQuadrature,
    x: &Paravector,
    values: V,
) -> Result<CauchyValue, CauchyError>
where
    V: Fn(usize) -> Multivector + Sync,
{
    let (boundary_distance, near_boundary) = boundary_info(q, x);
    let nodes = q.nodes();
    let normals = q.normals();
    let w = q.weights();
    // kernels first so a node coinciding with x surfaces as an error
    let kernels: Vec<Multivector> = nodes
        .iter()
        .map(|y| cauchy_kernel(&y.sub(x)))
        .collect::<Result<_, _>>()?;
    let value = sum_multivectors(q.execution(), q.len(), Multivector::zero(q.signature()), |i| {
        (kernels[i] * normals[i].to_multivector() * values(i)).scale(w[i])
    });
    Ok(CauchyValue {
        value,
        boundary_distance,
        near_boundary,
    })
}

/// Volume average `(1/V) Σ_i w_i f(y_i)`; equals `f(center)` for monogenic `f`.
pub fn mean_value(f: &CliffordField, b: &BallQuadrature) -> Multivector {
    let nodes = b.nodes();
    let w = b.weights();
    let total = sum_multivectors(b.execution(), b.len(), Multivector::zero(b.signature()), |i| {
        f.eval(nodes[i].coords()).scale(w[i])
    });
    total.scale(1.0 / ball_volume(b.n(), b.radius()))
}
