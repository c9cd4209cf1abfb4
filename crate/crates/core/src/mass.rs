//! The mass equation `D f = M f` and its intertwining with the monogenic
//! theory.
//!
//! `M` is a bounded operator on the coefficient space commuting with left
//! multiplication by every generator. For `M = R_λ` (right multiplication by
//! `λ`) the exponential `e^{tM}` is `f ↦ f·exp(tλ)`.
//!
//! If `D g = 0` then `f(y) = e^{y_0 M} g(y)` solves `D f = M f`, and
//! conversely `e^{-y_0 M} f` is monogenic. The Cauchy theorem, Cauchy integral
//! formula and mean value property carry over through these factors.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::cauchy::{cauchy_integral_with, CauchyError, CauchyValue};
use crate::clifford::{AlgebraError, Multivector, Paravector, Signature};
use crate::exec::sum_multivectors;
use crate::field::{apply_cr_operator, CliffordField, CrSide, Domain, FieldError, StencilSpec};
use crate::quadrature::{ball_volume, BallQuadrature, SphereQuadrature};

/// Relative tolerance of the commutation check `[M, L_{e_j}] = 0`.
pub const COMMUTATION_TOL: f64 = 1e-12;

/// Residual bound for the monogenic and mass-equation preconditions.
pub const PRECONDITION_TOL: f64 = 1e-7;

/// Seed stream for the default sample points.
const SAMPLE_STREAM: u64 = 0x3a55;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MassError {
    #[error("operator does not commute with left multiplication by e_{generator}: residual {residual:e}")]
    NonCommuting { generator: usize, residual: f64 },
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("operator norm is not finite")]
    Unbounded,
    #[error("precondition failed: residual {residual:e} exceeds {tolerance:e}")]
    Precondition { residual: f64, tolerance: f64 },
    #[error("operator acts on {expected}, field is over {found}")]
    SignatureMismatch { expected: Signature, found: Signature },
    #[error("requires real lambda, got {0}")]
    NotReal(Multivector),
    #[error("fields must live on the paravector domain")]
    WrongDomain,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cauchy(#[from] CauchyError),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MassKind {
    RightMult(Multivector),
    GeneralLinear(DMatrix<f64>),
}

/// A bounded operator on `Cl(n)` commuting with left multiplication by `e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MassOperator {
    sig: Signature,
    kind: MassKind,
    norm: f64,
}

impl MassOperator {
    /// `f ↦ f·λ`; commutes with left multiplication by associativity.
    pub fn right_mult(lambda: Multivector) -> Self {
        let norm = spectral_norm(&lambda.right_mult_matrix());
        Self {
            sig: lambda.signature(),
            kind: MassKind::RightMult(lambda),
            norm,
        }
    }

    /// `f ↦ λ f` with `λ` real.
    pub fn scalar(sig: Signature, lambda: f64) -> Self {
        Self::right_mult(Multivector::scalar(sig, lambda))
    }

    /// An arbitrary matrix on the coefficient space; rejected unless it
    /// commutes with every `L_{e_j}` to [`COMMUTATION_TOL`] relative to its norm.
    pub fn general_linear(sig: Signature, matrix: DMatrix<f64>) -> Result<Self, MassError> {
        let expected = sig.blades();
        if matrix.nrows() != expected || matrix.ncols() != expected {
            return Err(MassError::MatrixShape {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                expected,
            });
        }
        let norm = spectral_norm(&matrix);
        if !norm.is_finite() {
            return Err(MassError::Unbounded);
        }
        let (generator, residual) = worst_commutator(sig, &matrix);
        if residual > COMMUTATION_TOL * norm.max(1.0) {
            return Err(MassError::NonCommuting { generator, residual });
        }
        Ok(Self {
            sig,
            kind: MassKind::GeneralLinear(matrix),
            norm,
        })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn kind(&self) -> &MassKind {
        &self.kind
    }

    /// `λ` for a right-multiplication operator.
    pub fn lambda(&self) -> Option<Multivector> {
        match &self.kind {
            MassKind::RightMult(l) => Some(*l),
            MassKind::GeneralLinear(_) => None,
        }
    }

    /// Operator 2-norm on the coefficient space.
    pub fn operator_norm(&self) -> f64 {
        self.norm
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        match &self.kind {
            MassKind::RightMult(l) => l.right_mult_matrix(),
            MassKind::GeneralLinear(m) => m.clone(),
        }
    }

    /// Largest `‖M L_{e_j} - L_{e_j} M‖_max` over the generators.
    pub fn commutation_residual(&self) -> f64 {
        worst_commutator(self.sig, &self.matrix()).1
    }

    pub fn apply(&self, f: &Multivector) -> Multivector {
        match &self.kind {
            MassKind::RightMult(l) => *f * *l,
            MassKind::GeneralLinear(m) => Multivector::from_dvector(self.sig, &(m * f.to_dvector())),
        }
    }

    /// `Some(λ)` when the operator is multiplication by a real number.
    fn real_lambda(&self) -> Option<f64> {
        self.lambda()
            .filter(|l| l.non_scalar_norm() == 0.0)
            .map(|l| l.scalar_part())
    }
}

fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    m.singular_values().iter().cloned().fold(0.0, f64::max)
}

fn worst_commutator(sig: Signature, m: &DMatrix<f64>) -> (usize, f64) {
    (1..=sig.n())
        .map(|j| {
            let l = Multivector::generator(sig, j)
                .expect("generator in range")
                .left_mult_matrix();
            (j, (m * &l - &l * m).amax())
        })
        .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best })
}

/// The linear map `e^{tM}`.
#[derive(Debug, Clone, PartialEq)]
pub enum MassExp {
    /// `f ↦ f·factor`.
    RightMult(Multivector),
    Matrix(Signature, DMatrix<f64>),
}

impl MassExp {
    pub fn apply(&self, f: &Multivector) -> Multivector {
        match self {
            MassExp::RightMult(e) => *f * *e,
            MassExp::Matrix(sig, m) => Multivector::from_dvector(*sig, &(m * f.to_dvector())),
        }
    }
}

/// `e^{tM}`: `f·exp(tλ)` for right multiplication, otherwise the matrix
/// exponential by scaling and squaring of the Taylor series.
pub fn exp_mass(m: &MassOperator, t: f64) -> MassExp {
    match &m.kind {
        MassKind::RightMult(l) => MassExp::RightMult(l.scale(t).exp()),
        MassKind::GeneralLinear(a) => MassExp::Matrix(m.sig, matrix_exp(&(a * t))),
    }
}

fn matrix_exp(a: &DMatrix<f64>) -> DMatrix<f64> {
    let norm = a.amax() * a.nrows() as f64;
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let b = a / 2f64.powi(squarings);
    let dim = a.nrows();
    let mut sum = DMatrix::identity(dim, dim);
    let mut term = DMatrix::identity(dim, dim);
    for k in 1..=30 {
        term = &term * &b / k as f64;
        sum += &term;
        if term.amax() <= f64::EPSILON * sum.amax() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

fn check_field(f: &CliffordField, m: &MassOperator) -> Result<(), MassError> {
    if f.domain() != Domain::Paravector {
        return Err(MassError::WrongDomain);
    }
    if f.signature() != m.sig {
        return Err(MassError::SignatureMismatch {
            expected: m.sig,
            found: f.signature(),
        });
    }
    Ok(())
}

/// 32 fixed points of the ball of radius 1/2 in `ℝ^{n+1}`.
pub fn default_points(sig: Signature) -> Vec<Vec<f64>> {
    crate::rng::ball_points(0, SAMPLE_STREAM, sig.n() + 1, 32, 0.5)
}

/// `max_x |D f(x) - M f(x)|` by finite differences.
pub fn mass_residual(
    f: &CliffordField,
    m: &MassOperator,
    points: &[Vec<f64>],
    s: StencilSpec,
) -> Result<f64, MassError> {
    check_field(f, m)?;
    let df = apply_cr_operator(f, s, CrSide::LeftD)?;
    Ok(points
        .iter()
        .map(|x| (df.eval(x) - m.apply(&f.eval(x))).norm())
        .fold(0.0, f64::max))
}

/// `y ↦ e^{t(y_0) M} f(y)`.
fn dress<T>(f: &CliffordField, m: &MassOperator, label: String, t: T) -> CliffordField
where
    T: Fn(f64) -> f64 + Send + Sync + 'static,
{
    let m = m.clone();
    f.map(label, move |y, v| exp_mass(&m, t(y[0])).apply(&v))
}

/// `f(y) = e^{y_0 M} g(y)` for monogenic `g`; checks `D g = 0` on
/// [`default_points`] first.
pub fn make_mass_solution(g: &CliffordField, m: &MassOperator) -> Result<CliffordField, MassError> {
    let zero = MassOperator::scalar(m.sig, 0.0);
    let residual = mass_residual(g, &zero, &default_points(m.sig), StencilSpec::default())?;
    if residual > PRECONDITION_TOL {
        return Err(MassError::Precondition {
            residual,
            tolerance: PRECONDITION_TOL,
        });
    }
    Ok(dress(g, m, format!("exp(y0 M)[{}]", g.label()), |t| t))
}

/// `e^{-y_0 M} f`, monogenic when `f` is an `M`-solution.
pub fn to_monogenic(f: &CliffordField, m: &MassOperator) -> CliffordField {
    dress(f, m, format!("exp(-y0 M)[{}]", f.label()), |t| -t)
}

/// `g(y) = e^{y_0 M_2} e^{-y_0 M_1} f(y)`; `f` itself when `M_1 = M_2`.
pub fn intertwine(f: &CliffordField, m1: &MassOperator, m2: &MassOperator) -> CliffordField {
    if m1 == m2 {
        return f.clone();
    }
    let (a, b) = (m1.clone(), m2.clone());
    f.map(format!("intertwine[{}]", f.label()), move |y, v| {
        exp_mass(&b, y[0]).apply(&exp_mass(&a, -y[0]).apply(&v))
    })
}

/// Residual of `D g = M_2 g` for `g` from [`intertwine`], after checking
/// that `f` solves the `M_1` equation on the same points.
pub fn intertwining_residual_at(
    f: &CliffordField,
    m1: &MassOperator,
    m2: &MassOperator,
    points: &[Vec<f64>],
    s: StencilSpec,
) -> Result<f64, MassError> {
    check_field(f, m2)?;
    let pre = mass_residual(f, m1, points, s)?;
    if pre > PRECONDITION_TOL {
        return Err(MassError::Precondition {
            residual: pre,
            tolerance: PRECONDITION_TOL,
        });
    }
    mass_residual(&intertwine(f, m1, m2), m2, points, s)
}

/// [`intertwining_residual_at`] on [`default_points`].
pub fn intertwining_residual(
    f: &CliffordField,
    m1: &MassOperator,
    m2: &MassOperator,
    s: StencilSpec,
) -> Result<f64, MassError> {
    intertwining_residual_at(f, m1, m2, &default_points(m1.sig), s)
}

/// Monogenic residuals of `e^{-y_0 M} f` and `e^{+y_0 M} f` for an
/// `M`-solution `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionOutcome {
    pub minus: f64,
    pub plus: f64,
}

impl DirectionOutcome {
    /// True when only the `e^{-y_0 M}` factor yields a monogenic function.
    pub fn selects_minus(&self, tol: f64, control_min: f64) -> bool {
        self.minus <= tol && self.plus >= control_min
    }
}

pub fn direction_discriminator(
    f: &CliffordField,
    m: &MassOperator,
    points: &[Vec<f64>],
    s: StencilSpec,
) -> Result<DirectionOutcome, MassError> {
    let zero = MassOperator::scalar(m.sig, 0.0);
    let plus = dress(f, m, format!("exp(+y0 M)[{}]", f.label()), |t| t);
    Ok(DirectionOutcome {
        minus: mass_residual(&to_monogenic(f, m), &zero, points, s)?,
        plus: mass_residual(&plus, &zero, points, s)?,
    })
}

/// `Σ_i w_i ν_i e^{-y_0 M} f(y_i)`; vanishes for `M`-solutions.
pub fn cauchy_theorem_mass_integral(
    f: &CliffordField,
    q: &SphereQuadrature,
    m: &MassOperator,
) -> Multivector {
    let nodes = q.nodes();
    let normals = q.normals();
    let w = q.weights();
    sum_multivectors(q.execution(), q.len(), Multivector::zero(q.signature()), |i| {
        let y = &nodes[i];
        let v = exp_mass(m, -y.x0()).apply(&f.eval(y.coords()));
        (normals[i].to_multivector() * v).scale(w[i])
    })
}

/// Norm of [`cauchy_theorem_mass_integral`].
pub fn cauchy_theorem_mass(f: &CliffordField, q: &SphereQuadrature, m: &MassOperator) -> f64 {
    cauchy_theorem_mass_integral(f, q, m).norm()
}

fn undressed_values(f: &CliffordField, q: &SphereQuadrature, m: &MassOperator) -> Vec<Multivector> {
    q.nodes()
        .iter()
        .map(|y| exp_mass(m, -y.x0()).apply(&f.eval(y.coords())))
        .collect()
}

/// `e^{x_0 M} Σ_i w_i E(y_i - x) ν_i e^{-y_0 M} f(y_i)`: `f(x)` inside, `0` outside.
pub fn cauchy_integral_mass(
    f: &CliffordField,
    q: &SphereQuadrature,
    x: &Paravector,
    m: &MassOperator,
) -> Result<CauchyValue, MassError> {
    let values = undressed_values(f, q, m);
    let mut out = cauchy_integral_with(q, x, |i| values[i])?;
    out.value = exp_mass(m, x.x0()).apply(&out.value);
    Ok(out)
}

/// `e^{c_0 M} (1/V) Σ_i w_i e^{-y_0 M} f(y_i)`, `c` the ball center; equals `f(c)`.
pub fn mean_value_mass(f: &CliffordField, b: &BallQuadrature, m: &MassOperator) -> Multivector {
    let nodes = b.nodes();
    let w = b.weights();
    let total = sum_multivectors(b.execution(), b.len(), Multivector::zero(b.signature()), |i| {
        let y = &nodes[i];
        exp_mass(m, -y.x0()).apply(&f.eval(y.coords())).scale(w[i])
    });
    let avg = total.scale(1.0 / ball_volume(b.n(), b.radius()));
    exp_mass(m, b.center().x0()).apply(&avg)
}

/// For real `λ`, the largest difference between the Cauchy formula with the
/// exponential factors applied on the right (`f(y)e^{-y_0λ}`, then `·e^{x_0λ}`)
/// and on the left (`e^{-y_0λ}f(y)`, then `e^{x_0λ}·`), and between `f·e^{tλ}`
/// and `e^{tλ}·f` at the nodes.
pub fn real_lambda_agreement(
    f: &CliffordField,
    q: &SphereQuadrature,
    x: &Paravector,
    m: &MassOperator,
) -> Result<f64, MassError> {
    let lambda = m.real_lambda().ok_or_else(|| {
        MassError::NotReal(m.lambda().unwrap_or_else(|| Multivector::zero(m.sig)))
    })?;
    let sig = m.sig;
    let right = cauchy_integral_mass(f, q, x, m)?.value;
    let left_values: Vec<Multivector> = q
        .nodes()
        .iter()
        .map(|y| Multivector::scalar(sig, (-y.x0() * lambda).exp()) * f.eval(y.coords()))
        .collect();
    let left = Multivector::scalar(sig, (x.x0() * lambda).exp())
        * cauchy_integral_with(q, x, |i| left_values[i])?.value;
    let scale = right.norm().max(1.0);
    let mut worst = (right - left).norm() / scale;
    for y in q.nodes() {
        let v = f.eval(y.coords());
        let e = Multivector::scalar(sig, (y.x0() * lambda).exp());
        let d = (exp_mass(m, y.x0()).apply(&v) - e * v).norm() / v.norm().max(1.0);
        worst = worst.max(d);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cauchy::cauchy_integral;
    use crate::field::fueter_variable;
    use crate::quadrature::{make_ball_quadrature, make_sphere_quadrature};
    use std::f64::consts::E;

    fn sig(n: usize) -> Signature {
        Signature::negative(n).unwrap()
    }

    fn pv(coords: &[f64]) -> Paravector {
        Paravector::new(sig(coords.len() - 1), coords).unwrap()
    }

    fn e(s: Signature, k: usize) -> Multivector {
        Multivector::generator(s, k).unwrap()
    }

    fn one_field(s: Signature) -> CliffordField {
        CliffordField::constant(s, Domain::Paravector, Multivector::one(s))
    }

    #[test]
    fn exp_mass_examples() {
        let s = sig(2);
        let m = MassOperator::scalar(s, 0.5);
        let f = Multivector::from_coeffs(s, &[1.0, 2.0, -1.0, 0.5]).unwrap();
        assert_eq!(exp_mass(&m, 0.0).apply(&f), f);
        let one = exp_mass(&m, 2.0).apply(&Multivector::one(s));
        assert!((one.scalar_part() - E).abs() < 1e-15);
        assert!((one.scalar_part() - std::f64::consts::E).abs() < 1e-12);

        let m1 = MassOperator::right_mult(e(s, 1));
        let t: f64 = 0.7;
        let expected = f * (Multivector::scalar(s, t.cos()) + e(s, 1).scale(t.sin()));
        assert!((exp_mass(&m1, t).apply(&f) - expected).norm() < 1e-15);
    }

    #[test]
    fn matrix_exp_matches_right_mult() {
        let s = sig(2);
        let lambda = Multivector::from_coeffs(s, &[0.3, -1.1, 0.4, 2.0]).unwrap();
        let r = MassOperator::right_mult(lambda);
        let g = MassOperator::general_linear(s, lambda.right_mult_matrix()).unwrap();
        let f = Multivector::from_coeffs(s, &[1.0, -0.5, 0.25, 3.0]).unwrap();
        for t in [0.0, 0.5, -1.5, 3.0] {
            let a = exp_mass(&r, t).apply(&f);
            let b = exp_mass(&g, t).apply(&f);
            assert!((a - b).norm() < 1e-12 * a.norm().max(1.0), "t = {t}");
        }
    }

    #[test]
    fn round_trip_is_identity() {
        let s = sig(3);
        let m = MassOperator::right_mult(e(s, 2).scale(1.3) + Multivector::scalar(s, 0.2));
        let f = Multivector::from_coeffs(s, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]).unwrap();
        let back = exp_mass(&m, -0.8).apply(&exp_mass(&m, 0.8).apply(&f));
        assert!((back - f).norm() < 1e-12 * f.norm());
    }

    #[test]
    fn left_multiplication_is_rejected() {
        let s = sig(2);
        let l = e(s, 1).left_mult_matrix();
        match MassOperator::general_linear(s, l) {
            Err(MassError::NonCommuting { generator, residual }) => {
                assert_eq!(generator, 2);
                assert!(residual >= 1.0);
            }
            other => panic!("expected NonCommuting, got {other:?}"),
        }
        assert!(matches!(
            MassOperator::general_linear(s, DMatrix::identity(3, 3)),
            Err(MassError::MatrixShape { .. })
        ));
        let r = MassOperator::right_mult(e(s, 1));
        assert_eq!(r.commutation_residual(), 0.0);
        assert!((r.operator_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mass_solution_examples() {
        let s = sig(2);
        let st = StencilSpec::default();
        let pts = default_points(s);
        let zero = MassOperator::scalar(s, 0.0);
        let z1 = fueter_variable(s, 1).unwrap();
        let same = make_mass_solution(&z1, &zero).unwrap();
        for p in &pts {
            assert_eq!(same.eval(p), z1.eval(p));
        }

        let half = MassOperator::scalar(s, 0.5);
        let f = make_mass_solution(&one_field(s), &half).unwrap();
        assert!((f.eval(&[0.4, 0.1, 0.0]).scalar_part() - 0.2f64.exp()).abs() < 1e-15);
        assert!(mass_residual(&f, &half, &pts, st).unwrap() <= 1e-7);

        let f = make_mass_solution(&z1, &half).unwrap();
        assert!(mass_residual(&f, &half, &pts, st).unwrap() <= 1e-7);

        let bad = CliffordField::paravector_identity(s);
        assert!(matches!(
            make_mass_solution(&bad, &half),
            Err(MassError::Precondition { .. })
        ));
    }

    #[test]
    fn intertwining_examples() {
        let s = sig(2);
        let st = StencilSpec::default();
        let z1 = fueter_variable(s, 1).unwrap();
        let zero = MassOperator::scalar(s, 0.0);
        for m in [MassOperator::scalar(s, 0.5), MassOperator::right_mult(e(s, 1))] {
            let f = make_mass_solution(&z1, &m).unwrap();
            assert!(intertwining_residual(&f, &m, &zero, st).unwrap() <= 1e-7);
            assert!(intertwining_residual(&z1, &zero, &m, st).unwrap() <= 1e-7);
            let own = mass_residual(&f, &m, &default_points(s), st).unwrap();
            assert_eq!(intertwining_residual(&f, &m, &m, st).unwrap(), own);
        }
        let m = MassOperator::scalar(s, 0.5);
        assert!(matches!(
            intertwining_residual(&z1, &m, &zero, st),
            Err(MassError::Precondition { .. })
        ));
    }

    #[test]
    fn only_the_decaying_factor_is_monogenic() {
        let s = sig(2);
        let st = StencilSpec::default();
        let z1 = fueter_variable(s, 1).unwrap();
        for m in [MassOperator::scalar(s, 0.5), MassOperator::right_mult(e(s, 1))] {
            let f = make_mass_solution(&z1, &m).unwrap();
            let out = direction_discriminator(&f, &m, &default_points(s), st).unwrap();
            assert!(out.selects_minus(1e-7, 1e-2), "{out:?}");
        }
    }

    #[test]
    fn cauchy_theorem_examples() {
        let s = sig(2);
        let q = make_sphere_quadrature(pv(&[0.0, 0.0, 0.0]), 1.0, 4).unwrap();
        let zero = MassOperator::scalar(s, 0.0);
        let z1 = fueter_variable(s, 1).unwrap();
        let plain = crate::cauchy::cauchy_theorem_residual(&z1, &q);
        assert_eq!(cauchy_theorem_mass(&z1, &q, &zero), plain);

        let half = MassOperator::scalar(s, 0.5);
        let f = make_mass_solution(&one_field(s), &half).unwrap();
        assert!(cauchy_theorem_mass(&f, &q, &half) <= 1e-8);
        let f = make_mass_solution(&z1, &half).unwrap();
        assert!(cauchy_theorem_mass(&f, &q, &half) <= 1e-7);
    }

    #[test]
    fn cauchy_integral_examples() {
        let s = sig(2);
        let q = make_sphere_quadrature(pv(&[0.0, 0.0, 0.0]), 1.0, 4).unwrap();
        let zero = MassOperator::scalar(s, 0.0);
        let z1 = fueter_variable(s, 1).unwrap();
        let x = pv(&[0.3, -0.2, 0.1]);
        assert_eq!(
            cauchy_integral_mass(&z1, &q, &x, &zero).unwrap(),
            cauchy_integral(&z1, &q, &x).unwrap()
        );

        let half = MassOperator::scalar(s, 0.5);
        let f = make_mass_solution(&one_field(s), &half).unwrap();
        let v = cauchy_integral_mass(&f, &q, &x, &half).unwrap().value;
        assert!((v - Multivector::scalar(s, 0.15f64.exp())).norm() < 1e-6);

        let far = pv(&[2.0, 0.0, 0.0]);
        for m in [half, MassOperator::right_mult(e(s, 1))] {
            let f = make_mass_solution(&z1, &m).unwrap();
            assert!(cauchy_integral_mass(&f, &q, &far, &m).unwrap().value.norm() < 1e-6);
        }
    }

    #[test]
    fn mean_value_examples() {
        let s = sig(2);
        let zero = MassOperator::scalar(s, 0.0);
        let b = make_ball_quadrature(pv(&[0.0, 0.0, 0.0]), 0.7, 4).unwrap();
        let v = mean_value_mass(&one_field(s), &b, &zero);
        assert!((v - Multivector::one(s)).norm() < 1e-12);

        let half = MassOperator::scalar(s, 0.5);
        let f = make_mass_solution(&one_field(s), &half).unwrap();
        assert!((mean_value_mass(&f, &b, &half) - Multivector::one(s)).norm() < 1e-6);

        let c = pv(&[0.1, 0.2, 0.0]);
        let b = make_ball_quadrature(c, 0.7, 4).unwrap();
        let z1 = fueter_variable(s, 1).unwrap();
        let f = make_mass_solution(&z1, &half).unwrap();
        let expected = z1.eval(c.coords()).scale(0.05f64.exp());
        assert!((mean_value_mass(&f, &b, &half) - expected).norm() < 1e-6);
    }

    #[test]
    fn real_lambda_sides_agree() {
        let s = sig(2);
        let q = make_sphere_quadrature(pv(&[0.0, 0.0, 0.0]), 1.0, 3).unwrap();
        let m = MassOperator::scalar(s, 1.0);
        let f = make_mass_solution(&fueter_variable(s, 2).unwrap(), &m).unwrap();
        let d = real_lambda_agreement(&f, &q, &pv(&[0.1, 0.3, -0.2]), &m).unwrap();
        assert!(d <= 1e-12, "{d:e}");
        assert!(matches!(
            real_lambda_agreement(&f, &q, &pv(&[0.1, 0.3, -0.2]), &MassOperator::right_mult(e(s, 1))),
            Err(MassError::NotReal(_))
        ));
    }
}
