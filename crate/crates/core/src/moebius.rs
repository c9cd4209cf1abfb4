//! Möbius automorphisms of the unit ball `𝔹^n ⊂ ℝ^n` as 2×2 Clifford
//! matrices acting by `x ↦ (px + q)(rx + s)^{-1}`.
//!
//! The maps live in `Cl(n)` with `e_j² = +1`, so that a vector squares to
//! `|x|²`, and `b*` is the reversion of `b`. For `a ∈ 𝔹^n` and `b` in the
//! Clifford group,
//!
//! ```text
//! φ_(a,b) = diag(b, b*^{-1}) · [[1, -a], [a*, -1]]
//! φ_(a,1)(x) = (x - a)(ax - 1)^{-1}
//!            = (a(1 - 2⟨a,x⟩ + |x|²) - x(1 - |a|²)) / (1 - 2⟨a,x⟩ + |a|²|x|²).
//! ```
//!
//! Scaling `b` by `c` scales the image by `c²`, so `b` is normalized to
//! `|b·conj(b)| = 1` before use.

use rand::Rng;
use thiserror::Error;

use crate::clifford::{AlgebraError, CliffordGroupElement, InvolutionKind, Multivector, Signature};
use crate::report::VerificationRecord;

/// Denominators `rx + s` with smaller norm are poles.
pub const POLE_EPS: f64 = 1e-12;

/// Largest non-vector part tolerated in an image, relative to its size.
pub const GRADE_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MoebiusError {
    #[error("point has norm {0} >= 1")]
    OutsideBall(f64),
    #[error("dimension {0} outside 1..=4")]
    InvalidDimension(usize),
    #[error("maps act in Cl(n) with e_j^2 = +1, got {0}")]
    WrongSignature(Signature),
    #[error("pole: |rx + s| = {0:e}")]
    Pole(f64),
    #[error("image is not a vector: off-grade part {0:e}")]
    NotVector(f64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The anti-automorphism used for `a*` and `b*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarConvention {
    Reversion,
    /// Clifford conjugation; does not preserve the unit sphere.
    Conjugation,
}

impl StarConvention {
    fn apply(self, m: &Multivector) -> Multivector {
        match self {
            StarConvention::Reversion => m.involution(InvolutionKind::Reversion),
            StarConvention::Conjugation => m.involution(InvolutionKind::Conjugation),
        }
    }
}

/// A point of the open unit ball, stored as a vector of `Cl(n)`, `e_j² = +1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallPoint {
    value: Multivector,
}

impl BallPoint {
    pub fn new(coords: &[f64]) -> Result<Self, MoebiusError> {
        let n = coords.len();
        let sig = Signature::positive(n).map_err(|_| MoebiusError::InvalidDimension(n))?;
        let value = Multivector::vector(sig, coords)?;
        let norm = value.norm();
        if norm.is_nan() || norm >= 1.0 {
            return Err(MoebiusError::OutsideBall(norm));
        }
        Ok(Self { value })
    }

    pub fn origin(n: usize) -> Result<Self, MoebiusError> {
        Self::new(&vec![0.0; n])
    }

    pub fn value(&self) -> Multivector {
        self.value
    }

    pub fn coords(&self) -> Vec<f64> {
        self.value.vector_part()
    }

    pub fn norm(&self) -> f64 {
        self.value.norm()
    }
}

/// The matrix `[[p, q], [r, s]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    pub p: Multivector,
    pub q: Multivector,
    pub r: Multivector,
    pub s: Multivector,
    star: StarConvention,
}

/// `φ_(a,b)` with the reversion star.
pub fn make_moebius(a: &BallPoint, b: &CliffordGroupElement) -> Result<MoebiusMap, MoebiusError> {
    make_moebius_with(a, b, StarConvention::Reversion)
}

pub fn make_moebius_with(
    a: &BallPoint,
    b: &CliffordGroupElement,
    star: StarConvention,
) -> Result<MoebiusMap, MoebiusError> {
    let sig = a.value.signature();
    if sig.sign() != 1 {
        return Err(MoebiusError::WrongSignature(sig));
    }
    if b.value().signature() != sig {
        return Err(AlgebraError::SignatureMismatch {
            left: sig,
            right: b.value().signature(),
        }
        .into());
    }
    let b = b.normalized().value();
    let av = a.value;
    let b_star_inv = star.apply(&b).inverse(POLE_EPS)?;
    Ok(MoebiusMap {
        p: b,
        q: -(b * av),
        r: b_star_inv * star.apply(&av),
        s: -b_star_inv,
        star,
    })
}

impl MoebiusMap {
    pub fn identity(sig: Signature) -> Self {
        Self {
            p: Multivector::one(sig),
            q: Multivector::zero(sig),
            r: Multivector::zero(sig),
            s: Multivector::one(sig),
            star: StarConvention::Reversion,
        }
    }

    pub fn signature(&self) -> Signature {
        self.p.signature()
    }

    pub fn star(&self) -> StarConvention {
        self.star
    }

    /// `(px + q)(rx + s)^{-1}`, checked to be a vector.
    pub fn apply(&self, x: &Multivector) -> Result<Multivector, MoebiusError> {
        let den = self.r * *x + self.s;
        let norm = den.norm();
        if norm < POLE_EPS {
            return Err(MoebiusError::Pole(norm));
        }
        let y = (self.p * *x + self.q) * den.inverse(POLE_EPS)?;
        let off = y.off_grade_norm(1);
        if off > GRADE_TOL * y.norm().max(1.0) {
            return Err(MoebiusError::NotVector(off));
        }
        Ok(y.grade(1))
    }

    /// [`MoebiusMap::apply`] on coordinates.
    pub fn apply_coords(&self, x: &[f64]) -> Result<Vec<f64>, MoebiusError> {
        let v = Multivector::vector(self.signature(), x)?;
        Ok(self.apply(&v)?.vector_part())
    }
}

/// [`MoebiusMap::apply`].
pub fn apply_moebius(m: &MoebiusMap, x: &Multivector) -> Result<Multivector, MoebiusError> {
    m.apply(x)
}

/// Matrix product `m1·m2`, acting as `m1 ∘ m2`.
pub fn compose(m1: &MoebiusMap, m2: &MoebiusMap) -> MoebiusMap {
    MoebiusMap {
        p: m1.p * m2.p + m1.q * m2.r,
        q: m1.p * m2.q + m1.q * m2.s,
        r: m1.r * m2.p + m1.s * m2.r,
        s: m1.r * m2.q + m1.s * m2.s,
        star: m1.star,
    }
}

/// The adjugate `[[s*, -q*], [-r*, p*]]`, which inverts the action.
pub fn inverse(m: &MoebiusMap) -> MoebiusMap {
    let st = |x: &Multivector| m.star.apply(x);
    MoebiusMap {
        p: st(&m.s),
        q: -st(&m.q),
        r: -st(&m.r),
        s: st(&m.p),
        star: m.star,
    }
}

/// Tolerances of [`verify_ball_theorem_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusTolerances {
    pub involution: f64,
    pub phi_zero: f64,
    pub phi_a: f64,
    pub ball: f64,
    pub sphere: f64,
    pub orthogonal: f64,
    pub transitivity: f64,
    pub compose: f64,
    pub conformality: f64,
    /// Smallest sphere deviation the conjugation-star control must show.
    pub control_min: f64,
}

impl Default for MoebiusTolerances {
    fn default() -> Self {
        Self {
            involution: 1e-10,
            phi_zero: 1e-14,
            phi_a: 1e-12,
            ball: 1e-10,
            sphere: 1e-10,
            orthogonal: 1e-10,
            transitivity: 1e-10,
            compose: 1e-10,
            conformality: 1e-4,
            control_min: 1e-2,
        }
    }
}

/// Step of the conformality probe.
pub const CONFORMAL_STEP: f64 = 1e-5;

/// Sampled `|a|` stays below this, keeping `1 - |a|²` away from zero.
pub const MAX_SAMPLE_RADIUS: f64 = 0.9;

fn random_unit<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    crate::rng::sphere_point(rng, n, 1.0)
}

/// A product of one to three random unit vectors.
fn random_group_element<R: Rng>(rng: &mut R, sig: Signature) -> CliffordGroupElement {
    let k = rng.gen_range(1..=3);
    let vs: Vec<Vec<f64>> = (0..k).map(|_| random_unit(rng, sig.n())).collect();
    CliffordGroupElement::from_vectors(sig, &vs).expect("unit vectors are invertible")
}

fn random_ball_point<R: Rng>(rng: &mut R, n: usize, radius: f64) -> BallPoint {
    BallPoint::new(&crate::rng::ball_point(rng, n, radius)).expect("sampled inside the ball")
}

fn dist(a: &Multivector, b: &Multivector) -> f64 {
    (*a - *b).norm()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Stream ids: one per property, sample `k` draws from its own generator.
const STREAM_BASE: u64 = 0x6d0e_0000;

struct Sampler {
    seed: u64,
    property: u64,
}

impl Sampler {
    fn rng(&self, k: usize) -> rand_chacha::ChaCha8Rng {
        crate::rng::stream(self.seed, STREAM_BASE + (self.property << 32) + k as u64)
    }
}

/// Maximum of `f(k)` over samples; an `Err` counts as an infinite deviation.
fn worst<F>(samples: usize, f: F) -> f64
where
    F: Fn(usize) -> Result<f64, MoebiusError>,
{
    (0..samples)
        .map(|k| f(k).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max)
}

/// [`verify_ball_theorem_with`] at the default tolerances.
pub fn verify_ball_theorem(n: usize, samples: usize, seed: u64) -> Result<VerificationRecord, MoebiusError> {
    verify_ball_theorem_with(n, samples, seed, &MoebiusTolerances::default())
}

/// Checks the claims about `φ_(a,b)` on `samples` random draws each:
/// involution, `φ(0) = a`, `φ(a) = 0`, ball and sphere preservation,
/// closure of the `a = 0` maps, action of composition, transitivity and
/// conformality, plus a conjugation-star control that must break sphere
/// preservation.
pub fn verify_ball_theorem_with(
    n: usize,
    samples: usize,
    seed: u64,
    tol: &MoebiusTolerances,
) -> Result<VerificationRecord, MoebiusError> {
    if !(2..=4).contains(&n) {
        return Err(MoebiusError::InvalidDimension(n));
    }
    let mut rec = VerificationRecord::new();
    if samples == 0 {
        return Ok(rec);
    }
    let sig = Signature::positive(n)?;
    let one = CliffordGroupElement::one(sig);
    let s = |property| Sampler { seed, property };

    let sp = s(0);
    let involution = worst(samples, |k| {
        let mut rng = sp.rng(k);
        let a = random_ball_point(&mut rng, n, MAX_SAMPLE_RADIUS);
        let x = random_ball_point(&mut rng, n, 1.0).value();
        let m = make_moebius(&a, &one)?;
        Ok(dist(&m.apply(&m.apply(&x)?)?, &x))
    });
    rec.at_most("involution", involution, tol.involution);

    let sp = s(1);
    let mut phi_zero = 0.0f64;
    let mut phi_a = 0.0f64;
    for k in 0..samples {
        let mut rng = sp.rng(k);
        let a = random_ball_point(&mut rng, n, MAX_SAMPLE_RADIUS);
        let (z, at_a) = make_moebius(&a, &one)
            .and_then(|m| Ok((m.apply(&Multivector::zero(sig))?, m.apply(&a.value())?)))
            .map(|(z, at)| (dist(&z, &a.value()), at.norm()))
            .unwrap_or((f64::INFINITY, f64::INFINITY));
        phi_zero = phi_zero.max(z);
        phi_a = phi_a.max(at_a);
    }
    rec.at_most("phi_zero", phi_zero, tol.phi_zero);
    rec.at_most("phi_a", phi_a, tol.phi_a);

    let sp = s(2);
    let mut ball = 0.0f64;
    let mut sphere = 0.0f64;
    for k in 0..samples {
        let mut rng = sp.rng(k);
        let a = random_ball_point(&mut rng, n, MAX_SAMPLE_RADIUS);
        let b = random_group_element(&mut rng, sig);
        let x = random_ball_point(&mut rng, n, 1.0).value();
        let u = Multivector::vector(sig, &random_unit(&mut rng, n))?;
        match make_moebius(&a, &b) {
            Ok(m) => {
                ball = ball.max(m.apply(&x).map_or(f64::INFINITY, |y| (y.norm() - 1.0).max(0.0)));
                sphere = sphere.max(m.apply(&u).map_or(f64::INFINITY, |y| (y.norm() - 1.0).abs()));
            }
            Err(_) => {
                ball = f64::INFINITY;
                sphere = f64::INFINITY;
            }
        }
    }
    rec.at_most("ball", ball, tol.ball);
    rec.at_most("sphere", sphere, tol.sphere);

    let sp = s(3);
    let origin = BallPoint::origin(n)?;
    let orthogonal = worst(samples, |k| {
        let mut rng = sp.rng(k);
        let b1 = random_group_element(&mut rng, sig);
        let b2 = random_group_element(&mut rng, sig);
        let x = random_ball_point(&mut rng, n, 1.0).value();
        let m = compose(&make_moebius(&origin, &b1)?, &make_moebius(&origin, &b2)?);
        let sp_rev = m.s * m.p.reverse();
        let structural = m.q.norm()
            + m.r.norm()
            + sp_rev.non_scalar_norm()
            + (sp_rev.scalar_part().abs() - 1.0).abs();
        let isometry = (m.apply(&x)?.norm() - x.norm()).abs();
        Ok(structural + isometry)
    });
    rec.at_most("orthogonal_closure", orthogonal, tol.orthogonal);

    let sp = s(4);
    let compose_dev = worst(samples, |k| {
        let mut rng = sp.rng(k);
        let m1 = make_moebius(&random_ball_point(&mut rng, n, MAX_SAMPLE_RADIUS), &random_group_element(&mut rng, sig))?;
        let m2 = make_moebius(&random_ball_point(&mut rng, n, MAX_SAMPLE_RADIUS), &random_group_element(&mut rng, sig))?;
        let x = random_ball_point(&mut rng, n, 1.0).value();
        let direct = compose(&m1, &m2).apply(&x)?;
        let stepwise = m1.apply(&m2.apply(&x)?)?;
        let back = compose(&m1, &inverse(&m1)).apply(&x)?;
        Ok(dist(&direct, &stepwise).max(dist(&back, &x)))
    });
    rec.at_most("compose", compose_dev, tol.compose);

    let sp = s(5);
    let transitivity = worst(samples, |k| {
        let mut rng = sp.rng(k);
        let p = random_ball_point(&mut rng, n, MAX_SAMPLE_RADIUS);
        let q = random_ball_point(&mut rng, n, MAX_SAMPLE_RADIUS);
        let m = compose(&make_moebius(&q, &one)?, &make_moebius(&p, &one)?);
        Ok(dist(&m.apply(&p.value())?, &q.value()))
    });
    rec.at_most("transitivity", transitivity, tol.transitivity);

    let sp = s(6);
    let conformality = worst(samples, |k| {
        let mut rng = sp.rng(k);
        let a = random_ball_point(&mut rng, n, MAX_SAMPLE_RADIUS);
        let b = random_group_element(&mut rng, sig);
        let x = crate::rng::ball_point(&mut rng, n, 0.9);
        let u = random_unit(&mut rng, n);
        let w = random_unit(&mut rng, n);
        // Gram-Schmidt; a degenerate draw is replaced by a coordinate axis
        let mut v: Vec<f64> = w.iter().zip(&u).map(|(wi, ui)| wi - dot(&w, &u) * ui).collect();
        let vn = dot(&v, &v).sqrt();
        if vn < 1e-3 {
            let j = if u[0].abs() < 0.5 { 0 } else { 1 };
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            v = e.iter().zip(&u).map(|(ei, ui)| ei - u[j] * ui).collect();
        }
        let vn = dot(&v, &v).sqrt();
        v.iter_mut().for_each(|c| *c /= vn);
        let m = make_moebius(&a, &b)?;
        let h = CONFORMAL_STEP;
        let step = |d: &[f64]| -> Result<Vec<f64>, MoebiusError> {
            let shifted = |t: f64| x.iter().zip(d).map(|(xi, di)| xi + t * di).collect::<Vec<_>>();
            let fp = m.apply_coords(&shifted(h))?;
            let fm = m.apply_coords(&shifted(-h))?;
            Ok(fp.iter().zip(&fm).map(|(a, b)| a - b).collect())
        };
        let du = step(&u)?;
        let dv = step(&v)?;
        let (lu, lv) = (dot(&du, &du).sqrt(), dot(&dv, &dv).sqrt());
        let angle = (dot(&du, &dv) / (lu * lv)).abs();
        let stretch = (lu / lv - 1.0).abs();
        Ok(angle.max(stretch))
    });
    rec.at_most("conformality", conformality, tol.conformality);

    let sp = s(7);
    let control = worst(samples, |k| {
        let mut rng = sp.rng(k);
        let a = random_ball_point(&mut rng, n, MAX_SAMPLE_RADIUS);
        let u = Multivector::vector(sig, &random_unit(&mut rng, n))?;
        let m = make_moebius_with(&a, &one, StarConvention::Conjugation)?;
        Ok((m.apply(&u)?.norm() - 1.0).abs())
    });
    rec.at_least("conjugation_control", control, tol.control_min);

    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize) -> Signature {
        Signature::positive(n).unwrap()
    }

    fn v(coords: &[f64]) -> Multivector {
        Multivector::vector(sig(coords.len()), coords).unwrap()
    }

    #[test]
    fn origin_with_unit_b_is_negation() {
        let m = make_moebius(&BallPoint::origin(3).unwrap(), &CliffordGroupElement::one(sig(3))).unwrap();
        let x = v(&[0.2, -0.5, 0.1]);
        assert_eq!(m.apply(&x).unwrap(), -x);
    }

    #[test]
    fn unit_b_matrix_entries() {
        let a = BallPoint::new(&[0.3, -0.1, 0.4]).unwrap();
        let m = make_moebius(&a, &CliffordGroupElement::one(sig(3))).unwrap();
        let one = Multivector::one(sig(3));
        assert_eq!(m.p, one);
        assert_eq!(m.q, -a.value());
        assert_eq!(m.r, a.value());
        assert_eq!(m.s, -one);
    }

    #[test]
    fn closed_form_by_hand() {
        let a = BallPoint::new(&[0.3, -0.1, 0.4]).unwrap();
        let m = make_moebius(&a, &CliffordGroupElement::one(sig(3))).unwrap();
        let x = [0.5, 0.2, -0.6];
        let av = a.coords();
        let t = dot(&av, &x);
        let (a2, x2) = (dot(&av, &av), dot(&x, &x));
        let den = 1.0 - 2.0 * t + a2 * x2;
        let expected: Vec<f64> = (0..3)
            .map(|i| (av[i] * (1.0 - 2.0 * t + x2) - x[i] * (1.0 - a2)) / den)
            .collect();
        let got = m.apply_coords(&x).unwrap();
        for i in 0..3 {
            assert!((got[i] - expected[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn rotation_fixes_the_ball() {
        let s = sig(3);
        let b = CliffordGroupElement::new(Multivector::blade(s, 0b011, 1.0)).unwrap();
        let m = make_moebius(&BallPoint::origin(3).unwrap(), &b).unwrap();
        let mut rng = crate::rng::stream(3, 0);
        for _ in 0..200 {
            let u = v(&crate::rng::sphere_point(&mut rng, 3, 1.0));
            assert!((m.apply(&u).unwrap().norm() - 1.0).abs() < 1e-14);
        }
        // e1e2 acts as x -> -e12 x e21: a half-turn in the e1e2 plane composed with -1
        let y = m.apply(&v(&[1.0, 0.0, 0.0])).unwrap();
        assert!((y - v(&[1.0, 0.0, 0.0])).norm() < 1e-15);
        let y = m.apply(&v(&[0.0, 0.0, 1.0])).unwrap();
        assert!((y - v(&[0.0, 0.0, -1.0])).norm() < 1e-15);
    }

    #[test]
    fn scalar_b_is_normalized_away() {
        let a = BallPoint::new(&[0.1, 0.5]).unwrap();
        let b = CliffordGroupElement::new(Multivector::scalar(sig(2), 3.0)).unwrap();
        let m1 = make_moebius(&a, &b).unwrap();
        let m0 = make_moebius(&a, &CliffordGroupElement::one(sig(2))).unwrap();
        let x = v(&[0.3, 0.3]);
        assert!((m1.apply(&x).unwrap() - m0.apply(&x).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn fixed_points_and_involution() {
        let a = BallPoint::new(&[0.6, -0.3, 0.2, 0.1]).unwrap();
        let s = sig(4);
        let m = make_moebius(&a, &CliffordGroupElement::one(s)).unwrap();
        assert!((m.apply(&Multivector::zero(s)).unwrap() - a.value()).norm() <= 1e-14);
        assert!(m.apply(&a.value()).unwrap().norm() <= 1e-12);
        let x = v(&[0.1, 0.2, -0.3, 0.4]);
        assert!((m.apply(&m.apply(&x).unwrap()).unwrap() - x).norm() < 1e-14);
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let s = sig(3);
        let mut rng = crate::rng::stream(11, 1);
        let a = random_ball_point(&mut rng, 3, 0.9);
        let b = random_group_element(&mut rng, s);
        let m = make_moebius(&a, &b).unwrap();
        let id = compose(&m, &inverse(&m));
        for _ in 0..100 {
            let x = random_ball_point(&mut rng, 3, 1.0).value();
            assert!((id.apply(&x).unwrap() - x).norm() < 1e-12);
        }
    }

    #[test]
    fn transitivity_witness() {
        let one = CliffordGroupElement::one(sig(2));
        let p = BallPoint::new(&[0.5, 0.1]).unwrap();
        let q = BallPoint::new(&[-0.2, -0.7]).unwrap();
        let m = compose(&make_moebius(&q, &one).unwrap(), &make_moebius(&p, &one).unwrap());
        assert!((m.apply(&p.value()).unwrap() - q.value()).norm() < 1e-14);
    }

    #[test]
    fn associativity_on_the_action() {
        let s = sig(3);
        let mut rng = crate::rng::stream(5, 2);
        let ms: Vec<MoebiusMap> = (0..3)
            .map(|_| {
                let a = random_ball_point(&mut rng, 3, 0.9);
                make_moebius(&a, &random_group_element(&mut rng, s)).unwrap()
            })
            .collect();
        let left = compose(&compose(&ms[0], &ms[1]), &ms[2]);
        let right = compose(&ms[0], &compose(&ms[1], &ms[2]));
        for _ in 0..50 {
            let x = random_ball_point(&mut rng, 3, 1.0).value();
            assert!((left.apply(&x).unwrap() - right.apply(&x).unwrap()).norm() < 1e-10);
        }
    }

    #[test]
    fn conjugation_star_breaks_the_sphere() {
        let a = BallPoint::new(&[0.5, 0.0, 0.0]).unwrap();
        let m = make_moebius_with(&a, &CliffordGroupElement::one(sig(3)), StarConvention::Conjugation).unwrap();
        // |φ(x)|² = (1 + |a|² - 2t) / (1 + |a|² + 2t) at |x| = 1, t = <a, x>
        let y = m.apply(&v(&[1.0, 0.0, 0.0])).unwrap();
        assert!((y.norm_sq() - 0.25 / 2.25).abs() < 1e-15);
    }

    #[test]
    fn negative_signature_is_rejected() {
        let a = BallPoint::new(&[0.1, 0.2]).unwrap();
        let b = CliffordGroupElement::one(Signature::negative(2).unwrap());
        assert!(make_moebius(&a, &b).is_err());
        assert!(matches!(BallPoint::new(&[0.8, 0.6]), Err(MoebiusError::OutsideBall(_))));
    }

    #[test]
    fn ball_theorem_holds() {
        for n in 2..=4 {
            let rec = verify_ball_theorem(n, 300, 9).unwrap();
            assert!(rec.all_pass(), "n = {n}: {:?}", rec.failures().collect::<Vec<_>>());
            assert_eq!(rec.checks.len(), 10);
        }
        assert!(verify_ball_theorem(3, 0, 1).unwrap().is_empty());
        assert!(verify_ball_theorem(5, 10, 1).is_err());
    }
}
