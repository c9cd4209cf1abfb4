//! Real Clifford algebras `Cl(n)` with a uniform signature `e_j² = ±1`.
//!
//! Basis blades are encoded as bitmasks over the generators (bit `j-1` stands
//! for `e_j`), stored in canonical increasing order. The sign of a blade
//! product is computed by counting transpositions, so the structure constants
//! of the algebra are exact integers and never carry floating-point error.
//!
//! Coefficients live in a fixed `[f64; 16]` array, which keeps
//! [`Multivector`] `Copy` and allocation free for every supported `n ≤ 4`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

pub const MAX_GENERATORS: usize = 4;
pub const MAX_BLADES: usize = 1 << MAX_GENERATORS;

/// Threshold on `|x|` below which [`paravector_inverse`] refuses to invert.
pub const PARAVECTOR_INVERSE_EPS: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("number of generators must be in 1..=4, got {0}")]
    InvalidDimension(usize),
    #[error("signature sign must be +1 or -1, got {0}")]
    InvalidSign(i32),
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },
    #[error("singular input: norm {norm:e} is below epsilon {epsilon:e}")]
    Singular { norm: f64, epsilon: f64 },
    #[error("operation requires e_j^2 = -1, got {0}")]
    RequiresNegativeSignature(Signature),
    #[error("expected {expected} components, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("not a Clifford group element: x*conj(x) has non-scalar part {residual:e}")]
    NotInCliffordGroup { residual: f64 },
    #[error("generator index {index} out of range 1..={n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("multivector has components outside grades 0 and 1 (norm {0:e})")]
    NotParavector(f64),
}

/// Number of generators together with the common square `e_j² = sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    n: u8,
    sign: i8,
}

impl Signature {
    pub fn new(n: usize, sign: i32) -> Result<Self, AlgebraError> {
        if !(1..=MAX_GENERATORS).contains(&n) {
            return Err(AlgebraError::InvalidDimension(n));
        }
        if sign != 1 && sign != -1 {
            return Err(AlgebraError::InvalidSign(sign));
        }
        Ok(Self {
            n: n as u8,
            sign: sign as i8,
        })
    }

    /// `e_j² = -1`, the convention of the function-theory modules.
    pub fn negative(n: usize) -> Result<Self, AlgebraError> {
        Self::new(n, -1)
    }

    /// `e_j² = +1`.
    pub fn positive(n: usize) -> Result<Self, AlgebraError> {
        Self::new(n, 1)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn sign(&self) -> i32 {
        self.sign as i32
    }

    /// Algebra dimension `2^n`.
    pub fn blades(&self) -> usize {
        1 << self.n
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign > 0 { "+1" } else { "-1" };
        write!(f, "Cl({}; e^2={})", self.n, s)
    }
}

/// Grade of a blade index.
pub fn blade_grade(blade: usize) -> u32 {
    blade.count_ones()
}

/// Sign and index of the product of two basis blades.
///
/// The reordering sign counts, for each generator of `b`, how many generators
/// of `a` have to be moved past it; each repeated generator then contributes
/// one factor of `e_j² = sign`.
pub fn blade_product(sig: Signature, a: usize, b: usize) -> (i32, usize) {
    let mut shifted = a >> 1;
    let mut swaps = 0u32;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    let mut sign = if swaps % 2 == 0 { 1 } else { -1 };
    if sig.sign < 0 && (a & b).count_ones() % 2 == 1 {
        sign = -sign;
    }
    (sign, a ^ b)
}

/// Which (anti-)automorphism to apply in [`Multivector::involution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionKind {
    /// Grade involution: grade `k` scaled by `(-1)^k`.
    Grade,
    /// Reversion: grade `k` scaled by `(-1)^{k(k-1)/2}`.
    Reversion,
    /// Clifford conjugation, the composition of the two.
    Conjugation,
}

impl InvolutionKind {
    fn factor(self, grade: u32) -> f64 {
        let grade_sign = if grade % 2 == 0 { 1.0 } else { -1.0 };
        let rev_sign = if (grade * grade.saturating_sub(1) / 2) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        match self {
            InvolutionKind::Grade => grade_sign,
            InvolutionKind::Reversion => rev_sign,
            InvolutionKind::Conjugation => grade_sign * rev_sign,
        }
    }
}

/// Truncation controls for the exponential series.
#[derive(Debug, Clone, Copy)]
pub struct ExpOptions {
    /// Stop once `|term| <= rel_tol * |partial sum|`.
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for ExpOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-16,
            max_terms: 200,
        }
    }
}

/// An element of `Cl(n)`; coefficient `i` multiplies the blade with bitmask `i`.
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector {
    sig: Signature,
    c: [f64; MAX_BLADES],
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            c: [0.0; MAX_BLADES],
        }
    }

    pub fn scalar(sig: Signature, value: f64) -> Self {
        let mut m = Self::zero(sig);
        m.c[0] = value;
        m
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, 1.0)
    }

    /// The generator `e_k`, `1 ≤ k ≤ n`.
    pub fn generator(sig: Signature, k: usize) -> Result<Self, AlgebraError> {
        if k == 0 || k > sig.n() {
            return Err(AlgebraError::GeneratorOutOfRange { index: k, n: sig.n() });
        }
        let mut m = Self::zero(sig);
        m.c[1 << (k - 1)] = 1.0;
        Ok(m)
    }

    /// Basis blade given by a bitmask.
    pub fn blade(sig: Signature, mask: usize, value: f64) -> Self {
        assert!(mask < sig.blades(), "blade {mask} outside {sig}");
        let mut m = Self::zero(sig);
        m.c[mask] = value;
        m
    }

    pub fn from_coeffs(sig: Signature, coeffs: &[f64]) -> Result<Self, AlgebraError> {
        if coeffs.len() != sig.blades() {
            return Err(AlgebraError::WrongLength {
                expected: sig.blades(),
                got: coeffs.len(),
            });
        }
        let mut m = Self::zero(sig);
        m.c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(m)
    }

    /// Grade-1 element `Σ v_j e_j`.
    pub fn vector(sig: Signature, v: &[f64]) -> Result<Self, AlgebraError> {
        if v.len() != sig.n() {
            return Err(AlgebraError::WrongLength {
                expected: sig.n(),
                got: v.len(),
            });
        }
        let mut m = Self::zero(sig);
        for (j, &x) in v.iter().enumerate() {
            m.c[1 << j] = x;
        }
        Ok(m)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c[..self.sig.blades()]
    }

    pub fn coeff(&self, blade: usize) -> f64 {
        self.c[blade]
    }

    pub fn set_coeff(&mut self, blade: usize, value: f64) {
        assert!(blade < self.sig.blades());
        self.c[blade] = value;
    }

    pub fn scalar_part(&self) -> f64 {
        self.c[0]
    }

    /// Coefficients of `e_1..e_n`.
    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.sig.n()).map(|j| self.c[1 << j]).collect()
    }

    /// Projection onto grade `k`.
    pub fn grade(&self, k: u32) -> Self {
        let mut m = Self::zero(self.sig);
        for i in 0..self.sig.blades() {
            if blade_grade(i) == k {
                m.c[i] = self.c[i];
            }
        }
        m
    }

    /// Euclidean norm of the coefficient list.
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs().iter().map(|x| x * x).sum()
    }

    /// Norm of everything except the scalar coefficient.
    pub fn non_scalar_norm(&self) -> f64 {
        self.coeffs()[1..].iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Norm of the components outside grade `k`.
    pub fn off_grade_norm(&self, k: u32) -> f64 {
        (0..self.sig.blades())
            .filter(|&i| blade_grade(i) != k)
            .map(|i| self.c[i] * self.c[i])
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for x in m.c.iter_mut() {
            *x *= s;
        }
        m
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.sig != other.sig {
            return Err(AlgebraError::SignatureMismatch {
                left: self.sig,
                right: other.sig,
            });
        }
        Ok(self.product_unchecked(other))
    }

    fn product_unchecked(&self, other: &Self) -> Self {
        let sig = self.sig;
        let dim = sig.blades();
        let mut out = [0.0; MAX_BLADES];
        for i in 0..dim {
            let a = self.c[i];
            if a == 0.0 {
                continue;
            }
            for j in 0..dim {
                let b = other.c[j];
                if b == 0.0 {
                    continue;
                }
                let (s, k) = blade_product(sig, i, j);
                out[k] += s as f64 * a * b;
            }
        }
        Self { sig, c: out }
    }

    pub fn involution(&self, kind: InvolutionKind) -> Self {
        let mut m = *self;
        for i in 0..self.sig.blades() {
            m.c[i] *= kind.factor(blade_grade(i));
        }
        m
    }

    pub fn reverse(&self) -> Self {
        self.involution(InvolutionKind::Reversion)
    }

    pub fn conjugate(&self) -> Self {
        self.involution(InvolutionKind::Conjugation)
    }

    pub fn grade_involution(&self) -> Self {
        self.involution(InvolutionKind::Grade)
    }

    /// Exponential with the default truncation (relative 1e-16, 200 terms).
    pub fn exp(&self) -> Self {
        self.exp_with(ExpOptions::default())
    }

    /// Exponential by closed form when the non-scalar part squares to a
    /// scalar, and by the truncated power series otherwise.
    pub fn exp_with(&self, opts: ExpOptions) -> Self {
        let a0 = self.c[0];
        let mut pure = *self;
        pure.c[0] = 0.0;
        let sq = pure * pure;
        let scale = pure.norm_sq();
        let unit = Self::one(self.sig);
        if sq.non_scalar_norm() <= 1e-15 * scale.max(f64::MIN_POSITIVE) {
            let s = sq.c[0];
            let body = if scale == 0.0 {
                unit
            } else if s < 0.0 {
                let w = (-s).sqrt();
                unit.scale(w.cos()) + pure.scale(w.sin() / w)
            } else if s > 0.0 {
                let w = s.sqrt();
                unit.scale(w.cosh()) + pure.scale(w.sinh() / w)
            } else {
                unit + pure
            };
            return body.scale(a0.exp());
        }
        self.exp_series(opts)
    }

    /// Plain power series `Σ a^k/k!`, with scaling and squaring when `|a| > 1`.
    pub fn exp_series(&self, opts: ExpOptions) -> Self {
        let norm = self.norm();
        let squarings = if norm > 1.0 {
            norm.log2().ceil() as i32
        } else {
            0
        };
        let a = self.scale(0.5f64.powi(squarings));
        let mut sum = Self::one(self.sig);
        let mut term = sum;
        for k in 1..opts.max_terms {
            term = (term * a).scale(1.0 / k as f64);
            sum += term;
            if term.norm() <= opts.rel_tol * sum.norm() {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum * sum;
        }
        sum
    }

    /// Matrix of `y ↦ self·y` on the coefficient space.
    pub fn left_mult_matrix(&self) -> DMatrix<f64> {
        let dim = self.sig.blades();
        let mut m = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let (s, k) = blade_product(self.sig, i, j);
                m[(k, j)] += s as f64 * self.c[i];
            }
        }
        m
    }

    /// Matrix of `y ↦ y·self` on the coefficient space.
    pub fn right_mult_matrix(&self) -> DMatrix<f64> {
        let dim = self.sig.blades();
        let mut m = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let (s, k) = blade_product(self.sig, i, j);
                m[(k, i)] += s as f64 * self.c[j];
            }
        }
        m
    }

    pub fn to_dvector(&self) -> DVector<f64> {
        DVector::from_column_slice(self.coeffs())
    }

    pub fn from_dvector(sig: Signature, v: &DVector<f64>) -> Self {
        let mut m = Self::zero(sig);
        m.c[..sig.blades()].copy_from_slice(v.as_slice());
        m
    }

    /// Two-sided inverse.
    ///
    /// Elements with `x·conj(x)` scalar (paravectors, Clifford-group elements,
    /// scalar-plus-bivector denominators of Möbius maps) are inverted in closed
    /// form; anything else goes through an LU solve of the left-multiplication
    /// matrix. Fails with [`AlgebraError::Singular`] when `x` is (numerically)
    /// a zero divisor.
    pub fn inverse(&self, eps: f64) -> Result<Self, AlgebraError> {
        let norm = self.norm();
        if norm <= eps {
            return Err(AlgebraError::Singular { norm, epsilon: eps });
        }
        let conj = self.conjugate();
        let n = *self * conj;
        if n.non_scalar_norm() <= 1e-13 * norm * norm {
            let s = n.c[0];
            if s.abs() <= eps * norm {
                return Err(AlgebraError::Singular {
                    norm: s.abs(),
                    epsilon: eps,
                });
            }
            return Ok(conj.scale(1.0 / s));
        }
        let lu = self.left_mult_matrix().lu();
        let mut rhs = DVector::zeros(self.sig.blades());
        rhs[0] = 1.0;
        match lu.solve(&rhs) {
            Some(sol) => {
                let inv = Self::from_dvector(self.sig, &sol);
                let check = (*self * inv - Self::one(self.sig)).norm();
                if check.is_finite() && check <= 1e-8 {
                    Ok(inv)
                } else {
                    Err(AlgebraError::Singular {
                        norm: check,
                        epsilon: eps,
                    })
                }
            }
            None => Err(AlgebraError::Singular {
                norm: 0.0,
                epsilon: eps,
            }),
        }
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector[{}](", self.sig)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..self.sig.blades() {
            let x = self.c[i];
            if x == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{x}")?;
            if i != 0 {
                write!(f, "*e")?;
                for j in 0..self.sig.n() {
                    if i & (1 << j) != 0 {
                        write!(f, "{}", j + 1)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn assert_same(a: &Multivector, b: &Multivector) {
    assert!(
        a.sig == b.sig,
        "signature mismatch: {} vs {}",
        a.sig,
        b.sig
    );
}

impl Add for Multivector {
    type Output = Multivector;
    fn add(mut self, rhs: Multivector) -> Multivector {
        self += rhs;
        self
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        assert_same(self, &rhs);
        for (x, y) in self.c.iter_mut().zip(rhs.c.iter()) {
            *x += y;
        }
    }
}

impl Sub for Multivector {
    type Output = Multivector;
    fn sub(mut self, rhs: Multivector) -> Multivector {
        self -= rhs;
        self
    }
}

impl SubAssign for Multivector {
    fn sub_assign(&mut self, rhs: Multivector) {
        assert_same(self, &rhs);
        for (x, y) in self.c.iter_mut().zip(rhs.c.iter()) {
            *x -= y;
        }
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

/// Geometric product. Panics on a signature mismatch; use
/// [`Multivector::geometric_product`] for the checked version.
impl Mul for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        assert_same(&self, &rhs);
        self.product_unchecked(&rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<Multivector> for f64 {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        rhs.scale(self)
    }
}

/// `x_0 + Σ x_j e_j`, a point of `ℝ^{n+1}` inside `Cl(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Paravector {
    sig: Signature,
    coords: [f64; MAX_GENERATORS + 1],
}

impl Paravector {
    /// `coords = (x_0, x_1, …, x_n)`.
    pub fn new(sig: Signature, coords: &[f64]) -> Result<Self, AlgebraError> {
        if coords.len() != sig.n() + 1 {
            return Err(AlgebraError::WrongLength {
                expected: sig.n() + 1,
                got: coords.len(),
            });
        }
        let mut c = [0.0; MAX_GENERATORS + 1];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Self { sig, coords: c })
    }

    pub fn from_multivector(m: &Multivector) -> Result<Self, AlgebraError> {
        let sig = m.signature();
        let off = (0..sig.blades())
            .filter(|&i| blade_grade(i) > 1)
            .map(|i| m.c[i] * m.c[i])
            .sum::<f64>()
            .sqrt();
        if off > 0.0 {
            return Err(AlgebraError::NotParavector(off));
        }
        let mut coords = vec![m.scalar_part()];
        coords.extend(m.vector_part());
        Self::new(sig, &coords)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.sig.n() + 1]
    }

    pub fn x0(&self) -> f64 {
        self.coords[0]
    }

    pub fn norm_sq(&self) -> f64 {
        self.coords().iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn conj(&self) -> Self {
        let mut p = *self;
        for x in p.coords[1..=self.sig.n()].iter_mut() {
            *x = -*x;
        }
        p
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut m = Multivector::scalar(self.sig, self.coords[0]);
        for j in 0..self.sig.n() {
            m.c[1 << j] = self.coords[j + 1];
        }
        m
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = *self;
        for (x, y) in p.coords.iter_mut().zip(other.coords.iter()) {
            *x -= y;
        }
        p
    }
}

/// `conj(x)/|x|²`, valid for `e_j² = -1`.
pub fn paravector_inverse(x: &Paravector) -> Result<Multivector, AlgebraError> {
    paravector_inverse_eps(x, PARAVECTOR_INVERSE_EPS)
}

pub fn paravector_inverse_eps(x: &Paravector, eps: f64) -> Result<Multivector, AlgebraError> {
    if x.sig.sign() != -1 {
        return Err(AlgebraError::RequiresNegativeSignature(x.sig));
    }
    let norm = x.norm();
    if norm < eps {
        return Err(AlgebraError::Singular { norm, epsilon: eps });
    }
    Ok(x.conj().to_multivector().scale(1.0 / x.norm_sq()))
}

/// A finite product of invertible paravectors/vectors: `b·conj(b)` is a
/// nonzero scalar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliffordGroupElement {
    value: Multivector,
}

impl CliffordGroupElement {
    pub fn new(value: Multivector) -> Result<Self, AlgebraError> {
        let n = value * value.conjugate();
        let scale = value.norm_sq().max(f64::MIN_POSITIVE);
        let residual = n.non_scalar_norm() / scale;
        if residual > 1e-12 {
            return Err(AlgebraError::NotInCliffordGroup { residual });
        }
        if n.scalar_part().abs() <= 1e-14 * scale {
            return Err(AlgebraError::Singular {
                norm: n.scalar_part().abs(),
                epsilon: 1e-14,
            });
        }
        Ok(Self { value })
    }

    pub fn one(sig: Signature) -> Self {
        Self {
            value: Multivector::one(sig),
        }
    }

    /// Product of the given grade-1 vectors, in order.
    pub fn from_vectors(sig: Signature, vectors: &[Vec<f64>]) -> Result<Self, AlgebraError> {
        let mut value = Multivector::one(sig);
        for v in vectors {
            value = value * Multivector::vector(sig, v)?;
        }
        Self::new(value)
    }

    pub fn value(&self) -> Multivector {
        self.value
    }

    /// The scalar `b·conj(b)`.
    pub fn spinor_norm(&self) -> f64 {
        (self.value * self.value.conjugate()).scalar_part()
    }

    /// Rescaled so that `|b·conj(b)| = 1`.
    pub fn normalized(&self) -> Self {
        let s = self.spinor_norm().abs().sqrt();
        Self {
            value: self.value.scale(1.0 / s),
        }
    }

    pub fn inverse(&self) -> Multivector {
        self.value.conjugate().scale(1.0 / self.spinor_norm())
    }
}
