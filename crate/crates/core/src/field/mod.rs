//! Clifford-valued fields and the first-order operators acting on them.
//!
//! The monogenicity operator is `D = ∂_0 + Σ e_j ∂_j` on paravector-valued
//! points `(y_0, …, y_n)` with `e_j² = -1`; its conjugate is
//! `D̄ = ∂_0 - Σ e_j ∂_j`, and `D D̄ = Δ` on `ℝ^{n+1}`. Fields are evaluable
//! closures; polynomial fields also carry their symbolic form so the stencil
//! and the exact derivative can be compared.

pub mod poly;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::clifford::{AlgebraError, Multivector, Signature, MAX_GENERATORS};
use crate::report::VerificationRecord;
pub use poly::Polynomial;

/// Largest Fueter degree handled.
pub const MAX_FUETER_DEGREE: u32 = 6;

const MAX_COORDS: usize = MAX_GENERATORS + 1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("operator needs a {expected} domain, field {label:?} has {found}")]
    WrongDomain {
        expected: &'static str,
        found: Domain,
        label: String,
    },
    #[error("Fueter index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("Fueter degree {0} exceeds {MAX_FUETER_DEGREE}")]
    DegreeTooLarge(u32),
    #[error("multi-index has {got} entries, algebra has {n} generators")]
    IndexLength { got: usize, n: usize },
    #[error("stencil step {0} outside [1e-6, 1e-1]")]
    InvalidStep(f64),
    #[error("stencil order {0} not supported (2 or 4)")]
    InvalidOrder(u8),
}

/// Where a field's points live.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `ℝ^{n+1}`, coordinates `(y_0, …, y_n)` paired with `Cl(n)`.
    Paravector,
    /// `ℝ^d`, coordinates `(x_1, …, x_d)` paired with `Cl(d)`.
    Vector,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Paravector => write!(f, "paravector"),
            Domain::Vector => write!(f, "vector"),
        }
    }
}

type EvalFn = dyn Fn(&[f64]) -> Multivector + Send + Sync;

/// An evaluable map from points to multivectors.
#[derive(Clone)]
pub struct CliffordField {
    sig: Signature,
    domain: Domain,
    label: String,
    eval: Arc<EvalFn>,
    poly: Option<Arc<Polynomial>>,
}

impl fmt::Debug for CliffordField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CliffordField")
            .field("sig", &self.sig)
            .field("domain", &self.domain)
            .field("label", &self.label)
            .field("polynomial", &self.poly.is_some())
            .finish()
    }
}

impl CliffordField {
    pub fn new<F>(sig: Signature, domain: Domain, label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&[f64]) -> Multivector + Send + Sync + 'static,
    {
        Self {
            sig,
            domain,
            label: label.into(),
            eval: Arc::new(eval),
            poly: None,
        }
    }

    pub fn from_polynomial(domain: Domain, label: impl Into<String>, p: Polynomial) -> Self {
        let p = Arc::new(p);
        let q = Arc::clone(&p);
        Self {
            sig: p.signature(),
            domain,
            label: label.into(),
            eval: Arc::new(move |x| q.eval(x)),
            poly: Some(p),
        }
    }

    pub fn constant(sig: Signature, domain: Domain, c: Multivector) -> Self {
        let vars = dimension(sig, domain);
        Self::from_polynomial(domain, format!("const({c})"), Polynomial::constant(sig, vars, c))
    }

    /// `y ↦ y_0 + Σ y_j e_j`.
    pub fn paravector_identity(sig: Signature) -> Self {
        let vars = sig.n() + 1;
        let mut p = Polynomial::variable(sig, vars, 0, Multivector::one(sig));
        for j in 1..vars {
            let e = Multivector::generator(sig, j).expect("generator in range");
            p = p.add(&Polynomial::variable(sig, vars, j, e));
        }
        Self::from_polynomial(Domain::Paravector, "y", p)
    }

    /// `x ↦ Σ x_i e_i` on `ℝ^n`.
    pub fn vector_identity(sig: Signature) -> Self {
        let vars = sig.n();
        let mut p = Polynomial::zero(sig, vars);
        for i in 0..vars {
            let e = Multivector::generator(sig, i + 1).expect("generator in range");
            p = p.add(&Polynomial::variable(sig, vars, i, e));
        }
        Self::from_polynomial(Domain::Vector, "x", p)
    }

    pub fn eval(&self, x: &[f64]) -> Multivector {
        (self.eval)(x)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Number of coordinates of a point.
    pub fn dim(&self) -> usize {
        dimension(self.sig, self.domain)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn polynomial(&self) -> Option<&Polynomial> {
        self.poly.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Pointwise `g(y, f(y))`; drops the symbolic form.
    pub fn map<G>(&self, label: impl Into<String>, g: G) -> Self
    where
        G: Fn(&[f64], Multivector) -> Multivector + Send + Sync + 'static,
    {
        let f = Arc::clone(&self.eval);
        Self::new(self.sig, self.domain, label, move |x| g(x, f(x)))
    }

    /// `a·self + b·other` with real `a`, `b`.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        assert_eq!(self.sig, other.sig);
        assert_eq!(self.domain, other.domain);
        let label = format!("{a}*{} + {b}*{}", self.label, other.label);
        if let (Some(p), Some(q)) = (&self.poly, &other.poly) {
            return Self::from_polynomial(self.domain, label, p.scale(a).add(&q.scale(b)));
        }
        let f = Arc::clone(&self.eval);
        let g = Arc::clone(&other.eval);
        Self::new(self.sig, self.domain, label, move |x| f(x).scale(a) + g(x).scale(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(1.0, other, -1.0)
    }
}

fn dimension(sig: Signature, domain: Domain) -> usize {
    match domain {
        Domain::Paravector => sig.n() + 1,
        Domain::Vector => sig.n(),
    }
}

/// Central finite-difference step and accuracy order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilSpec {
    h: f64,
    order: u8,
}

impl StencilSpec {
    pub fn new(h: f64, order: u8) -> Result<Self, FieldError> {
        if !(1e-6..=1e-1).contains(&h) {
            return Err(FieldError::InvalidStep(h));
        }
        if order != 2 && order != 4 {
            return Err(FieldError::InvalidOrder(order));
        }
        Ok(Self { h, order })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    /// Symmetric pairs `(k, w)` for `Σ w (f(x+kh) - f(x-kh)) / h`.
    fn first(&self) -> &'static [(f64, f64)] {
        match self.order {
            2 => &[(1.0, 0.5)],
            _ => &[(1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)],
        }
    }

    /// Symmetric pairs `(k, w)` for `Σ w (f(x+kh) + f(x-kh) - 2f(x)) / h²`.
    fn second(&self) -> &'static [(f64, f64)] {
        match self.order {
            2 => &[(1.0, 1.0)],
            _ => &[(1.0, 16.0 / 12.0), (2.0, -1.0 / 12.0)],
        }
    }
}

impl Default for StencilSpec {
    /// `h = 1e-3`, fourth order.
    fn default() -> Self {
        Self { h: 1e-3, order: 4 }
    }
}

fn shifted(x: &[f64], i: usize, delta: f64) -> ([f64; MAX_COORDS], usize) {
    let mut buf = [0.0; MAX_COORDS];
    buf[..x.len()].copy_from_slice(x);
    buf[i] += delta;
    (buf, x.len())
}

/// `∂f/∂x_i` at `x` by central differences.
pub fn partial<F>(f: &F, x: &[f64], i: usize, s: StencilSpec) -> Multivector
where
    F: Fn(&[f64]) -> Multivector + ?Sized,
{
    let mut acc: Option<Multivector> = None;
    for &(k, w) in s.first() {
        let (plus, len) = shifted(x, i, k * s.h);
        let (minus, _) = shifted(x, i, -k * s.h);
        let v = (f(&plus[..len]) - f(&minus[..len])).scale(w);
        acc = Some(match acc {
            Some(a) => a + v,
            None => v,
        });
    }
    acc.expect("non-empty stencil").scale(1.0 / s.h)
}

/// `∂²f/∂x_i²` at `x` by central differences.
pub fn second_partial<F>(f: &F, x: &[f64], i: usize, s: StencilSpec) -> Multivector
where
    F: Fn(&[f64]) -> Multivector + ?Sized,
{
    let center = f(x).scale(2.0);
    let mut acc: Option<Multivector> = None;
    for &(k, w) in s.second() {
        let (plus, len) = shifted(x, i, k * s.h);
        let (minus, _) = shifted(x, i, -k * s.h);
        let v = (f(&plus[..len]) + f(&minus[..len]) - center).scale(w);
        acc = Some(match acc {
            Some(a) => a + v,
            None => v,
        });
    }
    acc.expect("non-empty stencil").scale(1.0 / (s.h * s.h))
}

/// `∂^β f` for a multi-index `β` by nested central differences.
pub fn mixed_partial(f: &CliffordField, x: &[f64], beta: &[u32], s: StencilSpec) -> Multivector {
    fn go(f: &CliffordField, x: &[f64], beta: &mut Vec<u32>, s: StencilSpec) -> Multivector {
        match beta.iter().position(|&b| b > 0) {
            None => f.eval(x),
            Some(i) => {
                beta[i] -= 1;
                let inner = |y: &[f64]| go(f, y, &mut beta.clone(), s);
                let out = partial(&inner, x, i, s);
                beta[i] += 1;
                out
            }
        }
    }
    go(f, x, &mut beta.to_vec(), s)
}

/// Which generalized Cauchy–Riemann operator to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrSide {
    /// `D = ∂_0 + Σ e_j ∂_j`, coefficients multiplying from the left.
    LeftD,
    /// `D̄ = ∂_0 - Σ e_j ∂_j`.
    LeftDbar,
}

impl CrSide {
    fn sign(self) -> f64 {
        match self {
            CrSide::LeftD => 1.0,
            CrSide::LeftDbar => -1.0,
        }
    }
}

fn require(f: &CliffordField, domain: Domain) -> Result<(), FieldError> {
    if f.domain != domain {
        return Err(FieldError::WrongDomain {
            expected: match domain {
                Domain::Paravector => "paravector",
                Domain::Vector => "vector",
            },
            found: f.domain,
            label: f.label.clone(),
        });
    }
    Ok(())
}

fn generators(sig: Signature) -> Vec<Multivector> {
    (1..=sig.n())
        .map(|j| Multivector::generator(sig, j).expect("generator in range"))
        .collect()
}

/// `D f` or `D̄ f` by finite differences.
pub fn apply_cr_operator(
    f: &CliffordField,
    s: StencilSpec,
    side: CrSide,
) -> Result<CliffordField, FieldError> {
    require(f, Domain::Paravector)?;
    let g = f.clone();
    let es = generators(f.sig);
    let sign = side.sign();
    let name = match side {
        CrSide::LeftD => "D",
        CrSide::LeftDbar => "Dbar",
    };
    Ok(CliffordField::new(
        f.sig,
        Domain::Paravector,
        format!("{name}[{}]", f.label),
        move |x| {
            let eval = |y: &[f64]| g.eval(y);
            let mut acc = partial(&eval, x, 0, s);
            for (j, e) in es.iter().enumerate() {
                acc += (*e * partial(&eval, x, j + 1, s)).scale(sign);
            }
            acc
        },
    ))
}

/// `Σ e_i ∂_i f` on a vector domain by finite differences.
pub fn apply_dirac(f: &CliffordField, s: StencilSpec) -> Result<CliffordField, FieldError> {
    require(f, Domain::Vector)?;
    let g = f.clone();
    let es = generators(f.sig);
    Ok(CliffordField::new(
        f.sig,
        Domain::Vector,
        format!("Dirac[{}]", f.label),
        move |x| {
            let eval = |y: &[f64]| g.eval(y);
            let mut acc = Multivector::zero(g.sig);
            for (i, e) in es.iter().enumerate() {
                acc += *e * partial(&eval, x, i, s);
            }
            acc
        },
    ))
}

/// `Δf` by second central differences.
pub fn laplacian(f: &CliffordField, s: StencilSpec) -> CliffordField {
    let g = f.clone();
    CliffordField::new(f.sig, f.domain, format!("Lap[{}]", f.label), move |x| {
        let eval = |y: &[f64]| g.eval(y);
        let mut acc = Multivector::zero(g.sig);
        for i in 0..x.len() {
            acc += second_partial(&eval, x, i, s);
        }
        acc
    })
}

/// Exact `D P` or `D̄ P` of a polynomial on the paravector domain.
pub fn symbolic_cr_operator(p: &Polynomial, side: CrSide) -> Polynomial {
    let sig = p.signature();
    let mut out = p.partial(0);
    for (j, e) in generators(sig).iter().enumerate() {
        out = out.add(&p.partial(j + 1).left_mul(e).scale(side.sign()));
    }
    out
}

/// Exact `Σ e_i ∂_i P` on the vector domain.
pub fn symbolic_dirac(p: &Polynomial) -> Polynomial {
    let sig = p.signature();
    generators(sig)
        .iter()
        .enumerate()
        .fold(Polynomial::zero(sig, p.vars()), |acc, (i, e)| {
            acc.add(&p.partial(i).left_mul(e))
        })
}

/// `max_x |D f(x)|` over the given points.
pub fn monogenic_residual(
    f: &CliffordField,
    points: &[Vec<f64>],
    s: StencilSpec,
) -> Result<f64, FieldError> {
    let df = apply_cr_operator(f, s, CrSide::LeftD)?;
    Ok(points.iter().map(|x| df.eval(x).norm()).fold(0.0, f64::max))
}

/// `max_x |D(D̄ f) - Δf|` over the given points.
pub fn factorization_check_at(
    f: &CliffordField,
    s: StencilSpec,
    points: &[Vec<f64>],
) -> Result<f64, FieldError> {
    let dbar = apply_cr_operator(f, s, CrSide::LeftDbar)?;
    let ddbar = apply_cr_operator(&dbar, s, CrSide::LeftD)?;
    let lap = laplacian(f, s);
    Ok(points
        .iter()
        .map(|x| (ddbar.eval(x) - lap.eval(x)).norm())
        .fold(0.0, f64::max))
}

/// [`factorization_check_at`] on 32 fixed points of the ball of radius 1/2.
pub fn factorization_check(f: &CliffordField, s: StencilSpec) -> Result<f64, FieldError> {
    let points = crate::rng::ball_points(0, 0xfac7, f.dim(), 32, 0.5);
    factorization_check_at(f, s, &points)
}

/// Fueter variable `z_k = y_k - y_0 e_k`.
pub fn fueter_variable(sig: Signature, k: usize) -> Result<CliffordField, FieldError> {
    Ok(CliffordField::from_polynomial(
        Domain::Paravector,
        format!("z{k}"),
        fueter_variable_poly(sig, k)?,
    ))
}

fn fueter_variable_poly(sig: Signature, k: usize) -> Result<Polynomial, FieldError> {
    if k == 0 || k > sig.n() {
        return Err(FieldError::IndexOutOfRange { k, n: sig.n() });
    }
    let vars = sig.n() + 1;
    let e = Multivector::generator(sig, k)?;
    Ok(Polynomial::variable(sig, vars, k, Multivector::one(sig))
        .add(&Polynomial::variable(sig, vars, 0, -e)))
}

/// Multi-index `α = (α_1, …, α_n)` for Fueter polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FueterIndex(Vec<u32>);

impl FueterIndex {
    pub fn new(alpha: Vec<u32>) -> Result<Self, FieldError> {
        let degree: u32 = alpha.iter().sum();
        if degree > MAX_FUETER_DEGREE {
            return Err(FieldError::DegreeTooLarge(degree));
        }
        Ok(Self(alpha))
    }

    pub fn alpha(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Every multi-index with `n` entries and total degree `degree`.
    pub fn all_of_degree(n: usize, degree: u32) -> Vec<FueterIndex> {
        fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<FueterIndex>) {
            if cur.len() + 1 == n {
                cur.push(left);
                out.push(FueterIndex(cur.clone()));
                cur.pop();
                return;
            }
            for a in (0..=left).rev() {
                cur.push(a);
                rec(n, left - a, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, degree, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for FueterIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Symmetrized product `V_α`: the average of `z_{k_1} ⋯ z_{k_|α|}` over all
/// orderings of the multiset containing `k` exactly `α_k` times.
pub fn fueter_polynomial(sig: Signature, alpha: &FueterIndex) -> Result<CliffordField, FieldError> {
    if alpha.0.len() != sig.n() {
        return Err(FieldError::IndexLength {
            got: alpha.0.len(),
            n: sig.n(),
        });
    }
    let vars = sig.n() + 1;
    let zs: Vec<Polynomial> = (1..=sig.n())
        .map(|k| fueter_variable_poly(sig, k))
        .collect::<Result<_, _>>()?;
    let mut multiset: Vec<usize> = Vec::new();
    for (k, &a) in alpha.0.iter().enumerate() {
        multiset.extend(std::iter::repeat(k).take(a as usize));
    }
    let mut sum = Polynomial::zero(sig, vars);
    let mut count = 0usize;
    for_each_distinct_permutation(&mut multiset, &mut |order| {
        let term = order.iter().fold(
            Polynomial::constant(sig, vars, Multivector::one(sig)),
            |acc, &k| acc.mul(&zs[k]),
        );
        sum = sum.add(&term);
        count += 1;
    });
    Ok(CliffordField::from_polynomial(
        Domain::Paravector,
        format!("V{alpha}"),
        sum.scale(1.0 / count as f64),
    ))
}

/// Visits each distinct ordering of a multiset once (lexicographic order).
fn for_each_distinct_permutation(items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    items.sort_unstable();
    loop {
        visit(items);
        // next lexicographic permutation
        let Some(i) = (1..items.len()).rev().find(|&i| items[i - 1] < items[i]) else {
            return;
        };
        let j = (i..items.len())
            .rev()
            .find(|&j| items[j] > items[i - 1])
            .expect("successor exists");
        items.swap(i - 1, j);
        items[i..].reverse();
    }
}

/// Least-squares slope of `log(err)` against `log(h)`.
pub fn fitted_order(samples: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(h, e)| (h.ln(), e.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Observed order from approximations at `h`, `h/2`, `h/4` (no exact value needed).
pub fn richardson_order(a_h: &Multivector, a_h2: &Multivector, a_h4: &Multivector) -> f64 {
    ((*a_h - *a_h2).norm() / (*a_h2 - *a_h4).norm()).log2()
}

/// Tolerances used by [`weierstrass_limit_check`].
#[derive(Debug, Clone, Copy)]
pub struct WeierstrassTolerances {
    /// Monogenic residual every sequence member and the limit must meet.
    pub monogenic: f64,
    /// Allowed growth between consecutive distances (stencil noise floor).
    pub monotone_slack: f64,
}

impl Default for WeierstrassTolerances {
    fn default() -> Self {
        Self {
            monogenic: 1e-8,
            monotone_slack: 1e-8,
        }
    }
}

/// Distances gathered by [`weierstrass_limit_check`], indexed `[compact][k]`.
#[derive(Debug, Clone)]
pub struct WeierstrassOutcome {
    pub record: VerificationRecord,
    pub distances: Vec<Vec<f64>>,
    /// Sup over `1 ≤ |β| ≤ 2` of `|∂^β(f_k - f)|`.
    pub derivative_distances: Vec<Vec<f64>>,
}

/// Uniform convergence of a monogenic sequence and of its derivatives up to
/// order two, on each compact point set.
pub fn weierstrass_limit_check(
    seq: &[CliffordField],
    limit: &CliffordField,
    compacts: &[Vec<Vec<f64>>],
    s: StencilSpec,
    tol: WeierstrassTolerances,
) -> Result<WeierstrassOutcome, FieldError> {
    let mut record = VerificationRecord::new();
    let all_points: Vec<Vec<f64>> = compacts.iter().flatten().cloned().collect();

    let mut pre = 0.0f64;
    for f in seq {
        pre = pre.max(monogenic_residual(f, &all_points, s)?);
    }
    record.at_most("precondition_monogenic", pre, tol.monogenic);
    record.at_most(
        "limit_residual",
        monogenic_residual(limit, &all_points, s)?,
        tol.monogenic,
    );

    let dim = limit.dim();
    let mut betas: Vec<Vec<u32>> = Vec::new();
    for i in 0..dim {
        let mut b = vec![0; dim];
        b[i] = 1;
        betas.push(b);
        for j in i..dim {
            let mut b = vec![0; dim];
            b[i] += 1;
            b[j] += 1;
            betas.push(b);
        }
    }

    let mut distances = Vec::new();
    let mut derivative_distances = Vec::new();
    for (c, points) in compacts.iter().enumerate() {
        let mut dist = Vec::with_capacity(seq.len());
        let mut ddist = Vec::with_capacity(seq.len());
        for f in seq {
            let diff = f.sub(limit);
            dist.push(points.iter().map(|x| diff.eval(x).norm()).fold(0.0, f64::max));
            let mut worst = 0.0f64;
            for x in points {
                for b in &betas {
                    worst = worst.max(mixed_partial(&diff, x, b, s).norm());
                }
            }
            ddist.push(worst);
        }
        record.at_most(
            format!("compact{c}.distance_monotone"),
            max_increase(&dist),
            tol.monotone_slack,
        );
        record.at_most(
            format!("compact{c}.derivative_monotone"),
            max_increase(&ddist),
            tol.monotone_slack,
        );
        distances.push(dist);
        derivative_distances.push(ddist);
    }
    Ok(WeierstrassOutcome {
        record,
        distances,
        derivative_distances,
    })
}

fn max_increase(v: &[f64]) -> f64 {
    v.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize) -> Signature {
        Signature::negative(n).unwrap()
    }

    fn pts(dim: usize, count: usize) -> Vec<Vec<f64>> {
        crate::rng::ball_points(11, 3, dim, count, 0.8)
    }

    #[test]
    fn stencil_bounds() {
        assert!(StencilSpec::new(1e-7, 2).is_err());
        assert!(StencilSpec::new(0.2, 2).is_err());
        assert_eq!(StencilSpec::new(1e-3, 3), Err(FieldError::InvalidOrder(3)));
        assert!(StencilSpec::new(1e-6, 4).is_ok());
    }

    #[test]
    fn fueter_variable_values() {
        let s = sig(2);
        let z1 = fueter_variable(s, 1).unwrap();
        let v = z1.eval(&[1.0, 2.0, 0.0]);
        let expected = Multivector::from_coeffs(s, &[2.0, -1.0, 0.0, 0.0]).unwrap();
        assert_eq!(v, expected);
        assert_eq!(z1.eval(&[0.0, 0.0, 0.0]), Multivector::zero(s));
        assert!(fueter_variable(s, 3).is_err());
        assert!(fueter_variable(s, 0).is_err());
        let r = monogenic_residual(&z1, &pts(3, 100), StencilSpec::default()).unwrap();
        assert!(r <= 1e-10, "{r}");
    }

    #[test]
    fn fueter_polynomial_examples() {
        let s = sig(2);
        let zero = fueter_polynomial(s, &FueterIndex::new(vec![0, 0]).unwrap()).unwrap();
        assert_eq!(zero.eval(&[0.3, -0.2, 0.9]), Multivector::one(s));

        let z1 = fueter_variable(s, 1).unwrap();
        let z2 = fueter_variable(s, 2).unwrap();
        let v11 = fueter_polynomial(s, &FueterIndex::new(vec![1, 1]).unwrap()).unwrap();
        let v20 = fueter_polynomial(s, &FueterIndex::new(vec![2, 0]).unwrap()).unwrap();
        for x in pts(3, 20) {
            let a = z1.eval(&x);
            let b = z2.eval(&x);
            assert!((v11.eval(&x) - (a * b + b * a).scale(0.5)).norm() < 1e-15);
            assert!((v20.eval(&x) - a * a).norm() < 1e-15);
        }
        let st = StencilSpec::default();
        assert!(monogenic_residual(&v11, &pts(3, 50), st).unwrap() <= 1e-8);
        assert!(monogenic_residual(&v20, &pts(3, 50), st).unwrap() <= 1e-8);
        assert!(FueterIndex::new(vec![4, 3]).is_err());
        assert!(fueter_polynomial(s, &FueterIndex::new(vec![1, 1, 1]).unwrap()).is_err());
    }

    #[test]
    fn unsymmetrized_product_is_not_monogenic() {
        let s = sig(2);
        let z1 = fueter_variable(s, 1).unwrap();
        let z2 = fueter_variable(s, 2).unwrap();
        let p = z1.polynomial().unwrap().mul(z2.polynomial().unwrap());
        let d = symbolic_cr_operator(&p, CrSide::LeftD);
        assert!(!d.is_zero());
    }

    #[test]
    fn symbolic_monogenicity_of_fueter_basis() {
        for n in 1..=3 {
            let s = sig(n);
            for deg in 0..=4 {
                for alpha in FueterIndex::all_of_degree(n, deg) {
                    let v = fueter_polynomial(s, &alpha).unwrap();
                    let d = symbolic_cr_operator(v.polynomial().unwrap(), CrSide::LeftD);
                    assert!(d.max_coeff_norm() < 1e-13, "n={n} {alpha}");
                }
            }
        }
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(FueterIndex::all_of_degree(2, 3).len(), 4);
        assert_eq!(FueterIndex::all_of_degree(3, 2).len(), 6);
        assert_eq!(FueterIndex::all_of_degree(1, 5).len(), 1);
    }

    #[test]
    fn cr_operator_examples() {
        let s = sig(2);
        let st2 = StencilSpec::new(1e-3, 2).unwrap();
        let c = CliffordField::constant(s, Domain::Paravector, Multivector::scalar(s, 3.0));
        let dc = apply_cr_operator(&c, st2, CrSide::LeftD).unwrap();
        assert!(dc.eval(&[0.1, 0.2, 0.3]).norm() <= 1e-12);

        let y = CliffordField::paravector_identity(s);
        let dy = apply_cr_operator(&y, st2, CrSide::LeftD).unwrap();
        let v = dy.eval(&[0.4, -0.1, 0.7]);
        assert!((v - Multivector::scalar(s, 1.0 - 2.0)).norm() < 1e-12, "{v}");

        let z1 = fueter_variable(s, 1).unwrap();
        let dz = apply_cr_operator(&z1, st2, CrSide::LeftD).unwrap();
        assert!(dz.eval(&[0.4, -0.1, 0.7]).norm() < 1e-12);

        let vec_field = CliffordField::vector_identity(s);
        assert!(matches!(
            apply_cr_operator(&vec_field, st2, CrSide::LeftD),
            Err(FieldError::WrongDomain { .. })
        ));
    }

    #[test]
    fn dirac_examples() {
        let s = sig(2);
        let st = StencilSpec::default();
        let c = CliffordField::constant(s, Domain::Vector, Multivector::one(s));
        assert!(apply_dirac(&c, st).unwrap().eval(&[0.3, 0.1]).norm() < 1e-12);

        let x = CliffordField::vector_identity(s);
        let dx = apply_dirac(&x, st).unwrap().eval(&[0.3, 0.1]);
        assert!((dx - Multivector::scalar(s, -2.0)).norm() < 1e-11);

        // f = x1 e2 - x2 e1
        let e1 = Multivector::generator(s, 1).unwrap();
        let e2 = Multivector::generator(s, 2).unwrap();
        let p = Polynomial::variable(s, 2, 0, e2).add(&Polynomial::variable(s, 2, 1, -e1));
        let f = CliffordField::from_polynomial(Domain::Vector, "rot", p.clone());
        let df = apply_dirac(&f, st).unwrap().eval(&[0.5, -0.25]);
        let expected = (e1 * e2).scale(2.0);
        assert!((df - expected).norm() < 1e-11);
        // symbolic oracle on monomials
        let exact = symbolic_dirac(&p);
        assert_eq!(exact.eval(&[0.0, 0.0]), expected);

        let y = CliffordField::paravector_identity(s);
        assert!(apply_dirac(&y, st).is_err());
    }

    #[test]
    fn residual_examples() {
        let s = sig(2);
        let st = StencilSpec::default();
        let p = pts(3, 20);
        let y0 = CliffordField::new(s, Domain::Paravector, "y0", move |x| {
            Multivector::scalar(s, x[0])
        });
        let r = monogenic_residual(&y0, &p, st).unwrap();
        assert!((r - 1.0).abs() < 1e-10);
        let one = CliffordField::constant(s, Domain::Paravector, Multivector::one(s));
        assert!(monogenic_residual(&one, &p, st).unwrap() <= 1e-14);
    }

    #[test]
    fn factorization_examples() {
        let s = sig(2);
        let st = StencilSpec::default();
        let one = Multivector::one(s);
        let harmonic = Polynomial::monomial(s, 3, vec![2, 0, 0], one)
            .sub(&Polynomial::monomial(s, 3, vec![0, 2, 0], one));
        let f = CliffordField::from_polynomial(Domain::Paravector, "y0^2-y1^2", harmonic);
        assert!(factorization_check(&f, st).unwrap() <= 1e-8);
        let lap = laplacian(&f, st).eval(&[0.1, 0.2, 0.3]);
        assert!(lap.norm() < 1e-8);

        let mut r2 = Polynomial::zero(s, 3);
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 2;
            r2 = r2.add(&Polynomial::monomial(s, 3, e, one));
        }
        let f = CliffordField::from_polynomial(Domain::Paravector, "|y|^2", r2);
        let dbar = apply_cr_operator(&f, st, CrSide::LeftDbar).unwrap();
        let ddbar = apply_cr_operator(&dbar, st, CrSide::LeftD).unwrap();
        let v = ddbar.eval(&[0.2, -0.3, 0.1]);
        assert!((v - Multivector::scalar(s, 6.0)).norm() < 1e-7, "{v}");
        assert!(factorization_check(&f, st).unwrap() <= 1e-7);

        let c = CliffordField::constant(s, Domain::Paravector, one);
        assert!(factorization_check(&c, st).unwrap() <= 1e-12);
    }

    #[test]
    fn mixed_partials_on_polynomial() {
        let s = sig(1);
        let one = Multivector::one(s);
        let p = Polynomial::monomial(s, 2, vec![2, 1], one); // y0^2 y1
        let f = CliffordField::from_polynomial(Domain::Paravector, "p", p);
        let st = StencilSpec::default();
        let x = [0.3, 0.7];
        assert!((mixed_partial(&f, &x, &[1, 1], st).scalar_part() - 0.6).abs() < 1e-8);
        assert!((mixed_partial(&f, &x, &[2, 0], st).scalar_part() - 1.4).abs() < 1e-8);
        assert!((mixed_partial(&f, &x, &[0, 0], st).scalar_part() - 0.063).abs() < 1e-15);
    }

    #[test]
    fn weierstrass_examples() {
        let s = sig(2);
        let st = StencilSpec::default();
        let z1 = fueter_variable(s, 1).unwrap();
        let z2 = fueter_variable(s, 2).unwrap();
        let seq: Vec<CliffordField> = (1..=6)
            .map(|k| z1.combine(1.0, &z2, 1.0 / k as f64))
            .collect();
        let compacts = vec![pts(3, 10)];
        let out =
            weierstrass_limit_check(&seq, &z1, &compacts, st, WeierstrassTolerances::default())
                .unwrap();
        assert!(out.record.all_pass(), "{:?}", out.record);
        let d = &out.distances[0];
        for k in 1..d.len() {
            let ratio = d[0] / d[k];
            assert!((ratio - (k + 1) as f64).abs() < 1e-9);
        }

        let constant = vec![z1.clone(); 3];
        let out =
            weierstrass_limit_check(&constant, &z1, &compacts, st, WeierstrassTolerances::default())
                .unwrap();
        assert!(out.distances[0].iter().all(|&d| d == 0.0));

        let y0 = CliffordField::new(s, Domain::Paravector, "y0", move |x| {
            Multivector::scalar(s, x[0])
        });
        let out = weierstrass_limit_check(
            &[y0.clone(), y0],
            &z1,
            &compacts,
            st,
            WeierstrassTolerances::default(),
        )
        .unwrap();
        assert!(!out.record.get("precondition_monogenic").unwrap().pass);
    }

    #[test]
    fn order_estimators() {
        let samples = [(0.1, 3e-4), (0.05, 7.5e-5), (0.025, 1.875e-5)];
        assert!((fitted_order(&samples) - 2.0).abs() < 1e-12);
    }
}
