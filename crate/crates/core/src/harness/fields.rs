//! Cauchy–Riemann factorization, Fueter polynomials, stencil orders and
//! locally uniform limits.

use rand::Rng;

use super::Ctx;
use crate::clifford::{Multivector, Signature};
use crate::field::{
    apply_cr_operator, factorization_check_at, fitted_order, fueter_polynomial, fueter_variable,
    monogenic_residual, richardson_order, symbolic_cr_operator, weierstrass_limit_check,
    CliffordField, CrSide, Domain, FueterIndex, Polynomial, StencilSpec, WeierstrassTolerances,
};
use crate::report::{Check, VerificationRecord};
use crate::rng::{ball_points, stream};

const STREAM: u64 = 0xf1e1d;
const MAX_DEGREE: u32 = 4;
const RANDOM_POLYNOMIALS: usize = 6;
const TERMS: usize = 8;

/// Every Fueter polynomial of degree `1..=max_degree`.
pub(super) fn fueter_corpus(sig: Signature, max_degree: u32) -> Vec<CliffordField> {
    (1..=max_degree)
        .flat_map(|d| FueterIndex::all_of_degree(sig.n(), d))
        .map(|a| fueter_polynomial(sig, &a).expect("degree and length in range"))
        .collect()
}

fn random_polynomial<R: Rng>(rng: &mut R, sig: Signature) -> Polynomial {
    let vars = sig.n() + 1;
    let mut p = Polynomial::zero(sig, vars);
    for _ in 0..TERMS {
        let degree = rng.gen_range(0..=MAX_DEGREE);
        let mut exps = vec![0u32; vars];
        for _ in 0..degree {
            exps[rng.gen_range(0..vars)] += 1;
        }
        let c: Vec<f64> = (0..sig.blades()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let c = Multivector::from_coeffs(sig, &c).expect("length matches");
        p = p.add(&Polynomial::monomial(sig, vars, exps, c));
    }
    p
}

/// Random polynomials of degree at most four plus `y_0² - y_1²` and `|y|²`.
fn polynomial_corpus(sig: Signature, seed: u64) -> Vec<Polynomial> {
    let vars = sig.n() + 1;
    let mut rng = stream(seed, STREAM + sig.n() as u64);
    let mut out: Vec<Polynomial> = (0..RANDOM_POLYNOMIALS).map(|_| random_polynomial(&mut rng, sig)).collect();
    let one = Multivector::one(sig);
    let sq = |i: usize| {
        let mut e = vec![0; vars];
        e[i] = 2;
        Polynomial::monomial(sig, vars, e, one)
    };
    out.push(sq(0).sub(&sq(1)));
    out.push((0..vars).fold(Polynomial::zero(sig, vars), |acc, i| acc.add(&sq(i))));
    out
}

fn factorization(ctx: &Ctx, rec: &mut VerificationRecord, sig: Signature, tag: &str) {
    let points = ball_points(ctx.seed, STREAM + 0x10 + sig.n() as u64, sig.n() + 1, 16, 0.5);
    let corpus = polynomial_corpus(sig, ctx.seed);
    let (mut stencil, mut symbolic) = (0.0f64, 0.0f64);
    for p in &corpus {
        let f = CliffordField::from_polynomial(Domain::Paravector, "p", p.clone());
        stencil = stencil.max(
            factorization_check_at(&f, StencilSpec::default(), &points).unwrap_or(f64::INFINITY),
        );
        let ddbar = symbolic_cr_operator(&symbolic_cr_operator(p, CrSide::LeftDbar), CrSide::LeftD);
        symbolic = symbolic.max(ddbar.sub(&p.laplacian()).max_coeff_norm());
    }
    ctx.at_most(rec, "fields.factorization", tag, stencil);
    ctx.at_most(rec, "fields.symbolic_factorization", tag, symbolic);

    let (a, b) = (0.7, -1.3);
    let mut linearity = 0.0f64;
    for pair in corpus.windows(2) {
        let d = |p: &Polynomial| symbolic_cr_operator(p, CrSide::LeftD);
        let lhs = d(&pair[0].scale(a).add(&pair[1].scale(b)));
        let rhs = d(&pair[0]).scale(a).add(&d(&pair[1]).scale(b));
        linearity = linearity.max(lhs.sub(&rhs).max_coeff_norm());
    }
    ctx.at_most(rec, "fields.linearity", tag, linearity);
}

fn fueter(ctx: &Ctx, rec: &mut VerificationRecord, sig: Signature, tag: &str) {
    let points = ball_points(ctx.seed, STREAM + 0x20 + sig.n() as u64, sig.n() + 1, 16, 0.8);
    let (mut stencil, mut symbolic) = (0.0f64, 0.0f64);
    for f in fueter_corpus(sig, MAX_DEGREE) {
        stencil = stencil.max(monogenic_residual(&f, &points, StencilSpec::default()).unwrap_or(f64::INFINITY));
        let p = f.polynomial().expect("Fueter polynomials are polynomial");
        symbolic = symbolic.max(symbolic_cr_operator(p, CrSide::LeftD).max_coeff_norm());
    }
    ctx.at_most(rec, "fields.fueter_monogenic", tag, stencil);
    ctx.at_most(rec, "fields.symbolic_fueter", tag, symbolic);
}

/// Observed orders of the order-2 and order-4 stencils on `exp(a·y) c`,
/// by Richardson extrapolation and by a fit against the exact derivative.
fn stencil_order(ctx: &Ctx, rec: &mut VerificationRecord, sig: Signature, tag: &str) {
    let dim = sig.n() + 1;
    let a: Vec<f64> = (0..dim).map(|i| 0.9 - 0.35 * i as f64).collect();
    let c = Multivector::from_coeffs(
        sig,
        &(0..sig.blades()).map(|i| 1.0 / (1.0 + i as f64)).collect::<Vec<_>>(),
    )
    .expect("length matches");
    let a2 = a.clone();
    let f = CliffordField::new(sig, Domain::Paravector, "exp(a.y)c", move |y| {
        c.scale(a2.iter().zip(y).map(|(p, q)| p * q).sum::<f64>().exp())
    });
    let x: Vec<f64> = (0..dim).map(|i| 0.1 * (i as f64 + 1.0) * if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let mut slope = Multivector::scalar(sig, a[0]);
    for (j, aj) in a.iter().enumerate().skip(1) {
        slope += Multivector::generator(sig, j).expect("in range").scale(*aj);
    }
    let exact = slope * f.eval(&x);

    for (order, h0) in [(2u8, 0.04), (4u8, 0.08)] {
        let approx = |h: f64| -> Option<Multivector> {
            let s = StencilSpec::new(h, order).ok()?;
            Some(apply_cr_operator(&f, s, CrSide::LeftD).ok()?.eval(&x))
        };
        let hs: Vec<f64> = (0..4).map(|k| h0 / 2f64.powi(k)).collect();
        let values: Option<Vec<Multivector>> = hs.iter().map(|&h| approx(h)).collect();
        let (rich, fit) = match values {
            Some(v) => {
                let samples: Vec<(f64, f64)> =
                    hs.iter().zip(&v).map(|(&h, a)| (h, (*a - exact).norm())).collect();
                (richardson_order(&v[0], &v[1], &v[2]), fitted_order(&samples))
            }
            None => (f64::INFINITY, f64::INFINITY),
        };
        let nominal = order as f64;
        let key = "fields.stencil_order";
        ctx.at_most(rec, key, &format!("{tag}.o{order}.richardson"), (rich - nominal).abs());
        ctx.at_most(rec, key, &format!("{tag}.o{order}.fit"), (fit - nominal).abs());
    }
}

/// `V_limit + z_n / k → V_limit` on two nested compacts.
fn weierstrass(ctx: &Ctx, rec: &mut VerificationRecord, sig: Signature, tag: &str) {
    let n = sig.n();
    let mut alpha = vec![0u32; n];
    alpha[0] = 1;
    alpha[n - 1] += 1;
    let limit = fueter_polynomial(sig, &FueterIndex::new(alpha).expect("valid index"))
        .expect("valid index");
    let zn = fueter_variable(sig, n).expect("in range");
    let seq: Vec<CliffordField> = (1..=6).map(|k| limit.combine(1.0, &zn, 1.0 / k as f64)).collect();
    let compacts = vec![
        ball_points(ctx.seed, STREAM + 0x30 + n as u64, n + 1, 10, 0.3),
        ball_points(ctx.seed, STREAM + 0x40 + n as u64, n + 1, 10, 0.6),
    ];
    let tol = WeierstrassTolerances {
        monogenic: ctx.tol("fields.weierstrass.precondition_monogenic"),
        monotone_slack: ctx.tol("fields.weierstrass"),
    };
    match weierstrass_limit_check(&seq, &limit, &compacts, StencilSpec::default(), tol) {
        Ok(out) => {
            for c in out.record.checks {
                let key = match c.name.as_str() {
                    "precondition_monogenic" => "fields.weierstrass.precondition_monogenic",
                    "limit_residual" => "fields.weierstrass.limit_residual",
                    _ => "fields.weierstrass",
                };
                rec.push(Check::at_most(
                    format!("fields.weierstrass.{}.{tag}", c.name),
                    c.value,
                    ctx.tol(key),
                ));
            }
        }
        Err(_) => ctx.at_most(rec, "fields.weierstrass.limit_residual", tag, f64::INFINITY),
    }
}

pub(super) fn run(ctx: &Ctx) -> VerificationRecord {
    let mut rec = VerificationRecord::new();
    let dims: Vec<usize> = match ctx.dim {
        Some(n) => vec![n],
        None => vec![1, 2, 3],
    };
    for n in dims {
        let sig = Signature::negative(n).expect("validated dimension");
        let tag = format!("n{n}");
        factorization(ctx, &mut rec, sig, &tag);
        fueter(ctx, &mut rec, sig, &tag);
        stencil_order(ctx, &mut rec, sig, &tag);
        weierstrass(ctx, &mut rec, sig, &tag);
    }
    rec
}
