//! Solutions of `D f = M f` and their function theory.

use super::cauchy::{spread, BALL_LEVEL, INTERIOR_RADIUS, POINT_CORPUS, TEST_POINTS};
use super::fields::fueter_corpus;
use super::{or_inf, Ctx, LambdaToken};
use crate::clifford::{Multivector, Paravector, Signature};
use crate::field::{CliffordField, StencilSpec};
use crate::mass::{
    cauchy_integral_mass, cauchy_theorem_mass, default_points, direction_discriminator, exp_mass,
    intertwining_residual, make_mass_solution, mean_value_mass, real_lambda_agreement, MassError,
    MassOperator,
};
use crate::quadrature::{make_ball_quadrature, make_sphere_quadrature};
use crate::report::VerificationRecord;
use crate::rng::{ball_points, shell_points};

const STREAM: u64 = 0x3a55_0001;
pub(super) const DEFAULT_DIM: usize = 2;
/// Monogenic seeds of degree at most this.
const MAX_DEGREE: u32 = 2;

fn para(sig: Signature, c: &[f64]) -> Paravector {
    Paravector::new(sig, c).expect("length matches")
}

fn tag(l: LambdaToken) -> String {
    format!("lambda_{}", l.to_string().replace('.', "p").replace('-', "m"))
}

fn mass_checks(ctx: &Ctx, rec: &mut VerificationRecord, sig: Signature, l: LambdaToken) {
    let tag = tag(l);
    let lambda = match l.to_multivector(sig) {
        Ok(v) => v,
        Err(_) => {
            ctx.at_most(rec, "mass.round_trip", &tag, f64::INFINITY);
            return;
        }
    };
    let m = MassOperator::right_mult(lambda);
    let s = StencilSpec::default();
    let n = sig.n();

    let solutions: Vec<CliffordField> = fueter_corpus(sig, MAX_DEGREE)
        .iter()
        .filter_map(|g| make_mass_solution(g, &m).ok())
        .collect();
    let probe = default_points(sig);

    let mut round_trip = 0.0f64;
    for x in &probe {
        for f in &solutions {
            let v = f.eval(x);
            let back = exp_mass(&m, x[0]).apply(&exp_mass(&m, -x[0]).apply(&v));
            round_trip = round_trip.max((back - v).norm());
        }
    }
    ctx.at_most(rec, "mass.round_trip", &tag, round_trip);
    ctx.at_most(rec, "mass.commutation", &tag, m.commutation_residual());

    let targets = [
        MassOperator::scalar(sig, 0.0),
        MassOperator::scalar(sig, 0.5),
        MassOperator::right_mult(Multivector::generator(sig, n).expect("in range")),
    ];
    let mut inter = 0.0f64;
    for f in &solutions {
        for m2 in &targets {
            inter = inter.max(or_inf(intertwining_residual(f, &m, m2, s)));
        }
    }
    ctx.at_most(rec, "mass.intertwining", &tag, inter);

    let sphere = make_sphere_quadrature(para(sig, &vec![0.0; n + 1]), 1.0, ctx.level)
        .map(|q| q.with_execution(ctx.exec));
    let Ok(q) = sphere else {
        ctx.at_most(rec, "mass.cauchy_theorem", &tag, f64::INFINITY);
        return;
    };
    let theorem = solutions.iter().map(|f| cauchy_theorem_mass(f, &q, &m)).fold(0.0, f64::max);
    ctx.at_most(rec, "mass.cauchy_theorem", &tag, theorem);

    let inside = ball_points(ctx.seed, STREAM + n as u64, n + 1, TEST_POINTS, INTERIOR_RADIUS);
    let outside = shell_points(ctx.seed, STREAM + 0x10 + n as u64, n + 1, TEST_POINTS, 1.5, 2.0);
    let (mut interior, mut exterior) = (0.0f64, 0.0f64);
    for f in &spread(&solutions, POINT_CORPUS) {
        for x in &inside {
            interior = interior.max(or_inf(
                cauchy_integral_mass(f, &q, &para(sig, x), &m).map(|v| (v.value - f.eval(x)).norm()),
            ));
        }
        for x in &outside {
            exterior = exterior.max(or_inf(
                cauchy_integral_mass(f, &q, &para(sig, x), &m).map(|v| v.value.norm()),
            ));
        }
    }
    ctx.at_most(rec, "mass.cauchy_integral", &tag, interior);
    ctx.at_most(rec, "mass.exterior", &tag, exterior);

    let center: Vec<f64> = (0..=n).map(|i| 0.1 * (i as f64 + 1.0)).collect();
    let mean = match make_ball_quadrature(para(sig, &center), 0.5, ctx.level.min(BALL_LEVEL)) {
        Ok(b) => {
            let b = b.with_execution(ctx.exec);
            solutions
                .iter()
                .map(|f| (mean_value_mass(f, &b, &m) - f.eval(&center)).norm())
                .fold(0.0, f64::max)
        }
        Err(_) => f64::INFINITY,
    };
    ctx.at_most(rec, "mass.mean_value", &tag, mean);

    if let LambdaToken::Real(_) = l {
        let mut agree = 0.0f64;
        for f in &spread(&solutions, 4) {
            for x in &inside[..4] {
                agree = agree.max(or_inf(real_lambda_agreement(f, &q, &para(sig, x), &m)));
            }
        }
        ctx.at_most(rec, "mass.real_agreement", &tag, agree);
    }

    if lambda.norm() > 0.0 {
        let (mut minus, mut plus) = (0.0f64, f64::INFINITY);
        for f in &solutions {
            match direction_discriminator(f, &m, &probe, s) {
                Ok(d) => {
                    minus = minus.max(d.minus);
                    plus = plus.min(d.plus);
                }
                Err(_) => minus = f64::INFINITY,
            }
        }
        ctx.at_most(rec, "mass.direction_minus", &tag, minus);
        ctx.at_least(rec, "mass.direction_plus", &tag, plus);
    }
}

/// Left multiplication by `e_1` anticommutes with left multiplication by
/// `e_2` and must be rejected as a mass operator.
fn noncommuting_control(ctx: &Ctx, rec: &mut VerificationRecord, sig: Signature) {
    let e1 = Multivector::generator(sig, 1).expect("in range");
    let residual = match MassOperator::general_linear(sig, e1.left_mult_matrix()) {
        Err(MassError::NonCommuting { residual, .. }) => residual,
        _ => 0.0,
    };
    ctx.at_least(rec, "mass.noncommuting_control", &format!("n{}", sig.n()), residual);
}

pub(super) fn run(ctx: &Ctx) -> VerificationRecord {
    let mut rec = VerificationRecord::new();
    let n = ctx.dim.unwrap_or(DEFAULT_DIM);
    let sig = Signature::negative(n).expect("validated dimension");
    let lambdas = match ctx.lambda {
        Some(l) => vec![l],
        None => LambdaToken::defaults(),
    };
    for l in lambdas {
        mass_checks(ctx, &mut rec, sig, l);
    }
    if n >= 2 {
        noncommuting_control(ctx, &mut rec, sig);
    }
    rec
}
