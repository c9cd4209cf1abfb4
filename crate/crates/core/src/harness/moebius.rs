//! Ball automorphisms for `n ∈ {2, 3, 4}`.

use super::{Ctx, MOEBIUS_SAMPLES};
use crate::moebius::{verify_ball_theorem_with, MoebiusTolerances};
use crate::report::VerificationRecord;

pub(super) fn tolerances(ctx: &Ctx) -> MoebiusTolerances {
    MoebiusTolerances {
        involution: ctx.tol("moebius.involution"),
        phi_zero: ctx.tol("moebius.phi_zero"),
        phi_a: ctx.tol("moebius.phi_a"),
        ball: ctx.tol("moebius.ball"),
        sphere: ctx.tol("moebius.sphere"),
        orthogonal: ctx.tol("moebius.orthogonal_closure"),
        transitivity: ctx.tol("moebius.transitivity"),
        compose: ctx.tol("moebius.compose"),
        conformality: ctx.tol("moebius.conformality"),
        control_min: ctx.tol("moebius.conjugation_control"),
    }
}

pub(super) fn run(ctx: &Ctx) -> VerificationRecord {
    let mut rec = VerificationRecord::new();
    let dims: Vec<usize> = match ctx.dim {
        Some(n) => vec![n],
        None => vec![2, 3, 4],
    };
    let tol = tolerances(ctx);
    for n in dims {
        match verify_ball_theorem_with(n, MOEBIUS_SAMPLES, ctx.seed, &tol) {
            Ok(r) => {
                for mut c in r.checks {
                    c.name = format!("moebius.{}.n{n}", c.name);
                    rec.push(c);
                }
            }
            Err(_) => rec.at_most(format!("moebius.involution.n{n}"), f64::INFINITY, tol.involution),
        }
    }
    rec
}
