//! Algebraic identities of `Cl(n)` on random inputs.

use rand::Rng;

use super::{Ctx, ALGEBRA_SAMPLES};
use crate::clifford::{Multivector, Paravector, Signature, MAX_GENERATORS};
use crate::report::VerificationRecord;
use crate::rng::stream;

const STREAM: u64 = 0xa19e;

fn random_mv<R: Rng>(rng: &mut R, sig: Signature) -> Multivector {
    let c: Vec<f64> = (0..sig.blades()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Multivector::from_coeffs(sig, &c).expect("length matches")
}

fn random_paravector<R: Rng>(rng: &mut R, sig: Signature) -> Paravector {
    let c: Vec<f64> = (0..=sig.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Paravector::new(sig, &c).expect("length matches")
}

fn generator_relations(sig: Signature) -> f64 {
    let n = sig.n();
    let mut worst = 0.0f64;
    for i in 1..=n {
        for j in 1..=n {
            let ei = Multivector::generator(sig, i).expect("in range");
            let ej = Multivector::generator(sig, j).expect("in range");
            let expect = if i == j { 2.0 * sig.sign() as f64 } else { 0.0 };
            let dev = ei * ej + ej * ei - Multivector::scalar(sig, expect);
            worst = worst.max(dev.norm());
        }
    }
    worst
}

pub(super) fn run(ctx: &Ctx) -> VerificationRecord {
    let mut rec = VerificationRecord::new();
    let dims: Vec<usize> = match ctx.dim {
        Some(n) => vec![n],
        None => (1..=MAX_GENERATORS).collect(),
    };
    for n in dims {
        for sign in [-1, 1] {
            let sig = Signature::new(n, sign).expect("validated dimension");
            let tag = format!("n{n}{}", if sign < 0 { "neg" } else { "pos" });
            let mut rng = stream(ctx.seed, STREAM + (n as u64) * 2 + (sign > 0) as u64);

            ctx.at_most(&mut rec, "algebra.generator_relations", &tag, generator_relations(sig));

            let (mut assoc, mut anti, mut expinv, mut submult, mut para) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
            let bound = 2f64.powf(n as f64 / 2.0);
            for _ in 0..ALGEBRA_SAMPLES {
                let (a, b, c) = (random_mv(&mut rng, sig), random_mv(&mut rng, sig), random_mv(&mut rng, sig));
                let (na, nb, nc) = (a.norm(), b.norm(), c.norm());
                assoc = assoc.max(((a * b) * c - a * (b * c)).norm() / (na * nb * nc));
                let ab = a * b;
                let rev = (ab.reverse() - b.reverse() * a.reverse()).norm();
                let conj = (ab.conjugate() - b.conjugate() * a.conjugate()).norm();
                anti = anti.max(rev.max(conj) / (na * nb));
                submult = submult.max(ab.norm() / (bound * na * nb));

                let radius: f64 = rng.gen_range(0.0..=2.0);
                let x = a.scale(radius / na);
                let one = Multivector::one(sig);
                expinv = expinv.max((x.exp() * (-x).exp() - one).norm());

                if sign < 0 {
                    let (p, q) = (random_paravector(&mut rng, sig), random_paravector(&mut rng, sig));
                    let lhs = (p.to_multivector() * q.to_multivector()).norm_sq();
                    let rhs = p.norm_sq() * q.norm_sq();
                    para = para.max((lhs - rhs).abs() / rhs);
                }
            }
            ctx.at_most(&mut rec, "algebra.associativity", &tag, assoc);
            ctx.at_most(&mut rec, "algebra.anti_automorphism", &tag, anti);
            ctx.at_most(&mut rec, "algebra.exp_inverse", &tag, expinv);
            ctx.at_most(&mut rec, "algebra.submultiplicative", &tag, submult);
            if sign < 0 {
                ctx.at_most(&mut rec, "algebra.paravector_norm", &tag, para);
            }
        }
    }
    rec
}
