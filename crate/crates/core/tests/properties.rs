use std::collections::BTreeMap;

use hfx_core::clifford::{CliffordGroupElement, Multivector, Paravector, Signature};
use hfx_core::cauchy::cauchy_kernel;
use hfx_core::disk::{hardy_project, mobius_disk, CircleGrid, SU11Element};
use hfx_core::exec::{sum_reals, Execution};
use hfx_core::field::{apply_cr_operator, CliffordField, CrSide, Domain, StencilSpec};
use hfx_core::mass::{exp_mass, MassOperator};
use hfx_core::moebius::{make_moebius, BallPoint};
use hfx_core::report::{Check, VerificationRecord};
use hfx_core::tolerances::{Tolerances, REGISTRY};
use num_complex::Complex64;
use proptest::prelude::*;

fn coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, 16)
}

fn sig_strategy() -> impl Strategy<Value = Signature> {
    (1usize..=4, prop::bool::ANY)
        .prop_map(|(n, neg)| Signature::new(n, if neg { -1 } else { 1 }).unwrap())
}

fn mv(sig: Signature, c: &[f64]) -> Multivector {
    Multivector::from_coeffs(sig, &c[..sig.blades()]).unwrap()
}

/// Point with norm `r · radius`, `r ∈ [0, 1)`.
fn ball_point(dir: &[f64], r: f64, radius: f64) -> Vec<f64> {
    let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
    dir.iter().map(|x| x / norm * r * radius).collect()
}

proptest! {
    #[test]
    fn product_is_associative(sig in sig_strategy(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (mv(sig, &a), mv(sig, &b), mv(sig, &c));
        let scale = a.norm() * b.norm() * c.norm() + 1e-300;
        prop_assert!(((a * b) * c - a * (b * c)).norm() <= 1e-12 * scale);
    }

    #[test]
    fn reversion_and_conjugation_are_anti_automorphisms(sig in sig_strategy(), a in coeffs(), b in coeffs()) {
        let (a, b) = (mv(sig, &a), mv(sig, &b));
        let scale = a.norm() * b.norm() + 1e-300;
        prop_assert!(((a * b).reverse() - b.reverse() * a.reverse()).norm() <= 1e-12 * scale);
        prop_assert!(((a * b).conjugate() - b.conjugate() * a.conjugate()).norm() <= 1e-12 * scale);
        prop_assert!(((a * b).grade_involution() - a.grade_involution() * b.grade_involution()).norm() <= 1e-12 * scale);
    }

    #[test]
    fn involutions_square_to_identity(sig in sig_strategy(), a in coeffs()) {
        let a = mv(sig, &a);
        prop_assert_eq!(a.reverse().reverse(), a);
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn exp_of_negative_is_inverse(sig in sig_strategy(), a in coeffs(), r in 0.0..2.0f64) {
        let a = mv(sig, &a);
        prop_assume!(a.norm() > 1e-6);
        let x = a.scale(r / a.norm());
        prop_assert!((x.exp() * (-x).exp() - Multivector::one(sig)).norm() <= 1e-12);
    }

    #[test]
    fn paravector_norm_is_multiplicative(n in 1usize..=4, x in coeffs(), y in coeffs()) {
        let sig = Signature::negative(n).unwrap();
        let p = Paravector::new(sig, &x[..=n]).unwrap();
        let q = Paravector::new(sig, &y[..=n]).unwrap();
        let lhs = (p.to_multivector() * q.to_multivector()).norm_sq();
        let rhs = p.norm_sq() * q.norm_sq();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-300));
    }

    #[test]
    fn sequential_and_parallel_sums_agree(values in prop::collection::vec(-1e3..1e3f64, 0..5000)) {
        let s = sum_reals(Execution::Sequential, values.len(), |i| values[i]);
        let p = sum_reals(Execution::Parallel, values.len(), |i| values[i]);
        prop_assert_eq!(s.to_bits(), p.to_bits());
    }

    #[test]
    fn mass_exponential_round_trip(n in 1usize..=3, l in coeffs(), v in coeffs(), t in -1.0..1.0f64) {
        let sig = Signature::negative(n).unwrap();
        let m = MassOperator::right_mult(mv(sig, &l));
        let v = mv(sig, &v);
        let back = exp_mass(&m, t).apply(&exp_mass(&m, -t).apply(&v));
        prop_assert!((back - v).norm() <= 1e-12 * v.norm().max(1.0));
    }

    #[test]
    fn right_multiplication_commutes_with_generators(n in 1usize..=4, l in coeffs(), v in coeffs()) {
        let sig = Signature::negative(n).unwrap();
        let m = MassOperator::right_mult(mv(sig, &l));
        let v = mv(sig, &v);
        for k in 1..=n {
            let e = Multivector::generator(sig, k).unwrap();
            prop_assert!((m.apply(&(e * v)) - e * m.apply(&v)).norm() <= 1e-12);
        }
    }

    #[test]
    fn hardy_projection_is_idempotent_contraction(
        re in prop::collection::vec(-1.0..1.0f64, 64),
        im in prop::collection::vec(-1.0..1.0f64, 64),
    ) {
        let f = CircleGrid::new(re.iter().zip(&im).map(|(&a, &b)| Complex64::new(a, b)).collect()).unwrap();
        let p = hardy_project(&f).into_grid();
        let pp = hardy_project(&p).into_grid();
        prop_assert!(pp.sub(&p).norm() <= 1e-14);
        prop_assert!(p.norm() <= f.norm() + 1e-14);
    }

    #[test]
    fn su11_maps_preserve_the_circle(wr in 0.0..0.95f64, wt in 0.0..6.3f64, th in 0.0..6.3f64, z in 0.0..6.3f64) {
        let g = SU11Element::section(Complex64::from_polar(wr, wt)).unwrap()
            .compose(&SU11Element::rotation(th));
        prop_assert!((g.determinant() - 1.0).abs() <= 1e-12);
        let y = mobius_disk(&g, Complex64::from_polar(1.0, z)).unwrap();
        prop_assert!((y.norm() - 1.0).abs() <= 1e-13);
        let back = mobius_disk(&g.inverse(), y).unwrap();
        prop_assert!((back - Complex64::from_polar(1.0, z)).norm() <= 1e-12);
    }

    #[test]
    fn check_pass_matches_relation(value in -1e3..1e3f64, tol in 0.0..1e3f64) {
        prop_assert_eq!(Check::at_most("x", value, tol).pass, value <= tol);
        prop_assert_eq!(Check::at_least("x", value, tol).pass, value >= tol);
    }

    #[test]
    fn registered_tolerances_accept_overrides(i in 0..REGISTRY.len(), v in 0.0..1.0f64) {
        let key = REGISTRY[i].0.to_string();
        let t = Tolerances::new(BTreeMap::from([(key.clone(), v)])).unwrap();
        prop_assert_eq!(t.get(&key), v);
        prop_assert!(Tolerances::new(BTreeMap::from([(key, -v - 1e-3)])).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moebius_involution_and_normalization(
        n in 2usize..=4,
        da in prop::collection::vec(-1.0..1.0f64, 4),
        dx in prop::collection::vec(-1.0..1.0f64, 4),
        ra in 0.0..1.0f64,
        rx in 0.0..1.0f64,
    ) {
        let a = BallPoint::new(&ball_point(&da[..n], ra, 0.9)).unwrap();
        let x = BallPoint::new(&ball_point(&dx[..n], rx, 0.99)).unwrap().value();
        let sig = Signature::positive(n).unwrap();
        let m = make_moebius(&a, &CliffordGroupElement::one(sig)).unwrap();
        let twice = m.apply(&m.apply(&x).unwrap()).unwrap();
        prop_assert!((twice - x).norm() <= 1e-10);
        prop_assert!((m.apply(&Multivector::zero(sig)).unwrap() - a.value()).norm() <= 1e-14);
        prop_assert!(m.apply(&a.value()).unwrap().norm() <= 1e-12);
        prop_assert!(m.apply(&x).unwrap().norm() < 1.0 + 1e-12);
    }

    #[test]
    fn cr_operator_is_linear(
        n in 1usize..=3,
        ca in coeffs(),
        cb in coeffs(),
        x in prop::collection::vec(-0.5..0.5f64, 4),
        s in -2.0..2.0f64,
        t in -2.0..2.0f64,
    ) {
        let sig = Signature::negative(n).unwrap();
        let (a, b) = (mv(sig, &ca), mv(sig, &cb));
        let f = CliffordField::new(sig, Domain::Paravector, "f", move |y| a.scale((y[0] + 2.0 * y[1]).sin()));
        let g = CliffordField::new(sig, Domain::Paravector, "g", move |y| b.scale(y.iter().sum::<f64>().exp()));
        let st = StencilSpec::default();
        let x = &x[..=n];
        let d = |h: &CliffordField| apply_cr_operator(h, st, CrSide::LeftD).unwrap().eval(x);
        let lhs = d(&f.combine(s, &g, t));
        let rhs = d(&f).scale(s) + d(&g).scale(t);
        prop_assert!((lhs - rhs).norm() <= 1e-9);
    }

    #[test]
    fn cauchy_kernel_is_monogenic_off_the_origin(
        n in 1usize..=3,
        dir in prop::collection::vec(-1.0..1.0f64, 4),
        r in 0.0..1.0f64,
    ) {
        let sig = Signature::negative(n).unwrap();
        let x = ball_point(&dir[..=n], 1.0, 0.5 + 1.5 * r);
        let e = CliffordField::new(sig, Domain::Paravector, "E", move |y| {
            cauchy_kernel(&Paravector::new(sig, y).unwrap()).unwrap()
        });
        let de = apply_cr_operator(&e, StencilSpec::default(), CrSide::LeftD).unwrap().eval(&x);
        prop_assert!(de.norm() <= 1e-7);
    }

    #[test]
    fn report_json_round_trips(
        values in prop::collection::vec((-1e6..1e6f64, 0.0..1e6f64), 0..20),
        special in prop::sample::select(vec![f64::INFINITY, f64::NEG_INFINITY, f64::NAN, 0.0]),
    ) {
        let mut rec = VerificationRecord::new();
        for (i, (v, t)) in values.iter().enumerate() {
            rec.at_most(format!("c{i}"), *v, *t);
        }
        rec.at_most("special", special, 1.0);
        let text = serde_json::to_string(&rec.checks).unwrap();
        let back: Vec<Check> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.len(), rec.checks.len());
        for (a, b) in back.iter().zip(&rec.checks) {
            prop_assert_eq!(&a.name, &b.name);
            prop_assert_eq!(a.pass, b.pass);
            if b.value.is_finite() {
                prop_assert_eq!(a.value, b.value);
            } else {
                prop_assert!(a.value.is_nan());
            }
        }
    }
}
