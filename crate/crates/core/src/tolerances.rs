//! Named tolerances used by the harness suites.
//!
//! Every check is named `suite.key[.detail]`; its tolerance is looked up by
//! `suite.key`. Overrides are keyed the same way and must name a registered key.

use std::collections::BTreeMap;

use thiserror::Error;

/// `(key, default, meaning)`.
pub const REGISTRY: &[(&str, f64, &str)] = &[
    ("algebra.generator_relations", 0.0, "max |e_i e_j + e_j e_i - 2 sign delta_ij|"),
    ("algebra.associativity", 1e-12, "|(ab)c - a(bc)| / (|a||b||c|)"),
    ("algebra.anti_automorphism", 1e-12, "|inv(ab) - inv(b)inv(a)| / (|a||b|)"),
    ("algebra.exp_inverse", 1e-12, "|exp(a)exp(-a) - 1| for |a| <= 2"),
    ("algebra.paravector_norm", 1e-12, "relative error of |xy|^2 = |x|^2|y|^2"),
    ("algebra.submultiplicative", 1.0, "max |ab| / (2^{n/2}|a||b|)"),
    ("fields.factorization", 1e-7, "|D(Dbar f) - Lap f| by stencils"),
    ("fields.symbolic_factorization", 1e-12, "exact D Dbar P - Lap P"),
    ("fields.fueter_monogenic", 1e-7, "stencil residual |D V_alpha|"),
    ("fields.symbolic_fueter", 1e-12, "exact D V_alpha"),
    ("fields.stencil_order", 0.2, "|measured order - nominal order|"),
    ("fields.linearity", 1e-12, "|D(af + bg) - aDf - bDg|"),
    ("fields.weierstrass.precondition_monogenic", 1e-8, "residual of sequence members"),
    ("fields.weierstrass.limit_residual", 1e-8, "residual of the limit"),
    ("fields.weierstrass", 1e-8, "slack of the monotone-decay checks"),
    ("cauchy.quadrature_area", 1e-10, "relative error of the summed sphere weights"),
    ("cauchy.quadrature_volume", 1e-10, "relative error of the summed ball weights"),
    ("cauchy.normal_sum", 1e-12, "|sum w_i nu_i|"),
    ("cauchy.divergence", 1e-10, "relative error of sum w_i <nu_i, y_i> = (n+1) V"),
    ("cauchy.theorem", 1e-8, "|sum w_i nu_i f(y_i)| over the monogenic corpus"),
    ("cauchy.stokes", 1e-6, "integral of nu y_0 against the ball volume"),
    ("cauchy.interior", 1e-6, "|cauchy_integral - f(x)| inside"),
    ("cauchy.exterior", 1e-6, "|cauchy_integral| outside"),
    ("cauchy.mean_value", 1e-6, "|ball average - f(center)|"),
    ("cauchy.mean_value_constant", 1e-14, "relative gap between the formula constant and 1/V"),
    ("cauchy.kernel_fundamental", 1e-7, "|E - Dbar F| by stencils"),
    ("cauchy.complex_reduction", 1e-10, "n = 1 against the complex Cauchy formula"),
    ("cauchy.refinement", 1e-13, "largest increase of the error under refinement"),
    ("mass.round_trip", 1e-12, "|exp(tM) exp(-tM) f - f|"),
    ("mass.commutation", 1e-12, "|[M, L_ej]| for the operators in use"),
    ("mass.noncommuting_control", 1e-12, "left multiplication by e1 must exceed this commutator"),
    ("mass.intertwining", 1e-7, "mass-equation residual after intertwining"),
    ("mass.cauchy_theorem", 1e-8, "|sum w_i nu_i exp(-y0 M) f(y_i)|"),
    ("mass.cauchy_integral", 1e-6, "interior reproduction error"),
    ("mass.exterior", 1e-6, "exterior value"),
    ("mass.mean_value", 1e-6, "mean value error"),
    ("mass.real_agreement", 1e-12, "left and right exponential factors for real lambda"),
    ("mass.direction_minus", 1e-7, "monogenic residual of exp(-y0 M) f"),
    ("mass.direction_plus", 1e-2, "monogenic residual of exp(+y0 M) f must exceed this"),
    ("moebius.involution", 1e-10, "|phi(phi(x)) - x|"),
    ("moebius.phi_zero", 1e-14, "|phi(0) - a|"),
    ("moebius.phi_a", 1e-12, "|phi(a)|"),
    ("moebius.ball", 1e-10, "max(|phi(x)| - 1, 0) inside"),
    ("moebius.sphere", 1e-10, "||phi(x)| - 1| on the sphere"),
    ("moebius.orthogonal_closure", 1e-10, "a = 0 maps compose to orthogonal maps"),
    ("moebius.compose", 1e-10, "action of products and inverses"),
    ("moebius.transitivity", 1e-10, "|phi_q(phi_p(p)) - q|"),
    ("moebius.conformality", 1e-4, "angle and stretch deviation at h = 1e-5"),
    ("moebius.conjugation_control", 1e-2, "sphere deviation of the conjugation star must exceed this"),
    ("disk.section", 1e-15, "|g_w 0 - w|"),
    ("disk.circle", 1e-14, "||g z| - 1| on the circle"),
    ("disk.wavelet_cauchy", 1e-10, "|W f(g_w) - (1 - |w|^2)^{1/2} C f(w)|"),
    ("disk.wavelet_oracle", 1e-10, "|W f(g_w) - (1 - |w|^2)^{1/2} f(w)|"),
    ("disk.taylor", 1e-12, "Taylor coefficients of 1/(2 - z)"),
    ("disk.reconstruction", 1e-8, "30-term Taylor sum against the Cauchy integral"),
    ("disk.unitarity", 1e-10, "|norm(pi(g) f) - norm(f)|"),
    ("disk.hardy_idempotent", 1e-14, "|P P f - P f|"),
    ("disk.hardy_contraction", 1e-14, "max(norm(P f) - norm(f), 0)"),
    ("disk.hardy_selfadjoint", 1e-14, "|<P f, g> - <f, P g>|"),
    ("disk.covariance", 1e-10, "1 - normalized correlation of pi(g) phi_w and phi_{g w}"),
    ("disk.rotation_vacuum", 1e-14, "max ||pi(r) 1| - 1|"),
    ("kernel.spread", 5e-2, "relative spread of K (1 - x conj(y))^2 over the grid"),
    ("kernel.hermitian", 1e-12, "|K(x, y) - conj(K(y, x))|"),
    ("kernel.oracle", 5e-2, "relative error against the truncated oracle"),
    ("kernel.grid_oracle", 1e-10, "product-rule integral against the truncated oracle"),
    ("kernel.exponent", 0.15, "|fitted Monte Carlo exponent + 1/2|"),
    ("kernel.constant_c", 5e-2, "relative error of the estimated constant"),
    ("kernel.rmax_sensitivity", 5e-2, "relative change between r_max = 0.99 and 0.999"),
    ("kernel.weight1_oracle", 1e-8, "weight-1 integral at the origin against -pi ln(1 - r^2)"),
    ("kernel.weight1_growth", 1.0, "smallest increase across the r_max sweep must exceed this"),
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ToleranceError {
    #[error("unknown tolerance key {0:?}")]
    UnknownKey(String),
    #[error("tolerance {key} = {value} must be finite and non-negative")]
    InvalidValue { key: String, value: f64 },
}

pub fn default_for(key: &str) -> Option<f64> {
    REGISTRY.iter().find(|(k, _, _)| *k == key).map(|(_, v, _)| *v)
}

/// Defaults with validated overrides.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Tolerances {
    overrides: BTreeMap<String, f64>,
}

impl Tolerances {
    pub fn new(overrides: BTreeMap<String, f64>) -> Result<Self, ToleranceError> {
        for (k, &v) in &overrides {
            if default_for(k).is_none() {
                return Err(ToleranceError::UnknownKey(k.clone()));
            }
            if !(v.is_finite() && v >= 0.0) {
                return Err(ToleranceError::InvalidValue {
                    key: k.clone(),
                    value: v,
                });
            }
        }
        Ok(Self { overrides })
    }

    /// Override or default; panics on an unregistered key, which is a bug.
    pub fn get(&self, key: &str) -> f64 {
        self.overrides
            .get(key)
            .copied()
            .or_else(|| default_for(key))
            .unwrap_or_else(|| panic!("tolerance key {key:?} is not registered"))
    }

    pub fn overrides(&self) -> &BTreeMap<String, f64> {
        &self.overrides
    }
}
