//! Numerical verification engine for Clifford-analytic function theories.
//!
//! - [`clifford`]: real Clifford algebras, involutions, inverses, exponentials.
//! - [`field`]: Clifford-valued fields, Cauchy–Riemann and Dirac operators.
//! - [`quadrature`] and [`cauchy`]: Cauchy kernel, sphere/ball quadrature,
//!   Cauchy theorem, integral formula and mean value property.
//! - [`mass`]: the mass equation `D f = M f` and its intertwining with `D f = 0`.
//! - [`moebius`]: Vahlen-matrix automorphisms of the unit ball.
//! - [`disk`]: `SU(1,1)` on the disk, Hardy space, wavelet transform,
//!   Taylor coefficients and the Bergman kernel from a group integral.
//! - [`harness`]: named suites producing [`harness::VerificationReport`]s.

pub mod clifford;
pub mod field;
pub mod report;
pub mod rng;
pub mod exec;
pub mod quadrature;
pub mod cauchy;
pub mod mass;
pub mod moebius;
pub mod disk;
pub mod tolerances;
pub mod harness;
