//! Bounded harmonic functions on the upper half-space.
//!
//! The crate evaluates Poisson extensions of boundary data on
//! `R^n_+ = {(x', x_n) : x_n > 0}`, computes the explicit constants that
//! control their gradients and Hölder seminorms, estimates those seminorms
//! numerically, and checks each inequality on grids of test functions.
//!
//! Layout:
//! - [`special`]: Gamma function, ball volumes, the Gautschi bounds.
//! - [`constants`]: dimensional constants `K_n`, `M_n`, `N_n(x)`, the `J_n` bundle.
//! - [`poisson`]: the half-space Poisson kernel and its derivatives.
//! - [`boundary`]: boundary data families and their certified constants.
//! - [`extension`]: Poisson extension by quadrature or closed form.
//! - [`seminorms`]: difference-quotient seminorm estimation.
//! - [`verification`]: inequality checks and reports.
//! - [`cli`]: the `harmonics` command line.

pub mod boundary;
pub mod cli;
pub mod constants;
mod error;
pub mod extension;
pub mod poisson;
pub mod quadrature;
pub mod seminorms;
pub mod special;
pub mod sphere;
pub mod verification;

pub use boundary::{BoundaryData, Family};
pub use error::{Error, Result};
pub use extension::{Evaluation, Harmonic, HarmonicFn, Provenance, QuadratureSpec};
pub use poisson::{Direction, HalfSpacePoint};
pub use seminorms::{PairDomain, PairKind, SeminormEstimate};
pub use verification::{InequalityCheck, VerificationReport};

/// Tool version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
