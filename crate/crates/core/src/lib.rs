//! Construction and verification of CR-flat rigid hypersurface germs
//! `Re z3 = F(z1, z1b, z2, z2b)` in C^3 that are uniformly Levi degenerate of
//! rank one and 2-nondegenerate.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: truncated four-variable power series with order tracking.
//! * [`invariants`]: `S`, `J`, `W`, the Monge-Ampere and complex Monge
//!   residuals, and the aggregated [`invariants::InvariantReport`].
//! * [`construct`]: the pipeline Liouville metric, `t`-integration,
//!   nonlinear dbar-solve for `u`, double antiderivative for `Re v`,
//!   assembly of `F`, plus the model germ `M~0`.
//! * [`xcheck`]: finite differences and Cauchy-Pompeiu disk quadrature as
//!   independent numerical oracles.
//! * [`cli`]: the command driver behind the `crflat` binary.

pub mod cli;
pub mod config;
pub mod construct;
pub mod error;
pub mod invariants;
pub mod sampling;
pub mod selftest;
pub mod series;
pub mod tolerance;
pub mod xcheck;

pub use construct::{mtilde0, RigidModelData};
pub use error::{Error, Result};
pub use invariants::{full_report, HypersurfaceGerm, InvariantReport};
pub use series::{HoloSeries, Monomial, Series, Var, C64};
pub use tolerance::Tolerances;
