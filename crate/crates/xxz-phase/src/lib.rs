//! Particle–hole scattering and finite-size interaction energies in the
//! gapless XXZ chain, with a Bethe-equation solver and an exact
//! diagonalization oracle to check them against.

pub mod bethe_finite;
pub mod cli;
pub mod dispersion;
pub mod ed_oracle;
pub mod edge_analysis;
pub mod error;
pub mod interaction;
pub mod model_kernels;
pub mod par;
pub mod quad;
pub mod scattering;

pub use error::{Error, Result};
pub use model_kernels::{ModelParams, QuadratureSpec};
pub use par::Exec;
