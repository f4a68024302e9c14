//! Spectral solver for a particle on a circle in the purely imaginary step
//! potential `iZ sign(x)`, `x ∈ (-1, 1)` with periodic boundary conditions.
//!
//! * [`secular`]: closed-form quantization functions and the `(t, s)` algebra.
//! * [`spectrum`]: real eigenvalues at fixed coupling by bracketing.
//! * [`series`]: small-coupling expansion of the two level families.
//! * [`transition`]: exceptional points (folds) and the complex branches
//!   beyond them.
//! * [`oracle`]: first-principles check through the 4x4 matching matrix.
//! * [`table1`], [`verify`]: reference data and the self-check suite used by
//!   the command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` deliberately rejects NaN

pub mod error;
pub mod oracle;
pub mod roots;
pub mod secular;
pub mod series;
pub mod spectrum;
pub mod table1;
pub mod transition;
pub mod verify;

pub use error::{Error, Result};
pub use secular::{Coupling, ExactParams, SecularBranch, SpectralPoint};
