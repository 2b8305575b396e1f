//! Exact-arithmetic engine for scalar products and form factors of Bethe
//! vectors in GL(3)-based trigonometric integrable models.
//!
//! Everything is computed over the rationals, so identities are checked by
//! exact equality. Formulas are generic over [`exact::Field`], which lets
//! the same code run with one parameter replaced by a formal variable for
//! residues, limits and derivatives.

pub mod bethe;
pub mod error;
pub mod exact;
pub mod formfactor;
pub mod identities;
pub mod izergin;
pub mod kernel;
pub mod partitions;
pub mod sampling;
pub mod scalarprod;
pub mod suites;
pub mod unipoly;

pub use error::{Error, Result};
pub use exact::{scalar_format, scalar_parse, ExactMatrix, ExactScalar, Field, Matrix};
pub use kernel::{Kernel, KernelFamily, QContext};
pub use unipoly::{Poly, RatFun};
