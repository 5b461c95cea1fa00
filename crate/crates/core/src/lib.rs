//! Explicit trace-formula certificates for small Laplace eigenvalues of cusped
//! hyperbolic surfaces.

pub mod certify;
pub mod error;
pub mod fuchsian;
pub mod hypgeom;
pub mod pgt;
pub mod special;
pub mod testfn;
pub mod trace;

pub use error::{Error, Result};
