//! Exact computations for purely inseparable covers in odd characteristic:
//! function-field heights over `k(t)`, `p`-coverings `z^p = f`, formal normal
//! forms, blow-up resolution of `z^p = Σ x_i^2`, adjunction on the Picard
//! lattice, and the explicit Vojta-violating families built from them.

pub mod algebra;
pub mod covers;
pub mod desing;
pub mod error;
pub mod exec;
pub mod heights;
pub mod normalform;
pub mod picard;

pub use error::{Error, Result};
pub use exec::Exec;
