//! The geometric algebra G(R³): blade products, grades, reversion, and the
//! commutative bicomplex subalgebra span{1, i, q, iq} used for stepping.

mod bicomplex;
pub mod cayley;
mod direction;
mod multivector;

pub use bicomplex::{embed, to_bicomplex, Bicomplex, DEFAULT_SUBALGEBRA_TOL};
pub use direction::UnitQuaternion;
pub use multivector::Multivector;
