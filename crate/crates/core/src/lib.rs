//! Machine-precision derivatives of holomorphic functions by a quaternionic step.
//!
//! A holomorphic `f` evaluated at `z + h·q`, with `q` a unit quaternion that
//! commutes with the complex unit, yields `f(z) + h·q·f'(z) + O(h²)`. The
//! derivative sits in its own component, so `h` can be taken tiny without
//! cancellation.

pub mod clifford;
pub mod elementary;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod matrix;

pub use clifford::{Bicomplex, Multivector, UnitQuaternion};
pub use engine::{Backend, DiffRequest, DiffResult, FunctionTag};
pub use error::{QsdError, Result};
