//! Certified bounds for covolumes of arithmetic hyperbolic reflection groups.

pub mod bounds;
pub mod error;
pub mod fielddata;
pub mod forms;
pub mod lfunc;
pub mod numerics;
pub mod sieve;
pub mod spectral;

pub use error::{Error, Result};
pub use numerics::{BoundedReal, DeltaMode, EvalContext};
