//! Belief functions built from credal knowledge and statistical evidence.

pub mod binary;
pub mod error;
pub mod frames;
pub mod geometry;
pub mod knowledge;
pub mod lp;
pub mod mc;
pub mod pignistic;
pub mod quadrature;
pub mod report;
pub mod scenario;
pub mod ternary;
pub mod validate;

pub use error::{Error, Result};
pub use frames::{Frame, MassFunction, SetFunction, SetFunctionKind, SubsetMask};
