//! Exact computations around dimension subgroups of free presentations.

pub mod abelian;
pub mod error;
pub mod functors;
pub mod ideals;
pub mod int;
pub mod magnus;
pub mod nilpotent;
pub mod verify;

pub use error::{Error, Result};
pub use int::Int;
