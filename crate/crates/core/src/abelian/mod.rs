//! Finitely generated abelian groups and homomorphisms, computed exactly.

mod group;
mod lattice;
mod map;
mod matrix;
mod smith;

pub use group::{ab_tensor, ab_tor, format_invariants, parse_invariants, FgAbelian, Minimized};
pub use lattice::{kernel, preimage, Lattice, SpanSolver};
pub(crate) use lattice::Echelon;
pub use map::{homology, map_kernel_cokernel, AbComplex, AbMap, KernelCokernel, Subquotient};
pub use matrix::IntMatrix;
pub use smith::{invariant_factors, smith_diagonal, smith_normal_form, Smith};
