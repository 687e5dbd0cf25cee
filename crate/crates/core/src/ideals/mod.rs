//! Truncated lattices of two-sided ideals of `Z[F]` and generalized dimension subgroups.

mod dimension;
mod expr;
mod lattice;

pub use dimension::gen_dim_subgroup;
pub use expr::{parse_ideal, IdealExpr};
pub use lattice::{ideal_lattice, ideal_membership, subgroup_augmentation, IdealEnv, TruncIdealLattice, MAX_DEGREE};
