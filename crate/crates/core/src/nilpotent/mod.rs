//! Free nilpotent quotients `F / γ_{c+1}(F)` in truncated Magnus coordinates.

mod element;
mod hom;
mod section;
mod subgroup;

pub use element::{nil_embed, Context, NilContext, NilElement};
pub use hom::{induced_hom, induced_hom_exprs, NilHom};
pub use section::{section_invariants, Section};
pub use subgroup::{commutator_subgroup, meet_gamma, normal_closure, subgroup_close, NilSubgroup, Sift};
