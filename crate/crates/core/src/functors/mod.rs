//! Quadratic functors on finitely generated abelian groups and their first derived functors.
//!
//! `L_1SP²` is available along three independent routes: the simplicial
//! construction ([`derived_l1`]), the invariant-factor formula ([`l1sp2_closed`])
//! and the Koszul-type sequence of a presentation ([`koszul_lsp2`]).
mod derived;
mod koszul;
mod quad;
mod sequences;

pub use derived::{derived_l1, derived_l1_map, l1sp2_closed, DerivedPath, DerivedResult, DoldKan};
pub use koszul::{koszul_derived, koszul_lsp2, KoszulResult, KoszulWitness};
pub use quad::{quad_apply, quad_apply_map, QuadTag};
pub use sequences::natural_sequences_check;

use crate::abelian::FgAbelian;
use crate::error::Result;

/// Evaluates `tensor2`, `sp2`, `lambda2`, `tilde2`, or `l1` followed by one of them, on `a`.
pub fn apply_named(name: &str, a: &FgAbelian) -> Result<FgAbelian> {
    let lower = name.trim().to_ascii_lowercase();
    match lower.strip_prefix("l1") {
        Some(rest) => Ok(derived_l1(rest.parse()?, a)?.value),
        None => Ok(quad_apply(lower.parse()?, a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_functors() {
        let a = FgAbelian::from_invariants(&[2, 4]);
        assert_eq!(apply_named("l1sp2", &a).unwrap(), FgAbelian::cyclic(2));
        assert_eq!(apply_named("L1SP2", &FgAbelian::cyclic(12)).unwrap(), FgAbelian::trivial());
        assert_eq!(apply_named("lambda2", &a).unwrap(), FgAbelian::cyclic(2));
        assert!(apply_named("l1frob", &a).is_err());
    }
}
