use crate::abelian::{preimage, IntMatrix};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::magnus::FreeWord;
use crate::nilpotent::{NilContext, NilElement, NilSubgroup};

use super::expr::IdealExpr;
use super::lattice::{IdealEnv, TruncIdealLattice};

/// Coordinates on `γ_k / γ_n` (weights `k..n`) that land in the ideal lattice.
///
/// With `2k >= n` every product of two elements of `γ_k` is trivial modulo
/// `𝔣^n`, so `∏ b_i^{a_i} - 1 ≡ Σ a_i (b_i - 1)` and membership is linear.
fn window_preimage(ctx: &NilContext, ideal: &TruncIdealLattice, k_low: usize) -> Result<Vec<Vec<Vec<Int>>>> {
    let hall = ctx.hall();
    let c = ctx.class();
    let dim = ideal.dim();
    let idx: Vec<usize> = (k_low..=c).flat_map(|w| hall.stratum(w)).collect();
    let cols: Vec<Vec<Int>> = idx.iter().map(|&i| ctx.basic_series(i).vector().to_vec()).collect();
    let m = IntMatrix::from_columns(dim, &cols);
    let pre = preimage(&m, ideal.lattice())?;
    let mut out = Vec::new();
    for v in pre.basis() {
        let mut coords: Vec<Vec<Int>> = (0..=c).map(|w| vec![Int::ZERO; if w == 0 { 0 } else { ctx.stratum_size(w) }]).collect();
        for (pos, &i) in idx.iter().enumerate() {
            let w = hall.weight(i);
            let k = i - hall.stratum(w).start;
            coords[w][k] = v[pos].clone();
        }
        out.push(coords);
    }
    Ok(out)
}

impl IdealEnv {
    /// `D(n, 𝔞) = F ∩ (1 + 𝔞 + 𝔣^n)` modulo `γ_n(F)`, for ideals inside `𝔣^{k_low}` with `2 k_low >= n`.
    ///
    /// The result lives in the class `n - 1` context of the environment's rank.
    pub fn dimension_subgroup(&self, e: &IdealExpr, n: usize, k_low: usize) -> Result<NilSubgroup> {
        if n < 2 {
            return Err(Error::UnsupportedWindow(format!("D({n}, ·) is all of F")));
        }
        let ctx = NilContext::new(self.rank(), n - 1)?;
        if k_low >= n {
            let ideal = self.lattice(e, n - 1)?;
            if !ideal.is_subset_of(&TruncIdealLattice::zero(self.rank(), n - 1)) {
                return Err(Error::UnsupportedWindow(format!("ideal is not inside 𝔣^{k_low}")));
            }
            return Ok(NilSubgroup::trivial(&ctx));
        }
        if k_low == 0 || 2 * k_low < n {
            return Err(Error::UnsupportedWindow(format!(
                "membership in D({n}, ·) is not linear on γ_{k_low}; need 2·{k_low} >= {n}"
            )));
        }
        let ideal = self.lattice(e, n - 1)?;
        if !ideal.within_aug_power(k_low) {
            return Err(Error::UnsupportedWindow(format!("ideal {e} is not inside 𝔣^{k_low} modulo 𝔣^{n}")));
        }
        let gens: Vec<NilElement> =
            window_preimage(&ctx, &ideal, k_low)?.iter().map(|c| NilElement::from_malcev(&ctx, c)).collect();
        crate::nilpotent::subgroup_close(&ctx, &gens)
    }
}

/// [`IdealEnv::dimension_subgroup`] with the single relator set `r`.
pub fn gen_dim_subgroup(e: &IdealExpr, relators: &[FreeWord], rank: usize, n: usize, k_low: usize) -> Result<NilSubgroup> {
    IdealEnv::new(rank).with_relators("r", relators)?.dimension_subgroup(e, n, k_low)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::parse_ideal;
    use crate::magnus::parse_word;

    #[test]
    fn dimension_subgroups_of_free_groups() {
        let none: Vec<FreeWord> = Vec::new();
        let d3 = gen_dim_subgroup(&IdealExpr::Zero, &none, 2, 3, 2).unwrap();
        assert!(d3.is_trivial());
        let d4 = gen_dim_subgroup(&IdealExpr::aug_power(3), &none, 2, 4, 3).unwrap();
        assert_eq!(d4, NilSubgroup::gamma(d4.context(), 3));
        let d4 = gen_dim_subgroup(&IdealExpr::aug_power(2), &none, 3, 4, 2).unwrap();
        assert_eq!(d4, NilSubgroup::gamma(d4.context(), 2));
    }

    #[test]
    fn windows_are_checked() {
        let rels = vec![parse_word("x1^2", 2).unwrap()];
        let fr = parse_ideal("fr").unwrap();
        assert!(matches!(gen_dim_subgroup(&fr, &rels, 2, 4, 1), Err(Error::UnsupportedWindow(_))));
        assert!(matches!(gen_dim_subgroup(&fr, &rels, 2, 4, 3), Err(Error::UnsupportedWindow(_))));
        assert!(gen_dim_subgroup(&fr, &rels, 2, 4, 2).is_ok());
    }

    #[test]
    fn d3_of_fr_for_klein_four() {
        // D(3, 𝔣𝔯) / γ₂(R)γ₃(F) ≅ L₁SP²(Z/2 ⊕ Z/2) = Z/2.
        let rels: Vec<FreeWord> = ["x1^2", "x2^2", "[x2,x1]"].iter().map(|s| parse_word(s, 2).unwrap()).collect();
        let d = gen_dim_subgroup(&parse_ideal("fr").unwrap(), &rels, 2, 3, 2).unwrap();
        let ctx = d.context().clone();
        let r: Vec<NilElement> = rels.iter().map(|w| NilElement::from_word(&ctx, w).unwrap()).collect();
        let rr = crate::nilpotent::normal_closure(&ctx, &r).unwrap();
        let g2r = crate::nilpotent::commutator_subgroup(&rr, &rr).unwrap();
        let sec = crate::nilpotent::section_invariants(&d, &g2r).unwrap();
        assert_eq!(sec.group, crate::abelian::FgAbelian::cyclic(2));
    }
}
