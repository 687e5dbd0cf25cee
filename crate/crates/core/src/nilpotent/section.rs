use crate::abelian::{AbMap, FgAbelian, IntMatrix};
use crate::error::{Error, Result};
use crate::int::Int;

use super::element::NilElement;
use super::hom::NilHom;
use super::subgroup::NilSubgroup;

/// An abelian section `S / T` presented on the canonical generators of `S`.
#[derive(Clone, Debug)]
pub struct Section {
    pub top: NilSubgroup,
    pub bottom: NilSubgroup,
    pub group: FgAbelian,
}

impl Section {
    /// Canonical generators of `S`, one per presentation generator.
    pub fn generators(&self) -> Vec<NilElement> {
        self.top.generators()
    }

    /// Coordinates of the class of `g` (which must lie in `S`).
    pub fn coordinates(&self, g: &NilElement) -> Result<Vec<Int>> {
        self.top.exponents(g).ok_or_else(|| Error::NotSubgroup("element outside the section".into()))
    }

    /// Map of sections induced by a homomorphism carrying `S` into `S'` and `T` into `T'`.
    pub fn induced_map(&self, target: &Section, hom: &NilHom) -> Result<AbMap> {
        let mut cols = Vec::new();
        for g in self.generators() {
            let img = hom.apply(&g)?;
            cols.push(target.coordinates(&img)?);
        }
        AbMap::new(self.group.clone(), target.group.clone(), IntMatrix::from_columns(target.group.n_gens(), &cols))
    }
}

/// `S / T` for `T ⊆ S` with `[S, S] ⊆ T`.
pub fn section_invariants(s: &NilSubgroup, t: &NilSubgroup) -> Result<Section> {
    let tg = t.generators();
    let sg = s.generators();
    let mut rels = Vec::new();
    for g in &tg {
        rels.push(s.exponents(g).ok_or_else(|| Error::NotSubgroup("bottom is not contained in top".into()))?);
    }
    for i in 0..sg.len() {
        for j in i + 1..sg.len() {
            for c in [sg[j].comm(&sg[i]), sg[j].comm(&sg[i].inv())] {
                if c.is_identity() {
                    continue;
                }
                if !t.contains(&c) {
                    return Err(Error::SectionNotAbelian);
                }
                rels.push(s.exponents(&c).expect("commutator of members"));
            }
        }
    }
    let group = FgAbelian::from_relation_vectors(sg.len(), &rels)?;
    Ok(Section { top: s.clone(), bottom: t.clone(), group })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::parse_word;
    use crate::nilpotent::element::NilContext;
    use crate::nilpotent::subgroup::{commutator_subgroup, meet_gamma, normal_closure};

    #[test]
    fn abelianization_of_free_group() {
        let ctx = NilContext::new(2, 2).unwrap();
        let f = NilSubgroup::whole(&ctx);
        let g2 = NilSubgroup::gamma(&ctx, 2);
        assert_eq!(section_invariants(&f, &g2).unwrap().group, FgAbelian::free(2));
        assert!(section_invariants(&f, &f).unwrap().group.is_trivial());
        assert!(matches!(section_invariants(&g2, &f), Err(Error::NotSubgroup(_))));
        let triv = NilSubgroup::trivial(&ctx);
        assert!(matches!(section_invariants(&f, &triv), Err(Error::SectionNotAbelian)));
    }

    #[test]
    fn gamma_two_modulo_gamma_two_of_r() {
        // R = <<x1^2, x2^2>>: γ2(R) = <[x1,x2]^4> and R ∩ γ2F = <[x1,x2]^2> modulo γ3.
        let ctx = NilContext::new(2, 2).unwrap();
        let rels: Vec<NilElement> =
            ["x1^2", "x2^2"].iter().map(|w| NilElement::from_word(&ctx, &parse_word(w, 2).unwrap()).unwrap()).collect();
        let r = normal_closure(&ctx, &rels).unwrap();
        let g2r = commutator_subgroup(&r, &r).unwrap();
        let sec = section_invariants(&NilSubgroup::gamma(&ctx, 2), &g2r).unwrap();
        assert_eq!(sec.group, FgAbelian::cyclic(4));
        let k = section_invariants(&meet_gamma(&r, 2).unwrap(), &g2r).unwrap();
        assert_eq!(k.group, FgAbelian::cyclic(2));
    }
}
