use crate::abelian::{smith_normal_form, AbComplex, AbMap, FgAbelian, IntMatrix, Lattice};
use crate::error::{Error, Result};
use crate::int::Int;

use super::derived::{DerivedPath, DerivedResult};
use super::quad::{Functor, Natural, QuadTag};

/// A Tor element `(x, y)` with `m x, m y ∈ J`, and its image `m x ∧ y` in `Λ²(I)/Λ²(J)`.
#[derive(Clone, Debug)]
pub struct KoszulWitness {
    pub x: Vec<Int>,
    pub y: Vec<Int>,
    pub m: Int,
    pub image: Vec<Int>,
}

/// The four-term sequence
/// `0 -> L_1SP²(I/J) -> Λ²(I)/Λ²(J) -> I ⊗ I/J -> SP²(I/J) -> 0`
/// for a free `I` and a sublattice `J`.
#[derive(Clone, Debug)]
pub struct KoszulResult {
    /// `0 -> l1 -> Λ²(I)/Λ²(J) -> I ⊗ I/J -> SP²(I/J) -> 0`.
    pub complex: AbComplex,
    pub l1: FgAbelian,
    pub sp2_of_quotient: FgAbelian,
    pub exact: bool,
    pub witnesses: Vec<KoszulWitness>,
    /// Whether the witnesses generate `l1`.
    pub witnesses_generate: bool,
}

fn scaled(v: &[Int], s: &Int) -> Vec<Int> {
    v.iter().map(|x| x * s).collect()
}

fn tensor(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

pub fn koszul_lsp2(i_rank: usize, j: &Lattice) -> Result<KoszulResult> {
    if j.dim() != i_rank {
        return Err(Error::NotSublattice);
    }
    let n = i_rank;
    let jb = j.basis();

    let mut lam_rels = Functor::Quad(QuadTag::Lambda2).free_relations(n);
    for a in 0..jb.len() {
        for b in a + 1..jb.len() {
            lam_rels.push(tensor(&jb[a], &jb[b]));
        }
    }
    let lam = FgAbelian::from_relation_vectors(n * n, &lam_rels)?;
    let unit = |i: usize| {
        let mut e = vec![Int::ZERO; n];
        e[i] = Int::ONE;
        e
    };
    let ti_rels: Vec<Vec<Int>> = (0..n).flat_map(|i| jb.iter().map(move |v| tensor(&unit(i), v))).collect();
    let ti = FgAbelian::from_relation_vectors(n * n, &ti_rels)?;
    let quotient = FgAbelian::from_lattice(j);
    let sp = Functor::Quad(QuadTag::Sp2).on_group(&quotient);

    let f = AbMap::new(lam.clone(), ti.clone(), Natural::Antisymmetrize.matrix(n))?;
    let g = AbMap::new(ti, sp.clone(), IntMatrix::identity(n * n))?;
    let ker = f.kernel();
    let l1 = ker.group();
    let complex = AbComplex::new(vec![
        AbMap::zero(&FgAbelian::trivial(), &l1),
        ker.inclusion(&lam)?,
        f,
        g,
        AbMap::zero(&sp, &FgAbelian::trivial()),
    ])?;
    let exact = complex.is_exact()?;

    // Adapted bases: I has basis u_i with J spanned by d_i u_i.
    let mut witnesses = Vec::new();
    if !jb.is_empty() {
        let smith = smith_normal_form(&j.basis_matrix());
        let d = &smith.diagonal;
        for a in 0..d.len() {
            for b in a + 1..d.len() {
                let m = d[a].gcd(&d[b]);
                if m.is_one() {
                    continue;
                }
                let x = scaled(&smith.u_inv.column(a), &d[a].div_exact(&m).expect("gcd divides"));
                let y = scaled(&smith.u_inv.column(b), &d[b].div_exact(&m).expect("gcd divides"));
                let image = tensor(&scaled(&x, &m), &y);
                witnesses.push(KoszulWitness { x, y, m, image });
            }
        }
    }
    let in_kernel = witnesses.iter().all(|w| ker.top().contains(&w.image));
    let generated = ker.bottom().add_vectors(witnesses.iter().map(|w| w.image.clone()))?;
    let witnesses_generate = in_kernel && &generated == ker.top();

    Ok(KoszulResult { complex, l1, sp2_of_quotient: sp, exact, witnesses, witnesses_generate })
}

/// `L_1SP²(A)` through the presentation of `A`.
pub fn koszul_derived(a: &FgAbelian) -> Result<DerivedResult> {
    let k = koszul_lsp2(a.n_gens(), a.relation_lattice())?;
    if !k.exact {
        return Err(Error::NotAComplex(1));
    }
    let witnesses = k.witnesses.iter().map(|w| format!("m={} x={:?} y={:?}", w.m, w.x, w.y)).collect();
    Ok(DerivedResult { tag: QuadTag::Sp2, input: a.invariant_factors().to_vec(), value: k.l1, path: DerivedPath::Koszul, witnesses: Some(witnesses) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(dim: usize, vs: &[&[i64]]) -> Lattice {
        Lattice::from_vectors(dim, vs.iter().map(|v| v.iter().map(|&x| Int::from(x)).collect::<Vec<_>>())).unwrap()
    }

    #[test]
    fn documented_instances() {
        let k = koszul_lsp2(1, &lattice(1, &[&[2]])).unwrap();
        assert!(k.exact && k.l1.is_trivial());
        let k = koszul_lsp2(2, &Lattice::full(2)).unwrap();
        assert!(k.exact && k.l1.is_trivial());
        assert!(k.complex.object(2).is_trivial() && k.complex.object(3).is_trivial());
        let k = koszul_lsp2(2, &lattice(2, &[&[2, 0], &[0, 2]])).unwrap();
        assert!(k.exact);
        assert_eq!(k.l1, FgAbelian::cyclic(2));
        assert!(k.witnesses_generate);
        assert!(matches!(koszul_lsp2(3, &Lattice::full(2)), Err(Error::NotSublattice)));
    }

    #[test]
    fn skewed_presentation() {
        // Z/2 ⊕ Z/4 ⊕ Z presented on a non-diagonal basis.
        let j = lattice(3, &[&[2, 2, 0], &[0, 4, 4]]);
        let k = koszul_lsp2(3, &j).unwrap();
        assert!(k.exact && k.witnesses_generate);
        assert_eq!(k.l1, FgAbelian::cyclic(2));
        assert_eq!(k.sp2_of_quotient, super::super::quad_apply(QuadTag::Sp2, &FgAbelian::from_lattice(&j)));
    }
}
