use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::int::Int;

use super::group::FgAbelian;
use super::lattice::{preimage, Lattice};
use super::matrix::IntMatrix;

/// Homomorphism between presented groups, given on generators.
///
/// `matrix` has one column per source generator, written in target generators.
#[derive(Clone, Debug)]
pub struct AbMap {
    source: FgAbelian,
    target: FgAbelian,
    matrix: IntMatrix,
}

impl AbMap {
    pub fn new(source: FgAbelian, target: FgAbelian, matrix: IntMatrix) -> Result<Self> {
        if matrix.cols() != source.n_gens() || matrix.rows() != target.n_gens() {
            return Err(Error::DimensionMismatch { expected: source.n_gens() * target.n_gens(), found: matrix.cols() * matrix.rows() });
        }
        let lt = target.relation_lattice();
        for r in source.relation_lattice().basis() {
            if !lt.contains(&matrix.mul_vec(r)) {
                return Err(Error::IllFormedMap("a source relation does not map into the target relations".into()));
            }
        }
        Ok(AbMap { source, target, matrix })
    }

    pub fn identity(g: &FgAbelian) -> Self {
        AbMap { source: g.clone(), target: g.clone(), matrix: IntMatrix::identity(g.n_gens()) }
    }

    pub fn zero(source: &FgAbelian, target: &FgAbelian) -> Self {
        AbMap { source: source.clone(), target: target.clone(), matrix: IntMatrix::zeros(target.n_gens(), source.n_gens()) }
    }

    pub fn source(&self) -> &FgAbelian {
        &self.source
    }

    pub fn target(&self) -> &FgAbelian {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(v)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AbMap) -> Result<AbMap> {
        if self.target.n_gens() != other.source.n_gens() {
            return Err(Error::DimensionMismatch { expected: self.target.n_gens(), found: other.source.n_gens() });
        }
        Ok(AbMap { source: self.source.clone(), target: other.target.clone(), matrix: other.matrix.mul(&self.matrix)? })
    }

    pub fn difference(&self, other: &AbMap) -> Result<AbMap> {
        Ok(AbMap { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.sub(&other.matrix)? })
    }

    pub fn is_zero(&self) -> bool {
        let lt = self.target.relation_lattice();
        (0..self.matrix.cols()).all(|j| lt.contains(&self.matrix.column(j)))
    }

    pub fn equals(&self, other: &AbMap) -> bool {
        self.difference(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    pub fn direct_sum(&self, other: &AbMap) -> AbMap {
        AbMap {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            matrix: self.matrix.block_diag(&other.matrix),
        }
    }

    /// `ker f` as the subquotient `f^{-1}(L_target) / L_source`.
    pub fn kernel(&self) -> Subquotient {
        let top = preimage(&self.matrix, self.target.relation_lattice()).expect("dimensions agree");
        Subquotient::new(top, self.source.relation_lattice().clone()).expect("relations map to zero")
    }

    /// `im f` as the subquotient `(L_target + im M) / L_target`.
    pub fn image(&self) -> Subquotient {
        let lt = self.target.relation_lattice();
        let top = lt.add_vectors(self.matrix.columns()).expect("dimensions agree");
        Subquotient::new(top, lt.clone()).expect("contained")
    }

    pub fn cokernel(&self) -> FgAbelian {
        let lt = self.target.relation_lattice();
        FgAbelian::from_lattice(&lt.add_vectors(self.matrix.columns()).expect("dimensions agree"))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// `top / bottom` for lattices `bottom ⊆ top ⊆ Z^n`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    top: Lattice,
    bottom: Lattice,
    group: OnceLock<FgAbelian>,
}

impl Subquotient {
    pub fn new(top: Lattice, bottom: Lattice) -> Result<Self> {
        if !bottom.is_subset_of(&top) {
            return Err(Error::NotSublattice);
        }
        Ok(Subquotient { top, bottom, group: OnceLock::new() })
    }

    pub fn top(&self) -> &Lattice {
        &self.top
    }

    pub fn bottom(&self) -> &Lattice {
        &self.bottom
    }

    /// Presentation on the canonical basis of `top`.
    pub fn group(&self) -> FgAbelian {
        self.group
            .get_or_init(|| {
                let rels: Vec<Vec<Int>> = self.bottom.basis().iter().map(|b| self.top.coordinates(b).expect("subset")).collect();
                FgAbelian::from_relation_vectors(self.top.rank(), &rels).expect("dimensions agree")
            })
            .clone()
    }

    pub fn is_trivial(&self) -> bool {
        self.top.rank() == self.bottom.rank() && self.top == self.bottom
    }

    /// Ambient coordinates to coordinates on the generators of [`Subquotient::group`].
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.top.coordinates(v)
    }

    /// Inclusion into the ambient presented group.
    pub fn inclusion(&self, ambient: &FgAbelian) -> Result<AbMap> {
        AbMap::new(self.group(), ambient.clone(), self.top.basis_matrix())
    }

    /// Map `self -> other` induced by the ambient matrix `m`.
    pub fn induced(&self, other: &Subquotient, m: &IntMatrix) -> Result<AbMap> {
        let mut cols = Vec::with_capacity(self.top.rank());
        for b in self.top.basis() {
            let img = m.mul_vec(b);
            let c = other
                .top
                .coordinates(&img)
                .ok_or_else(|| Error::IllFormedMap("image leaves the target subquotient".into()))?;
            cols.push(c);
        }
        AbMap::new(self.group(), other.group(), IntMatrix::from_columns(other.top.rank(), &cols))
    }
}

/// Kernel and cokernel of a map with their structure maps.
#[derive(Clone, Debug)]
pub struct KernelCokernel {
    pub kernel: FgAbelian,
    pub inclusion: AbMap,
    pub cokernel: FgAbelian,
    pub projection: AbMap,
}

pub fn map_kernel_cokernel(f: &AbMap) -> Result<KernelCokernel> {
    let ks = f.kernel();
    let inclusion = ks.inclusion(f.source())?;
    let cokernel = f.cokernel();
    let projection = AbMap::new(f.target().clone(), cokernel.clone(), IntMatrix::identity(f.target().n_gens()))?;
    let kc = KernelCokernel { kernel: ks.group(), inclusion, cokernel, projection };
    if !kc.inclusion.then(f)?.is_zero() || !f.then(&kc.projection)?.is_zero() {
        return Err(Error::NotAComplex(0));
    }
    Ok(kc)
}

/// `ker g / im f` for `A --f--> B --g--> C`.
pub fn homology(f: &AbMap, g: &AbMap) -> Result<Subquotient> {
    if f.target().n_gens() != g.source().n_gens() {
        return Err(Error::DimensionMismatch { expected: f.target().n_gens(), found: g.source().n_gens() });
    }
    let top = preimage(g.matrix(), g.target().relation_lattice())?;
    let bottom = f.image().top().clone();
    if !bottom.is_subset_of(&top) {
        return Err(Error::NotAComplex(1));
    }
    Subquotient::new(top, bottom)
}

/// A chain of composable maps `A_0 -> A_1 -> ... -> A_k` with zero composites.
#[derive(Clone, Debug)]
pub struct AbComplex {
    maps: Vec<AbMap>,
}

impl AbComplex {
    pub fn new(maps: Vec<AbMap>) -> Result<Self> {
        for (i, w) in maps.windows(2).enumerate() {
            if w[0].target().n_gens() != w[1].source().n_gens() {
                return Err(Error::DimensionMismatch { expected: w[0].target().n_gens(), found: w[1].source().n_gens() });
            }
            if !w[0].then(&w[1])?.is_zero() {
                return Err(Error::NotAComplex(i + 1));
            }
        }
        Ok(AbComplex { maps })
    }

    pub fn len(&self) -> usize {
        self.maps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn object(&self, k: usize) -> &FgAbelian {
        if k == 0 {
            self.maps[0].source()
        } else {
            self.maps[k - 1].target()
        }
    }

    /// Homology at object `k` (boundary objects use zero maps).
    pub fn homology(&self, k: usize) -> Result<Subquotient> {
        let obj = self.object(k).clone();
        let f = if k == 0 { AbMap::zero(&FgAbelian::trivial(), &obj) } else { self.maps[k - 1].clone() };
        let g = if k == self.maps.len() { AbMap::zero(&obj, &FgAbelian::trivial()) } else { self.maps[k].clone() };
        homology(&f, &g)
    }

    pub fn is_exact_at(&self, k: usize) -> Result<bool> {
        Ok(self.homology(k)?.is_trivial())
    }

    pub fn is_exact(&self) -> Result<bool> {
        for k in 0..self.len() {
            if !self.is_exact_at(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_cokernel_of_doubling() {
        // Z/2 + Z/4 -> Z/4, (a, b) -> 2b
        let src = FgAbelian::from_invariants(&[2, 4]);
        let tgt = FgAbelian::cyclic(4);
        let f = AbMap::new(src, tgt, IntMatrix::from_rows(&[[0, 2]])).unwrap();
        let kc = map_kernel_cokernel(&f).unwrap();
        assert_eq!(kc.kernel, FgAbelian::from_invariants(&[2, 2]));
        assert_eq!(kc.cokernel, FgAbelian::cyclic(2));
        let seq = AbComplex::new(vec![
            AbMap::zero(&FgAbelian::trivial(), kc.inclusion.source()),
            kc.inclusion.clone(),
            f.clone(),
            kc.projection.clone(),
            AbMap::zero(&kc.cokernel, &FgAbelian::trivial()),
        ])
        .unwrap();
        assert!(seq.is_exact().unwrap());
    }

    #[test]
    fn ill_formed_map_rejected() {
        let r = AbMap::new(FgAbelian::cyclic(2), FgAbelian::cyclic(3), IntMatrix::from_rows(&[[1]]));
        assert!(matches!(r, Err(Error::IllFormedMap(_))));
        assert!(AbMap::new(FgAbelian::cyclic(2), FgAbelian::free(1), IntMatrix::from_rows(&[[0]])).is_ok());
    }

    #[test]
    fn homology_of_short_complex() {
        // Z --2--> Z --0--> Z has H at the middle = Z/2.
        let z = FgAbelian::free(1);
        let f = AbMap::new(z.clone(), z.clone(), IntMatrix::from_rows(&[[2]])).unwrap();
        let g = AbMap::zero(&z, &z);
        assert_eq!(homology(&f, &g).unwrap().group(), FgAbelian::cyclic(2));
        let c = AbComplex::new(vec![f.clone(), f.clone()]);
        assert!(matches!(c, Err(Error::NotAComplex(_))));
    }
}
