use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::int::Int;

use super::lattice::Lattice;
use super::matrix::IntMatrix;
use super::smith::{invariant_factors, smith_normal_form};

/// A finitely generated abelian group `Z^n / <columns of relations>`.
///
/// Equality is isomorphism: two presentations compare equal when their
/// invariant factors agree.
#[derive(Clone)]
pub struct FgAbelian {
    n_gens: usize,
    relations: IntMatrix,
    invariants: OnceLock<Vec<Int>>,
    lattice: OnceLock<Lattice>,
}

/// A presentation with no trivial generators, together with the change of generators.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub group: FgAbelian,
    /// Old coordinates to new coordinates (`k x n`).
    pub to_min: IntMatrix,
    /// New generators written in old coordinates (`n x k`).
    pub from_min: IntMatrix,
}

impl FgAbelian {
    pub fn new(n_gens: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != n_gens {
            return Err(Error::DimensionMismatch { expected: n_gens, found: relations.rows() });
        }
        Ok(FgAbelian { n_gens, relations, invariants: OnceLock::new(), lattice: OnceLock::new() })
    }

    pub fn from_relation_vectors(n_gens: usize, rels: &[Vec<Int>]) -> Result<Self> {
        if let Some(r) = rels.iter().find(|r| r.len() != n_gens) {
            return Err(Error::DimensionMismatch { expected: n_gens, found: r.len() });
        }
        Self::new(n_gens, IntMatrix::from_columns(n_gens, rels))
    }

    pub fn from_lattice(rel: &Lattice) -> Self {
        let g = Self::new(rel.dim(), rel.basis_matrix()).expect("dimensions agree");
        let _ = g.lattice.set(rel.clone());
        g
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zeros(n, 0)).expect("dimensions agree")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn cyclic(order: i64) -> Self {
        Self::new(1, IntMatrix::from_rows(&[[order]])).expect("dimensions agree")
    }

    /// Direct sum of cyclic groups; `0` stands for `Z`.
    pub fn from_invariants(invariants: &[i64]) -> Self {
        let n = invariants.len();
        let diag: Vec<Int> = invariants.iter().map(|&d| Int::from(d)).collect();
        Self::new(n, IntMatrix::diagonal(n, n, &diag)).expect("dimensions agree")
    }

    pub fn from_invariant_ints(invariants: &[Int]) -> Self {
        let n = invariants.len();
        Self::new(n, IntMatrix::diagonal(n, n, invariants)).expect("dimensions agree")
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn relation_lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| Lattice::from_columns(&self.relations))
    }

    /// `d_1 | d_2 | ... | d_k` (each greater than one) followed by a zero per free summand.
    pub fn invariant_factors(&self) -> &[Int] {
        self.invariants.get_or_init(|| invariant_factors(&self.relation_lattice().basis_matrix()))
    }

    pub fn invariant_string(&self) -> String {
        format_invariants(self.invariant_factors())
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors().is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors().iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion_factors(&self) -> Vec<Int> {
        self.invariant_factors().iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.invariant_factors().iter().all(Int::is_zero)
    }

    /// Order, or `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        let mut acc = Int::ONE;
        for d in self.invariant_factors() {
            if d.is_zero() {
                return None;
            }
            acc = &acc * d;
        }
        Some(acc)
    }

    pub fn is_isomorphic(&self, other: &FgAbelian) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    /// Whether `v` represents zero.
    pub fn is_zero_element(&self, v: &[Int]) -> bool {
        self.relation_lattice().contains(v)
    }

    pub fn direct_sum(&self, other: &FgAbelian) -> FgAbelian {
        FgAbelian::new(self.n_gens + other.n_gens, self.relations.block_diag(&other.relations)).expect("dimensions agree")
    }

    /// Drops generators that are trivial in the quotient via Smith normal form.
    pub fn minimize(&self) -> Minimized {
        let n = self.n_gens;
        let rel = self.relation_lattice().basis_matrix();
        let s = smith_normal_form(&rel);
        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in 0..n {
            let d = s.diagonal.get(i).cloned().unwrap_or(Int::ZERO);
            if !d.is_one() {
                keep.push(i);
                orders.push(d);
            }
        }
        let to_min = s.u.select_rows(&keep);
        let from_min = s.u_inv.select_columns(&keep);
        let torsion: Vec<Vec<Int>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut v = vec![Int::ZERO; keep.len()];
                v[i] = d.clone();
                v
            })
            .collect();
        let group = FgAbelian::from_relation_vectors(keep.len(), &torsion).expect("dimensions agree");
        Minimized { group, to_min, from_min }
    }

    /// Presentation of `self ⊗ other` on generators `e_i ⊗ f_j`, indexed `i * m + j`.
    pub fn tensor_presentation(&self, other: &FgAbelian) -> FgAbelian {
        let (n, m) = (self.n_gens, other.n_gens);
        let mut rels = Vec::new();
        for r in self.relation_lattice().basis() {
            for j in 0..m {
                let mut v = vec![Int::ZERO; n * m];
                for i in 0..n {
                    v[i * m + j] = r[i].clone();
                }
                rels.push(v);
            }
        }
        for s in other.relation_lattice().basis() {
            for i in 0..n {
                let mut v = vec![Int::ZERO; n * m];
                for j in 0..m {
                    v[i * m + j] = s[j].clone();
                }
                rels.push(v);
            }
        }
        FgAbelian::from_relation_vectors(n * m, &rels).expect("dimensions agree")
    }
}

pub fn format_invariants(inv: &[Int]) -> String {
    inv.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses `"2,4,0"` (empty string is the trivial group).
pub fn parse_invariants(s: &str) -> Result<Vec<Int>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let d: Int = t.trim().parse().map_err(|_| Error::Parse(format!("bad invariant `{}`", t.trim())))?;
            if d.is_negative() {
                return Err(Error::Parse(format!("negative invariant `{d}`")));
            }
            Ok(d)
        })
        .collect()
}

impl PartialEq for FgAbelian {
    fn eq(&self, other: &Self) -> bool {
        self.is_isomorphic(other)
    }
}

impl Eq for FgAbelian {}

impl fmt::Debug for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbelian[{}]", self.invariant_string())
    }
}

impl fmt::Display for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = self.invariant_factors();
        if inv.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = inv.iter().map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `A ⊗ B` as an abstract group.
pub fn ab_tensor(a: &FgAbelian, b: &FgAbelian) -> FgAbelian {
    let am = a.minimize().group;
    let bm = b.minimize().group;
    am.tensor_presentation(&bm)
}

/// `Tor(A, B)` via the resolution `0 -> Z^r -> Z^n -> A -> 0`.
pub fn ab_tor(a: &FgAbelian, b: &FgAbelian) -> FgAbelian {
    let am = a.minimize().group;
    let bm = b.minimize().group;
    let boundary = am.relation_lattice().basis_matrix();
    let r = boundary.cols();
    let source = FgAbelian::free(r).tensor_presentation(&bm);
    let target = FgAbelian::free(am.n_gens()).tensor_presentation(&bm);
    let m = boundary.kronecker(&IntMatrix::identity(bm.n_gens()));
    let map = super::map::AbMap::new(source, target, m).expect("boundary tensor is well defined");
    map.kernel().group()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn invariants_of_diagonal() {
        let g = FgAbelian::from_invariants(&[2, 3, 0, 1]);
        assert_eq!(g.invariant_factors(), inv(&[6, 0]).as_slice());
        assert_eq!(g.invariant_string(), "6,0");
        assert_eq!(parse_invariants("2,4,0").unwrap(), inv(&[2, 4, 0]));
        assert!(FgAbelian::from_invariants(&[1, 1]).is_trivial());
    }

    #[test]
    fn tensor_of_cyclics() {
        let t = ab_tensor(&FgAbelian::cyclic(4), &FgAbelian::cyclic(6));
        assert_eq!(t, FgAbelian::cyclic(2));
        let z = ab_tensor(&FgAbelian::free(1), &FgAbelian::from_invariants(&[3, 0]));
        assert_eq!(z.invariant_factors(), inv(&[3, 0]).as_slice());
    }

    #[test]
    fn tor_of_klein_groups() {
        let v = FgAbelian::from_invariants(&[2, 2]);
        let t = ab_tor(&v, &v);
        assert_eq!(t, FgAbelian::from_invariants(&[2, 2, 2, 2]));
        assert!(ab_tor(&FgAbelian::free(2), &v).is_trivial());
        assert_eq!(ab_tor(&FgAbelian::cyclic(4), &FgAbelian::cyclic(6)), FgAbelian::cyclic(2));
    }

    #[test]
    fn minimize_keeps_group() {
        let g = FgAbelian::new(3, IntMatrix::from_rows(&[[1, 0], [1, 2], [0, 2]])).unwrap();
        let m = g.minimize();
        assert_eq!(m.group, g);
        let back = m.to_min.mul(&m.from_min).unwrap();
        assert_eq!(back, IntMatrix::identity(m.group.n_gens()));
    }
}
