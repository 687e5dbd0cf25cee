use std::collections::BTreeMap;

use crate::abelian::{Echelon, Lattice};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::magnus::{degree_offset, expand, monomial_at, monomial_count, FreeWord, TruncSeries};
use crate::nilpotent::NilSubgroup;

use super::expr::IdealExpr;

/// Largest truncation degree accepted by ideal evaluation.
pub const MAX_DEGREE: usize = 4;

/// Image of an ideal of `Z[F]` in `𝔣 / 𝔣^{N+1}`, as a lattice on the monomials
/// of degrees `1..=N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncIdealLattice {
    rank: usize,
    max_degree: usize,
    lattice: Lattice,
}

fn degree_of_index(rank: usize, idx: usize) -> usize {
    let mut d = 1;
    while degree_offset(rank, d + 1) <= idx {
        d += 1;
    }
    d
}

impl TruncIdealLattice {
    pub fn zero(rank: usize, n: usize) -> Self {
        TruncIdealLattice { rank, max_degree: n, lattice: Lattice::zero(monomial_count(rank, n)) }
    }

    /// `𝔣^k`: every monomial of degree at least `k`.
    pub fn aug_power(rank: usize, n: usize, k: usize) -> Self {
        let dim = monomial_count(rank, n);
        let start = degree_offset(rank, k.max(1)).min(dim);
        TruncIdealLattice { rank, max_degree: n, lattice: Lattice::tail(dim, start) }
    }

    /// Integer span of the given augmentation elements.
    pub fn span<'a, I>(rank: usize, n: usize, elems: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a TruncSeries>,
    {
        let mut ech = Echelon::new(monomial_count(rank, n));
        for s in elems {
            if s.rank() != rank || s.max_degree() != n {
                return Err(Error::RankMismatch(s.rank(), rank));
            }
            ech.insert(s.vector().to_vec());
        }
        Ok(TruncIdealLattice { rank, max_degree: n, lattice: ech.into_lattice() })
    }

    pub fn from_lattice(rank: usize, n: usize, lattice: Lattice) -> Result<Self> {
        let dim = monomial_count(rank, n);
        if lattice.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: lattice.dim() });
        }
        Ok(TruncIdealLattice { rank, max_degree: n, lattice })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// Basis elements as series with zero constant term.
    pub fn basis_series(&self) -> Vec<TruncSeries> {
        self.lattice
            .basis()
            .iter()
            .map(|v| TruncSeries::from_vector(self.rank, self.max_degree, Int::ZERO, v.clone()).expect("dimension"))
            .collect()
    }

    /// Lowest degree carrying a nonzero element (`None` for the zero ideal).
    pub fn low_degree(&self) -> Option<usize> {
        self.lattice.pivots().first().map(|&p| degree_of_index(self.rank, p))
    }

    /// Whether `s - constant` lies in the lattice.
    pub fn contains_series(&self, s: &TruncSeries) -> bool {
        s.rank() == self.rank && s.max_degree() == self.max_degree && self.lattice.contains(s.vector())
    }

    /// Whether `w - 1` lies in the ideal modulo `𝔣^{N+1}`.
    pub fn contains_word(&self, w: &FreeWord) -> bool {
        self.contains_series(&expand(w, self.max_degree))
    }

    fn check(&self, other: &TruncIdealLattice) -> Result<()> {
        if self.rank != other.rank || self.max_degree != other.max_degree {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn is_subset_of(&self, other: &TruncIdealLattice) -> bool {
        self.check(other).is_ok() && self.lattice.is_subset_of(&other.lattice)
    }

    /// Whether the ideal lies in `𝔣^k`.
    pub fn within_aug_power(&self, k: usize) -> bool {
        self.low_degree().is_none_or(|d| d >= k)
    }

    pub fn sum(&self, other: &TruncIdealLattice) -> Result<Self> {
        self.check(other)?;
        Ok(TruncIdealLattice { lattice: self.lattice.sum(&other.lattice)?, ..self.clone() })
    }

    pub fn intersect(&self, other: &TruncIdealLattice) -> Result<Self> {
        self.check(other)?;
        Ok(TruncIdealLattice { lattice: self.lattice.intersect(&other.lattice)?, ..self.clone() })
    }

    /// Span of all products `a b`; pairs whose leading degrees add past `N` vanish.
    pub fn product(&self, other: &TruncIdealLattice) -> Result<Self> {
        self.check(other)?;
        let n = self.max_degree;
        let left: Vec<(usize, TruncSeries)> = self.graded_basis();
        let right: Vec<(usize, TruncSeries)> = other.graded_basis();
        let mut ech = Echelon::new(self.dim());
        for (da, a) in &left {
            for (db, b) in &right {
                if da + db <= n {
                    ech.insert(a.mul(b).into_vector());
                }
            }
        }
        Ok(TruncIdealLattice { lattice: ech.into_lattice(), ..self.clone() })
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    fn graded_basis(&self) -> Vec<(usize, TruncSeries)> {
        let degs: Vec<usize> = self.lattice.pivots().iter().map(|&p| degree_of_index(self.rank, p)).collect();
        degs.into_iter().zip(self.basis_series()).collect()
    }

    /// Image under a linear map of series applied to each basis element.
    fn map_basis(&self, f: impl Fn(&TruncSeries) -> TruncSeries) -> Self {
        let imgs: Vec<TruncSeries> = self.basis_series().iter().map(f).collect();
        Self::span(self.rank, self.max_degree, &imgs).expect("same ring")
    }

    /// Image under the anti-automorphism induced by `w -> w^{-1}`.
    pub fn antipode(&self) -> Self {
        self.map_basis(TruncSeries::antipode)
    }

    /// Image under reversal of monomials.
    pub fn reversed(&self) -> Self {
        self.map_basis(TruncSeries::reverse)
    }

    /// Invariant factors of `self / sub`.
    pub fn quotient_invariants(&self, sub: &TruncIdealLattice) -> Result<Vec<Int>> {
        self.check(sub)?;
        self.lattice.quotient_invariants(&sub.lattice)
    }
}

/// Named relator sets and subgroups that ideal atoms refer to.
#[derive(Clone, Debug)]
pub struct IdealEnv {
    rank: usize,
    relators: BTreeMap<String, Vec<FreeWord>>,
    subgroups: BTreeMap<String, NilSubgroup>,
}

impl IdealEnv {
    pub fn new(rank: usize) -> Self {
        IdealEnv { rank, relators: BTreeMap::new(), subgroups: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Binds a relator set: the atom `name` denotes `(R - 1)Z[F]` for `R` its normal closure.
    pub fn with_relators(mut self, name: &str, relators: &[FreeWord]) -> Result<Self> {
        if let Some(w) = relators.iter().find(|w| w.rank() != self.rank) {
            return Err(Error::RankMismatch(w.rank(), self.rank));
        }
        self.relators.insert(name.to_string(), relators.to_vec());
        Ok(self)
    }

    /// Binds a subgroup for `delta(name)`; its context class must reach the truncation degree.
    pub fn with_subgroup(mut self, name: &str, h: &NilSubgroup) -> Result<Self> {
        if h.context().rank() != self.rank {
            return Err(Error::RankMismatch(h.context().rank(), self.rank));
        }
        self.subgroups.insert(name.to_string(), h.clone());
        Ok(self)
    }

    pub fn relators(&self, name: &str) -> Option<&[FreeWord]> {
        self.relators.get(name).map(Vec::as_slice)
    }

    pub fn lattice(&self, e: &IdealExpr, n: usize) -> Result<TruncIdealLattice> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::DegreeOverflow(n));
        }
        self.eval(e, n)
    }

    fn eval(&self, e: &IdealExpr, n: usize) -> Result<TruncIdealLattice> {
        let r = self.rank;
        match e {
            IdealExpr::Zero => Ok(TruncIdealLattice::zero(r, n)),
            IdealExpr::Aug => Ok(TruncIdealLattice::aug_power(r, n, 1)),
            IdealExpr::Rel(name) => {
                let rels = self.relators.get(name).ok_or_else(|| Error::UnresolvedAtom(name.clone()))?;
                Ok(relator_ideal(r, n, rels))
            }
            IdealExpr::Delta(name) => {
                let h = self.subgroups.get(name).ok_or_else(|| Error::UnresolvedAtom(format!("delta({name})")))?;
                subgroup_augmentation(h, n)
            }
            IdealExpr::Sum(a, b) => self.eval(a, n)?.sum(&self.eval(b, n)?),
            IdealExpr::Intersect(a, b) => self.eval(a, n)?.intersect(&self.eval(b, n)?),
            IdealExpr::Product(a, b) => self.eval(a, n)?.product(&self.eval(b, n)?),
            IdealExpr::Power(a, k) => match **a {
                IdealExpr::Aug => Ok(TruncIdealLattice::aug_power(r, n, *k as usize)),
                _ => self.eval(a, n)?.power(*k),
            },
        }
    }

    /// `w ∈ 1 + 𝔞 + 𝔣^{N+1}`.
    pub fn contains_word(&self, w: &FreeWord, e: &IdealExpr, n: usize) -> Result<bool> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch(w.rank(), self.rank));
        }
        Ok(self.lattice(e, n)?.contains_word(w))
    }
}

/// Span of `m₁ (ρ - 1) m₂` over relators and monomials.
fn relator_ideal(rank: usize, n: usize, rels: &[FreeWord]) -> TruncIdealLattice {
    let dim = monomial_count(rank, n);
    let mut ech = Echelon::new(dim);
    let monomials: Vec<TruncSeries> = std::iter::once(TruncSeries::one(rank, n))
        .chain((0..dim).map(|i| TruncSeries::monomial(rank, n, &monomial_at(rank, i)).expect("within degree")))
        .collect();
    let deg = |s: &TruncSeries| s.low_degree().unwrap_or(0);
    for rho in rels {
        let u = expand(rho, n).augmentation_part();
        let du = match u.low_degree() {
            Some(d) => d,
            None => continue,
        };
        for m1 in &monomials {
            let d1 = deg(m1);
            if d1 + du > n {
                continue;
            }
            let left = m1.mul(&u);
            for m2 in &monomials {
                if d1 + du + deg(m2) <= n {
                    ech.insert(left.mul(m2).into_vector());
                }
            }
        }
    }
    TruncIdealLattice { rank, max_degree: n, lattice: ech.into_lattice() }
}

/// `Δ(H)` truncated: span of `(g₁ - 1)···(g_k - 1)` over canonical generators of `H`.
pub fn subgroup_augmentation(h: &NilSubgroup, n: usize) -> Result<TruncIdealLattice> {
    let ctx = h.context();
    if ctx.class() < n {
        return Err(Error::PreconditionViolated(format!(
            "subgroup lives modulo γ_{} but the truncation degree is {n}",
            ctx.class() + 1
        )));
    }
    let rank = ctx.rank();
    let gens: Vec<(usize, TruncSeries)> = h
        .generators()
        .iter()
        .map(|g| {
            let s = g.series().truncate(n).augmentation_part();
            (s.low_degree().unwrap_or(n + 1), s)
        })
        .filter(|(d, _)| *d <= n)
        .collect();
    let mut ech = Echelon::new(monomial_count(rank, n));
    let mut stack: Vec<(usize, TruncSeries)> = gens.clone();
    while let Some((d, p)) = stack.pop() {
        ech.insert(p.vector().to_vec());
        for (dg, g) in &gens {
            if d + dg <= n {
                stack.push((d + dg, p.mul(g)));
            }
        }
    }
    Ok(TruncIdealLattice { rank, max_degree: n, lattice: ech.into_lattice() })
}

/// Lattice of an expression whose only relator atom is `r`.
pub fn ideal_lattice(e: &IdealExpr, relators: &[FreeWord], rank: usize, n: usize) -> Result<TruncIdealLattice> {
    IdealEnv::new(rank).with_relators("r", relators)?.lattice(e, n)
}

pub fn ideal_membership(w: &FreeWord, e: &IdealExpr, relators: &[FreeWord], rank: usize, n: usize) -> Result<bool> {
    IdealEnv::new(rank).with_relators("r", relators)?.contains_word(w, e, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::parse_ideal;
    use crate::magnus::parse_word;

    fn words(src: &[&str], rank: usize) -> Vec<FreeWord> {
        src.iter().map(|s| parse_word(s, rank).unwrap()).collect()
    }

    #[test]
    fn whole_group_relator_gives_augmentation() {
        let l = ideal_lattice(&IdealExpr::rel("r"), &words(&["x1"], 1), 1, 4).unwrap();
        assert_eq!(l, TruncIdealLattice::aug_power(1, 4, 1));
        let l = ideal_lattice(&parse_ideal("r").unwrap(), &words(&["x1", "x2^-1 x1^3"], 2), 2, 3).unwrap();
        assert_eq!(l, TruncIdealLattice::aug_power(2, 3, 1));
    }

    #[test]
    fn powers_of_augmentation() {
        let e = IdealEnv::new(2);
        for k in 1..=4u32 {
            let direct = e.lattice(&IdealExpr::aug_power(k), 4).unwrap();
            let prod = e.lattice(&IdealExpr::aug().pow(k).mul(&IdealExpr::aug()), 4).unwrap();
            assert_eq!(direct.low_degree(), Some(k as usize));
            assert_eq!(prod, TruncIdealLattice::aug_power(2, 4, k as usize + 1));
        }
        assert!(e.lattice(&IdealExpr::aug(), 5).is_err());
        assert!(matches!(e.lattice(&IdealExpr::rel("r"), 3), Err(Error::UnresolvedAtom(_))));
    }

    #[test]
    fn membership_examples() {
        let f2 = IdealExpr::aug_power(2);
        let none: Vec<FreeWord> = Vec::new();
        assert!(ideal_membership(&parse_word("[x1,x2]", 2).unwrap(), &f2, &none, 2, 3).unwrap());
        assert!(!ideal_membership(&parse_word("x1", 2).unwrap(), &f2, &none, 2, 3).unwrap());
        // x^2 - 1 = 2X + X^2 lies in r = (x^2 - 1) but X does not.
        let rels = words(&["x1^2"], 1);
        assert!(ideal_membership(&parse_word("x1^2", 1).unwrap(), &IdealExpr::rel("r"), &rels, 1, 3).unwrap());
        assert!(!ideal_membership(&parse_word("x1", 1).unwrap(), &IdealExpr::rel("r"), &rels, 1, 3).unwrap());
    }

    #[test]
    fn product_matches_brute_force_span() {
        // f r over a single relator: spanned by m (ρ-1) m' with |m| >= 1.
        let rels = words(&["x1^2 x2^-1"], 2);
        let env = IdealEnv::new(2).with_relators("r", &rels).unwrap();
        let fr = env.lattice(&parse_ideal("fr").unwrap(), 3).unwrap();
        let u = expand(&rels[0], 3).augmentation_part();
        let mut gens = Vec::new();
        for i in 0..monomial_count(2, 3) {
            let m = TruncSeries::monomial(2, 3, &monomial_at(2, i)).unwrap();
            for j in 0..=monomial_count(2, 3) {
                let m2 = if j == 0 { TruncSeries::one(2, 3) } else { TruncSeries::monomial(2, 3, &monomial_at(2, j - 1)).unwrap() };
                gens.push(m.mul(&u).mul(&m2));
            }
        }
        assert_eq!(fr, TruncIdealLattice::span(2, 3, &gens).unwrap());
    }

    #[test]
    fn antipode_swaps_sides() {
        let rels = words(&["x1^2 x2", "[x1,x2]^2"], 2);
        let env = IdealEnv::new(2).with_relators("r", &rels).unwrap();
        let fr = env.lattice(&parse_ideal("fr & f^3").unwrap(), 4).unwrap();
        let rf = env.lattice(&parse_ideal("rf & f^3").unwrap(), 4).unwrap();
        assert_eq!(fr.antipode(), rf);
        assert_eq!(rf.antipode(), fr);
    }
}
