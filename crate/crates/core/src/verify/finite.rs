use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::abelian::{FgAbelian, Lattice};
use super::report::CheckReport;
use crate::error::{Error, Result};
use crate::int::Int;

/// Largest group order accepted by the finite-group routines.
pub const MAX_ORDER: usize = 32;

/// A finite group given by its multiplication table (0-based internally).
///
/// The text form has the order on the first line followed by `n` rows of `n`
/// 1-based indices; row `a`, column `b` holds the index of `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroupTable {
    /// Checks closure, identity, inverses and associativity.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::ResourceBound(format!("group order {n} exceeds {MAX_ORDER}")));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table is not an n×n array of element indices".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {} has no inverse", a + 1)))?;
            inverse.push(b);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!("({0}·{1})·{2} ≠ {0}·({1}·{2})", a + 1, b + 1, c + 1)));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { table, identity, inverse })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// The dihedral group of order `2n`, with `r^i s^j` at index `i + n·j`.
    pub fn dihedral(n: usize) -> Result<Self> {
        let elem = |a: usize| (a % n, a / n);
        Self::new(
            (0..2 * n)
                .map(|a| {
                    (0..2 * n)
                        .map(|b| {
                            let ((i, j), (k, l)) = (elem(a), elem(b));
                            let rot = if j == 0 { i + k } else { i + n - k };
                            rot % n + n * ((j + l) % 2)
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// `{±1, ±i, ±j, ±k}`, with `u` at index `u` and `-u` at `u + 4` for `u = 1, i, j, k`.
    pub fn quaternion() -> Result<Self> {
        // Unit products: u·v = sign · w.
        const UNITS: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        Self::new(
            (0..8)
                .map(|a| {
                    (0..8)
                        .map(|b| {
                            let (neg, w) = UNITS[a % 4][b % 4];
                            w + 4 * usize::from(neg ^ (a >= 4) ^ (b >= 4))
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// `G × H` with `(g, h)` at index `g·|H| + h`.
    pub fn product(&self, other: &FiniteGroupTable) -> Result<Self> {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|a| (0..n * m).map(|b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m)).collect())
            .collect();
        Self::new(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        mask[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !mask[b] {
                    mask[b] = true;
                    frontier.push(b);
                }
            }
        }
        mask
    }

    /// `G / γ₂G`.
    pub fn abelianization(&self) -> FgAbelian {
        quotient(self, &vec![true; self.order()], &self.lower_central(2)).expect("G / [G, G] is abelian")
    }

    /// `γ_n(G)`, with `γ_{k+1} = [γ_k, G]`.
    pub fn lower_central(&self, n: usize) -> Vec<bool> {
        let mut current = vec![true; self.order()];
        for _ in 1..n {
            let comms: Vec<usize> = (0..self.order())
                .filter(|&a| current[a])
                .flat_map(|a| (0..self.order()).map(move |b| (a, b)))
                .map(|(a, b)| self.comm(a, b))
                .collect();
            current = self.subgroup(&comms);
        }
        current
    }

    /// `𝔤^n ⊂ Z[G]` as a lattice in `Z^{|G|}`.
    pub fn augmentation_power(&self, n: usize) -> Result<Lattice> {
        let size = self.order();
        let aug: Vec<Vec<Int>> = (0..size)
            .filter(|&g| g != self.identity)
            .map(|g| {
                let mut v = vec![Int::ZERO; size];
                v[g] += &Int::ONE;
                v[self.identity] -= &Int::ONE;
                v
            })
            .collect();
        let mut lat = Lattice::from_vectors(size, aug.iter().cloned())?;
        for _ in 1..n {
            let mut prods = Vec::new();
            for v in lat.basis() {
                for u in &aug {
                    prods.push(self.ring_mul(v, u));
                }
            }
            lat = Lattice::from_vectors(size, prods)?;
        }
        Ok(lat)
    }

    fn ring_mul(&self, u: &[Int], v: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::ZERO; self.order()];
        for (a, x) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in v.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[self.mul(a, b)].add_mul(x, y);
            }
        }
        out
    }

    /// `D_n(G) = G ∩ (1 + 𝔤^n)`.
    pub fn dimension_subgroup(&self, n: usize) -> Result<Vec<bool>> {
        let lat = self.augmentation_power(n)?;
        Ok((0..self.order())
            .map(|g| {
                let mut v = vec![Int::ZERO; self.order()];
                v[g] += &Int::ONE;
                v[self.identity] -= &Int::ONE;
                lat.contains(&v)
            })
            .collect())
    }
}

impl fmt::Display for FiniteGroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order())?;
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(|x| (x + 1).to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for FiniteGroupTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut nums = text.split_whitespace().map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad table entry `{t}`"))));
        let n = nums.next().ok_or_else(|| Error::Parse("empty group table".into()))??;
        if n > MAX_ORDER {
            return Err(Error::ResourceBound(format!("group order {n} exceeds {MAX_ORDER}")));
        }
        let mut table = vec![vec![0; n]; n];
        for row in table.iter_mut() {
            for x in row.iter_mut() {
                let v = nums.next().ok_or_else(|| Error::Parse("group table is truncated".into()))??;
                if v == 0 || v > n {
                    return Err(Error::NotAGroup(format!("entry {v} outside 1..={n}")));
                }
                *x = v - 1;
            }
        }
        if nums.next().is_some() {
            return Err(Error::Parse("trailing entries after the group table".into()));
        }
        FiniteGroupTable::new(table)
    }
}

/// `D_n(G) / γ_n(G)` computed from the multiplication table alone.
pub fn dim_quotient_finite(g: &FiniteGroupTable, n: usize) -> Result<FgAbelian> {
    if n == 0 || n > 4 {
        return Err(Error::DegreeOverflow(n));
    }
    let d = g.dimension_subgroup(n)?;
    let gamma = g.lower_central(n);
    if (0..g.order()).any(|x| gamma[x] && !d[x]) {
        return Err(Error::NotSubgroup("γ_n is not inside D_n".into()));
    }
    quotient(g, &d, &gamma)
}

/// `D_n(G) = γ_n(G)` for `n ≤ 3`; the fourth quotient is recorded alongside.
pub fn check_dim_quotients(name: &str, g: &FiniteGroupTable) -> CheckReport {
    CheckReport::new("DIMQ").param("group", name).param("order", g.order()).timed(|r| {
        let mut last = FgAbelian::trivial();
        for n in 1..=3 {
            last = dim_quotient_finite(g, n)?;
            if !last.is_trivial() {
                r.fail(format!("D_{n}/γ_{n} = {last}"));
            }
        }
        r.sides(&last, &FgAbelian::trivial());
        r.detail("D_4/γ_4", dim_quotient_finite(g, 4)?);
        Ok(())
    })
}

/// `S / T` for a subgroup `S` with `[S, S] ⊆ T ⊆ S`, presented on the cosets of `T`.
fn quotient(g: &FiniteGroupTable, s: &[bool], t: &[bool]) -> Result<FgAbelian> {
    let members: Vec<usize> = (0..g.order()).filter(|&x| s[x]).collect();
    for &a in &members {
        for &b in &members {
            if !t[g.comm(a, b)] {
                return Err(Error::SectionNotAbelian);
            }
        }
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut count = 0;
    for &a in &members {
        if coset[a] != usize::MAX {
            continue;
        }
        for h in (0..g.order()).filter(|&h| t[h]) {
            coset[g.mul(a, h)] = count;
        }
        count += 1;
    }
    let mut rels = Vec::new();
    let mut unit = vec![Int::ZERO; count];
    unit[coset[g.identity()]] = Int::ONE;
    rels.push(unit);
    for &a in &members {
        for &b in &members {
            let mut v = vec![Int::ZERO; count];
            v[coset[g.mul(a, b)]] += &Int::ONE;
            v[coset[a]] -= &Int::ONE;
            v[coset[b]] -= &Int::ONE;
            rels.push(v);
        }
    }
    FgAbelian::from_relation_vectors(count, &rels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_are_checked() {
        assert!("2\n1 2\n2 1\n".parse::<FiniteGroupTable>().is_ok());
        assert!(matches!("2\n1 2\n2 2\n".parse::<FiniteGroupTable>(), Err(Error::NotAGroup(_))));
        assert!(matches!("2\n1 2\n2 3\n".parse::<FiniteGroupTable>(), Err(Error::NotAGroup(_))));
        assert!("3\n1 2 3\n2 3 1\n".parse::<FiniteGroupTable>().is_err());
        let q8 = FiniteGroupTable::quaternion().unwrap();
        assert_eq!(q8.to_string().parse::<FiniteGroupTable>().unwrap(), q8);
    }

    #[test]
    fn nonabelian_groups_of_order_eight() {
        let d8 = FiniteGroupTable::dihedral(4).unwrap();
        let q8 = FiniteGroupTable::quaternion().unwrap();
        for g in [&d8, &q8] {
            assert!(!g.is_abelian());
            assert_eq!(g.lower_central(2).iter().filter(|&&b| b).count(), 2);
            assert_eq!(g.abelianization(), FgAbelian::from_invariants(&[2, 2]));
            assert_eq!(check_dim_quotients("g", g).status, super::super::Status::Verified);
        }
        // Q8 has a single involution, D8 has five.
        let involutions = |g: &FiniteGroupTable| (0..8).filter(|&a| a != g.identity() && g.mul(a, a) == g.identity()).count();
        assert_eq!((involutions(&d8), involutions(&q8)), (5, 1));
    }

    #[test]
    fn cyclic_two_has_trivial_fourth_quotient() {
        let z2 = FiniteGroupTable::cyclic(2).unwrap();
        // 𝔤 = Z(x - 1) and (x - 1)² = -2(x - 1), so 𝔤⁴ = 8Z(x - 1).
        let g4 = z2.augmentation_power(4).unwrap();
        assert_eq!(g4.basis().len(), 1);
        assert_eq!(g4.basis()[0].iter().map(|x| x.abs()).max().unwrap(), Int::from(8));
        assert!(dim_quotient_finite(&z2, 4).unwrap().is_trivial());
    }

    #[test]
    fn quotient_of_a_section_that_is_not_trivial() {
        // D_1 = G and γ_1 = G, while D_2 = γ_2 for every group; check the quotient
        // construction itself on G / γ_2 for an abelian G by using n = 1 bookkeeping.
        let g = FiniteGroupTable::cyclic(4).unwrap().product(&FiniteGroupTable::cyclic(2).unwrap()).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.abelianization(), FgAbelian::from_invariants(&[2, 4]));
        assert!(dim_quotient_finite(&g, 2).unwrap().is_trivial());
        assert!(dim_quotient_finite(&g, 3).unwrap().is_trivial());
        assert_eq!(g.lower_central(2).iter().filter(|&&b| b).count(), 1);
        assert_eq!(g.dimension_subgroup(1).unwrap().iter().filter(|&&b| b).count(), 8);
    }
}
