//! Sublattices of `Z^n` in reduced Hermite normal form.
//!
//! Basis vectors are stored as rows. Each row has a positive pivot (its first
//! nonzero coordinate), pivots strictly increase down the basis, and every
//! entry sitting above a pivot in another row lies in `[0, pivot)`. Two
//! lattices are equal exactly when their canonical bases are equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::int::Int;

use super::matrix::IntMatrix;

/// `dst -= q * src` on coordinates `from..`.
#[inline]
pub(crate) fn sub_scaled(dst: &mut [Int], q: &Int, src: &[Int], from: usize) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
        if !s.is_zero() {
            d.sub_mul(q, s);
        }
    }
}

fn first_nonzero(v: &[Int], from: usize) -> Option<usize> {
    (from..v.len()).find(|&i| !v[i].is_zero())
}

fn negate(v: &mut [Int]) {
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = -&*x;
        }
    }
}

/// Incremental row echelon form over the integers.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    dim: usize,
    rows: Vec<Vec<Int>>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivot_row: vec![None; dim] }
    }

    /// Adds `v` to the spanning set. Returns `true` when the rank grew.
    pub fn insert(&mut self, mut v: Vec<Int>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut start = 0;
        loop {
            let c = match first_nonzero(&v, start) {
                Some(c) => c,
                None => return false,
            };
            match self.pivot_row[c] {
                None => {
                    if v[c].is_negative() {
                        negate(&mut v);
                    }
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(v);
                    return true;
                }
                Some(ri) => {
                    let mut a = std::mem::take(&mut self.rows[ri]);
                    if let Some(q) = v[c].div_exact(&a[c]) {
                        sub_scaled(&mut v, &q, &a, c);
                    } else {
                        let mut b = v;
                        while !b[c].is_zero() {
                            let q = a[c].div_trunc(&b[c]);
                            sub_scaled(&mut a, &q, &b, c);
                            std::mem::swap(&mut a, &mut b);
                        }
                        if a[c].is_negative() {
                            negate(&mut a);
                        }
                        v = b;
                    }
                    self.rows[ri] = a;
                    start = c + 1;
                }
            }
        }
    }

    /// Canonical reduced basis.
    pub fn into_lattice(self) -> Lattice {
        let dim = self.dim;
        let mut rows = self.rows;
        rows.sort_by_key(|r| first_nonzero(r, 0).unwrap_or(dim));
        let pivots: Vec<usize> = rows.iter().map(|r| first_nonzero(r, 0).expect("nonzero row")).collect();
        for j in 0..rows.len() {
            let pj = pivots[j];
            for i in 0..j {
                let q = rows[i][pj].div_floor(&rows[j][pj]);
                if !q.is_zero() {
                    let (top, bottom) = rows.split_at_mut(j);
                    sub_scaled(&mut top[i], &q, &bottom[0], pj);
                }
            }
        }
        Lattice { dim, rows, pivots }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<Int>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::tail(dim, 0)
    }

    /// Span of the unit vectors `e_start, ..., e_{dim-1}`.
    pub fn tail(dim: usize, start: usize) -> Self {
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for i in start..dim {
            let mut r = vec![Int::ZERO; dim];
            r[i] = Int::ONE;
            rows.push(r);
            pivots.push(i);
        }
        Lattice { dim, rows, pivots }
    }

    pub fn from_vectors<I>(dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Int>>,
    {
        let mut e = Echelon::new(dim);
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            e.insert(v);
        }
        Ok(e.into_lattice())
    }

    /// Lattice spanned by the columns of `m`.
    pub fn from_columns(m: &IntMatrix) -> Self {
        let mut e = Echelon::new(m.rows());
        for j in 0..m.cols() {
            e.insert(m.column(j));
        }
        e.into_lattice()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as matrix columns.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.rows)
    }

    /// `Some(start)` when this is exactly the coordinate lattice `tail(dim, start)`.
    pub fn as_tail(&self) -> Option<usize> {
        let start = self.dim - self.rank();
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if p != start + k || !row[p].is_one() || row.iter().filter(|x| !x.is_zero()).count() != 1 {
                return None;
            }
        }
        Some(start)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut w = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        let mut prev = 0;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[prev..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let q = w[p].div_exact(&row[p])?;
            sub_scaled(&mut w, &q, row, p);
            coords.push(q);
            prev = p;
        }
        if w[prev..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Canonical representative of `v + L`: pivot coordinates are reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let q = w[p].div_floor(&row[p]);
            sub_scaled(&mut w, &q, row, p);
        }
        w
    }

    pub fn is_subset_of(&self, other: &Lattice) -> bool {
        self.dim == other.dim && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.rank() < other.rank() {
            return other.sum(self);
        }
        let mut e = Echelon { dim: self.dim, rows: self.rows.clone(), pivot_row: vec![None; self.dim] };
        for (i, &p) in self.pivots.iter().enumerate() {
            e.pivot_row[p] = Some(i);
        }
        for r in &other.rows {
            e.insert(r.clone());
        }
        Ok(e.into_lattice())
    }

    pub fn add_vectors<I>(&self, vectors: I) -> Result<Lattice>
    where
        I: IntoIterator<Item = Vec<Int>>,
    {
        let mut e = Echelon { dim: self.dim, rows: self.rows.clone(), pivot_row: vec![None; self.dim] };
        for (i, &p) in self.pivots.iter().enumerate() {
            e.pivot_row[p] = Some(i);
        }
        for v in vectors {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
            }
            e.insert(v);
        }
        Ok(e.into_lattice())
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if let Some(t) = other.as_tail() {
            return Ok(self.restrict_to_tail(t));
        }
        if let Some(t) = self.as_tail() {
            return Ok(other.restrict_to_tail(t));
        }
        let n = self.dim;
        let mut e = Echelon::new(2 * n);
        for r in &self.rows {
            let mut v = r.clone();
            v.extend(r.iter().cloned());
            e.insert(v);
        }
        for r in &other.rows {
            let mut v = r.clone();
            v.extend(std::iter::repeat_n(Int::ZERO, n));
            e.insert(v);
        }
        Lattice::from_vectors(n, e.tail_parts(n))
    }

    /// `L ∩ tail(dim, start)`, read off the echelon basis.
    pub fn restrict_to_tail(&self, start: usize) -> Lattice {
        let keep: Vec<usize> = (0..self.rank()).filter(|&i| self.pivots[i] >= start).collect();
        Lattice {
            dim: self.dim,
            rows: keep.iter().map(|&i| self.rows[i].clone()).collect(),
            pivots: keep.iter().map(|&i| self.pivots[i]).collect(),
        }
    }

    /// Image under the linear map `m: Z^dim -> Z^{m.rows()}`.
    pub fn image(&self, m: &IntMatrix) -> Result<Lattice> {
        if m.cols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: m.cols() });
        }
        Lattice::from_vectors(m.rows(), self.rows.iter().map(|r| m.mul_vec(r)))
    }

    /// `{ x in self : m x in target }`.
    pub fn preimage_within(&self, m: &IntMatrix, target: &Lattice) -> Result<Lattice> {
        if m.cols() != self.dim || m.rows() != target.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: m.cols() });
        }
        let coords = preimage(&m.mul(&self.basis_matrix())?, target)?;
        let b = self.basis_matrix();
        Lattice::from_vectors(self.dim, coords.basis().iter().map(|c| b.mul_vec(c)))
    }

    /// Index `[self : sub]` as invariant factors of the quotient.
    pub fn quotient_invariants(&self, sub: &Lattice) -> Result<Vec<Int>> {
        if !sub.is_subset_of(self) {
            return Err(Error::NotSublattice);
        }
        let rel: Vec<Vec<Int>> = sub.rows.iter().map(|r| self.coordinates(r).expect("subset")).collect();
        let m = IntMatrix::from_columns(self.rank(), &rel);
        Ok(super::smith::invariant_factors(&m))
    }
}

impl Echelon {
    /// Parts beyond `split` of the rows whose pivot lies at or past `split`.
    pub fn tail_parts(&self, split: usize) -> Vec<Vec<Int>> {
        self.rows
            .iter()
            .filter(|r| first_nonzero(r, 0).is_some_and(|p| p >= split))
            .map(|r| r[split..].to_vec())
            .collect()
    }
}

/// `{ x in Z^n : m x in target }` where `n = m.cols()`.
pub fn preimage(m: &IntMatrix, target: &Lattice) -> Result<Lattice> {
    let (r, n) = (m.rows(), m.cols());
    if target.dim != r {
        return Err(Error::DimensionMismatch { expected: r, found: target.dim });
    }
    let mut e = Echelon::new(r + n);
    for j in 0..n {
        let mut v = m.column(j);
        v.resize(r + n, Int::ZERO);
        v[r + j] = Int::ONE;
        e.insert(v);
    }
    for b in target.basis() {
        let mut v = b.clone();
        v.resize(r + n, Int::ZERO);
        e.insert(v);
    }
    Lattice::from_vectors(n, e.tail_parts(r))
}

/// Integer kernel `{ x : m x = 0 }`.
pub fn kernel(m: &IntMatrix) -> Lattice {
    preimage(m, &Lattice::zero(m.rows())).expect("dimensions agree")
}

/// Solves `A x = v` for vectors `v` in the column span of a fixed matrix `A`.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    rows: usize,
    cols: usize,
    echelon: Echelon,
}

impl SpanSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let (r, n) = (a.rows(), a.cols());
        let mut e = Echelon::new(r + n);
        for j in 0..n {
            let mut v = a.column(j);
            v.resize(r + n, Int::ZERO);
            v[r + j] = Int::ONE;
            e.insert(v);
        }
        SpanSolver { rows: r, cols: n, echelon: e }
    }

    pub fn solve(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let r = self.rows;
        let mut w = v.to_vec();
        w.resize(r + self.cols, Int::ZERO);
        for c in 0..r {
            if w[c].is_zero() {
                continue;
            }
            let ri = self.echelon.pivot_row[c]?;
            let row = &self.echelon.rows[ri];
            let q = w[c].div_exact(&row[c])?;
            sub_scaled(&mut w, &q, row, c);
        }
        Some(w[r..].iter().map(|x| -x).collect())
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(dim {}, [", self.dim)?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (i, x) in r.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Int> {
        xs.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn canonical_basis_of_spanning_set() {
        let l = Lattice::from_vectors(2, vec![v(&[2, 0]), v(&[0, 2]), v(&[1, 1])]).unwrap();
        assert_eq!(l.basis(), &[v(&[1, 1]), v(&[0, 2])]);
        let full = Lattice::full(2);
        let q = full.quotient_invariants(&l).unwrap();
        assert_eq!(q, vec![Int::from(2)]);
    }

    #[test]
    fn reduced_above_every_pivot() {
        let l = Lattice::from_vectors(3, vec![v(&[1, 3, 0]), v(&[0, 2, 1]), v(&[0, 0, 2])]).unwrap();
        let (b, p) = (l.basis(), l.pivots());
        for j in 0..b.len() {
            for i in 0..j {
                let x = &b[i][p[j]];
                assert!(!x.is_negative() && *x < b[j][p[j]], "{l:?}");
            }
        }
        assert_eq!(l, Lattice::from_vectors(3, vec![v(&[0, 0, 2]), v(&[0, 2, 1]), v(&[1, 3, 0])]).unwrap());
    }

    #[test]
    fn quotient_two_four() {
        let l = Lattice::from_vectors(2, vec![v(&[2, 0]), v(&[0, 4])]).unwrap();
        assert_eq!(Lattice::full(2).quotient_invariants(&l).unwrap(), v(&[2, 4]));
    }

    #[test]
    fn membership_and_reduction() {
        let l = Lattice::from_vectors(3, vec![v(&[2, 1, 0]), v(&[0, 3, 3])]).unwrap();
        assert!(l.contains(&v(&[4, 5, 3])));
        assert!(!l.contains(&v(&[1, 0, 0])));
        let r = l.reduce(&v(&[5, 7, 1]));
        let diff: Vec<Int> = v(&[5, 7, 1]).iter().zip(&r).map(|(a, b)| a - b).collect();
        assert!(l.contains(&diff));
        assert_eq!(l.reduce(&r), r);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Lattice::from_vectors(2, vec![v(&[2, 0]), v(&[0, 1])]).unwrap();
        let b = Lattice::from_vectors(2, vec![v(&[3, 0]), v(&[0, 2])]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, Lattice::from_vectors(2, vec![v(&[6, 0]), v(&[0, 2])]).unwrap());
        assert_eq!(a.sum(&b).unwrap(), Lattice::full(2));
        let t = Lattice::tail(3, 1);
        let c = Lattice::from_vectors(3, vec![v(&[1, 1, 0]), v(&[0, 2, 1])]).unwrap();
        assert_eq!(c.intersect(&t).unwrap(), Lattice::from_vectors(3, vec![v(&[0, 2, 1])]).unwrap());
    }

    #[test]
    fn kernels_and_preimages() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        let k = kernel(&m);
        assert_eq!(k.rank(), 2);
        for b in k.basis() {
            assert!(m.mul_vec(b).iter().all(Int::is_zero));
        }
        let m2 = IntMatrix::from_rows(&[[2]]);
        let target = Lattice::from_vectors(1, vec![v(&[4])]).unwrap();
        assert_eq!(preimage(&m2, &target).unwrap().basis(), &[v(&[2])]);
    }

    #[test]
    fn span_solver() {
        let a = IntMatrix::from_rows(&[[2, 3], [0, 5]]);
        let s = SpanSolver::new(&a);
        let x = s.solve(&v(&[8, 10])).unwrap();
        assert_eq!(a.mul_vec(&x), v(&[8, 10]));
        assert!(s.solve(&v(&[1, 0])).is_none());
    }
}
