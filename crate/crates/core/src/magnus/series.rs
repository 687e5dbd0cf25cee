//! Degree-truncated free associative ring `Z<X_1, ..., X_r> / (degree > N)`.
//!
//! Coefficients of monomials of degrees `1..=N` are stored densely, ordered
//! by degree and then lexicographically. Letters inside monomials are 0-based
//! (`X_1` is letter `0`).

use std::fmt;

use crate::error::{Error, Result};
use crate::int::Int;

use super::word::FreeWord;

/// Number of monomials of degree `1..=n` in `rank` letters.
pub fn monomial_count(rank: usize, n: usize) -> usize {
    (1..=n).map(|d| rank.pow(d as u32)).sum()
}

/// Start of the degree-`d` block.
pub fn degree_offset(rank: usize, d: usize) -> usize {
    monomial_count(rank, d.saturating_sub(1))
}

pub fn monomial_index(rank: usize, m: &[usize]) -> usize {
    let mut inner = 0;
    for &l in m {
        debug_assert!(l < rank);
        inner = inner * rank + l;
    }
    degree_offset(rank, m.len()) + inner
}

/// Inverse of [`monomial_index`].
pub fn monomial_at(rank: usize, mut idx: usize) -> Vec<usize> {
    let mut d = 1;
    loop {
        let size = rank.pow(d as u32);
        if idx < size {
            let mut m = vec![0; d];
            for k in (0..d).rev() {
                m[k] = idx % rank;
                idx /= rank;
            }
            return m;
        }
        idx -= size;
        d += 1;
    }
}

pub fn format_monomial(m: &[usize]) -> String {
    m.iter().map(|l| format!("x{}", l + 1)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    rank: usize,
    max_degree: usize,
    constant: Int,
    coeffs: Vec<Int>,
}

impl TruncSeries {
    pub fn zero(rank: usize, max_degree: usize) -> Self {
        TruncSeries { rank, max_degree, constant: Int::ZERO, coeffs: vec![Int::ZERO; monomial_count(rank, max_degree)] }
    }

    pub fn one(rank: usize, max_degree: usize) -> Self {
        let mut s = Self::zero(rank, max_degree);
        s.constant = Int::ONE;
        s
    }

    pub fn scalar(rank: usize, max_degree: usize, c: Int) -> Self {
        let mut s = Self::zero(rank, max_degree);
        s.constant = c;
        s
    }

    /// The variable `X_letter` (0-based).
    pub fn variable(rank: usize, max_degree: usize, letter: usize) -> Self {
        let mut s = Self::zero(rank, max_degree);
        if max_degree >= 1 {
            s.coeffs[letter] = Int::ONE;
        }
        s
    }

    /// A monomial with coefficient one; `Err` when it exceeds the degree bound.
    pub fn monomial(rank: usize, max_degree: usize, m: &[usize]) -> Result<Self> {
        if m.len() > max_degree {
            return Err(Error::DegreeOverflow(m.len()));
        }
        let mut s = Self::zero(rank, max_degree);
        if m.is_empty() {
            s.constant = Int::ONE;
        } else {
            s.coeffs[monomial_index(rank, m)] = Int::ONE;
        }
        Ok(s)
    }

    pub fn from_vector(rank: usize, max_degree: usize, constant: Int, coeffs: Vec<Int>) -> Result<Self> {
        let n = monomial_count(rank, max_degree);
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: coeffs.len() });
        }
        Ok(TruncSeries { rank, max_degree, constant, coeffs })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn constant(&self) -> &Int {
        &self.constant
    }

    /// Coefficients of monomials of degree `1..=N`.
    pub fn vector(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn into_vector(self) -> Vec<Int> {
        self.coeffs
    }

    pub fn coeff(&self, m: &[usize]) -> Int {
        if m.is_empty() {
            self.constant.clone()
        } else if m.len() > self.max_degree {
            Int::ZERO
        } else {
            self.coeffs[monomial_index(self.rank, m)].clone()
        }
    }

    pub fn set_coeff(&mut self, m: &[usize], c: Int) {
        if m.is_empty() {
            self.constant = c;
        } else if m.len() <= self.max_degree {
            let i = monomial_index(self.rank, m);
            self.coeffs[i] = c;
        }
    }

    /// Coefficients of the degree-`d` block (`d >= 1`).
    pub fn component(&self, d: usize) -> &[Int] {
        let start = degree_offset(self.rank, d);
        &self.coeffs[start..start + self.rank.pow(d as u32)]
    }

    /// Nonzero terms as `(monomial, coefficient)`, constant term first.
    pub fn terms(&self) -> Vec<(Vec<usize>, Int)> {
        let mut out = Vec::new();
        if !self.constant.is_zero() {
            out.push((Vec::new(), self.constant.clone()));
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.push((monomial_at(self.rank, i), c.clone()));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(Int::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.constant.is_one() && self.coeffs.iter().all(Int::is_zero)
    }

    /// Lowest degree `>= 1` with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        let i = self.coeffs.iter().position(|c| !c.is_zero())?;
        Some(monomial_at(self.rank, i).len())
    }

    fn check(&self, other: &TruncSeries) {
        assert_eq!((self.rank, self.max_degree), (other.rank, other.max_degree), "series shapes differ");
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        self.check(other);
        TruncSeries {
            rank: self.rank,
            max_degree: self.max_degree,
            constant: &self.constant + &other.constant,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        self.check(other);
        TruncSeries {
            rank: self.rank,
            max_degree: self.max_degree,
            constant: &self.constant - &other.constant,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> TruncSeries {
        self.scale(&Int::from(-1))
    }

    pub fn scale(&self, s: &Int) -> TruncSeries {
        TruncSeries {
            rank: self.rank,
            max_degree: self.max_degree,
            constant: &self.constant * s,
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    /// `self - constant`.
    pub fn augmentation_part(&self) -> TruncSeries {
        let mut s = self.clone();
        s.constant = Int::ZERO;
        s
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        self.check(other);
        let r = self.rank;
        let n = self.max_degree;
        let mut out = TruncSeries::zero(r, n);
        out.constant = &self.constant * &other.constant;
        if !self.constant.is_zero() {
            for (o, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
                if !b.is_zero() {
                    o.add_mul(&self.constant, b);
                }
            }
        }
        if !other.constant.is_zero() {
            for (o, a) in out.coeffs.iter_mut().zip(&self.coeffs) {
                if !a.is_zero() {
                    o.add_mul(&other.constant, a);
                }
            }
        }
        for d1 in 1..n {
            let a_blk = self.component(d1);
            if a_blk.iter().all(Int::is_zero) {
                continue;
            }
            for d2 in 1..=(n - d1) {
                let b_blk = other.component(d2);
                let size2 = r.pow(d2 as u32);
                let base = degree_offset(r, d1 + d2);
                for (ia, a) in a_blk.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let row = base + ia * size2;
                    for (ib, b) in b_blk.iter().enumerate() {
                        if !b.is_zero() {
                            out.coeffs[row + ib].add_mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Inverse of a series whose constant term is `±1`.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let c = self.constant.clone();
        if !c.abs().is_one() {
            return Err(Error::PreconditionViolated("series is not a unit".into()));
        }
        // (c + U)^{-1} = c (1 + cU)^{-1} = c Σ (-cU)^k
        let u = self.augmentation_part().scale(&c);
        let mut term = TruncSeries::one(self.rank, self.max_degree);
        let mut acc = term.clone();
        let minus_u = u.neg();
        for _ in 0..self.max_degree {
            term = term.mul(&minus_u);
            acc = acc.add(&term);
        }
        Ok(acc.scale(&c))
    }

    /// Integer power of a series with constant term 1, via the binomial expansion.
    pub fn pow(&self, e: i64) -> TruncSeries {
        self.pow_int(&Int::from(e))
    }

    /// `self^e` through the binomial series, which terminates on the augmentation part.
    pub fn pow_int(&self, e: &Int) -> TruncSeries {
        assert!(self.constant.is_one(), "power requires constant term one");
        let u = self.augmentation_part();
        let mut acc = TruncSeries::one(self.rank, self.max_degree);
        let mut upow = TruncSeries::one(self.rank, self.max_degree);
        for k in 1..=self.max_degree as u32 {
            upow = upow.mul(&u);
            if upow.is_zero() {
                break;
            }
            let b = Int::binomial(e, k);
            if !b.is_zero() {
                acc = acc.add(&upow.scale(&b));
            }
        }
        acc
    }

    /// Group commutator `a^{-1} b^{-1} a b` of unit series.
    pub fn group_comm(&self, other: &TruncSeries) -> TruncSeries {
        let ai = self.inverse().expect("unit");
        let bi = other.inverse().expect("unit");
        ai.mul(&bi).mul(self).mul(other)
    }

    /// Ring commutator `ab - ba`.
    pub fn lie_bracket(&self, other: &TruncSeries) -> TruncSeries {
        self.mul(other).sub(&other.mul(self))
    }

    /// Drops every term of degree above `n`.
    pub fn truncate(&self, n: usize) -> TruncSeries {
        let n = n.min(self.max_degree);
        TruncSeries {
            rank: self.rank,
            max_degree: n,
            constant: self.constant.clone(),
            coeffs: self.coeffs[..monomial_count(self.rank, n)].to_vec(),
        }
    }

    /// Keeps only degrees `lo..=hi` of the non-constant part.
    pub fn degree_window(&self, lo: usize, hi: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(self.rank, self.max_degree);
        for d in lo.max(1)..=hi.min(self.max_degree) {
            let start = degree_offset(self.rank, d);
            let len = self.rank.pow(d as u32);
            s.coeffs[start..start + len].clone_from_slice(&self.coeffs[start..start + len]);
        }
        s
    }

    /// Reverses every monomial (the ring anti-automorphism fixing each `X_i`).
    pub fn reverse(&self) -> TruncSeries {
        let mut s = TruncSeries::zero(self.rank, self.max_degree);
        s.constant = self.constant.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = monomial_at(self.rank, i);
                m.reverse();
                s.coeffs[monomial_index(self.rank, &m)] = c.clone();
            }
        }
        s
    }

    /// Image under the anti-automorphism of `Z[F]` induced by `w -> w^{-1}`.
    pub fn antipode(&self) -> TruncSeries {
        let images: Vec<TruncSeries> =
            (0..self.rank).map(|l| generator_power(self.rank, self.max_degree, l, -1).augmentation_part()).collect();
        self.reverse().substitute(&images).expect("images are augmentation elements")
    }

    /// `Σ c_m m'` over the monomials `m = x_letter m'` of `self` (0-based letter).
    pub fn left_letter_quotient(&self, letter: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(self.rank, self.max_degree);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let m = monomial_at(self.rank, i);
            if m[0] == letter {
                s.set_coeff(&m[1..], c.clone());
            }
        }
        s
    }

    /// Ring homomorphism `X_i -> images[i]`; images must have zero constant term.
    pub fn substitute(&self, images: &[TruncSeries]) -> Result<TruncSeries> {
        if images.len() != self.rank {
            return Err(Error::RankMismatch(images.len(), self.rank));
        }
        let (r2, n2) = images.first().map_or((0, self.max_degree), |s| (s.rank, s.max_degree));
        if images.iter().any(|s| !s.constant.is_zero() || s.rank != r2 || s.max_degree != n2) {
            return Err(Error::IllFormedMap("substitution images must be augmentation elements of one ring".into()));
        }
        let mut out = TruncSeries::scalar(r2, n2, self.constant.clone());
        // prods[idx] = image of the monomial with that index, built degree by degree.
        let mut prev: Vec<TruncSeries> = Vec::new();
        for d in 1..=self.max_degree.min(n2) {
            let blk = self.component(d);
            let mut cur = Vec::with_capacity(blk.len());
            for inner in 0..self.rank.pow(d as u32) {
                let last = inner % self.rank;
                let p = if d == 1 { images[last].clone() } else { prev[inner / self.rank].mul(&images[last]) };
                if !blk[inner].is_zero() {
                    out = out.add(&p.scale(&blk[inner]));
                }
                cur.push(p);
            }
            prev = cur;
        }
        Ok(out)
    }
}

/// Magnus expansion of a word: `x_i -> 1 + X_i`, truncated above degree `n`.
pub fn expand(w: &FreeWord, n: usize) -> TruncSeries {
    let r = w.rank();
    let mut acc = TruncSeries::one(r, n);
    for &(g, e) in w.syllables() {
        acc = acc.mul(&generator_power(r, n, g - 1, e));
    }
    acc
}

/// `(1 + X_letter)^e` truncated.
pub fn generator_power(rank: usize, n: usize, letter: usize, e: i64) -> TruncSeries {
    let mut s = TruncSeries::one(rank, n);
    let ei = Int::from(e);
    let mut m = Vec::new();
    for k in 1..=n as u32 {
        m.push(letter);
        s.set_coeff(&m, Int::binomial(&ei, k));
    }
    s
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", format_monomial(m))?;
            } else {
                write!(f, "{a}{}", format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries(N={}: {self})", self.max_degree)
    }
}
