use std::fmt;

use crate::error::{Error, Result};

/// Freely reduced word in `x_1, ..., x_rank`. Generator indices are 1-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    syllables: Vec<(usize, i64)>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, syllables: Vec::new() }
    }

    /// The generator `x_i`, `1 <= i <= rank`.
    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "generator index out of range");
        FreeWord { rank, syllables: vec![(i, 1)] }
    }

    pub fn from_syllables(rank: usize, syllables: &[(usize, i64)]) -> Result<Self> {
        let mut w = Self::identity(rank);
        for &(g, e) in syllables {
            if g == 0 || g > rank {
                return Err(Error::RankMismatch(g, rank));
            }
            w.push(g, e);
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((g, e));
    }

    fn check_rank(&self, other: &FreeWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn mul(&self, other: &FreeWord) -> Result<FreeWord> {
        self.check_rank(other)?;
        let mut w = self.clone();
        for &(g, e) in &other.syllables {
            w.push(g, e);
        }
        Ok(w)
    }

    pub fn inv(&self) -> FreeWord {
        FreeWord { rank: self.rank, syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    /// `[u, v] = u^{-1} v^{-1} u v`.
    pub fn comm(&self, other: &FreeWord) -> Result<FreeWord> {
        self.inv().mul(&other.inv())?.mul(self)?.mul(other)
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inv() } else { self.clone() };
        let mut w = FreeWord::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            for &(g, e) in &base.syllables {
                w.push(g, e);
            }
        }
        w
    }

    /// Same word read in a free group of larger rank.
    pub fn widen(&self, rank: usize) -> Result<FreeWord> {
        if let Some(&(g, _)) = self.syllables.iter().find(|(g, _)| *g > rank) {
            return Err(Error::RankMismatch(g, rank));
        }
        Ok(FreeWord { rank, syllables: self.syllables.clone() })
    }

    /// Substitutes `images[i - 1]` for `x_i`.
    pub fn substitute(&self, images: &[FreeWord]) -> Result<FreeWord> {
        if images.len() != self.rank {
            return Err(Error::RankMismatch(images.len(), self.rank));
        }
        let target = images.first().map_or(0, |w| w.rank);
        let mut out = FreeWord::identity(target);
        for &(g, e) in &self.syllables {
            out = out.mul(&images[g - 1].pow(e))?;
        }
        Ok(out)
    }

    /// Exponent sum of each generator.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for &(g, e) in &self.syllables {
            v[g - 1] += e;
        }
        v
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (k, &(g, e)) in self.syllables.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_commutator() {
        let x1 = FreeWord::generator(2, 1);
        let x2 = FreeWord::generator(2, 2);
        assert!(x1.mul(&x1.inv()).unwrap().is_identity());
        let c = x1.comm(&x2).unwrap();
        assert_eq!(c.syllables(), &[(1, -1), (2, -1), (1, 1), (2, 1)]);
        assert_eq!(c.pow(3).length(), 12);
        assert_eq!(c.pow(3).syllables().len(), 12);
        assert!(x1.mul(&FreeWord::generator(3, 1)).is_err());
    }
}
