//! Hall bases of basic commutators.
//!
//! Order: generators `x_1 < x_2 < ...`, heavier commutators are larger, and
//! within a weight commutators are ordered by the positions of their two
//! factors. `[u, v]` is basic when `u > v` and, for `u = [u1, u2]`, `u2 <= v`.

use std::fmt;

use crate::error::{Error, Result};

use super::series::{expand, TruncSeries};
use super::word::FreeWord;

/// Binary commutator tree over 1-based generator leaves.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Commutator {
    Gen(usize),
    Bracket(Box<Commutator>, Box<Commutator>),
}

impl Commutator {
    pub fn bracket(u: Commutator, v: Commutator) -> Commutator {
        Commutator::Bracket(Box::new(u), Box::new(v))
    }

    pub fn weight(&self) -> usize {
        match self {
            Commutator::Gen(_) => 1,
            Commutator::Bracket(u, v) => u.weight() + v.weight(),
        }
    }

    pub fn to_word(&self, rank: usize) -> FreeWord {
        match self {
            Commutator::Gen(i) => FreeWord::generator(rank, *i),
            Commutator::Bracket(u, v) => u.to_word(rank).comm(&v.to_word(rank)).expect("same rank"),
        }
    }

    /// Leading homogeneous component computed recursively as `ab - ba`.
    pub fn lie_polynomial(&self, rank: usize, n: usize) -> TruncSeries {
        match self {
            Commutator::Gen(i) => TruncSeries::variable(rank, n, i - 1),
            Commutator::Bracket(u, v) => u.lie_polynomial(rank, n).lie_bracket(&v.lie_polynomial(rank, n)),
        }
    }
}

impl fmt::Display for Commutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Commutator::Gen(i) => write!(f, "x{i}"),
            Commutator::Bracket(u, v) => write!(f, "[{u},{v}]"),
        }
    }
}

impl fmt::Debug for Commutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug)]
struct Entry {
    weight: usize,
    left: Option<usize>,
    right: Option<usize>,
}

/// Basic commutators of weights `1..=max_weight`, in Hall order.
#[derive(Clone, Debug)]
pub struct HallBasis {
    rank: usize,
    max_weight: usize,
    entries: Vec<Entry>,
    ranges: Vec<std::ops::Range<usize>>,
}

/// Default upper bound on nilpotency class and commutator weight.
pub const MAX_CLASS: usize = 4;

impl HallBasis {
    pub fn new(rank: usize, max_weight: usize) -> Self {
        let mut entries: Vec<Entry> = (0..rank).map(|_| Entry { weight: 1, left: None, right: None }).collect();
        let mut ranges = vec![0..0, 0..rank];
        for w in 2..=max_weight {
            let start = entries.len();
            let mut fresh = Vec::new();
            for u in 0..start {
                let wu = entries[u].weight;
                if wu >= w {
                    continue;
                }
                let wv = w - wu;
                for v in ranges[wv].clone() {
                    if u <= v {
                        continue;
                    }
                    if let Some(u2) = entries[u].right {
                        if u2 > v {
                            continue;
                        }
                    }
                    fresh.push(Entry { weight: w, left: Some(u), right: Some(v) });
                }
            }
            entries.extend(fresh);
            ranges.push(start..entries.len());
        }
        HallBasis { rank, max_weight, entries, ranges }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Indices of the weight-`w` stratum.
    pub fn stratum(&self, w: usize) -> std::ops::Range<usize> {
        self.ranges.get(w).cloned().unwrap_or(0..0)
    }

    pub fn count(&self, w: usize) -> usize {
        self.stratum(w).len()
    }

    pub fn weight(&self, i: usize) -> usize {
        self.entries[i].weight
    }

    pub fn commutator(&self, i: usize) -> Commutator {
        let e = &self.entries[i];
        match (e.left, e.right) {
            (Some(u), Some(v)) => Commutator::bracket(self.commutator(u), self.commutator(v)),
            _ => Commutator::Gen(i + 1),
        }
    }

    /// Position of a commutator in the basis; `NotBasic` when it violates the Hall condition.
    pub fn index_of(&self, c: &Commutator) -> Result<usize> {
        match c {
            Commutator::Gen(i) => {
                if *i == 0 || *i > self.rank {
                    return Err(Error::RankMismatch(*i, self.rank));
                }
                Ok(i - 1)
            }
            Commutator::Bracket(u, v) => {
                if c.weight() > self.max_weight {
                    return Err(Error::WeightExceedsDegree { weight: c.weight(), degree: self.max_weight });
                }
                let iu = self.index_of(u)?;
                let iv = self.index_of(v)?;
                let w = c.weight();
                self.stratum(w)
                    .find(|&k| self.entries[k].left == Some(iu) && self.entries[k].right == Some(iv))
                    .ok_or_else(|| Error::NotBasic(c.to_string()))
            }
        }
    }

    pub fn word(&self, i: usize) -> FreeWord {
        self.commutator(i).to_word(self.rank)
    }
}

/// Witt's count of basic commutators of weight `k` in `rank` generators.
pub fn witt_number(rank: usize, k: usize) -> usize {
    let mut total: i64 = 0;
    for d in 1..=k {
        if k.is_multiple_of(d) {
            total += mobius(d) * (rank as i64).pow((k / d) as u32);
        }
    }
    (total / k as i64) as usize
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn hall_basis(rank: usize, max_weight: usize) -> Result<HallBasis> {
    if max_weight > MAX_CLASS {
        return Err(Error::InvalidConfig(format!("weight {max_weight} exceeds the class bound {MAX_CLASS}")));
    }
    Ok(HallBasis::new(rank, max_weight))
}

/// Degree-`weight` component of `expand(c) - 1`.
pub fn lie_element(c: &Commutator, rank: usize, n: usize) -> Result<TruncSeries> {
    let w = c.weight();
    if w > n {
        return Err(Error::WeightExceedsDegree { weight: w, degree: n });
    }
    Ok(expand(&c.to_word(rank), n).degree_window(w, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_counts() {
        let h = HallBasis::new(2, 4);
        assert_eq!((1..=4).map(|w| h.count(w)).collect::<Vec<_>>(), vec![2, 1, 2, 3]);
        assert_eq!(HallBasis::new(1, 2).count(2), 0);
        assert_eq!(HallBasis::new(3, 2).count(2), 3);
        for r in 1..=4 {
            let h = HallBasis::new(r, 4);
            for w in 1..=4 {
                assert_eq!(h.count(w), witt_number(r, w), "rank {r} weight {w}");
            }
        }
    }

    #[test]
    fn weight_three_shape() {
        let h = HallBasis::new(2, 3);
        let names: Vec<String> = h.stratum(3).map(|i| h.commutator(i).to_string()).collect();
        assert_eq!(names, vec!["[[x2,x1],x1]", "[[x2,x1],x2]"]);
    }

    #[test]
    fn lie_elements_match_brackets() {
        let h = HallBasis::new(3, 4);
        for i in 0..h.len() {
            let c = h.commutator(i);
            assert_eq!(lie_element(&c, 3, 4).unwrap(), c.lie_polynomial(3, 4), "{c}");
        }
        let c = Commutator::bracket(
            Commutator::bracket(Commutator::Gen(2), Commutator::Gen(1)),
            Commutator::bracket(Commutator::Gen(2), Commutator::Gen(1)),
        );
        assert!(matches!(h.index_of(&c), Err(Error::NotBasic(_))));
    }
}
