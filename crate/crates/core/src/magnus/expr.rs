//! Shared word expressions used as constructive witnesses.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::series::{expand, generator_power, TruncSeries};
use super::word::FreeWord;

/// Longest word [`WordExpr::to_word`] will materialize.
pub const WORD_LENGTH_LIMIT: u64 = 2_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Identity,
    Gen(usize),
    Word(FreeWord),
    Inv(WordExpr),
    Mul(WordExpr, WordExpr),
    Pow(WordExpr, i64),
    Comm(WordExpr, WordExpr),
}

/// An element of a free group written as an expression DAG over 1-based generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WordExpr(Arc<Node>);

impl WordExpr {
    pub fn identity() -> Self {
        WordExpr(Arc::new(Node::Identity))
    }

    pub fn generator(i: usize) -> Self {
        WordExpr(Arc::new(Node::Gen(i)))
    }

    pub fn word(w: FreeWord) -> Self {
        WordExpr(Arc::new(Node::Word(w)))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn is_identity_node(&self) -> bool {
        matches!(*self.0, Node::Identity)
    }

    pub fn mul(&self, other: &WordExpr) -> WordExpr {
        if self.is_identity_node() {
            return other.clone();
        }
        if other.is_identity_node() {
            return self.clone();
        }
        WordExpr(Arc::new(Node::Mul(self.clone(), other.clone())))
    }

    pub fn inv(&self) -> WordExpr {
        match &*self.0 {
            Node::Identity => self.clone(),
            Node::Inv(a) => a.clone(),
            _ => WordExpr(Arc::new(Node::Inv(self.clone()))),
        }
    }

    pub fn pow(&self, n: i64) -> WordExpr {
        match n {
            0 => WordExpr::identity(),
            1 => self.clone(),
            -1 => self.inv(),
            _ if self.is_identity_node() => self.clone(),
            _ => WordExpr(Arc::new(Node::Pow(self.clone(), n))),
        }
    }

    pub fn comm(&self, other: &WordExpr) -> WordExpr {
        if self.is_identity_node() || other.is_identity_node() {
            return WordExpr::identity();
        }
        WordExpr(Arc::new(Node::Comm(self.clone(), other.clone())))
    }

    /// Largest generator index mentioned.
    pub fn max_generator(&self) -> usize {
        let mut memo = HashMap::new();
        self.max_gen_memo(&mut memo)
    }

    fn max_gen_memo(&self, memo: &mut HashMap<*const Node, usize>) -> usize {
        let key = Arc::as_ptr(&self.0);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let v = match &*self.0 {
            Node::Identity => 0,
            Node::Gen(i) => *i,
            Node::Word(w) => w.syllables().iter().map(|s| s.0).max().unwrap_or(0),
            Node::Inv(a) | Node::Pow(a, _) => a.max_gen_memo(memo),
            Node::Mul(a, b) | Node::Comm(a, b) => a.max_gen_memo(memo).max(b.max_gen_memo(memo)),
        };
        memo.insert(key, v);
        v
    }

    /// Letter count of the fully multiplied-out (unreduced) word.
    pub fn expanded_length(&self) -> u64 {
        let mut memo = HashMap::new();
        self.len_memo(&mut memo)
    }

    fn len_memo(&self, memo: &mut HashMap<*const Node, u64>) -> u64 {
        let key = Arc::as_ptr(&self.0);
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let v = match &*self.0 {
            Node::Identity => 0,
            Node::Gen(_) => 1,
            Node::Word(w) => w.length(),
            Node::Inv(a) => a.len_memo(memo),
            Node::Pow(a, n) => a.len_memo(memo).saturating_mul(n.unsigned_abs()),
            Node::Mul(a, b) => a.len_memo(memo).saturating_add(b.len_memo(memo)),
            Node::Comm(a, b) => a.len_memo(memo).saturating_add(b.len_memo(memo)).saturating_mul(2),
        };
        memo.insert(key, v);
        v
    }

    /// Multiplies the expression out to a reduced word.
    pub fn to_word(&self, rank: usize) -> Result<FreeWord> {
        if self.max_generator() > rank {
            return Err(Error::RankMismatch(self.max_generator(), rank));
        }
        let len = self.expanded_length();
        if len > WORD_LENGTH_LIMIT {
            return Err(Error::ResourceBound(format!("witness word of length {len}")));
        }
        let mut memo = HashMap::new();
        Ok(self.word_memo(rank, &mut memo))
    }

    fn word_memo(&self, rank: usize, memo: &mut HashMap<*const Node, FreeWord>) -> FreeWord {
        let key = Arc::as_ptr(&self.0);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let v = match &*self.0 {
            Node::Identity => FreeWord::identity(rank),
            Node::Gen(i) => FreeWord::generator(rank, *i),
            Node::Word(w) => w.widen(rank).expect("checked rank"),
            Node::Inv(a) => a.word_memo(rank, memo).inv(),
            Node::Pow(a, n) => a.word_memo(rank, memo).pow(*n),
            Node::Mul(a, b) => a.word_memo(rank, memo).mul(&b.word_memo(rank, memo)).expect("same rank"),
            Node::Comm(a, b) => a.word_memo(rank, memo).comm(&b.word_memo(rank, memo)).expect("same rank"),
        };
        memo.insert(key, v.clone());
        v
    }

    /// Magnus expansion in rank `rank`, truncated above degree `n`, without multiplying out.
    pub fn expand(&self, rank: usize, n: usize) -> Result<TruncSeries> {
        if self.max_generator() > rank {
            return Err(Error::RankMismatch(self.max_generator(), rank));
        }
        let mut memo = HashMap::new();
        Ok(self.expand_memo(rank, n, &mut memo))
    }

    fn expand_memo(&self, rank: usize, n: usize, memo: &mut HashMap<*const Node, TruncSeries>) -> TruncSeries {
        let key = Arc::as_ptr(&self.0);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let v = match &*self.0 {
            Node::Identity => TruncSeries::one(rank, n),
            Node::Gen(i) => generator_power(rank, n, i - 1, 1),
            Node::Word(w) => expand(&w.widen(rank).expect("checked rank"), n),
            Node::Inv(a) => a.expand_memo(rank, n, memo).inverse().expect("group-like"),
            Node::Pow(a, k) => a.expand_memo(rank, n, memo).pow(*k),
            Node::Mul(a, b) => a.expand_memo(rank, n, memo).mul(&b.expand_memo(rank, n, memo)),
            Node::Comm(a, b) => a.expand_memo(rank, n, memo).group_comm(&b.expand_memo(rank, n, memo)),
        };
        memo.insert(key, v.clone());
        v
    }

    /// Replaces `x_i` by `images[i - 1]`.
    pub fn substitute(&self, images: &[WordExpr]) -> Result<WordExpr> {
        if self.max_generator() > images.len() {
            return Err(Error::RankMismatch(self.max_generator(), images.len()));
        }
        let mut memo = HashMap::new();
        Ok(self.subst_memo(images, &mut memo))
    }

    fn subst_memo(&self, images: &[WordExpr], memo: &mut HashMap<*const Node, WordExpr>) -> WordExpr {
        let key = Arc::as_ptr(&self.0);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let v = match &*self.0 {
            Node::Identity => WordExpr::identity(),
            Node::Gen(i) => images[i - 1].clone(),
            Node::Word(w) => {
                let mut acc = WordExpr::identity();
                for &(g, e) in w.syllables() {
                    acc = acc.mul(&images[g - 1].pow(e));
                }
                acc
            }
            Node::Inv(a) => a.subst_memo(images, memo).inv(),
            Node::Pow(a, k) => a.subst_memo(images, memo).pow(*k),
            Node::Mul(a, b) => a.subst_memo(images, memo).mul(&b.subst_memo(images, memo)),
            Node::Comm(a, b) => a.subst_memo(images, memo).comm(&b.subst_memo(images, memo)),
        };
        memo.insert(key, v.clone());
        v
    }

    fn is_atomic(&self) -> bool {
        match &*self.0 {
            Node::Identity | Node::Gen(_) | Node::Comm(..) => true,
            Node::Word(w) => w.syllables().len() <= 1 && w.syllables().first().is_none_or(|s| s.1 == 1),
            _ => false,
        }
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_atomic() {
            write!(f, "{self}")
        } else {
            write!(f, "({self})")
        }
    }
}

impl From<FreeWord> for WordExpr {
    fn from(w: FreeWord) -> Self {
        WordExpr::word(w)
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Identity => write!(f, "1"),
            Node::Gen(i) => write!(f, "x{i}"),
            Node::Word(w) => write!(f, "{w}"),
            Node::Inv(a) => {
                a.fmt_atom(f)?;
                write!(f, "^-1")
            }
            Node::Pow(a, n) => {
                a.fmt_atom(f)?;
                write!(f, "^{n}")
            }
            Node::Mul(a, b) => write!(f, "{a} {b}"),
            Node::Comm(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

impl fmt::Debug for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordExpr({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expression_and_word_agree() {
        let a = WordExpr::generator(1);
        let b = WordExpr::generator(2);
        let e = a.comm(&b).pow(2).mul(&a.pow(2).mul(&b).inv());
        let w = e.to_word(2).unwrap();
        assert_eq!(e.expand(2, 4).unwrap(), expand(&w, 4));
        assert_eq!(e.to_string(), "[x1,x2]^2 (x1^2 x2)^-1");
    }

    #[test]
    fn shared_subexpressions_stay_cheap() {
        let mut e = WordExpr::generator(1).comm(&WordExpr::generator(2));
        for _ in 0..40 {
            e = e.mul(&e);
        }
        assert!(e.to_word(2).is_err());
        assert!(e.expand(2, 3).unwrap().low_degree().unwrap() >= 2);
    }
}
