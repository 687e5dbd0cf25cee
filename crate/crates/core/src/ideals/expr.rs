//! Two-sided ideal expressions over the free group ring.
//!
//! Grammar, loosest first: `a + b`, `a & b` (intersection), products written
//! `a*b` or by juxtaposition, then `a^k`. Atoms are `f` (augmentation ideal),
//! `0`, any other single lowercase letter naming a relator set (`r`, `s`, ...),
//! `delta(name)` for the augmentation ideal of a named subgroup, and
//! parenthesized expressions. So `frf + f^2r` reads as `f·r·f + f²·r`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IdealExpr {
    Zero,
    Aug,
    Rel(String),
    Delta(String),
    Sum(Arc<IdealExpr>, Arc<IdealExpr>),
    Product(Arc<IdealExpr>, Arc<IdealExpr>),
    Intersect(Arc<IdealExpr>, Arc<IdealExpr>),
    Power(Arc<IdealExpr>, u32),
}

impl IdealExpr {
    pub fn aug() -> Self {
        IdealExpr::Aug
    }

    pub fn rel(name: &str) -> Self {
        IdealExpr::Rel(name.to_string())
    }

    pub fn delta(name: &str) -> Self {
        IdealExpr::Delta(name.to_string())
    }

    pub fn aug_power(k: u32) -> Self {
        IdealExpr::Aug.pow(k)
    }

    pub fn add(&self, other: &IdealExpr) -> Self {
        IdealExpr::Sum(Arc::new(self.clone()), Arc::new(other.clone()))
    }

    pub fn mul(&self, other: &IdealExpr) -> Self {
        IdealExpr::Product(Arc::new(self.clone()), Arc::new(other.clone()))
    }

    pub fn meet(&self, other: &IdealExpr) -> Self {
        IdealExpr::Intersect(Arc::new(self.clone()), Arc::new(other.clone()))
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(k >= 1, "ideal powers start at 1");
        if k == 1 {
            return self.clone();
        }
        IdealExpr::Power(Arc::new(self.clone()), k)
    }

    /// Relator-set names and subgroup names mentioned by the expression.
    pub fn atoms(&self) -> (Vec<String>, Vec<String>) {
        let mut rels = Vec::new();
        let mut subs = Vec::new();
        self.collect(&mut rels, &mut subs);
        rels.sort();
        rels.dedup();
        subs.sort();
        subs.dedup();
        (rels, subs)
    }

    fn collect(&self, rels: &mut Vec<String>, subs: &mut Vec<String>) {
        match self {
            IdealExpr::Zero | IdealExpr::Aug => {}
            IdealExpr::Rel(n) => rels.push(n.clone()),
            IdealExpr::Delta(n) => subs.push(n.clone()),
            IdealExpr::Sum(a, b) | IdealExpr::Product(a, b) | IdealExpr::Intersect(a, b) => {
                a.collect(rels, subs);
                b.collect(rels, subs);
            }
            IdealExpr::Power(a, _) => a.collect(rels, subs),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            IdealExpr::Sum(..) => 0,
            IdealExpr::Intersect(..) => 1,
            IdealExpr::Product(..) => 2,
            IdealExpr::Power(..) => 3,
            _ => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let p = self.precedence();
        if p < min {
            write!(f, "(")?;
        }
        match self {
            IdealExpr::Zero => write!(f, "0")?,
            IdealExpr::Aug => write!(f, "f")?,
            IdealExpr::Rel(n) => write!(f, "{n}")?,
            IdealExpr::Delta(n) => write!(f, "delta({n})")?,
            IdealExpr::Sum(a, b) => {
                a.fmt_at(f, 0)?;
                write!(f, " + ")?;
                b.fmt_at(f, 1)?;
            }
            IdealExpr::Intersect(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " & ")?;
                b.fmt_at(f, 2)?;
            }
            IdealExpr::Product(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, "*")?;
                b.fmt_at(f, 3)?;
            }
            IdealExpr::Power(a, k) => {
                a.fmt_at(f, 4)?;
                write!(f, "^{k}")?;
            }
        }
        if p < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl std::str::FromStr for IdealExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ideal(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn sum(&mut self) -> Result<IdealExpr> {
        let mut acc = self.meet()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = acc.add(&self.meet()?);
        }
        Ok(acc)
    }

    fn meet(&mut self) -> Result<IdealExpr> {
        let mut acc = self.product()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            acc = acc.meet(&self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<IdealExpr> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(c) if c == b'(' || c == b'0' || c.is_ascii_lowercase() => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<IdealExpr> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.peek();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: u32 = self.src[start..self.pos].parse().map_err(|_| self.err("expected a positive exponent"))?;
            if k == 0 {
                return Err(self.err("ideal exponents start at 1"));
            }
            base = base.pow(k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<IdealExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(IdealExpr::Zero)
            }
            Some(_) if self.src[self.pos..].starts_with("delta(") => {
                self.pos += "delta(".len();
                let start = self.pos;
                while self.pos < self.bytes.len() && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = self.src[start..self.pos].to_string();
                if name.is_empty() || self.peek() != Some(b')') {
                    return Err(self.err("expected `delta(<name>)`"));
                }
                self.pos += 1;
                Ok(IdealExpr::Delta(name))
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                Ok(if c == b'f' { IdealExpr::Aug } else { IdealExpr::Rel((c as char).to_string()) })
            }
            _ => Err(self.err("expected an ideal atom")),
        }
    }
}

pub fn parse_ideal(src: &str) -> Result<IdealExpr> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0 };
    let e = p.sum()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_juxtaposition() {
        let f = IdealExpr::aug();
        let r = IdealExpr::rel("r");
        let e = parse_ideal("frf + f^2r").unwrap();
        assert_eq!(e, f.mul(&r).mul(&f).add(&f.pow(2).mul(&r)));
        let e = parse_ideal("f*r & f^3 + r^2").unwrap();
        assert_eq!(e, f.mul(&r).meet(&f.pow(3)).add(&r.pow(2)));
        let d = parse_ideal("r delta(h2)").unwrap();
        assert_eq!(d, r.mul(&IdealExpr::delta("h2")));
        assert_eq!(d.atoms(), (vec!["r".to_string()], vec!["h2".to_string()]));
        assert!(parse_ideal("f^0").is_err());
        assert!(parse_ideal("f +").is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["f*r*f + f^2*r", "(f + r)^2 & f^3", "r*delta(k) + 0", "(f*s & f^3) + f^4"] {
            let e = parse_ideal(s).unwrap();
            assert_eq!(parse_ideal(&e.to_string()).unwrap(), e, "{s}");
        }
    }
}
