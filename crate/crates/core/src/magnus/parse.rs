//! Word grammar: `x3` generators, `^-2` exponents, juxtaposition (or `*`) for
//! products, `[u,v]` commutators (`[u,v,w] = [[u,v],w]`), parentheses, and `1`.

use crate::error::{Error, Result};

use super::expr::WordExpr;
use super::word::FreeWord;

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && (self.bytes[self.pos].is_ascii_whitespace() || self.bytes[self.pos] == b'*') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn number(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.bytes.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos].parse::<i64>().map_err(|_| self.err("expected an integer"))
    }

    fn word(&mut self) -> Result<WordExpr> {
        let mut acc = WordExpr::identity();
        while let Some(c) = self.peek() {
            if c == b',' || c == b']' || c == b')' {
                break;
            }
            acc = acc.mul(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<WordExpr> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            base = base.pow(self.number()?);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<WordExpr> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let i: usize = self.src[start..self.pos].parse().map_err(|_| self.err("expected a generator index"))?;
                if i == 0 {
                    return Err(self.err("generator indices start at 1"));
                }
                Ok(WordExpr::generator(i))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(WordExpr::identity())
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut acc = self.word()?;
                let mut parts = 1;
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    let next = self.word()?;
                    acc = acc.comm(&next);
                    parts += 1;
                }
                if parts < 2 {
                    return Err(self.err("commutator needs two entries"));
                }
                self.expect(b']')?;
                Ok(acc)
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parses a word expression, keeping its structure.
pub fn parse_expr(src: &str) -> Result<WordExpr> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0 };
    let w = p.word()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(w)
}

/// Parses and multiplies out a word in `rank` generators.
pub fn parse_word(src: &str, rank: usize) -> Result<FreeWord> {
    let e = parse_expr(src)?;
    let m = e.max_generator();
    if m > rank {
        return Err(Error::Parse(format!("generator x{m} exceeds rank {rank} in `{src}`")));
    }
    e.to_word(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let w = parse_word("[x1,x2]^2 (x1^2 x2)^-1", 2).unwrap();
        let x1 = FreeWord::generator(2, 1);
        let x2 = FreeWord::generator(2, 2);
        let expect = x1.comm(&x2).unwrap().pow(2).mul(&x1.pow(2).mul(&x2).unwrap().inv()).unwrap();
        assert_eq!(w, expect);
        let nested = parse_word("[x2,x1,x1]", 2).unwrap();
        assert_eq!(nested, x2.comm(&x1).unwrap().comm(&x1).unwrap());
        assert!(parse_word("1", 3).unwrap().is_identity());
        assert!(parse_word("x3", 2).is_err());
        assert!(parse_word("[x1]", 2).is_err());
        assert!(parse_word("x1 * x2^-3", 2).is_ok());
    }
}
