use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::abelian::FgAbelian;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::magnus::{hall_basis, parse_word, FreeWord};
use crate::nilpotent::{normal_closure, Context, NilElement, NilSubgroup};

/// A free presentation `F ↠ G = F / R` with `R` the normal closure of the relators.
///
/// Text form, one directive per line (`#` starts a comment):
///
/// ```text
/// name klein
/// rank 2
/// relator x1^2
/// relator x2^2
/// include-gamma2
/// ```
///
/// `include-gamma2` adds every basic commutator of weight two as a relator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationSpec {
    pub name: String,
    pub rank: usize,
    pub relators: Vec<FreeWord>,
    pub include_gamma2: bool,
}

impl PresentationSpec {
    pub fn new(rank: usize, relators: Vec<FreeWord>) -> Self {
        PresentationSpec { name: String::new(), rank, relators, include_gamma2: false }
    }

    /// Parses relators written in the word syntax, e.g. `["x1^2", "[x1,x2]"]`.
    pub fn from_words(rank: usize, words: &[&str]) -> Result<Self> {
        let relators = words.iter().map(|w| parse_word(w, rank)).collect::<Result<_>>()?;
        Ok(Self::new(rank, relators))
    }

    pub fn with_gamma2(mut self) -> Self {
        self.include_gamma2 = true;
        self
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let mut p: Self = text.parse()?;
        if p.name.is_empty() {
            p.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        }
        Ok(p)
    }

    /// Relators with the weight-two commutators made explicit.
    pub fn all_relators(&self) -> Vec<FreeWord> {
        let mut out = self.relators.clone();
        if self.include_gamma2 && self.rank >= 2 {
            let hall = hall_basis(self.rank, 2).expect("weight two is supported");
            out.extend(hall.stratum(2).map(|i| hall.word(i)));
        }
        out
    }

    /// `F ∗ F ↠ G`: both letter blocks carry the relators and `x_i y_i⁻¹` identifies them.
    pub fn coproduct(&self) -> Result<Self> {
        let n = self.rank;
        let [i1, i2] = self.inclusions();
        let mut relators = Vec::new();
        for r in self.all_relators() {
            relators.push(r.substitute(&i1)?);
            relators.push(r.substitute(&i2)?);
        }
        for i in 0..n {
            relators.push(i1[i].mul(&i2[i].inv())?);
        }
        let name = if self.name.is_empty() { String::new() } else { format!("{0}*{0}", self.name) };
        Ok(PresentationSpec { name, rank: 2 * n, relators, include_gamma2: false })
    }

    /// Generator images of the two coproduct inclusions.
    pub fn inclusions(&self) -> [Vec<FreeWord>; 2] {
        let n = self.rank;
        [(0..n).map(|i| FreeWord::generator(2 * n, i + 1)).collect(), (0..n).map(|i| FreeWord::generator(2 * n, n + i + 1)).collect()]
    }

    /// `G_ab`, from exponent sums of the relators.
    pub fn abelianization(&self) -> FgAbelian {
        let rels: Vec<Vec<Int>> = self.relators.iter().map(|w| w.abelianization().into_iter().map(Int::from).collect()).collect();
        FgAbelian::from_relation_vectors(self.rank, &rels).expect("relators have the presentation rank")
    }

    /// The image of `R` in the context.
    pub fn relator_subgroup(&self, ctx: &Context) -> Result<NilSubgroup> {
        if ctx.rank() != self.rank {
            return Err(Error::RankMismatch(ctx.rank(), self.rank));
        }
        let gens = self.all_relators().iter().map(|w| NilElement::from_word(ctx, w)).collect::<Result<Vec<_>>>()?;
        normal_closure(ctx, &gens)
    }
}

impl FromStr for PresentationSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut name = String::new();
        let mut rank = None;
        let mut relators = Vec::new();
        let mut include_gamma2 = false;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).map(|(k, r)| (k, r.trim())).unwrap_or((line, ""));
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", no + 1));
            match key {
                "name" => name = rest.to_string(),
                "rank" => rank = Some(rest.parse::<usize>().map_err(|_| bad("expected `rank <N>`"))?),
                "relator" => {
                    let n = rank.ok_or_else(|| bad("`rank` must precede relators"))?;
                    relators.push(parse_word(rest, n)?);
                }
                "include-gamma2" => include_gamma2 = true,
                other => return Err(bad(&format!("unknown directive `{other}`"))),
            }
        }
        let rank = rank.ok_or_else(|| Error::Parse("missing `rank` line".into()))?;
        Ok(PresentationSpec { name, rank, relators, include_gamma2 })
    }
}

impl fmt::Display for PresentationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.name.is_empty() {
            writeln!(f, "name {}", self.name)?;
        }
        writeln!(f, "rank {}", self.rank)?;
        for r in &self.relators {
            writeln!(f, "relator {r}")?;
        }
        if self.include_gamma2 {
            writeln!(f, "include-gamma2")?;
        }
        Ok(())
    }
}

/// Short human-readable description for report parameters.
pub(crate) fn describe(p: &PresentationSpec) -> String {
    let mut parts: Vec<String> = p.relators.iter().map(|r| r.to_string()).collect();
    if p.include_gamma2 {
        parts.push("gamma2".into());
    }
    format!("rank {}: {{{}}}", p.rank, parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::NilContext;

    #[test]
    fn parse_and_print() {
        let p: PresentationSpec = "# Z/2 + Z/4\nrank 2\nrelator x1^2\nrelator x2^4\ninclude-gamma2\n".parse().unwrap();
        assert_eq!(p.rank, 2);
        assert!(p.include_gamma2);
        assert_eq!(p.all_relators().len(), 3);
        assert_eq!(p.to_string().parse::<PresentationSpec>().unwrap(), p);
        assert_eq!(p.abelianization(), FgAbelian::from_invariants(&[2, 4]));
        assert!("relator x1".parse::<PresentationSpec>().is_err());
        assert!("rank 2\nfrobnicate".parse::<PresentationSpec>().is_err());
    }

    #[test]
    fn coproduct_presents_the_same_group() {
        let p = PresentationSpec::from_words(2, &["x1^2", "x2^4"]).unwrap().with_gamma2();
        let c = p.coproduct().unwrap();
        assert_eq!(c.rank, 4);
        assert_eq!(c.abelianization(), p.abelianization());
        let ctx = NilContext::new(4, 2).unwrap();
        let r = c.relator_subgroup(&ctx).unwrap();
        assert!(r.contains(&NilElement::from_word(&ctx, &parse_word("x1 x3^-1", 4).unwrap()).unwrap()));
    }
}
