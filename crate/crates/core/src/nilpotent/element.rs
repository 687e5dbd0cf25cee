use std::fmt;
use std::sync::Arc;

use crate::abelian::SpanSolver;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::magnus::{expand, hall_basis, FreeWord, HallBasis, TruncSeries, WordExpr};

/// The free nilpotent group `F / γ_{c+1}(F)` of a given rank, realized inside
/// the Magnus ring truncated above degree `c`.
#[derive(Debug)]
pub struct NilContext {
    rank: usize,
    class: usize,
    hall: HallBasis,
    basics: Vec<TruncSeries>,
    solvers: Vec<SpanSolver>,
}

pub type Context = Arc<NilContext>;

impl NilContext {
    pub fn new(rank: usize, class: usize) -> Result<Context> {
        if class == 0 {
            return Err(Error::InvalidConfig("class must be at least 1".into()));
        }
        let hall = hall_basis(rank, class)?;
        let basics: Vec<TruncSeries> = (0..hall.len()).map(|i| expand(&hall.word(i), class)).collect();
        let mut solvers = vec![SpanSolver::new(&crate::abelian::IntMatrix::zeros(0, 0))];
        for w in 1..=class {
            let cols: Vec<Vec<Int>> = hall.stratum(w).map(|i| basics[i].component(w).to_vec()).collect();
            let m = crate::abelian::IntMatrix::from_columns(rank.pow(w as u32), &cols);
            solvers.push(SpanSolver::new(&m));
        }
        Ok(Arc::new(NilContext { rank, class, hall, basics, solvers }))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn hall(&self) -> &HallBasis {
        &self.hall
    }

    /// Number of basic commutators of weight `w`.
    pub fn stratum_size(&self, w: usize) -> usize {
        self.hall.count(w)
    }

    /// Expansion of the `i`-th basic commutator.
    pub fn basic_series(&self, i: usize) -> &TruncSeries {
        &self.basics[i]
    }

    /// Exponents of the weight-`w` basic commutators in the leading term of `s - 1`,
    /// where `s` lies in `γ_w`.
    pub fn leading_coordinates(&self, s: &TruncSeries, w: usize) -> Result<Vec<Int>> {
        self.solvers[w]
            .solve(s.component(w))
            .ok_or_else(|| Error::PreconditionViolated("series is not group-like at this weight".into()))
    }

    /// Product `∏ b_i^{a_i}` over the weight-`w` stratum, in Hall order.
    pub fn stratum_product(&self, w: usize, a: &[Int]) -> TruncSeries {
        let mut acc = TruncSeries::one(self.rank, self.class);
        for (k, i) in self.hall.stratum(w).enumerate() {
            if a[k].is_zero() {
                continue;
            }
            let e = a[k].to_i64().expect("exponent fits in i64");
            acc = acc.mul(&self.basics[i].pow(e));
        }
        acc
    }

    /// Mal'cev coordinates: `s = B_1 B_2 ... B_c` with `B_w` a product over the weight-`w` basics.
    pub fn malcev(&self, s: &TruncSeries) -> Result<Vec<Vec<Int>>> {
        let mut h = s.clone();
        let mut out = vec![Vec::new()];
        for w in 1..=self.class {
            let a = self.leading_coordinates(&h, w)?;
            if a.iter().any(|x| !x.is_zero()) {
                let p = self.stratum_product(w, &a);
                h = p.inverse()?.mul(&h);
            }
            out.push(a);
        }
        if !h.is_one() {
            return Err(Error::PreconditionViolated("series is not group-like".into()));
        }
        Ok(out)
    }

    /// Inverse of [`NilContext::malcev`].
    pub fn from_malcev(&self, coords: &[Vec<Int>]) -> TruncSeries {
        let mut acc = TruncSeries::one(self.rank, self.class);
        for w in 1..=self.class {
            if let Some(a) = coords.get(w) {
                if a.iter().any(|x| !x.is_zero()) {
                    acc = acc.mul(&self.stratum_product(w, a));
                }
            }
        }
        acc
    }
}

/// An element of a free nilpotent group, optionally carrying a word witness.
#[derive(Clone)]
pub struct NilElement {
    ctx: Context,
    series: TruncSeries,
    witness: Option<WordExpr>,
}

impl NilElement {
    pub fn identity(ctx: &Context) -> Self {
        NilElement { ctx: ctx.clone(), series: TruncSeries::one(ctx.rank, ctx.class), witness: Some(WordExpr::identity()) }
    }

    /// `x_i`, 1-based.
    pub fn generator(ctx: &Context, i: usize) -> Self {
        Self::from_expr(ctx, &WordExpr::generator(i)).expect("generator within rank")
    }

    pub fn from_word(ctx: &Context, w: &FreeWord) -> Result<Self> {
        if w.rank() != ctx.rank {
            return Err(Error::RankMismatch(w.rank(), ctx.rank));
        }
        Ok(NilElement { ctx: ctx.clone(), series: expand(w, ctx.class), witness: Some(WordExpr::word(w.clone())) })
    }

    pub fn from_expr(ctx: &Context, e: &WordExpr) -> Result<Self> {
        let series = e.expand(ctx.rank, ctx.class)?;
        Ok(NilElement { ctx: ctx.clone(), series, witness: Some(e.clone()) })
    }

    /// Wraps a series; checks that it is the image of a group element.
    pub fn from_series(ctx: &Context, series: TruncSeries) -> Result<Self> {
        if series.rank() != ctx.rank || series.max_degree() != ctx.class {
            return Err(Error::RankMismatch(series.rank(), ctx.rank));
        }
        ctx.malcev(&series)?;
        Ok(NilElement { ctx: ctx.clone(), series, witness: None })
    }

    pub(crate) fn from_parts(ctx: &Context, series: TruncSeries, witness: Option<WordExpr>) -> Self {
        NilElement { ctx: ctx.clone(), series, witness }
    }

    pub fn from_malcev(ctx: &Context, coords: &[Vec<Int>]) -> Self {
        let mut witness = WordExpr::identity();
        for w in 1..=ctx.class {
            if let Some(a) = coords.get(w) {
                for (k, i) in ctx.hall.stratum(w).enumerate() {
                    if !a[k].is_zero() {
                        let e = a[k].to_i64().expect("exponent fits in i64");
                        witness = witness.mul(&WordExpr::word(ctx.hall.word(i)).pow(e));
                    }
                }
            }
        }
        NilElement { ctx: ctx.clone(), series: ctx.from_malcev(coords), witness: Some(witness) }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn series(&self) -> &TruncSeries {
        &self.series
    }

    pub fn witness(&self) -> Option<&WordExpr> {
        self.witness.as_ref()
    }

    pub fn without_witness(mut self) -> Self {
        self.witness = None;
        self
    }

    pub fn is_identity(&self) -> bool {
        self.series.is_one()
    }

    /// Lowest `k` with the element outside `γ_{k+1}`; `None` for the identity.
    pub fn leading_weight(&self) -> Option<usize> {
        self.series.low_degree()
    }

    pub fn leading_coordinates(&self) -> Option<(usize, Vec<Int>)> {
        let w = self.leading_weight()?;
        Some((w, self.ctx.leading_coordinates(&self.series, w).expect("group-like")))
    }

    pub fn malcev(&self) -> Vec<Vec<Int>> {
        self.ctx.malcev(&self.series).expect("group-like")
    }

    fn same_ctx(&self, other: &NilElement) {
        assert!(Arc::ptr_eq(&self.ctx, &other.ctx) || (self.ctx.rank, self.ctx.class) == (other.ctx.rank, other.ctx.class), "elements from different contexts");
    }

    pub fn mul(&self, other: &NilElement) -> NilElement {
        self.same_ctx(other);
        NilElement {
            ctx: self.ctx.clone(),
            series: self.series.mul(&other.series),
            witness: match (&self.witness, &other.witness) {
                (Some(a), Some(b)) => Some(a.mul(b)),
                _ => None,
            },
        }
    }

    pub fn inv(&self) -> NilElement {
        NilElement {
            ctx: self.ctx.clone(),
            series: self.series.inverse().expect("group-like"),
            witness: self.witness.as_ref().map(WordExpr::inv),
        }
    }

    pub fn pow(&self, e: i64) -> NilElement {
        NilElement { ctx: self.ctx.clone(), series: self.series.pow(e), witness: self.witness.as_ref().map(|w| w.pow(e)) }
    }

    /// `self^e` for any integer `e`; the witness is dropped when `e` leaves the `i64` range.
    pub fn pow_int(&self, e: &Int) -> NilElement {
        NilElement {
            ctx: self.ctx.clone(),
            series: self.series.pow_int(e),
            witness: e.to_i64().and_then(|k| self.witness.as_ref().map(|w| w.pow(k))),
        }
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn comm(&self, other: &NilElement) -> NilElement {
        self.same_ctx(other);
        NilElement {
            ctx: self.ctx.clone(),
            series: self.series.group_comm(&other.series),
            witness: match (&self.witness, &other.witness) {
                (Some(a), Some(b)) => Some(a.comm(b)),
                _ => None,
            },
        }
    }
}

impl PartialEq for NilElement {
    fn eq(&self, other: &Self) -> bool {
        self.series == other.series
    }
}

impl Eq for NilElement {}

impl fmt::Debug for NilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) => write!(f, "NilElement({w})"),
            None => write!(f, "NilElement({})", self.series),
        }
    }
}

/// `nil_embed`: the image of a word in `F / γ_{c+1}(F)`.
pub fn nil_embed(ctx: &Context, w: &FreeWord) -> Result<NilElement> {
    NilElement::from_word(ctx, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magnus::parse_word;

    #[test]
    fn embedding_examples() {
        let c3 = NilContext::new(2, 3).unwrap();
        assert_eq!(nil_embed(&c3, &FreeWord::identity(2)).unwrap().leading_weight(), None);
        assert_eq!(nil_embed(&c3, &parse_word("[x1,x2]", 2).unwrap()).unwrap().leading_weight(), Some(2));
        let c2 = NilContext::new(2, 2).unwrap();
        assert!(nil_embed(&c2, &parse_word("[[x1,x2],x1]", 2).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn malcev_roundtrip() {
        let ctx = NilContext::new(3, 4).unwrap();
        let w = parse_word("x1^2 x3 [x2,x1]^-3 x2^5 [x3,x1,x2] x1^-1", 3).unwrap();
        let g = nil_embed(&ctx, &w).unwrap();
        let m = g.malcev();
        let back = NilElement::from_malcev(&ctx, &m);
        assert_eq!(back, g);
        assert_eq!(back.witness().unwrap().expand(3, 4).unwrap(), g.series().clone());
        assert_eq!(m[1], vec![Int::from(1), Int::from(5), Int::from(1)]);
    }
}
