use std::fmt;
use std::sync::Arc;

use crate::abelian::Lattice;
use crate::error::{Error, Result};
use crate::int::Int;

use super::element::{Context, NilElement};

#[derive(Clone)]
struct Row {
    pivot: usize,
    coords: Vec<Int>,
    elem: NilElement,
}

/// A subgroup of `F / γ_{c+1}(F)` held as a weight-echelon generating sequence.
///
/// For each weight `w` the leading coordinates of the weight-`w` generators
/// form the reduced Hermite basis of the leading lattice of `H ∩ γ_w`, and
/// each generator's deeper Mal'cev blocks are reduced modulo the deeper
/// leading lattices. Every element of `H` is then uniquely a product of powers
/// of the generators in sequence order.
#[derive(Clone)]
pub struct NilSubgroup {
    ctx: Context,
    strata: Vec<Vec<Row>>,
}

/// Result of sifting an element through a generating sequence.
#[derive(Clone, Debug)]
pub struct Sift {
    /// What is left after dividing off generator powers; the identity for members.
    pub residue: NilElement,
    /// Exponent of each generator in sequence order.
    pub exponents: Vec<Int>,
}

impl Sift {
    pub fn is_member(&self) -> bool {
        self.residue.is_identity()
    }
}

fn sub_scaled(v: &mut [Int], q: &Int, row: &[Int]) {
    for (x, r) in v.iter_mut().zip(row) {
        if !r.is_zero() {
            x.sub_mul(q, r);
        }
    }
}

impl NilSubgroup {
    pub fn trivial(ctx: &Context) -> Self {
        NilSubgroup { ctx: ctx.clone(), strata: vec![Vec::new(); ctx.class() + 1] }
    }

    /// `γ_k(F)` modulo `γ_{c+1}(F)`: the basic commutators of weight at least `k`.
    pub fn gamma(ctx: &Context, k: usize) -> Self {
        let mut h = Self::trivial(ctx);
        for w in k.max(1)..=ctx.class() {
            let n = ctx.stratum_size(w);
            for (pos, i) in ctx.hall().stratum(w).enumerate() {
                let mut coords = vec![Int::ZERO; n];
                coords[pos] = Int::ONE;
                let elem = NilElement::from_word(ctx, &ctx.hall().word(i)).expect("rank agrees");
                h.strata[w].push(Row { pivot: pos, coords, elem });
            }
        }
        h
    }

    pub fn whole(ctx: &Context) -> Self {
        Self::gamma(ctx, 1)
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Canonical generators in sequence order (weight, then pivot).
    pub fn generators(&self) -> Vec<NilElement> {
        self.strata.iter().flat_map(|s| s.iter().map(|r| r.elem.clone())).collect()
    }

    pub fn generators_of_weight(&self, w: usize) -> Vec<NilElement> {
        self.strata.get(w).map(|s| s.iter().map(|r| r.elem.clone()).collect()).unwrap_or_default()
    }

    /// Weight of each canonical generator, in sequence order.
    pub fn generator_weights(&self) -> Vec<usize> {
        self.strata.iter().enumerate().flat_map(|(w, s)| std::iter::repeat_n(w, s.len())).collect()
    }

    pub fn len(&self) -> usize {
        self.strata.iter().map(Vec::len).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.strata.iter().all(Vec::is_empty)
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    /// Leading lattice of `H ∩ γ_w` inside `Z^{#basics of weight w}`.
    pub fn leading_lattice(&self, w: usize) -> Lattice {
        let n = self.ctx.stratum_size(w);
        Lattice::from_vectors(n, self.strata[w].iter().map(|r| r.coords.clone())).expect("dimensions agree")
    }

    pub fn sift(&self, g: &NilElement) -> Sift {
        let mut h = g.clone();
        let mut exponents = vec![Int::ZERO; self.len()];
        let offsets: Vec<usize> = self
            .strata
            .iter()
            .scan(0, |acc, s| {
                let o = *acc;
                *acc += s.len();
                Some(o)
            })
            .collect();
        while let Some((w, mut v)) = h.leading_coordinates() {
            for (k, row) in self.strata[w].iter().enumerate() {
                let c = row.pivot;
                if v[c].is_zero() {
                    continue;
                }
                if v[..c].iter().any(|x| !x.is_zero()) {
                    break;
                }
                let Some(q) = v[c].div_exact(&row.coords[c]) else { break };
                h = row.elem.pow_int(&-&q).mul(&h);
                sub_scaled(&mut v, &q, &row.coords);
                exponents[offsets[w] + k] = q;
            }
            if v.iter().any(|x| !x.is_zero()) {
                break;
            }
        }
        Sift { residue: h, exponents }
    }

    pub fn contains(&self, g: &NilElement) -> bool {
        self.sift(g).is_member()
    }

    /// Exponents of `g` in the canonical generators, if `g` is a member.
    pub fn exponents(&self, g: &NilElement) -> Option<Vec<Int>> {
        let s = self.sift(g);
        if s.is_member() {
            Some(s.exponents)
        } else {
            None
        }
    }

    pub fn is_subgroup_of(&self, other: &NilSubgroup) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }

    /// Adds `g`, keeping the echelon shape. Returns whether the sequence changed.
    fn insert(&mut self, g: NilElement) -> bool {
        let mut h = g;
        let mut changed = false;
        while let Some((w, mut v)) = h.leading_coordinates() {
            // Keeping deeper coordinates reduced stops exponents from growing without bound.
            h = self.reduce_deeper(h, w);
            while let Some(c) = v.iter().position(|x| !x.is_zero()) {
                if h.leading_weight() == Some(w) {
                    h = self.reduce_deeper(h, w);
                }
                match self.strata[w].iter().position(|r| r.pivot == c) {
                    None => {
                        if v[c].is_negative() {
                            h = h.inv();
                            v.iter_mut().for_each(|x| *x = -&*x);
                        }
                        let stratum = &mut self.strata[w];
                        let at = stratum.iter().position(|r| r.pivot > c).unwrap_or(stratum.len());
                        stratum.insert(at, Row { pivot: c, coords: v, elem: h });
                        return true;
                    }
                    Some(idx) => {
                        let row = self.strata[w][idx].clone();
                        let (mut a, mut av) = (self.reduce_deeper(row.elem, w), row.coords);
                        if let Some(q) = v[c].div_exact(&av[c]) {
                            h = a.pow_int(&-&q).mul(&h);
                            sub_scaled(&mut v, &q, &av);
                            self.strata[w][idx].elem = a;
                        } else {
                            let (mut b, mut bv) = (h, v);
                            while !bv[c].is_zero() {
                                let q = av[c].div_trunc(&bv[c]);
                                a = self.reduce_deeper(b.pow_int(&-&q).mul(&a), w);
                                sub_scaled(&mut av, &q, &bv);
                                std::mem::swap(&mut a, &mut b);
                                std::mem::swap(&mut av, &mut bv);
                            }
                            if av[c].is_negative() {
                                a = a.inv();
                                av.iter_mut().for_each(|x| *x = -&*x);
                            }
                            self.strata[w][idx] = Row { pivot: c, coords: av, elem: a };
                            changed = true;
                            h = b;
                            v = bv;
                        }
                    }
                }
            }
        }
        changed
    }

    /// Adds commutators of generator pairs until every such commutator sifts.
    fn make_consistent(&mut self) {
        let c = self.ctx.class();
        loop {
            let gens = self.generators();
            let weights = self.generator_weights();
            let mut changed = false;
            for i in 0..gens.len() {
                for j in i + 1..gens.len() {
                    if weights[i] + weights[j] > c {
                        continue;
                    }
                    let (a, b) = (&gens[i], &gens[j]);
                    changed |= self.insert(b.comm(a));
                    changed |= self.insert(b.comm(&a.inv()));
                }
            }
            if !changed {
                break;
            }
        }
    }

    /// Reduces leading coordinates within each weight and deeper Mal'cev blocks
    /// against the deeper strata, from the deepest weight up.
    fn canonicalize(&mut self) {
        let c = self.ctx.class();
        for w in (1..=c).rev() {
            let n = self.strata[w].len();
            for j in 0..n {
                let (pj, pv) = (self.strata[w][j].pivot, self.strata[w][j].coords[self.strata[w][j].pivot].clone());
                for i in 0..j {
                    let q = self.strata[w][i].coords[pj].div_floor(&pv);
                    if q.is_zero() {
                        continue;
                    }
                    let rj = self.strata[w][j].clone();
                    let ri = &mut self.strata[w][i];
                    ri.elem = ri.elem.mul(&rj.elem.pow_int(&-&q));
                    sub_scaled(&mut ri.coords, &q, &rj.coords);
                }
            }
            for i in 0..n {
                let e = self.strata[w][i].elem.clone();
                self.strata[w][i].elem = self.reduce_deeper(e, w);
            }
        }
    }

    fn reduce_deeper(&self, mut e: NilElement, w: usize) -> NilElement {
        for m in w + 1..=self.ctx.class() {
            if self.strata[m].is_empty() {
                continue;
            }
            let mut coords = e.malcev().swap_remove(m);
            for row in &self.strata[m] {
                let q = coords[row.pivot].div_floor(&row.coords[row.pivot]);
                if !q.is_zero() {
                    e = e.mul(&row.elem.pow_int(&-&q));
                    sub_scaled(&mut coords, &q, &row.coords);
                }
            }
        }
        e
    }

    /// Subgroup generated by `self` and `gens`.
    pub fn extend<'a, I>(&self, gens: I) -> NilSubgroup
    where
        I: IntoIterator<Item = &'a NilElement>,
    {
        let mut h = self.clone();
        for g in gens {
            h.insert(g.clone());
        }
        h.make_consistent();
        h.canonicalize();
        h
    }

    pub fn join(&self, other: &NilSubgroup) -> NilSubgroup {
        self.extend(other.generators().iter())
    }
}

impl PartialEq for NilSubgroup {
    fn eq(&self, other: &Self) -> bool {
        if (self.ctx.rank(), self.ctx.class()) != (other.ctx.rank(), other.ctx.class()) {
            return false;
        }
        self.strata.len() == other.strata.len()
            && self.strata.iter().zip(&other.strata).all(|(a, b)| {
                a.len() == b.len()
                    && a.iter().zip(b).all(|(x, y)| x.pivot == y.pivot && x.coords == y.coords && x.elem == y.elem)
            })
    }
}

impl Eq for NilSubgroup {}

impl fmt::Debug for NilSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NilSubgroup(rank {}, class {}", self.ctx.rank(), self.ctx.class())?;
        for (w, s) in self.strata.iter().enumerate().skip(1) {
            if s.is_empty() {
                continue;
            }
            let rows: Vec<String> = s
                .iter()
                .map(|r| r.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            write!(f, "; w{w}: [{}]", rows.join(" | "))?;
        }
        write!(f, ")")
    }
}

fn check_ctx(ctx: &Context, gens: &[NilElement]) -> Result<()> {
    for g in gens {
        let c = g.context();
        if !Arc::ptr_eq(c, ctx) && (c.rank(), c.class()) != (ctx.rank(), ctx.class()) {
            return Err(Error::RankMismatch(c.rank(), ctx.rank()));
        }
    }
    Ok(())
}

/// Canonical generating sequence of the subgroup generated by `gens`.
pub fn subgroup_close(ctx: &Context, gens: &[NilElement]) -> Result<NilSubgroup> {
    check_ctx(ctx, gens)?;
    Ok(NilSubgroup::trivial(ctx).extend(gens.iter()))
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(ctx: &Context, gens: &[NilElement]) -> Result<NilSubgroup> {
    check_ctx(ctx, gens)?;
    let xs: Vec<NilElement> = (1..=ctx.rank()).map(|i| NilElement::generator(ctx, i)).collect();
    let mut h = NilSubgroup::trivial(ctx).extend(gens.iter());
    loop {
        let fresh: Vec<NilElement> = h
            .generators()
            .iter()
            .flat_map(|s| xs.iter().map(move |x| s.comm(x)))
            .filter(|c| !h.contains(c))
            .collect();
        if fresh.is_empty() {
            return Ok(h);
        }
        h = h.extend(fresh.iter());
    }
}

/// `[S, T]`: generated by commutators of generators, closed under commutation with `S ∪ T`.
pub fn commutator_subgroup(s: &NilSubgroup, t: &NilSubgroup) -> Result<NilSubgroup> {
    let ctx = s.context().clone();
    check_ctx(&ctx, &t.generators())?;
    let sg = s.generators();
    let tg = t.generators();
    let comms: Vec<NilElement> = sg.iter().flat_map(|a| tg.iter().map(move |b| a.comm(b))).collect();
    let mut h = NilSubgroup::trivial(&ctx).extend(comms.iter());
    let all: Vec<NilElement> = sg.into_iter().chain(tg).collect();
    loop {
        let fresh: Vec<NilElement> = h
            .generators()
            .iter()
            .flat_map(|c| all.iter().map(move |x| c.comm(x)))
            .filter(|c| !h.contains(c))
            .collect();
        if fresh.is_empty() {
            return Ok(h);
        }
        h = h.extend(fresh.iter());
    }
}

/// `S ∩ γ_k`.
pub fn meet_gamma(s: &NilSubgroup, k: usize) -> Result<NilSubgroup> {
    let c = s.ctx.class();
    if k == 0 || k > c + 1 {
        return Err(Error::InvalidConfig(format!("meet_gamma needs 1 <= k <= {}", c + 1)));
    }
    let mut h = s.clone();
    for w in 1..k.min(c + 1) {
        h.strata[w].clear();
    }
    Ok(h)
}
