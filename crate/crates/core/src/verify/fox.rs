use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::FgAbelian;
use crate::error::{Error, Result};
use crate::functors::{koszul_lsp2, l1sp2_closed};
use crate::ideals::{parse_ideal, IdealEnv, TruncIdealLattice};
use crate::magnus::{parse_expr, WordExpr};
use crate::nilpotent::{commutator_subgroup, Context, NilContext, NilElement, NilSubgroup};

use super::checks::diagonal_exponents;
use super::finite::{dim_quotient_finite, FiniteGroupTable};
use super::presentation::{describe, PresentationSpec};
use super::report::CheckReport;
use super::reps::{natural_map, section, Limit, RepTag};

/// Truncation degree for membership in `1 + 𝔯𝔣³`.
const FOX_DEGREE: usize = 4;

/// The three claims about the Fox subgroup `F(3, R) = F ∩ (1 + 𝔯𝔣³)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FoxPart {
    /// The words `[x, y]^m [x, s_y]⁻¹ [y, s_x]` lie in `F(3, R)`.
    GenB,
    /// Every element of `L_1SP²(K)` lifts to such a word: `|F(3, R)/G(3, R)| ≥ |L_1SP²(K)|`.
    IsoA,
    /// `L_1SP²(K) = 0` when `G_ab` is torsion-free.
    RemarkTf,
}

impl FoxPart {
    pub const ALL: [FoxPart; 3] = [FoxPart::GenB, FoxPart::IsoA, FoxPart::RemarkTf];

    pub fn name(self) -> &'static str {
        match self {
            FoxPart::GenB => "GEN_B",
            FoxPart::IsoA => "ISO_A",
            FoxPart::RemarkTf => "REMARK_TF",
        }
    }
}

impl fmt::Display for FoxPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FoxPart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace(['-', '_'], "");
        FoxPart::ALL
            .into_iter()
            .find(|p| p.name().replace('_', "") == norm)
            .ok_or_else(|| Error::Parse(format!("unknown Fox part `{s}`")))
    }
}

/// A tuple `(x, y, m, r_x, s_x, r_y, s_y)` with `x^m = r_x s_x` and `y^m = r_y s_y`,
/// where `r_• ∈ R ∩ γ₃F` and `s_• ∈ γ₂R`.
///
/// Text form: the seven entries separated by `;`, words in the expression syntax.
#[derive(Clone, Debug)]
pub struct FoxWitness {
    pub x: WordExpr,
    pub y: WordExpr,
    pub m: i64,
    pub r_x: WordExpr,
    pub s_x: WordExpr,
    pub r_y: WordExpr,
    pub s_y: WordExpr,
}

impl FoxWitness {
    /// Completes a tuple with `r_x = x^m s_x⁻¹` and `r_y = y^m s_y⁻¹`.
    pub fn new(x: WordExpr, y: WordExpr, m: i64, s_x: WordExpr, s_y: WordExpr) -> Self {
        let r_x = x.pow(m).mul(&s_x.inv());
        let r_y = y.pow(m).mul(&s_y.inv());
        FoxWitness { x, y, m, r_x, s_x, r_y, s_y }
    }

    /// `[x, y]^m [x, s_y]⁻¹ [y, s_x]`.
    pub fn word(&self) -> WordExpr {
        self.x.comm(&self.y).pow(self.m).mul(&self.x.comm(&self.s_y).inv()).mul(&self.y.comm(&self.s_x))
    }

    /// Five tuples built from `c = [x₁, x₂]` and `P = [x₁^{e₁}, x₂^{e₂}] ≡ c^{e₁e₂}` mod `γ₃F`.
    ///
    /// They are valid whenever `γ₂F ⊆ R` and `R γ₂F = ⟨x_i^{e_i}, γ₂F⟩`.
    pub fn standard(pres: &PresentationSpec) -> Result<Vec<FoxWitness>> {
        if pres.rank < 2 {
            return Err(Error::PreconditionViolated("standard Fox witnesses need rank at least 2".into()));
        }
        let e = diagonal_exponents(pres)?;
        let g = |i: usize| WordExpr::generator(i);
        let conj = |w: &WordExpr, by: &WordExpr| by.inv().mul(w).mul(by);
        let (a, b) = (g(1).pow(e[0]), g(2).pow(e[1]));
        let c = g(1).comm(&g(2));
        let p = a.comm(&b);
        let m = e[0] * e[1];
        let one = WordExpr::identity();
        Ok(vec![
            FoxWitness::new(a.comm(&b), a.comm(&c), 1, a.comm(&b), a.comm(&c)),
            FoxWitness::new(c.clone(), c.comm(&g(1)), m, p.clone(), one.clone()),
            FoxWitness::new(c.clone(), conj(&c, &g(2)), m, p.clone(), conj(&p, &g(2))),
            FoxWitness::new(c.comm(&g(2)), c.clone(), m, one.clone(), p.clone()),
            FoxWitness::new(c.inv(), conj(&c.comm(&g(1)), &g(2)), m, p.inv(), one),
        ])
    }

    /// Checks the defining equations exactly and the memberships modulo `γ₅F`.
    fn validate(&self, pres: &PresentationSpec, ctx: &Context, rbar: &NilSubgroup, r2: &NilSubgroup) -> Result<()> {
        let bad = |msg: String| Error::PreconditionViolated(format!("witness ({}, {}, {}): {msg}", self.x, self.y, self.m));
        for (name, z, r, s) in [("x", &self.x, &self.r_x, &self.s_x), ("y", &self.y, &self.r_y, &self.s_y)] {
            if z.pow(self.m).to_word(pres.rank)? != r.mul(s).to_word(pres.rank)? {
                return Err(bad(format!("{name}^m ≠ r_{name} s_{name}")));
            }
            let re = NilElement::from_expr(ctx, r)?;
            if !rbar.contains(&re) || re.leading_weight().is_some_and(|w| w < 3) {
                return Err(bad(format!("r_{name} = {r} is not in R ∩ γ₃F")));
            }
            if !r2.contains(&NilElement::from_expr(ctx, s)?) {
                return Err(bad(format!("s_{name} = {s} is not in γ₂R")));
            }
        }
        Ok(())
    }
}

impl FromStr for FoxWitness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').map(str::trim).collect();
        let [x, y, m, r_x, s_x, r_y, s_y] = parts[..] else {
            return Err(Error::Parse(format!("expected `x; y; m; r_x; s_x; r_y; s_y`, got `{s}`")));
        };
        let m = m.parse().map_err(|_| Error::Parse(format!("bad exponent `{m}`")))?;
        Ok(FoxWitness { x: parse_expr(x)?, y: parse_expr(y)?, m, r_x: parse_expr(r_x)?, s_x: parse_expr(s_x)?, r_y: parse_expr(r_y)?, s_y: parse_expr(s_y)? })
    }
}

impl fmt::Display for FoxWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}; {}; {}; {}; {}; {}", self.x, self.y, self.m, self.r_x, self.s_x, self.r_y, self.s_y)
    }
}

/// Validates each tuple and tests its word against `1 + 𝔯𝔣³ + 𝔣⁵`.
fn confirm_witnesses(r: &mut CheckReport, pres: &PresentationSpec, witnesses: &[FoxWitness]) -> Result<usize> {
    let ctx = NilContext::new(pres.rank, FOX_DEGREE)?;
    let rbar = pres.relator_subgroup(&ctx)?;
    let r2 = commutator_subgroup(&rbar, &rbar)?;
    let fox = IdealEnv::new(pres.rank).with_relators("r", &pres.all_relators())?.lattice(&parse_ideal("r f^3")?, FOX_DEGREE)?;
    let mut confirmed = 0;
    for w in witnesses {
        w.validate(pres, &ctx, &rbar, &r2)?;
        let word = w.word();
        if in_fox(&fox, &word, pres.rank)? {
            confirmed += 1;
            r.witness(format!("{word} ∈ 1 + rf^3, q-image [{}, {}]^{}", w.x, w.y, w.m));
        } else {
            r.fail(format!("{word} is not in 1 + rf^3 + f^{}", FOX_DEGREE + 1));
        }
    }
    Ok(confirmed)
}

fn in_fox(fox: &TruncIdealLattice, w: &WordExpr, rank: usize) -> Result<bool> {
    Ok(fox.contains_series(&w.expand(rank, FOX_DEGREE)?.augmentation_part()))
}

/// Lifts of the Koszul generators of `L_1SP²(K)` to tuples.
///
/// A generator is a pair `x̄, ȳ ∈ K` killed by `m`; lifting `x^m` into `γ₂R`
/// modulo `γ₃F` gives `s_x`, and `r_x = x^m s_x⁻¹` then lies in `R ∩ γ₃F`.
fn lift_generators(pres: &PresentationSpec) -> Result<(FgAbelian, Vec<FoxWitness>)> {
    let k = section(RepTag::KFunctor, pres)?;
    let gens = k.generators();
    let koszul = koszul_lsp2(gens.len(), k.group.relation_lattice())?;
    if !koszul.witnesses_generate {
        return Err(Error::PreconditionViolated("Koszul witnesses do not generate L_1SP²(K)".into()));
    }
    let ctx = k.top.context().clone();
    let element = |v: &[crate::Int]| {
        gens.iter().zip(v).fold(NilElement::identity(&ctx), |acc, (g, e)| acc.mul(&g.pow_int(e)))
    };
    let lift_power = |z: &NilElement, m: i64| -> Result<WordExpr> {
        let coords = k.bottom.exponents(&z.pow(m)).ok_or_else(|| Error::NotSubgroup("x^m is not in γ₂R γ₃F".into()))?;
        let s = k.bottom.generators().iter().zip(&coords).fold(NilElement::identity(&ctx), |acc, (g, e)| acc.mul(&g.pow_int(e)));
        s.witness().cloned().ok_or_else(|| Error::NotSubgroup("generator without a word witness".into()))
    };
    let mut out = Vec::new();
    for w in &koszul.witnesses {
        let m = w.m.to_i64().ok_or_else(|| Error::ResourceBound("exponent does not fit in 64 bits".into()))?;
        let (x, y) = (element(&w.x), element(&w.y));
        let word = |z: &NilElement| z.witness().cloned().ok_or_else(|| Error::NotSubgroup("generator without a word witness".into()));
        out.push(FoxWitness::new(word(&x)?, word(&y)?, m, lift_power(&x, m)?, lift_power(&y, m)?));
    }
    Ok((koszul.l1, out))
}

/// One part of the Fox-subgroup description; `witnesses` default to [`FoxWitness::standard`].
pub fn check_fox(part: FoxPart, pres: &PresentationSpec, witnesses: Option<&[FoxWitness]>) -> CheckReport {
    let report = CheckReport::new("FOX").param("part", part).param("presentation", describe(pres));
    report.timed(|r| match part {
        FoxPart::GenB => {
            let standard;
            let ws = match witnesses {
                Some(ws) => ws,
                None => {
                    standard = FoxWitness::standard(pres)?;
                    &standard
                }
            };
            let n = confirm_witnesses(r, pres, ws)?;
            r.detail("confirmed", format!("{n}/{}", ws.len()));
            Ok(())
        }
        FoxPart::IsoA => {
            let k = section(RepTag::KFunctor, pres)?.group;
            let (l1, lifts) = lift_generators(pres)?;
            let closed = l1sp2_closed(&k).value;
            r.sides(&l1, &closed);
            r.detail("K", &k);
            if l1 != closed {
                r.fail(format!("L_1SP²(K): Koszul gives {l1}, closed form gives {closed}"));
            }
            let n = confirm_witnesses(r, pres, &lifts)?;
            r.detail("lifted generators", format!("{n}/{}", lifts.len()));
            r.partial("verified lower bound |F(3,R)/G(3,R)| ≥ |L_1SP²(K)|; equality is not machine-checked");
            Ok(())
        }
        FoxPart::RemarkTf => {
            let gab = pres.abelianization();
            if !gab.is_torsion_free() {
                return Err(Error::PreconditionViolated(format!("G_ab = {gab} is not torsion-free")));
            }
            let k = section(RepTag::KFunctor, pres)?.group;
            let l1 = l1sp2_closed(&k).value;
            r.sides(&l1, &FgAbelian::trivial());
            r.detail("K", &k);
            if !l1.is_trivial() {
                r.fail(format!("L_1SP²(K) = {l1} is not zero"));
            }
            Ok(())
        }
    })
}

/// `lim RCAP2_MOD4 ↪ lim GAMMA2_MOD4` with cokernel `D₄(G)/γ₄(G)`, the latter read off `table`.
pub fn check_thdim(pres: &PresentationSpec, table: &FiniteGroupTable) -> CheckReport {
    CheckReport::new("THDIM").param("presentation", describe(pres)).param("order", table.order()).timed(|r| {
        let gab = pres.abelianization();
        if table.abelianization() != gab {
            return Err(Error::PreconditionViolated(format!("the table abelianizes to {}, the presentation to {gab}", table.abelianization())));
        }
        let a = Limit::new(RepTag::Rcap2Mod4, pres)?;
        let b = Limit::new(RepTag::Gamma2Mod4, pres)?;
        let map = a.kernel.induced(&b.kernel, natural_map(&a.value, &b.value)?.matrix())?;
        let coker = map.cokernel();
        let q = dim_quotient_finite(table, 4)?;
        r.sides(&coker, &q);
        r.detail("A", a.group());
        r.detail("B", b.group());
        if !map.is_injective() {
            r.fail("lim RCAP2_MOD4 -> lim GAMMA2_MOD4 is not injective".to_string());
        }
        if coker != q {
            r.fail(format!("coker = {coker} but D_4(G)/γ_4(G) = {q}"));
        }
        if !q.is_trivial() {
            r.partial("nontrivial fourth dimension quotient");
        }
        Ok(())
    })
}

/// `lim L_1SP²(K) ≅ L_1SP²(L_1SP²(G_ab))`, and `|Y|` divides `|L_1SP²(K)|`.
pub fn check_foxlimit(pres: &PresentationSpec) -> CheckReport {
    CheckReport::new("FOXLIMIT").param("presentation", describe(pres)).timed(|r| {
        let lim = Limit::new(RepTag::L1sp2OfK, pres)?;
        let x = lim.group();
        let gab = pres.abelianization();
        let y = l1sp2_closed(&l1sp2_closed(&gab).value).value;
        r.sides(&x, &y);
        r.detail("G_ab", &gab);
        let value = lim.value.group();
        r.detail("L_1SP²(K)", &value);
        if x != y {
            r.fail(format!("lim = {x} but L_1SP²(L_1SP²(G_ab)) = {y}"));
        }
        match (y.order(), value.order()) {
            (Some(a), Some(b)) if a.divides(&b) => {}
            _ => r.fail(format!("|{y}| does not divide |L_1SP²(K)| = |{value}|")),
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    fn klein() -> PresentationSpec {
        PresentationSpec::from_words(2, &["x1^2", "x2^2"]).unwrap().with_gamma2()
    }

    #[test]
    fn standard_witnesses_are_in_the_fox_subgroup() {
        let r = check_fox(FoxPart::GenB, &klein(), None);
        assert_eq!(r.status, Status::Verified, "{r:?}");
        assert_eq!(r.details["confirmed"], "5/5");
    }

    #[test]
    fn bad_tuples_are_rejected() {
        let w: FoxWitness = "[x1,x2]; [x1,x2,x1]; 1; 1; [x1,x2]; [x1,x2,x1]; 1".parse().unwrap();
        let r = check_fox(FoxPart::GenB, &klein(), Some(&[w]));
        assert!(r.is_failed() && r.witnesses[0].contains("γ₂R"), "{r:?}");
        assert!("x1; x2".parse::<FoxWitness>().is_err());
    }

    #[test]
    fn iso_a_lifts_every_generator() {
        let r = check_fox(FoxPart::IsoA, &klein(), None);
        assert_eq!(r.status, Status::Partial, "{r:?}");
        assert_eq!(r.lhs_invariants, r.rhs_invariants);
    }

    #[test]
    fn remark_on_torsion_free_abelianization() {
        let p = PresentationSpec::from_words(2, &["x1 x2^-1"]).unwrap();
        assert_eq!(check_fox(FoxPart::RemarkTf, &p, None).status, Status::Verified);
        assert!(check_fox(FoxPart::RemarkTf, &klein(), None).is_failed());
    }

    #[test]
    fn induced_map_of_limits_on_the_klein_group() {
        let table = FiniteGroupTable::cyclic(2).unwrap().product(&FiniteGroupTable::cyclic(2).unwrap()).unwrap();
        let r = check_thdim(&klein(), &table);
        assert_eq!(r.status, Status::Verified, "{r:?}");
        let wrong = FiniteGroupTable::cyclic(4).unwrap();
        assert!(check_thdim(&klein(), &wrong).is_failed());
    }

    #[test]
    fn fox_limit_of_a_cyclic_group() {
        let p = PresentationSpec::from_words(1, &["x1^2"]).unwrap();
        let r = check_foxlimit(&p);
        assert_eq!(r.status, Status::Verified, "{r:?}");
        assert!(r.lhs_invariants.is_empty());
    }
}
