use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::{AbMap, FgAbelian, IntMatrix, Minimized, Subquotient};
use crate::error::{Error, Result};
use crate::functors::{derived_l1, derived_l1_map, l1sp2_closed, QuadTag};
use crate::ideals::{parse_ideal, IdealEnv, TruncIdealLattice};
use crate::int::Int;
use crate::magnus::{expand, monomial_at, monomial_count, FreeWord, TruncSeries};
use crate::nilpotent::{commutator_subgroup, induced_hom, meet_gamma, section_invariants, NilContext, NilSubgroup, Section};

use super::presentation::PresentationSpec;
use super::report::CheckReport;

/// Largest free rank a representation is evaluated on (coproducts included).
pub const MAX_RANK: usize = 6;

/// Truncation degree of the ideal representation `𝔣²/(𝔣𝔯 + 𝔣⁴)`.
const IDEAL_DEGREE: usize = 3;

/// Functors from free presentations `F ↠ G` to abelian groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RepTag {
    /// `γ₂F / γ₂R γ₃F`.
    Gamma2Mod3,
    /// `γ₂F / γ₂R γ₄F`.
    Gamma2Mod4,
    /// `(R ∩ γ₂F) / γ₂R (R ∩ γ₄F)`.
    Rcap2Mod4,
    /// `K = (R ∩ γ₂F) / γ₂R (R ∩ γ₃F)`.
    KFunctor,
    /// `L_1SP²(K)`.
    L1sp2OfK,
    /// `𝔣² / (𝔣𝔯 + 𝔣⁴)`.
    F2OverFrF4,
}

impl RepTag {
    pub const ALL: [RepTag; 6] =
        [RepTag::Gamma2Mod3, RepTag::Gamma2Mod4, RepTag::Rcap2Mod4, RepTag::KFunctor, RepTag::L1sp2OfK, RepTag::F2OverFrF4];

    pub fn name(self) -> &'static str {
        match self {
            RepTag::Gamma2Mod3 => "GAMMA2_MOD3",
            RepTag::Gamma2Mod4 => "GAMMA2_MOD4",
            RepTag::Rcap2Mod4 => "RCAP2_MOD4",
            RepTag::KFunctor => "K_FUNCTOR",
            RepTag::L1sp2OfK => "L1SP2_OF_K",
            RepTag::F2OverFrF4 => "F2_OVER_FR_F4",
        }
    }

    /// Nilpotency class of the free quotient the value is computed in.
    fn class(self) -> usize {
        match self {
            RepTag::Gamma2Mod3 | RepTag::KFunctor | RepTag::L1sp2OfK => 2,
            RepTag::Gamma2Mod4 | RepTag::Rcap2Mod4 => 3,
            RepTag::F2OverFrF4 => IDEAL_DEGREE,
        }
    }

    /// `Φ(F ↠ G)` together with the data its induced maps need.
    pub fn evaluate(self, pres: &PresentationSpec) -> Result<RepValue> {
        if pres.rank > MAX_RANK {
            return Err(Error::ResourceBound(format!("rank {} exceeds {MAX_RANK}", pres.rank)));
        }
        let kind = match self {
            RepTag::F2OverFrF4 => {
                let env = IdealEnv::new(pres.rank).with_relators("r", &pres.all_relators())?;
                let bottom = env.lattice(&parse_ideal("f r + f^4")?, IDEAL_DEGREE)?;
                let top = TruncIdealLattice::aug_power(pres.rank, IDEAL_DEGREE, 2);
                Kind::Ideal(Subquotient::new(top.lattice().clone(), bottom.lattice().clone())?)
            }
            RepTag::L1sp2OfK => {
                let k = section(RepTag::KFunctor, pres)?;
                let min = k.group.minimize();
                let value = derived_l1(QuadTag::Sp2, &min.group)?.value;
                Kind::Derived { k, min, value }
            }
            tag => Kind::Section(section(tag, pres)?),
        };
        Ok(RepValue { tag: self, rank: pres.rank, kind })
    }

    /// `Φ(f)` for the presentation morphism sending `x_i` to `images[i]`.
    pub fn induced(self, src: &RepValue, dst: &RepValue, images: &[FreeWord]) -> Result<AbMap> {
        if src.tag != self || dst.tag != self {
            return Err(Error::InvalidConfig("representation values of a different tag".into()));
        }
        match (&src.kind, &dst.kind) {
            (Kind::Section(a), Kind::Section(b)) => section_map(a, b, images),
            (Kind::Derived { k: a, min: ma, .. }, Kind::Derived { k: b, min: mb, .. }) => {
                let f = section_map(a, b, images)?;
                let m = mb.to_min.mul(f.matrix())?.mul(&ma.from_min)?;
                derived_l1_map(QuadTag::Sp2, &AbMap::new(ma.group.clone(), mb.group.clone(), m)?)
            }
            (Kind::Ideal(a), Kind::Ideal(b)) => {
                let m = substitution_matrix(src.rank, dst.rank, images)?;
                a.induced(b, &m)
            }
            _ => unreachable!("tags agree"),
        }
    }
}

impl fmt::Display for RepTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        RepTag::ALL
            .into_iter()
            .find(|t| t.name() == norm || t.name().replace('_', "") == norm)
            .ok_or_else(|| Error::Parse(format!("unknown representation `{s}`")))
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Section(Section),
    Derived { k: Section, min: Minimized, value: FgAbelian },
    Ideal(Subquotient),
}

/// A representation evaluated on one presentation.
#[derive(Clone, Debug)]
pub struct RepValue {
    tag: RepTag,
    rank: usize,
    kind: Kind,
}

impl RepValue {
    pub fn tag(&self) -> RepTag {
        self.tag
    }

    /// The underlying section `S / T` for the section-valued tags.
    pub fn section(&self) -> Option<&Section> {
        match &self.kind {
            Kind::Section(s) => Some(s),
            _ => None,
        }
    }

    pub fn group(&self) -> FgAbelian {
        match &self.kind {
            Kind::Section(s) => s.group.clone(),
            Kind::Derived { value, .. } => value.clone(),
            Kind::Ideal(q) => q.group(),
        }
    }
}

pub(crate) fn section(tag: RepTag, pres: &PresentationSpec) -> Result<Section> {
    let ctx = NilContext::new(pres.rank, tag.class())?;
    let r = pres.relator_subgroup(&ctx)?;
    let bottom = commutator_subgroup(&r, &r)?;
    let top = match tag {
        RepTag::Gamma2Mod3 | RepTag::Gamma2Mod4 => NilSubgroup::gamma(&ctx, 2),
        _ => meet_gamma(&r, 2)?,
    };
    section_invariants(&top, &bottom)
}

fn section_map(a: &Section, b: &Section, images: &[FreeWord]) -> Result<AbMap> {
    let hom = induced_hom(a.top.context(), b.top.context(), images)?;
    a.induced_map(b, &hom)
}

/// Matrix of `X_i -> (image_i - 1)` on the monomials of degrees `1..=N`.
fn substitution_matrix(src_rank: usize, dst_rank: usize, images: &[FreeWord]) -> Result<IntMatrix> {
    let n = IDEAL_DEGREE;
    if images.len() != src_rank || images.iter().any(|w| w.rank() != dst_rank) {
        return Err(Error::RankMismatch(images.len(), src_rank));
    }
    let imgs: Vec<TruncSeries> = images.iter().map(|w| expand(w, n).augmentation_part()).collect();
    let cols = (0..monomial_count(src_rank, n))
        .map(|i| Ok(TruncSeries::monomial(src_rank, n, &monomial_at(src_rank, i))?.substitute(&imgs)?.into_vector()))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_columns(monomial_count(dst_rank, n), &cols))
}

/// The map `Φ(F ↠ G) -> Ψ(F ↠ G)` induced by an inclusion `S ⊆ S'`, `T ⊆ T'` of sections.
pub fn natural_map(src: &RepValue, dst: &RepValue) -> Result<AbMap> {
    match (src.section(), dst.section()) {
        (Some(a), Some(b)) if src.rank == dst.rank => {
            let identity: Vec<FreeWord> = (1..=src.rank).map(|i| FreeWord::generator(src.rank, i)).collect();
            section_map(a, b, &identity)
        }
        _ => Err(Error::InvalidConfig(format!("no natural map {} -> {}", src.tag, dst.tag))),
    }
}

/// `Φ` on a presentation, on its self-coproduct, and the two inclusion maps.
#[derive(Clone, Debug)]
pub struct Limit {
    pub value: RepValue,
    pub coproduct: RepValue,
    pub maps: [AbMap; 2],
    /// `ker(Φ(i₁) - Φ(i₂))` inside `Φ(F ↠ G)`.
    pub kernel: Subquotient,
}

impl Limit {
    pub fn new(tag: RepTag, pres: &PresentationSpec) -> Result<Self> {
        if 2 * pres.rank > MAX_RANK {
            return Err(Error::ResourceBound(format!("the coproduct of a rank-{} presentation exceeds rank {MAX_RANK}", pres.rank)));
        }
        let value = tag.evaluate(pres)?;
        let coproduct = tag.evaluate(&pres.coproduct()?)?;
        let [i1, i2] = pres.inclusions();
        let maps = [tag.induced(&value, &coproduct, &i1)?, tag.induced(&value, &coproduct, &i2)?];
        let kernel = maps[0].difference(&maps[1])?.kernel();
        Ok(Limit { value, coproduct, maps, kernel })
    }

    pub fn group(&self) -> FgAbelian {
        self.kernel.group()
    }

    /// The embedding `lim Φ -> Φ(F ↠ G)`.
    pub fn embedding(&self) -> Result<AbMap> {
        self.kernel.inclusion(&self.value.group())
    }
}

/// `lim Φ` as the equalizer of the two coproduct inclusions.
pub fn limit_equalizer(tag: RepTag, pres: &PresentationSpec) -> Result<FgAbelian> {
    Ok(Limit::new(tag, pres)?.group())
}

/// The closed form of `lim Φ` in terms of `G_ab`, where one is known.
pub fn expected_limit(tag: RepTag, gab: &FgAbelian) -> Option<FgAbelian> {
    match tag {
        RepTag::Gamma2Mod3 => Some(l1sp2_closed(gab).value),
        RepTag::L1sp2OfK => Some(l1sp2_closed(&l1sp2_closed(gab).value).value),
        RepTag::F2OverFrF4 => Some(FgAbelian::trivial()),
        _ => None,
    }
}

/// `lim Φ` against [`expected_limit`]; tags without a closed form report `PARTIAL`.
pub fn check_limit(tag: RepTag, pres: &PresentationSpec) -> CheckReport {
    CheckReport::new("LIMIT").param("rep", tag).param("presentation", super::presentation::describe(pres)).timed(|r| {
        let lim = Limit::new(tag, pres)?;
        let value = lim.group();
        r.detail("value", lim.value.group());
        match expected_limit(tag, &pres.abelianization()) {
            Some(expected) => {
                r.sides(&value, &expected);
                if value != expected {
                    r.fail(format!("lim {tag} = {value}, expected {expected}"));
                }
            }
            None => {
                r.sides(&value, &value);
                r.partial("no closed form to compare with");
            }
        }
        Ok(())
    })
}

/// Injectivity of `T = (Φ(i₁), Φ(i₂)): Φ ⊕ Φ -> Φ(F ∗ F ↠ G)`.
///
/// An injective `T` is `VERIFIED`. Otherwise the kernel is compared with the
/// antidiagonal `{(x, -x) : x ∈ lim Φ}`; equality is reported as `PARTIAL`
/// (the representation is not monoadditive, as its limit predicts), anything
/// else fails.
pub fn monoadd_check(tag: RepTag, pres: &PresentationSpec) -> CheckReport {
    CheckReport::new("MONOADD").param("rep", tag).param("presentation", super::presentation::describe(pres)).timed(|r| {
        let lim = Limit::new(tag, pres)?;
        let phi = lim.value.group();
        let sum = phi.direct_sum(&phi);
        let t = AbMap::new(sum.clone(), lim.coproduct.group(), lim.maps[0].matrix().hstack(lim.maps[1].matrix())?)?;
        let ker = t.kernel();
        let lim_group = lim.group();
        r.sides(&ker.group(), &lim_group);
        if ker.is_trivial() || ker.group().is_trivial() {
            return Ok(());
        }
        let n = phi.n_gens();
        let anti = lim.kernel.top().basis().iter().map(|v| v.iter().cloned().chain(v.iter().map(|x| -x.clone())).collect::<Vec<Int>>());
        let antidiagonal = sum.relation_lattice().add_vectors(anti)?;
        match ker.top().basis().iter().find(|v| !antidiagonal.contains(v)) {
            Some(v) => r.fail(format!("kernel element off the antidiagonal: {}", vector(v))),
            None if !antidiagonal.is_subset_of(ker.top()) => r.fail("antidiagonal of the limit is not in ker T".to_string()),
            None => {
                let x = &lim.kernel.top().basis().iter().find(|v| !phi.is_zero_element(v)).cloned().unwrap_or_else(|| vec![Int::ZERO; n]);
                r.witness(format!("(x, -x) in ker T for x = {}", vector(x)));
                r.partial("T is not injective; its kernel is the antidiagonal copy of the limit");
            }
        }
        Ok(())
    })
}

pub(crate) fn vector(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(Int::to_string).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    fn pres(rank: usize, words: &[&str]) -> PresentationSpec {
        PresentationSpec::from_words(rank, words).unwrap().with_gamma2()
    }

    #[test]
    fn tags_parse() {
        for t in RepTag::ALL {
            assert_eq!(t.name().parse::<RepTag>().unwrap(), t);
            assert_eq!(t.name().to_lowercase().parse::<RepTag>().unwrap(), t);
        }
        assert!("gamma5".parse::<RepTag>().is_err());
    }

    #[test]
    fn limit_of_gamma2_mod3() {
        let p = pres(2, &["x1^2", "x2^4"]);
        let lim = limit_equalizer(RepTag::Gamma2Mod3, &p).unwrap();
        assert_eq!(lim, l1sp2_closed(&p.abelianization()).value);
        assert!(limit_equalizer(RepTag::F2OverFrF4, &p).unwrap().is_trivial());
    }

    #[test]
    fn identity_morphism_induces_identity() {
        let p = pres(2, &["x1^2", "x2^2"]);
        let ids: Vec<FreeWord> = (1..=2).map(|i| FreeWord::generator(2, i)).collect();
        for tag in RepTag::ALL {
            let v = tag.evaluate(&p).unwrap();
            let m = tag.induced(&v, &v, &ids).unwrap();
            assert!(m.equals(&AbMap::identity(&v.group())), "{tag}");
        }
    }

    #[test]
    fn monoadditivity() {
        let p = pres(2, &["x1^2", "x2^2"]);
        assert_eq!(monoadd_check(RepTag::F2OverFrF4, &p).status, Status::Verified);
        let r = monoadd_check(RepTag::Gamma2Mod3, &pres(2, &["x1^2", "x2^4"]));
        assert_eq!(r.status, Status::Partial, "{r:?}");
        let trivial = PresentationSpec::new(0, Vec::new());
        assert_eq!(monoadd_check(RepTag::Gamma2Mod3, &trivial).status, Status::Verified);
    }
}
