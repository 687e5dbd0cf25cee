use crate::error::{Error, Result};
use crate::magnus::{FreeWord, TruncSeries, WordExpr};

use super::element::{Context, NilElement};
use super::subgroup::{subgroup_close, NilSubgroup};

/// Homomorphism of free nilpotent groups given by the images of the generators.
#[derive(Clone, Debug)]
pub struct NilHom {
    src: Context,
    dst: Context,
    images: Vec<WordExpr>,
    // X_i -> expand(image_i) - 1 in the target ring
    series_images: Vec<TruncSeries>,
}

impl NilHom {
    pub fn source(&self) -> &Context {
        &self.src
    }

    pub fn target(&self) -> &Context {
        &self.dst
    }

    pub fn images(&self) -> &[WordExpr] {
        &self.images
    }

    pub fn apply(&self, g: &NilElement) -> Result<NilElement> {
        if self.dst.class() <= self.src.class() {
            let s = g.series().truncate(self.dst.class()).substitute(&self.series_images)?;
            let w = g.witness().map(|w| w.substitute(&self.images)).transpose()?;
            return Ok(NilElement::from_parts(&self.dst, s, w));
        }
        match g.witness() {
            Some(w) => NilElement::from_expr(&self.dst, &w.substitute(&self.images)?),
            None => Err(Error::PreconditionViolated("raising the class needs a word witness".into())),
        }
    }

    /// Image of a subgroup.
    pub fn apply_subgroup(&self, h: &NilSubgroup) -> Result<NilSubgroup> {
        let imgs: Vec<NilElement> = h.generators().iter().map(|g| self.apply(g)).collect::<Result<_>>()?;
        subgroup_close(&self.dst, &imgs)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &NilHom) -> Result<NilHom> {
        let imgs: Vec<WordExpr> = self.images.iter().map(|e| e.substitute(&other.images)).collect::<Result<_>>()?;
        induced_hom_exprs(&self.src, &other.dst, imgs)
    }
}

/// The homomorphism `x_i -> images[i - 1]`.
pub fn induced_hom(src: &Context, dst: &Context, images: &[FreeWord]) -> Result<NilHom> {
    if images.iter().any(|w| w.rank() != dst.rank()) {
        return Err(Error::RankMismatch(images.first().map_or(0, FreeWord::rank), dst.rank()));
    }
    induced_hom_exprs(src, dst, images.iter().cloned().map(WordExpr::word).collect())
}

pub fn induced_hom_exprs(src: &Context, dst: &Context, images: Vec<WordExpr>) -> Result<NilHom> {
    if images.len() != src.rank() {
        return Err(Error::RankMismatch(images.len(), src.rank()));
    }
    let series_images: Vec<TruncSeries> = images
        .iter()
        .map(|e| e.expand(dst.rank(), dst.class()).map(|s| s.augmentation_part()))
        .collect::<Result<_>>()?;
    Ok(NilHom { src: src.clone(), dst: dst.clone(), images, series_images })
}
