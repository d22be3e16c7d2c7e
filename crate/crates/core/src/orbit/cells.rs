use std::sync::Arc;

use crate::dwyer::{check_dwyer, DwyerCertificate};
use crate::error::{Error, Result};
use crate::fincat::{classifying_category, product, product_functor, FinCategory, FinFunctor, FinGroup};
use crate::simplicial::{
    categorify, categorify_map, subdivide_map_twice, subdivide_twice, FinSimplicialSet, PresentationMap,
    SkeletalPresentation,
};

/// Largest cell dimension handled; Sd²Δ[3] already has 24² top simplices.
pub const MAX_CELL_DIMENSION: usize = 2;

/// c(Sd²∂Δ[n]) × BG → c(Sd²Δ[n]) × BG, certified as a Dwyer map.
pub fn generating_cell(n: usize, g: &FinGroup, max_word_length: usize) -> Result<(FinFunctor, DwyerCertificate)> {
    if n > MAX_CELL_DIMENSION {
        return Err(Error::SizeLimitExceeded { what: "cell dimension".into(), limit: MAX_CELL_DIMENSION });
    }
    let (boundary, simplex) = (SkeletalPresentation::boundary(n), SkeletalPresentation::simplex(n));
    let inclusion = PresentationMap::inclusion_by_label(&boundary, &simplex)?;
    let (sd_boundary, sd_simplex, sd_inclusion) = subdivide_map_twice(&inclusion, &boundary, &simplex);
    let map = sd_inclusion.materialize(&sd_boundary, &sd_simplex, 2);
    let source = categorify(&map.domain, max_word_length)?;
    let target = categorify(&map.codomain, max_word_length)?;
    let c = categorify_map(&map, &source, &target)?;
    let bg = Arc::new(classifying_category(g.monoid()));
    let i = product_functor(&c, &FinFunctor::identity(bg));
    i.verify()?;
    let cert = check_dwyer(&i).map_err(|f| Error::Malformed(format!("cell is not a Dwyer map: {f}")))?;
    Ok((i, cert))
}

/// c(Sd²A) × J, the value of Γ on the cell module A × O(−, J).
pub fn gamma_cell(a: &FinSimplicialSet, j: &FinCategory, max_word_length: usize) -> Result<FinCategory> {
    if !a.is_skeletal() {
        return Err(Error::NotSkeletal);
    }
    let sd2 = subdivide_twice(&a.presentation()?).materialize(2);
    let c = categorify(&sd2, max_word_length)?;
    Ok(product(&c.category, j))
}
