use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::certificate::{induced_dwyer, DwyerCertificate};
use super::pushout::{dwyer_pushout, Origin};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_transformations, functor_category, is_strongly_connected, FinCategory, FinFunctor};
use crate::homology::{compare, ComparisonVerdict};

/// Comparison of the pushout of Fun(I, B) ← Fun(I, A) → Fun(I, C) with Fun(I, D).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationReport {
    pub strongly_connected: bool,
    /// the canonical comparison functor is an isomorphism of categories
    pub isomorphism: bool,
    /// (objects, morphisms) of the pushout of functor categories
    pub pushout_size: (usize, usize),
    /// (objects, morphisms) of Fun(I, D)
    pub functor_category_size: (usize, usize),
    /// every functor I → D lands in C or in V (checked for strongly connected I)
    pub dichotomy: Option<bool>,
    /// Fun(I,D)(F,G) = Fun(I,C)(F, k∘r∘G) for C-valued F and V-valued G
    pub mixed_hom_identity: Option<bool>,
    pub note: String,
}

/// Builds both sides for an index category I and compares them.
///
/// With `strict` set, I must be strongly connected; otherwise the comparison is
/// still carried out and simply reported.
pub fn fun_preservation(
    index: &Arc<FinCategory>,
    cert: &DwyerCertificate,
    k: &FinFunctor,
    cap: usize,
    strict: bool,
) -> Result<PreservationReport> {
    let sc = is_strongly_connected(index) && index.num_objects() > 0;
    if strict && !sc {
        return Err(Error::NotStronglyConnected);
    }
    let base = dwyer_pushout(cert, k)?;
    let induced = induced_dwyer(cert, index, cap)?;
    let fun_c = functor_category(index, k.codomain(), cap)?;
    let fun_d = functor_category(index, &base.category, cap)?;
    let fk = induced.fun_a.postcompose(k, &fun_c)?;
    let top = dwyer_pushout(&induced.certificate, &fk)?;
    let fh = induced.fun_b.postcompose(&base.h, &fun_d)?;
    let fj = fun_c.postcompose(&base.j, &fun_d)?;
    let pushout_size = (top.category.num_objects(), top.category.num_morphisms());
    let functor_category_size = (fun_d.category.num_objects(), fun_d.category.num_morphisms());
    let (isomorphism, note) = match top.mediator(&fh, &fj) {
        Ok(kappa) if kappa.is_isomorphism() => (true, "comparison is an isomorphism".to_string()),
        Ok(kappa) => {
            let objects_bijective = kappa.is_injective_on_objects() && pushout_size.0 == functor_category_size.0;
            let note = if objects_bijective {
                "comparison is bijective on objects but not on morphisms".to_string()
            } else {
                format!("comparison is not bijective on objects ({} vs {})", pushout_size.0, functor_category_size.0)
            };
            (false, note)
        }
        Err(e) => (false, format!("comparison is not a functor: {e}")),
    };

    let (mut dichotomy, mut mixed_hom_identity) = (None, None);
    if sc {
        let lands_in_one_side = fun_d.functors.iter().all(|f| {
            let sides: Vec<bool> =
                f.object_map().iter().map(|&x| matches!(base.object_origin[x], Origin::C(_))).collect();
            sides.iter().all(|&s| s) || sides.iter().all(|&s| !s)
        });
        dichotomy = Some(lands_in_one_side);
        let mut ok = true;
        for f in &fun_d.functors {
            if !f.object_map().iter().all(|&x| matches!(base.object_origin[x], Origin::C(_))) {
                continue;
            }
            let f_c = FinFunctor::new(index.clone(), k.codomain().clone(), f.object_map().to_vec(), f.morphism_map().to_vec())?;
            for g in &fun_d.functors {
                let in_z = g.object_map().iter().all(|&x| match base.object_origin[x] {
                    Origin::V(y) => cert.cosieve_position(y).is_some(),
                    _ => false,
                });
                if !in_z {
                    continue;
                }
                // k∘r∘G as a C-valued functor
                let b_obj: Vec<usize> = g
                    .object_map()
                    .iter()
                    .map(|&x| match base.object_origin[x] {
                        Origin::V(y) => y,
                        _ => unreachable!(),
                    })
                    .collect();
                let b_mor: Vec<usize> = g
                    .morphism_map()
                    .iter()
                    .map(|&m| match base.morphism_origin[m] {
                        Origin::V(y) => y,
                        _ => unreachable!(),
                    })
                    .collect();
                let krg = FinFunctor::new(
                    index.clone(),
                    k.codomain().clone(),
                    b_obj.iter().map(|&y| k.obj(cert.r_object(y))).collect(),
                    b_mor.iter().map(|&m| k.mor(cert.r_morphism(m))).collect(),
                )?;
                let lhs = enumerate_transformations(f, g, cap)?;
                let rhs = enumerate_transformations(&f_c, &krg, cap)?;
                // same components, read through the mixed hom-sets
                let read: Vec<Vec<usize>> = lhs
                    .iter()
                    .map(|t| {
                        t.components()
                            .iter()
                            .map(|&m| match base.morphism_origin[m] {
                                Origin::Mixed { f, .. } => f,
                                _ => usize::MAX,
                            })
                            .collect()
                    })
                    .collect();
                let mut direct: Vec<Vec<usize>> = rhs.iter().map(|t| t.components().to_vec()).collect();
                let mut read = read;
                read.sort();
                direct.sort();
                if read != direct {
                    ok = false;
                }
            }
        }
        mixed_hom_identity = Some(ok);
    }
    Ok(PreservationReport {
        strongly_connected: sc,
        isomorphism,
        pushout_size,
        functor_category_size,
        dichotomy,
        mixed_hom_identity,
        note,
    })
}

/// Verdicts for h: B → D after applying Fun(I, −), one per index category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PushoutHomologyReport {
    /// the verdict on k itself, which should be positive
    pub k_verdict: ComparisonVerdict,
    pub per_index: Vec<(String, ComparisonVerdict)>,
}

impl PushoutHomologyReport {
    pub fn all_positive(&self) -> bool {
        self.k_verdict.is_positive() && self.per_index.iter().all(|(_, v)| v.is_positive())
    }
}

/// Checks that h is homology-consistent through `k_max` after Fun(I, −) for each I in `family`.
pub fn pushout_homology_check(
    cert: &DwyerCertificate,
    k: &FinFunctor,
    k_max: usize,
    family: &[(String, Arc<FinCategory>)],
    cap: usize,
) -> Result<PushoutHomologyReport> {
    let k_verdict = compare(k, k_max)?;
    let base = dwyer_pushout(cert, k)?;
    let mut per_index = Vec::with_capacity(family.len());
    for (name, index) in family {
        let fun_b = functor_category(index, cert.target(), cap)?;
        let fun_d = functor_category(index, &base.category, cap)?;
        let fh = fun_b.postcompose(&base.h, &fun_d)?;
        per_index.push((name.clone(), compare(&fh, k_max)?));
    }
    Ok(PushoutHomologyReport { k_verdict, per_index })
}
