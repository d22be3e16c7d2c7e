use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{
    check_equivalence, functor_category, m_objects_iso, quotient_by_free_action,
    translation_groupoid, FinCategory, FinFunctor, FinGroup, FunctorCategory, Morphism,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepVerdict {
    pub name: String,
    pub source_size: (usize, usize),
    pub target_size: (usize, usize),
    pub isomorphism: bool,
    pub equivalence: bool,
}

/// The chain Fun(EG, C)^H ≅ Fun(EG/H, C) ≃ Fun(BH, C) ≅ HC.
#[derive(Clone, Debug)]
pub struct FixedPointChain {
    pub fixed: Arc<FinCategory>,
    pub orbit_functors: FunctorCategory,
    pub restricted: FunctorCategory,
    pub h_objects: Arc<FinCategory>,
    /// q*: Fun(EG/H, C) → Fun(EG, C)^H
    pub quotient_restriction: FinFunctor,
    /// Fun(EG/H, C) → Fun(BH, C), restriction along BH → EG/H
    pub orbit_restriction: FinFunctor,
    /// Fun(BH, C) → HC
    pub comparison: FinFunctor,
    pub verdicts: Vec<StepVerdict>,
}

impl FixedPointChain {
    /// Two isomorphisms around one equivalence.
    pub fn holds(&self) -> bool {
        self.verdicts.len() == 3
            && self.verdicts[0].isomorphism
            && self.verdicts[1].equivalence
            && self.verdicts[2].isomorphism
    }
}

fn size(c: &FinCategory) -> (usize, usize) {
    (c.num_objects(), c.num_morphisms())
}

fn verdict(name: &str, f: &FinFunctor) -> StepVerdict {
    let isomorphism = f.is_isomorphism();
    StepVerdict {
        name: name.into(),
        source_size: size(f.domain()),
        target_size: size(f.codomain()),
        isomorphism,
        equivalence: isomorphism || check_equivalence(f).is_equivalence(),
    }
}

/// The H-fixed subcategory of Fun(EG, C) under (F·h) = F∘(− ·h): fixed functors
/// and transformations whose components are constant on H-orbits.
/// Returns the subcategory and its inclusion data (object and morphism positions).
fn fixed_subcategory(
    fun: &FunctorCategory,
    on_objects: &[Vec<usize>],
    on_morphisms: &[Vec<usize>],
    h: &[usize],
) -> Result<(Arc<FinCategory>, Vec<usize>, Vec<usize>)> {
    let c = &fun.category;
    let objects: Vec<usize> = (0..fun.functors.len())
        .filter(|&f| {
            let func = &fun.functors[f];
            h.iter().all(|&k| {
                (0..func.domain().num_objects()).all(|x| func.obj(on_objects[k][x]) == func.obj(x))
                    && (0..func.domain().num_morphisms()).all(|m| func.mor(on_morphisms[k][m]) == func.mor(m))
            })
        })
        .collect();
    let obj_pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let morphisms: Vec<usize> = (0..fun.transformations.len())
        .filter(|&t| {
            let (s, u) = fun.ends[t];
            let tr = &fun.transformations[t];
            obj_pos.contains_key(&s)
                && obj_pos.contains_key(&u)
                && h.iter().all(|&k| (0..tr.components().len()).all(|x| tr.component(on_objects[k][x]) == tr.component(x)))
        })
        .collect();
    let mor_pos: HashMap<usize, usize> = morphisms.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let sub = FinCategory::build(
        objects.iter().map(|&f| c.object_id(f).to_string()).collect(),
        morphisms
            .iter()
            .map(|&t| Morphism { id: c.morphism(t).id.clone(), src: obj_pos[&c.src(t)], tgt: obj_pos[&c.tgt(t)] })
            .collect(),
        objects.iter().map(|&f| mor_pos[&c.identity(f)]).collect(),
        |g, f| mor_pos[&c.compose(morphisms[g], morphisms[f])],
    )?;
    Ok((Arc::new(sub), objects, morphisms))
}

/// Builds the chain for H ≤ G (given as a subset of G) and a category C, and
/// records which steps are isomorphisms or equivalences.
pub fn fixed_point_equivalences(g: &FinGroup, h: &[usize], c: &Arc<FinCategory>, cap: usize) -> Result<FixedPointChain> {
    let h = g.subgroup(h)?;
    let (eg, action) = translation_groupoid(g);
    let eg = Arc::new(eg);
    let fun_eg = functor_category(&eg, c, cap)?;
    let (fixed, fixed_objects, fixed_morphisms) =
        fixed_subcategory(&fun_eg, &action.on_objects, &action.on_morphisms, &h)?;

    let (orbits, q) = quotient_by_free_action(&eg, &action, &h)?;
    let orbit_functors = functor_category(&orbits, c, cap)?;
    let q_star = orbit_functors.precompose(&q, &fun_eg)?;
    let obj_pos: HashMap<usize, usize> = fixed_objects.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mor_pos: HashMap<usize, usize> = fixed_morphisms.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let lands = |x: Option<&usize>| x.copied().ok_or_else(|| Error::NotAFunctor("q* leaves the fixed points".into()));
    let quotient_restriction = FinFunctor::new(
        orbit_functors.category.clone(),
        fixed.clone(),
        q_star.object_map().iter().map(|f| lands(obj_pos.get(f))).collect::<Result<_>>()?,
        q_star.morphism_map().iter().map(|t| lands(mor_pos.get(t))).collect::<Result<_>>()?,
    )?;

    let hg = g.restrict(&h)?;
    let h_objects = m_objects_iso(hg.monoid(), c, cap)?;
    let restricted = h_objects.functor_category.clone();
    // BH → EG/H: * ↦ [e], h ↦ [(h, e)]
    let n = g.order();
    let e = g.unit();
    let j = FinFunctor::new(
        restricted.source.clone(),
        orbits.clone(),
        vec![q.obj(e)],
        h.iter().map(|&x| q.mor(x * n + e)).collect(),
    )?;
    let orbit_restriction = orbit_functors.precompose(&j, &restricted)?;
    let comparison = h_objects.comparison.clone();

    let verdicts = vec![
        verdict("Fun(EG/H,C) -> Fun(EG,C)^H", &quotient_restriction),
        verdict("Fun(EG/H,C) -> Fun(BH,C)", &orbit_restriction),
        verdict("Fun(BH,C) -> HC", &comparison),
    ];
    Ok(FixedPointChain {
        fixed,
        orbit_functors,
        restricted,
        h_objects: h_objects.category,
        quotient_restriction,
        orbit_restriction,
        comparison,
        verdicts,
    })
}
