use std::sync::Arc;

use super::homs::{conjugate_hom, enumerate_homs, GroupHom};
use crate::error::{Error, Result};
use crate::fincat::{classifying_category, functor_category, FinCategory, FinFunctor, FinGroup, FunctorCategory, NatTransformation};
use crate::simplicial::{nerve, Nerve};

/// α*: Fun(BG, C) → Fun(BK, C) for one homomorphism α: K → G.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// position of K in the family
    pub family_index: usize,
    pub alpha: GroupHom,
    pub functor: FinFunctor,
}

/// The value N(Fun(BG, C)) of the global nerve at G, with the restriction
/// functors to every group of a test family and the conjugation isomorphisms.
#[derive(Clone, Debug)]
pub struct GlobalNerveValue {
    pub category: Arc<FinCategory>,
    pub group: FinGroup,
    pub functors: FunctorCategory,
    pub value: Nerve,
    /// each K of the family with Fun(BK, C)
    pub family: Vec<(FinGroup, FunctorCategory)>,
    pub restrictions: Vec<Restriction>,
}

fn b_functor(bk: &Arc<FinCategory>, bg: &Arc<FinCategory>, alpha: &GroupHom) -> Result<FinFunctor> {
    FinFunctor::new(bk.clone(), bg.clone(), vec![0], alpha.clone())
}

/// Builds the value at G truncated at degree `d`, with α* and l_g for every α: K → G, K in `family`.
pub fn global_nerve_value(
    c: &Arc<FinCategory>,
    g: &FinGroup,
    d: usize,
    family: &[FinGroup],
    cap: usize,
    max_group_order: usize,
) -> Result<GlobalNerveValue> {
    let bg = Arc::new(classifying_category(g.monoid()));
    let functors = functor_category(&bg, c, cap)?;
    let value = nerve(&functors.category, d);
    let mut fam = Vec::with_capacity(family.len());
    let mut restrictions = Vec::new();
    for (i, k) in family.iter().enumerate() {
        let bk = Arc::new(classifying_category(k.monoid()));
        let fun_k = functor_category(&bk, c, cap)?;
        for alpha in enumerate_homs(k, g, max_group_order)? {
            let functor = functors.precompose(&b_functor(&bk, &bg, &alpha)?, &fun_k)?;
            restrictions.push(Restriction { family_index: i, alpha, functor });
        }
        fam.push((k.clone(), fun_k));
    }
    let v = GlobalNerveValue { category: c.clone(), group: g.clone(), functors, value, family: fam, restrictions };
    v.verify()?;
    Ok(v)
}

impl GlobalNerveValue {
    pub fn restriction(&self, family_index: usize, alpha: &[usize]) -> Option<usize> {
        self.restrictions.iter().position(|r| r.family_index == family_index && r.alpha == alpha)
    }

    /// l_x: α* ⇒ (c_x∘α)*, whose component at F has the single component F(x).
    pub fn conjugation(&self, r: usize, x: usize) -> Result<NatTransformation> {
        let rest = &self.restrictions[r];
        let fun_k = &self.family[rest.family_index].1;
        let target = self
            .restriction(rest.family_index, &conjugate_hom(&self.group, x, &rest.alpha))
            .ok_or_else(|| Error::NotAHomomorphism("the conjugated restriction".into()))?;
        let target_functor = &self.restrictions[target].functor;
        let mut components = Vec::with_capacity(self.functors.functors.len());
        for (f, func) in self.functors.functors.iter().enumerate() {
            let s = &fun_k.functors[rest.functor.obj(f)];
            let t = &fun_k.functors[target_functor.obj(f)];
            let tr = NatTransformation::new(s.clone(), t.clone(), vec![func.mor(x)])?;
            components.push(fun_k.transformation_index(&tr).ok_or_else(|| Error::NotNatural("l_g component missing".into()))?);
        }
        NatTransformation::new(rest.functor.clone(), target_functor.clone(), components)
    }

    /// Naturality of every l_g, l_e = id, l_x∘l_y = l_{xy}, and (α∘β)* = β*∘α* within the family.
    pub fn verify(&self) -> Result<()> {
        let g = &self.group;
        for r in 0..self.restrictions.len() {
            if !self.conjugation(r, g.unit())?.is_identity() {
                return Err(Error::NotNatural("l_e is not the identity".into()));
            }
            let fam = self.restrictions[r].family_index;
            for y in 0..g.order() {
                let ly = self.conjugation(r, y)?;
                let moved = self
                    .restriction(fam, &conjugate_hom(g, y, &self.restrictions[r].alpha))
                    .expect("checked by conjugation");
                for x in 0..g.order() {
                    let lxy = ly.then(&self.conjugation(moved, x)?)?;
                    if lxy != self.conjugation(r, g.mul(x, y))? {
                        return Err(Error::NotNatural(format!("l_{}∘l_{} differs from their product", g.name(x), g.name(y))));
                    }
                }
            }
        }
        for (ki, (k, fun_k)) in self.family.iter().enumerate() {
            for (li, (l, fun_l)) in self.family.iter().enumerate() {
                for beta in enumerate_homs(l, k, usize::MAX)? {
                    let b_beta = b_functor(&fun_l.source, &fun_k.source, &beta)?;
                    let beta_star = fun_k.precompose(&b_beta, fun_l)?;
                    for r in self.restrictions.iter().filter(|r| r.family_index == ki) {
                        let composite: GroupHom = beta.iter().map(|&x| r.alpha[x]).collect();
                        let direct = self
                            .restriction(li, &composite)
                            .ok_or_else(|| Error::NotAHomomorphism("the composite restriction".into()))?;
                        let two_step = r.functor.then(&beta_star)?;
                        let one_step = &self.restrictions[direct].functor;
                        if two_step.object_map() != one_step.object_map()
                            || two_step.morphism_map() != one_step.morphism_map()
                        {
                            return Err(Error::NotAFunctor("restriction is not strictly functorial".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
