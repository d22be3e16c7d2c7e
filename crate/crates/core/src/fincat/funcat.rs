use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FinCategory, Morphism};
use super::enumerate::{enumerate_functors, enumerate_transformations};
use super::functor::{FinFunctor, NatTransformation};
use crate::error::{Error, Result};

/// The functor category Fun(I, C) together with the functors and natural
/// transformations its objects and morphisms stand for.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub category: Arc<FinCategory>,
    pub functors: Vec<FinFunctor>,
    pub transformations: Vec<NatTransformation>,
    /// functor index of each transformation's source and target
    pub ends: Vec<(usize, usize)>,
    functor_lookup: HashMap<Vec<usize>, usize>,
    trans_lookup: HashMap<(usize, usize, Vec<usize>), usize>,
}

pub fn functor_category(i: &Arc<FinCategory>, c: &Arc<FinCategory>, cap: usize) -> Result<FunctorCategory> {
    let functors = enumerate_functors(i, c, cap)?;
    let functor_lookup: HashMap<Vec<usize>, usize> = functors
        .iter()
        .enumerate()
        .map(|(k, f)| (key(f), k))
        .collect();
    let mut transformations = Vec::new();
    let mut ends = Vec::new();
    let mut morphisms = Vec::new();
    let mut trans_lookup = HashMap::new();
    for (s, fs) in functors.iter().enumerate() {
        for (t, ft) in functors.iter().enumerate() {
            for nt in enumerate_transformations(fs, ft, cap.saturating_sub(transformations.len()).max(1))? {
                let idx = transformations.len();
                if idx >= cap {
                    return Err(Error::SizeLimitExceeded { what: "natural transformations".into(), limit: cap });
                }
                let id = format!(
                    "[{}]@{s}>{t}",
                    nt.components().iter().map(|&m| c.morphism(m).id.as_str()).collect::<Vec<_>>().join(",")
                );
                morphisms.push(Morphism { id, src: s, tgt: t });
                trans_lookup.insert((s, t, nt.components().to_vec()), idx);
                transformations.push(nt);
                ends.push((s, t));
            }
        }
    }
    let objects = functors.iter().map(|f| functor_label(i, c, f)).collect();
    let identity: Vec<usize> = functors
        .iter()
        .enumerate()
        .map(|(k, f)| trans_lookup[&(k, k, NatTransformation::identity(f).components().to_vec())])
        .collect();
    let category = FinCategory::build(objects, morphisms, identity, |g, f| {
        let (s, _) = ends[f];
        let (_, t) = ends[g];
        let comps: Vec<usize> = transformations[f]
            .components()
            .iter()
            .zip(transformations[g].components())
            .map(|(&a, &b)| c.compose(b, a))
            .collect();
        trans_lookup[&(s, t, comps)]
    })?;
    Ok(FunctorCategory {
        source: i.clone(),
        target: c.clone(),
        category: Arc::new(category),
        functors,
        transformations,
        ends,
        functor_lookup,
        trans_lookup,
    })
}

fn key(f: &FinFunctor) -> Vec<usize> {
    f.object_map().iter().chain(f.morphism_map()).copied().collect()
}

/// "[x0,x1;f1,f2]": object images, then images of the non-identity morphisms.
pub(crate) fn functor_label(i: &FinCategory, c: &FinCategory, f: &FinFunctor) -> String {
    let objs: Vec<&str> = f.object_map().iter().map(|&y| c.object_id(y)).collect();
    let mors: Vec<&str> = (0..i.num_morphisms())
        .filter(|&m| !i.is_identity(m))
        .map(|m| c.morphism(f.mor(m)).id.as_str())
        .collect();
    if mors.is_empty() {
        format!("[{}]", objs.join(","))
    } else {
        format!("[{};{}]", objs.join(","), mors.join(","))
    }
}

impl FunctorCategory {
    pub fn functor_index(&self, f: &FinFunctor) -> Option<usize> {
        self.functor_lookup.get(&key(f)).copied()
    }

    pub fn transformation_index(&self, t: &NatTransformation) -> Option<usize> {
        let s = self.functor_index(t.source())?;
        let u = self.functor_index(t.target())?;
        self.trans_lookup.get(&(s, u, t.components().to_vec())).copied()
    }

    fn transformation_index_by(&self, s: usize, t: usize, comps: Vec<usize>) -> usize {
        self.trans_lookup[&(s, t, comps)]
    }

    /// Fun(I, h): Fun(I, C) → Fun(I, D) for h: C → D; `other` must be Fun(I, D).
    pub fn postcompose(&self, h: &FinFunctor, other: &FunctorCategory) -> Result<FinFunctor> {
        let mut object_map = Vec::with_capacity(self.functors.len());
        for f in &self.functors {
            let hf = f.then(h)?;
            object_map.push(
                other
                    .functor_index(&hf)
                    .ok_or_else(|| Error::NotAFunctor("postcomposite missing from target functor category".into()))?,
            );
        }
        let morphism_map = self
            .transformations
            .iter()
            .zip(&self.ends)
            .map(|(t, &(s, u))| {
                let comps = t.components().iter().map(|&m| h.mor(m)).collect();
                other.transformation_index_by(object_map[s], object_map[u], comps)
            })
            .collect();
        FinFunctor::new(self.category.clone(), other.category.clone(), object_map, morphism_map)
    }

    /// Fun(g, C): Fun(I, C) → Fun(J, C) for g: J → I; `other` must be Fun(J, C).
    pub fn precompose(&self, g: &FinFunctor, other: &FunctorCategory) -> Result<FinFunctor> {
        let mut object_map = Vec::with_capacity(self.functors.len());
        for f in &self.functors {
            let fg = g.then(f)?;
            object_map.push(
                other
                    .functor_index(&fg)
                    .ok_or_else(|| Error::NotAFunctor("precomposite missing from target functor category".into()))?,
            );
        }
        let morphism_map = self
            .transformations
            .iter()
            .zip(&self.ends)
            .map(|(t, &(s, u))| {
                let comps = g.object_map().iter().map(|&x| t.component(x)).collect();
                other.transformation_index_by(object_map[s], object_map[u], comps)
            })
            .collect();
        FinFunctor::new(self.category.clone(), other.category.clone(), object_map, morphism_map)
    }

    /// Evaluation at an object of I.
    pub fn evaluation(&self, x: usize) -> FinFunctor {
        let object_map = self.functors.iter().map(|f| f.obj(x)).collect();
        let morphism_map = self.transformations.iter().map(|t| t.component(x)).collect();
        FinFunctor::new_unchecked(self.category.clone(), self.target.clone(), object_map, morphism_map)
    }

    /// The diagonal C → Fun(I, C) sending an object to the constant functor.
    pub fn constant_map(&self) -> Result<FinFunctor> {
        let c = &self.target;
        let mut object_map = Vec::with_capacity(c.num_objects());
        for y in 0..c.num_objects() {
            let k = FinFunctor::constant(self.source.clone(), c.clone(), y);
            object_map.push(self.functor_index(&k).ok_or_else(|| Error::NotAFunctor("constant functor missing".into()))?);
        }
        let n = self.source.num_objects();
        let morphism_map = (0..c.num_morphisms())
            .map(|m| self.transformation_index_by(object_map[c.src(m)], object_map[c.tgt(m)], vec![m; n]))
            .collect();
        FinFunctor::new(c.clone(), self.category.clone(), object_map, morphism_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{classifying_category, poset_category, terminal, FinGroup};

    #[test]
    fn fun_terminal_is_evaluation_iso() {
        let t = Arc::new(terminal());
        let c = Arc::new(classifying_category(FinGroup::symmetric(3).monoid()));
        let fc = functor_category(&t, &c, 1000).unwrap();
        assert!(fc.evaluation(0).is_isomorphism());
    }

    #[test]
    fn fun_bc2_bc2_has_two_objects() {
        let bc2 = Arc::new(classifying_category(FinGroup::cyclic(2).monoid()));
        let fc = functor_category(&bc2, &bc2, 1000).unwrap();
        assert_eq!(fc.category.num_objects(), 2);
        assert_eq!(fc.category.num_morphisms(), 4);
    }

    #[test]
    fn constant_map_into_poset_is_iso() {
        let bc3 = Arc::new(classifying_category(FinGroup::cyclic(3).monoid()));
        let p2 = Arc::new(poset_category(2));
        let fc = functor_category(&bc3, &p2, 1000).unwrap();
        assert!(fc.constant_map().unwrap().is_isomorphism());
    }

    #[test]
    fn arrow_category_of_p1() {
        let p1 = Arc::new(poset_category(1));
        let fc = functor_category(&p1, &p1, 1000).unwrap();
        // Fun(p[1], p[1]) is p[2]
        assert_eq!(fc.category.num_objects(), 3);
        assert_eq!(fc.category.num_morphisms(), 6);
        assert!(fc.category.is_poset());
    }
}
