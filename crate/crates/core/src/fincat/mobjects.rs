use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FinCategory, Morphism};
use super::constructions::classifying_category;
use super::funcat::{functor_category, FunctorCategory};
use super::functor::FinFunctor;
use super::monoid::FinMonoid;
use crate::error::{Error, Result};

/// The category MC of M-objects in C, built from actions directly, with the
/// comparison isomorphism from Fun(BM, C).
#[derive(Clone, Debug)]
pub struct MObjects {
    pub category: Arc<FinCategory>,
    /// (object of C, image of each monoid element) for every M-object
    pub actions: Vec<(usize, Vec<usize>)>,
    pub functor_category: FunctorCategory,
    pub comparison: FinFunctor,
}

/// All monoid maps M → End(x).
fn actions_on(m: &FinMonoid, c: &FinCategory, x: usize) -> Vec<Vec<usize>> {
    let ends = c.hom(x, x).to_vec();
    let n = m.order();
    let mut out = Vec::new();
    let mut rho = vec![usize::MAX; n];
    fn go(k: usize, m: &FinMonoid, c: &FinCategory, x: usize, ends: &[usize], rho: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = m.order();
        if k == n {
            out.push(rho.clone());
            return;
        }
        let candidates: Vec<usize> = if k == m.unit() { vec![c.identity(x)] } else { ends.to_vec() };
        for e in candidates {
            rho[k] = e;
            let ok = (0..=k).all(|a| {
                (0..=k).all(|b| {
                    let ab = m.mul(a, b);
                    ab > k || rho[ab] == c.compose(rho[a], rho[b])
                })
            });
            if ok {
                go(k + 1, m, c, x, ends, rho, out);
            }
        }
    }
    go(0, m, c, x, &ends, &mut rho, &mut out);
    out
}

pub fn m_objects_iso(m: &FinMonoid, c: &Arc<FinCategory>, cap: usize) -> Result<MObjects> {
    let mut actions = Vec::new();
    for x in 0..c.num_objects() {
        for rho in actions_on(m, c, x) {
            actions.push((x, rho));
            if actions.len() > cap {
                return Err(Error::SizeLimitExceeded { what: "monoid actions".into(), limit: cap });
            }
        }
    }
    let names: Vec<String> = actions
        .iter()
        .map(|(x, rho)| {
            let imgs: Vec<&str> = rho.iter().map(|&e| c.morphism(e).id.as_str()).collect();
            format!("({}|{})", c.object_id(*x), imgs.join(","))
        })
        .collect();
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut lookup = HashMap::new();
    for (i, (x, rho)) in actions.iter().enumerate() {
        for (j, (y, sigma)) in actions.iter().enumerate() {
            for &f in c.hom(*x, *y) {
                if (0..m.order()).all(|a| c.compose(f, rho[a]) == c.compose(sigma[a], f)) {
                    lookup.insert((i, j, f), morphisms.len());
                    morphisms.push(Morphism { id: format!("{}@{i}>{j}", c.morphism(f).id), src: i, tgt: j });
                    underlying.push(f);
                }
            }
        }
    }
    let identity = actions.iter().enumerate().map(|(i, (x, _))| lookup[&(i, i, c.identity(*x))]).collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|mm: &Morphism| (mm.src, mm.tgt)).collect();
    let mc = FinCategory::build(names, morphisms, identity, |g, f| {
        lookup[&(ends[f].0, ends[g].1, c.compose(underlying[g], underlying[f]))]
    })?;
    let mc = Arc::new(mc);

    let bm = Arc::new(classifying_category(m));
    let fc = functor_category(&bm, c, cap)?;
    let action_index: HashMap<(usize, Vec<usize>), usize> =
        actions.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let mut object_map = Vec::with_capacity(fc.functors.len());
    for f in &fc.functors {
        let key = (f.obj(0), f.morphism_map().to_vec());
        object_map.push(*action_index.get(&key).ok_or_else(|| Error::NotAFunctor("functor without matching action".into()))?);
    }
    let mut morphism_map = Vec::with_capacity(fc.transformations.len());
    for (t, &(s, u)) in fc.transformations.iter().zip(&fc.ends) {
        let key = (object_map[s], object_map[u], t.component(0));
        morphism_map.push(*lookup.get(&key).ok_or_else(|| Error::NotAFunctor("transformation without matching map".into()))?);
    }
    let comparison = FinFunctor::new(fc.category.clone(), mc.clone(), object_map, morphism_map)?;
    Ok(MObjects { category: mc, actions, functor_category: fc, comparison })
}
