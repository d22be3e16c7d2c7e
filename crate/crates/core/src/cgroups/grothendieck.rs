use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{functor_category, is_strongly_connected, FinCategory, FinFunctor, FunctorCategory, Morphism, NatTransformation};
use crate::homology::{compare, ComparisonVerdict};

/// A strict functor F: K → cat given by a category per object and a functor per morphism.
#[derive(Clone, Debug)]
pub struct StrictDiagram {
    pub index: Arc<FinCategory>,
    pub categories: Vec<Arc<FinCategory>>,
    pub functors: Vec<FinFunctor>,
}

fn same_functor(a: &FinFunctor, b: &FinFunctor) -> bool {
    a.object_map() == b.object_map() && a.morphism_map() == b.morphism_map()
}

impl StrictDiagram {
    /// Checks endpoints, identities and strict composition.
    pub fn new(index: Arc<FinCategory>, categories: Vec<Arc<FinCategory>>, functors: Vec<FinFunctor>) -> Result<Self> {
        let k = &index;
        if categories.len() != k.num_objects() || functors.len() != k.num_morphisms() {
            return Err(Error::Malformed("one category per object and one functor per morphism are required".into()));
        }
        for f in 0..k.num_morphisms() {
            let func = &functors[f];
            if **func.domain() != *categories[k.src(f)] || **func.codomain() != *categories[k.tgt(f)] {
                return Err(Error::NotAFunctor(format!("F({}) has the wrong endpoints", k.morphism(f).id)));
            }
        }
        for x in 0..k.num_objects() {
            if !same_functor(&functors[k.identity(x)], &FinFunctor::identity(categories[x].clone())) {
                return Err(Error::NotAFunctor(format!("F sends the identity of {} to a non-identity", k.object_id(x))));
            }
        }
        for g in 0..k.num_morphisms() {
            for &f in k.incoming(k.src(g)) {
                if !same_functor(&functors[f].then(&functors[g])?, &functors[k.compose(g, f)]) {
                    return Err(Error::NotAFunctor(format!(
                        "F({}∘{}) differs from the composite",
                        k.morphism(g).id,
                        k.morphism(f).id
                    )));
                }
            }
        }
        Ok(StrictDiagram { index, categories, functors })
    }

    /// The constant diagram at C, every morphism going to the identity.
    pub fn constant(index: Arc<FinCategory>, c: Arc<FinCategory>) -> Result<Self> {
        let categories = vec![c.clone(); index.num_objects()];
        let functors = vec![FinFunctor::identity(c); index.num_morphisms()];
        Self::new(index, categories, functors)
    }

    /// Fun(I, F): k ↦ Fun(I, F(k)), f ↦ F(f) ∘ −.
    pub fn functor_diagram(&self, i: &Arc<FinCategory>, cap: usize) -> Result<(StrictDiagram, Vec<FunctorCategory>)> {
        let fun: Vec<FunctorCategory> =
            self.categories.iter().map(|c| functor_category(i, c, cap)).collect::<Result<_>>()?;
        let k = &self.index;
        let functors = (0..k.num_morphisms())
            .map(|f| fun[k.src(f)].postcompose(&self.functors[f], &fun[k.tgt(f)]))
            .collect::<Result<Vec<_>>>()?;
        let d = StrictDiagram::new(k.clone(), fun.iter().map(|f| f.category.clone()).collect(), functors)?;
        Ok((d, fun))
    }
}

/// K∫F with objects (y, k) and morphisms (ψ, f), ψ: F(f)(x) → y in F(k).
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub category: Arc<FinCategory>,
    pub objects: Vec<(usize, usize)>,
    pub morphisms: Vec<(usize, usize)>,
    object_index: HashMap<(usize, usize), usize>,
    morphism_index: HashMap<(usize, usize), usize>,
}

impl Grothendieck {
    pub fn object(&self, y: usize, k: usize) -> usize {
        self.object_index[&(y, k)]
    }

    pub fn morphism(&self, psi: usize, f: usize) -> usize {
        self.morphism_index[&(psi, f)]
    }
}

/// The Grothendieck construction of a strict diagram, composed by
/// (φ, g) ∘ (ψ, f) = (φ ∘ F(g)(ψ), g ∘ f).
pub fn grothendieck(f: &StrictDiagram, cap: usize) -> Result<Grothendieck> {
    let k = &f.index;
    let mut objects = Vec::new();
    let mut object_index = HashMap::new();
    for kk in 0..k.num_objects() {
        for y in 0..f.categories[kk].num_objects() {
            object_index.insert((y, kk), objects.len());
            objects.push((y, kk));
        }
    }
    let mut morphisms = Vec::new();
    let mut morphism_index = HashMap::new();
    let mut ids = Vec::new();
    for m in 0..k.num_morphisms() {
        let (j, kk) = (k.src(m), k.tgt(m));
        let (fm, target) = (&f.functors[m], &f.categories[kk]);
        for x in 0..f.categories[j].num_objects() {
            for &psi in target.outgoing(fm.obj(x)) {
                if morphisms.len() >= cap {
                    return Err(Error::SizeLimitExceeded { what: "Grothendieck construction morphisms".into(), limit: cap });
                }
                morphism_index.insert((psi, m), morphisms.len());
                ids.push(Morphism {
                    id: format!("({},{})", target.morphism(psi).id, k.morphism(m).id),
                    src: object_index[&(x, j)],
                    tgt: object_index[&(target.tgt(psi), kk)],
                });
                morphisms.push((psi, m));
            }
        }
    }
    let names = objects
        .iter()
        .map(|&(y, kk)| format!("({},{})", f.categories[kk].object_id(y), k.object_id(kk)))
        .collect();
    let identity = objects
        .iter()
        .map(|&(y, kk)| morphism_index[&(f.categories[kk].identity(y), k.identity(kk))])
        .collect();
    let category = FinCategory::build(names, ids, identity, |gm, fm| {
        let (phi, g) = morphisms[gm];
        let (psi, ff) = morphisms[fm];
        let tgt_cat = &f.categories[k.tgt(g)];
        morphism_index[&(tgt_cat.compose(phi, f.functors[g].mor(psi)), k.compose(g, ff))]
    })?;
    Ok(Grothendieck { category: Arc::new(category), objects, morphisms, object_index, morphism_index })
}

#[derive(Clone, Debug)]
pub struct GrothendieckComparison {
    /// K∫Fun(I, F) → Fun(I, K∫F)
    pub functor: FinFunctor,
    pub isomorphism: bool,
    pub index_is_poset: bool,
    /// homology verdict, computed when K is not a poset
    pub verdict: Option<ComparisonVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonSummary {
    pub source_size: (usize, usize),
    pub target_size: (usize, usize),
    pub isomorphism: bool,
    pub index_is_poset: bool,
    pub verdict: Option<ComparisonVerdict>,
}

impl GrothendieckComparison {
    pub fn summary(&self) -> ComparisonSummary {
        let size = |c: &FinCategory| (c.num_objects(), c.num_morphisms());
        ComparisonSummary {
            source_size: size(self.functor.domain()),
            target_size: size(self.functor.codomain()),
            isomorphism: self.isomorphism,
            index_is_poset: self.index_is_poset,
            verdict: self.verdict.clone(),
        }
    }
}

/// The functor K∫Fun(I, F) → Fun(I, K∫F) adjoint to evaluation,
/// (ψ: I → F(k), k) ↦ (i ↦ (ψ(i), k)).
pub fn fun_grothendieck_comparison(
    i: &Arc<FinCategory>,
    f: &StrictDiagram,
    k_max: usize,
    cap: usize,
) -> Result<GrothendieckComparison> {
    if !is_strongly_connected(i) || i.num_objects() == 0 {
        return Err(Error::NotStronglyConnected);
    }
    let k = &f.index;
    let (fun_diagram, fun) = f.functor_diagram(i, cap)?;
    let left = grothendieck(&fun_diagram, cap)?;
    let base = grothendieck(f, cap)?;
    let right = functor_category(i, &base.category, cap)?;

    let as_functor = |psi: &FinFunctor, kk: usize| -> Result<FinFunctor> {
        FinFunctor::new(
            i.clone(),
            base.category.clone(),
            psi.object_map().iter().map(|&y| base.object(y, kk)).collect(),
            psi.morphism_map().iter().map(|&m| base.morphism(m, k.identity(kk))).collect(),
        )
    };
    let mut object_map = Vec::with_capacity(left.objects.len());
    let mut image_functors = Vec::with_capacity(left.objects.len());
    for &(psi, kk) in &left.objects {
        let g = as_functor(&fun[kk].functors[psi], kk)?;
        object_map.push(right.functor_index(&g).ok_or_else(|| Error::NotAFunctor("image functor missing".into()))?);
        image_functors.push(g);
    }
    let mut morphism_map = Vec::with_capacity(left.morphisms.len());
    for (n, &(tau, m)) in left.morphisms.iter().enumerate() {
        let kk = k.tgt(m);
        let comps = fun[kk].transformations[tau].components().iter().map(|&c| base.morphism(c, m)).collect();
        let src = &image_functors[left.category.src(n)];
        let tgt = &image_functors[left.category.tgt(n)];
        let t = NatTransformation::new(src.clone(), tgt.clone(), comps)?;
        morphism_map.push(right.transformation_index(&t).ok_or_else(|| Error::NotNatural("image transformation missing".into()))?);
    }
    let functor = FinFunctor::new(left.category.clone(), right.category.clone(), object_map, morphism_map)?;
    let isomorphism = functor.is_isomorphism();
    let index_is_poset = k.is_poset();
    let verdict = if index_is_poset { None } else { Some(compare(&functor, k_max)?) };
    Ok(GrothendieckComparison { functor, isomorphism, index_is_poset, verdict })
}
