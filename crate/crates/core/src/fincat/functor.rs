use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::category::{CategoryDescription, FinCategory};
use crate::error::{Error, Result};

/// A functor between finite categories, stored as index maps.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    domain: Arc<FinCategory>,
    codomain: Arc<FinCategory>,
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.object_map == other.object_map
            && self.morphism_map == other.morphism_map
            && same_category(&self.domain, &other.domain)
            && same_category(&self.codomain, &other.codomain)
    }
}

impl Eq for FinFunctor {}

pub(crate) fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDescription {
    pub domain: CategoryDescription,
    pub codomain: CategoryDescription,
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

impl FinFunctor {
    pub fn new(
        domain: Arc<FinCategory>,
        codomain: Arc<FinCategory>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Result<Self> {
        let f = FinFunctor { domain, codomain, object_map, morphism_map };
        f.verify()?;
        Ok(f)
    }

    /// Skips verification; callers guarantee functoriality by construction.
    pub(crate) fn new_unchecked(
        domain: Arc<FinCategory>,
        codomain: Arc<FinCategory>,
        object_map: Vec<usize>,
        morphism_map: Vec<usize>,
    ) -> Self {
        debug_assert!(
            FinFunctor { domain: domain.clone(), codomain: codomain.clone(), object_map: object_map.clone(), morphism_map: morphism_map.clone() }
                .verify()
                .is_ok(),
            "unchecked functor is not a functor"
        );
        FinFunctor { domain, codomain, object_map, morphism_map }
    }

    pub fn verify(&self) -> Result<()> {
        let (a, b) = (&*self.domain, &*self.codomain);
        if self.object_map.len() != a.num_objects() || self.morphism_map.len() != a.num_morphisms() {
            return Err(Error::NotAFunctor("maps do not cover the domain".into()));
        }
        if self.object_map.iter().any(|&y| y >= b.num_objects())
            || self.morphism_map.iter().any(|&g| g >= b.num_morphisms())
        {
            return Err(Error::NotAFunctor("image index out of range".into()));
        }
        for f in 0..a.num_morphisms() {
            let g = self.morphism_map[f];
            if b.src(g) != self.object_map[a.src(f)] || b.tgt(g) != self.object_map[a.tgt(f)] {
                return Err(Error::NotAFunctor(format!(
                    "{} is sent to {} which has the wrong endpoints",
                    a.morphism(f).id,
                    b.morphism(g).id
                )));
            }
        }
        for x in 0..a.num_objects() {
            if self.morphism_map[a.identity(x)] != b.identity(self.object_map[x]) {
                return Err(Error::NotAFunctor(format!("identity of {} is not preserved", a.object_id(x))));
            }
        }
        for f in 0..a.num_morphisms() {
            for &g in a.outgoing(a.tgt(f)) {
                let lhs = self.morphism_map[a.compose(g, f)];
                let rhs = b.compose(self.morphism_map[g], self.morphism_map[f]);
                if lhs != rhs {
                    return Err(Error::NotAFunctor(format!(
                        "composite {} . {} is not preserved",
                        a.morphism(g).id,
                        a.morphism(f).id
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let object_map = (0..c.num_objects()).collect();
        let morphism_map = (0..c.num_morphisms()).collect();
        FinFunctor { domain: c.clone(), codomain: c, object_map, morphism_map }
    }

    /// The constant functor at object `y`.
    pub fn constant(domain: Arc<FinCategory>, codomain: Arc<FinCategory>, y: usize) -> Self {
        let object_map = vec![y; domain.num_objects()];
        let morphism_map = vec![codomain.identity(y); domain.num_morphisms()];
        FinFunctor { domain, codomain, object_map, morphism_map }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor> {
        if !same_category(&self.codomain, &other.domain) {
            return Err(Error::NotAFunctor("composing functors with mismatched categories".into()));
        }
        Ok(FinFunctor {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            object_map: self.object_map.iter().map(|&x| other.object_map[x]).collect(),
            morphism_map: self.morphism_map.iter().map(|&f| other.morphism_map[f]).collect(),
        })
    }

    pub fn domain(&self) -> &Arc<FinCategory> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<FinCategory> {
        &self.codomain
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphism_map
    }

    #[inline]
    pub fn obj(&self, x: usize) -> usize {
        self.object_map[x]
    }

    #[inline]
    pub fn mor(&self, f: usize) -> usize {
        self.morphism_map[f]
    }

    pub fn is_injective_on_objects(&self) -> bool {
        is_injective(&self.object_map)
    }

    /// Bijective on objects and morphisms; for a functor this is an isomorphism of categories.
    pub fn is_isomorphism(&self) -> bool {
        self.object_map.len() == self.codomain.num_objects()
            && self.morphism_map.len() == self.codomain.num_morphisms()
            && is_injective(&self.object_map)
            && is_injective(&self.morphism_map)
    }

    /// Inverse of an isomorphism of categories.
    pub fn inverse(&self) -> Option<FinFunctor> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut object_map = vec![0; self.object_map.len()];
        for (x, &y) in self.object_map.iter().enumerate() {
            object_map[y] = x;
        }
        let mut morphism_map = vec![0; self.morphism_map.len()];
        for (f, &g) in self.morphism_map.iter().enumerate() {
            morphism_map[g] = f;
        }
        Some(FinFunctor { domain: self.codomain.clone(), codomain: self.domain.clone(), object_map, morphism_map })
    }

    /// Checks full faithfulness pair by pair in index order and returns the first
    /// pair where the hom map is not bijective, together with which half fails.
    pub fn fully_faithful_failure(&self) -> Option<(usize, usize, FaithfulFailure)> {
        let (a, b) = (&*self.domain, &*self.codomain);
        for x in 0..a.num_objects() {
            for y in 0..a.num_objects() {
                let image: Vec<usize> = a.hom(x, y).iter().map(|&f| self.morphism_map[f]).collect();
                if !is_injective(&image) {
                    return Some((x, y, FaithfulFailure::NotFaithful));
                }
                if image.len() != b.hom(self.object_map[x], self.object_map[y]).len() {
                    return Some((x, y, FaithfulFailure::NotFull));
                }
            }
        }
        None
    }

    pub fn describe(&self) -> FunctorDescription {
        let (a, b) = (&*self.domain, &*self.codomain);
        FunctorDescription {
            domain: a.describe(),
            codomain: b.describe(),
            objects: (0..a.num_objects())
                .map(|x| (a.object_id(x).to_string(), b.object_id(self.object_map[x]).to_string()))
                .collect(),
            morphisms: (0..a.num_morphisms())
                .map(|f| (a.morphism(f).id.clone(), b.morphism(self.morphism_map[f]).id.clone()))
                .collect(),
        }
    }

    pub fn from_description(desc: &FunctorDescription) -> Result<Self> {
        let domain = Arc::new(FinCategory::from_description(&desc.domain)?);
        let codomain = Arc::new(FinCategory::from_description(&desc.codomain)?);
        Self::from_maps(domain, codomain, &desc.objects, &desc.morphisms)
    }

    /// Builds a functor from id-level maps. Identity morphisms may be omitted.
    pub fn from_maps(
        domain: Arc<FinCategory>,
        codomain: Arc<FinCategory>,
        objects: &BTreeMap<String, String>,
        morphisms: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let bobj: HashMap<&str, usize> =
            codomain.objects().iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let bmor: HashMap<&str, usize> =
            codomain.morphisms().iter().enumerate().map(|(i, m)| (m.id.as_str(), i)).collect();
        let mut object_map = Vec::with_capacity(domain.num_objects());
        for x in domain.objects() {
            let y = objects.get(x).ok_or_else(|| Error::NotAFunctor(format!("object {x} has no image")))?;
            object_map.push(*bobj.get(y.as_str()).ok_or_else(|| Error::UnknownId(y.clone()))?);
        }
        let mut morphism_map = Vec::with_capacity(domain.num_morphisms());
        for (f, m) in domain.morphisms().iter().enumerate() {
            match morphisms.get(&m.id) {
                Some(g) => morphism_map.push(*bmor.get(g.as_str()).ok_or_else(|| Error::UnknownId(g.clone()))?),
                None if domain.is_identity(f) => morphism_map.push(codomain.identity(object_map[m.src])),
                None => return Err(Error::NotAFunctor(format!("morphism {} has no image", m.id))),
            }
        }
        for key in objects.keys() {
            if domain.object_index(key).is_none() {
                return Err(Error::UnknownId(key.clone()));
            }
        }
        for key in morphisms.keys() {
            if domain.morphism_index(key).is_none() {
                return Err(Error::UnknownId(key.clone()));
            }
        }
        Self::new(domain, codomain, object_map, morphism_map)
    }

    /// A functor into a thin category (such as a poset) is determined by its object map.
    pub fn from_object_map(domain: Arc<FinCategory>, codomain: Arc<FinCategory>, objects: &[usize]) -> Result<Self> {
        if objects.len() != domain.num_objects() || objects.iter().any(|&y| y >= codomain.num_objects()) {
            return Err(Error::NotAFunctor("object map has the wrong shape".into()));
        }
        let morphism_map = (0..domain.num_morphisms())
            .map(|f| match codomain.hom(objects[domain.src(f)], objects[domain.tgt(f)]) {
                [g] => Ok(*g),
                [] => Err(Error::NotAFunctor(format!("no morphism available for {}", domain.morphism(f).id))),
                _ => Err(Error::NotAFunctor("codomain is not thin".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, objects.to_vec(), morphism_map)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.describe()).expect("functor description serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let desc: FunctorDescription = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_description(&desc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaithfulFailure {
    NotFaithful,
    NotFull,
}

pub(crate) fn is_injective(v: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::with_capacity(v.len());
    v.iter().all(|x| seen.insert(*x))
}

/// A natural transformation between two parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransformation {
    source: FinFunctor,
    target: FinFunctor,
    components: Vec<usize>,
}

impl NatTransformation {
    pub fn new(source: FinFunctor, target: FinFunctor, components: Vec<usize>) -> Result<Self> {
        let t = NatTransformation { source, target, components };
        t.verify()?;
        Ok(t)
    }

    pub(crate) fn new_unchecked(source: FinFunctor, target: FinFunctor, components: Vec<usize>) -> Self {
        NatTransformation { source, target, components }
    }

    pub fn verify(&self) -> Result<()> {
        let (f, g) = (&self.source, &self.target);
        if !same_category(f.domain(), g.domain()) || !same_category(f.codomain(), g.codomain()) {
            return Err(Error::NotNatural("functors are not parallel".into()));
        }
        let (a, b) = (&**f.domain(), &**f.codomain());
        if self.components.len() != a.num_objects() {
            return Err(Error::NotNatural("components do not cover the objects".into()));
        }
        for x in 0..a.num_objects() {
            let c = self.components[x];
            if c >= b.num_morphisms() || b.src(c) != f.obj(x) || b.tgt(c) != g.obj(x) {
                return Err(Error::NotNatural(format!("component at {} has the wrong type", a.object_id(x))));
            }
        }
        for m in 0..a.num_morphisms() {
            let (x, y) = (a.src(m), a.tgt(m));
            if b.compose(g.mor(m), self.components[x]) != b.compose(self.components[y], f.mor(m)) {
                return Err(Error::NotNatural(format!("square at {} does not commute", a.morphism(m).id)));
            }
        }
        Ok(())
    }

    pub fn identity(f: &FinFunctor) -> Self {
        let b = f.codomain();
        let components = f.object_map().iter().map(|&y| b.identity(y)).collect();
        NatTransformation { source: f.clone(), target: f.clone(), components }
    }

    /// Vertical composite `other ∘ self`.
    pub fn then(&self, other: &NatTransformation) -> Result<NatTransformation> {
        if self.target != other.source {
            return Err(Error::NotNatural("vertical composite of non-matching transformations".into()));
        }
        let b = self.source.codomain();
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(&s, &o)| b.compose(o, s))
            .collect();
        Ok(NatTransformation { source: self.source.clone(), target: other.target.clone(), components })
    }

    /// Horizontal composite `other * self` for self: F ⇒ F' (A → B) and other: G ⇒ G' (B → C).
    pub fn horizontal(&self, other: &NatTransformation) -> Result<NatTransformation> {
        let source = self.source.then(&other.source)?;
        let target = self.target.then(&other.target)?;
        let c = other.source.codomain();
        let components = (0..self.components.len())
            .map(|x| c.compose(other.components[self.target.obj(x)], other.source.mor(self.components[x])))
            .collect();
        Ok(NatTransformation { source, target, components })
    }

    /// Whiskering `self ∘ h` for a functor h into the common domain.
    pub fn precompose(&self, h: &FinFunctor) -> Result<NatTransformation> {
        let source = h.then(&self.source)?;
        let target = h.then(&self.target)?;
        let components = h.object_map().iter().map(|&x| self.components[x]).collect();
        Ok(NatTransformation { source, target, components })
    }

    /// Whiskering `h ∘ self` for a functor h out of the common codomain.
    pub fn postcompose(&self, h: &FinFunctor) -> Result<NatTransformation> {
        let source = self.source.then(h)?;
        let target = self.target.then(h)?;
        let components = self.components.iter().map(|&c| h.mor(c)).collect();
        Ok(NatTransformation { source, target, components })
    }

    pub fn source(&self) -> &FinFunctor {
        &self.source
    }

    pub fn target(&self) -> &FinFunctor {
        &self.target
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn component(&self, x: usize) -> usize {
        self.components[x]
    }

    pub fn is_identity(&self) -> bool {
        let b = self.source.codomain();
        self.components.iter().all(|&c| b.is_identity(c))
    }
}
