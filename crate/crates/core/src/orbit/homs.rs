use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{
    abelian_order_profile, classifying_category, full_subcategory, functor_category, product, FinCategory, FinFunctor,
    FinGroup, Morphism, NatTransformation,
};
use crate::homology::{homology, pi0, HomologyGroup};
use crate::simplicial::nerve;

/// A homomorphism as the list of images of the elements of its source.
pub type GroupHom = Vec<usize>;

fn check_order(g: &FinGroup, max_group_order: usize) -> Result<()> {
    if g.order() > max_group_order {
        return Err(Error::SizeLimitExceeded { what: "group order".into(), limit: max_group_order });
    }
    Ok(())
}

/// Extends an assignment on generators along the Cayley graph; None if inconsistent.
fn extend(k: &FinGroup, g: &FinGroup, gens: &[usize], images: &[usize]) -> Option<GroupHom> {
    let mut phi = vec![usize::MAX; k.order()];
    phi[k.unit()] = g.unit();
    let mut frontier = vec![k.unit()];
    while let Some(x) = frontier.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let (y, v) = (k.mul(x, s), g.mul(phi[x], t));
            if phi[y] == usize::MAX {
                phi[y] = v;
                frontier.push(y);
            } else if phi[y] != v {
                return None;
            }
        }
    }
    Some(phi)
}

pub fn is_homomorphism(k: &FinGroup, g: &FinGroup, phi: &[usize]) -> bool {
    phi.len() == k.order()
        && phi[k.unit()] == g.unit()
        && (0..k.order()).all(|a| (0..k.order()).all(|b| phi[k.mul(a, b)] == g.mul(phi[a], phi[b])))
}

/// All homomorphisms K → G, sorted by their element maps.
///
/// Generators are sent only to elements whose order divides theirs, and the
/// rest of the map is forced along the Cayley graph.
pub fn enumerate_homs(k: &FinGroup, g: &FinGroup, max_group_order: usize) -> Result<Vec<GroupHom>> {
    check_order(k, max_group_order)?;
    check_order(g, max_group_order)?;
    let gens = k.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = k.element_order(s);
            (0..g.order()).filter(|&t| o.is_multiple_of(g.element_order(t))).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut images = vec![0; gens.len()];
    fn go(
        d: usize,
        k: &FinGroup,
        g: &FinGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        out: &mut Vec<GroupHom>,
    ) {
        if d == gens.len() {
            if let Some(phi) = extend(k, g, gens, images) {
                debug_assert!(is_homomorphism(k, g, &phi));
                out.push(phi);
            }
            return;
        }
        for &t in &candidates[d] {
            images[d] = t;
            go(d + 1, k, g, gens, candidates, images, out);
        }
    }
    go(0, k, g, &gens, &candidates, &mut images, &mut out);
    out.sort();
    Ok(out)
}

/// c_g ∘ α
pub fn conjugate_hom(g: &FinGroup, by: usize, alpha: &[usize]) -> GroupHom {
    alpha.iter().map(|&a| g.conjugate(by, a)).collect()
}

/// The groupoid of homomorphisms K → G and conjugations: a morphism g: α → c_g∘α
/// for every g ∈ G, composed by multiplication.
#[derive(Clone, Debug)]
pub struct HomGroupoid {
    pub source: FinGroup,
    pub target: FinGroup,
    pub homs: Vec<GroupHom>,
    /// morphism α·|G| + g is g: α → c_g∘α
    pub category: Arc<FinCategory>,
}

impl HomGroupoid {
    pub fn new(k: &FinGroup, g: &FinGroup, max_group_order: usize) -> Result<Self> {
        let homs = enumerate_homs(k, g, max_group_order)?;
        let lookup: HashMap<&GroupHom, usize> = homs.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let n = g.order();
        let objects: Vec<String> = homs.iter().map(|a| hom_label(g, a)).collect();
        let mut morphisms = Vec::with_capacity(homs.len() * n);
        for (i, alpha) in homs.iter().enumerate() {
            for x in 0..n {
                let tgt = lookup[&conjugate_hom(g, x, alpha)];
                morphisms.push(Morphism { id: format!("{}:{}", g.name(x), objects[i]), src: i, tgt });
            }
        }
        let identity = (0..homs.len()).map(|i| i * n + g.unit()).collect();
        let category = FinCategory::build(objects, morphisms, identity, |b, a| (a / n) * n + g.mul(b % n, a % n))?;
        Ok(HomGroupoid { source: k.clone(), target: g.clone(), homs, category: Arc::new(category) })
    }

    pub fn morphism(&self, alpha: usize, x: usize) -> usize {
        alpha * self.target.order() + x
    }

    pub fn hom_index(&self, alpha: &[usize]) -> Option<usize> {
        self.homs.iter().position(|a| a == alpha)
    }
}

fn hom_label(g: &FinGroup, alpha: &[usize]) -> String {
    let names: Vec<&str> = alpha.iter().map(|&a| g.name(a)).collect();
    format!("[{}]", names.join(","))
}

/// One conjugacy class of homomorphisms and the checks made on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub representative: String,
    pub size: usize,
    /// the centralizer of the image of the representative, by element name
    pub centralizer: Vec<String>,
    /// the automorphism group of the representative equals the centralizer as a subset of G
    pub vertex_group_matches: bool,
    /// H1 of the component's nerve
    pub h1: HomologyGroup,
    /// element orders of the abelianized centralizer
    pub abelianization_profile: Vec<usize>,
    pub h1_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomGroupoidReport {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub homomorphisms: usize,
    pub classes: Vec<ClassReport>,
    /// components of the nerve of the whole groupoid
    pub pi0: usize,
    pub pi0_matches: bool,
}

impl HomGroupoidReport {
    pub fn verified(&self) -> bool {
        self.pi0_matches && self.classes.iter().all(|c| c.vertex_group_matches && c.h1_matches)
    }
}

/// Builds the hom groupoid and checks its components against conjugacy classes
/// and centralizers computed directly in G.
pub fn hom_groupoid(k: &FinGroup, g: &FinGroup, max_group_order: usize) -> Result<(HomGroupoid, HomGroupoidReport)> {
    let hg = HomGroupoid::new(k, g, max_group_order)?;
    let n = hg.homs.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> =
            (0..g.order()).map(|x| hg.hom_index(&conjugate_hom(g, x, &hg.homs[a])).expect("closed")).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    let whole = nerve(&hg.category, 1);
    let components = pi0(&whole.simplicial).count;

    let mut reports = Vec::with_capacity(classes.len());
    for members in &classes {
        let rep = members[0];
        let alpha = &hg.homs[rep];
        let centralizer = g.centralizer(alpha);
        let mut vertex: Vec<usize> = hg.category.hom(rep, rep).iter().map(|&m| m % g.order()).collect();
        vertex.sort_unstable();
        let (component, _) = full_subcategory(&hg.category, members);
        let h = homology(&nerve(&component, 2).simplicial, 1)?;
        let h1 = h.groups[1].clone();
        let profile = g.restrict(&centralizer)?.abelianization_order_profile();
        let h1_matches = abelian_order_profile(&h1.torsion, h1.betti).as_ref() == Some(&profile);
        reports.push(ClassReport {
            representative: hg.category.object_id(rep).to_string(),
            size: members.len(),
            centralizer: centralizer.iter().map(|&x| g.name(x).to_string()).collect(),
            vertex_group_matches: vertex == centralizer,
            h1,
            abelianization_profile: profile,
            h1_matches,
        });
    }
    let report = HomGroupoidReport {
        source: k.elements().to_vec(),
        target: g.elements().to_vec(),
        homomorphisms: n,
        pi0_matches: components == classes.len(),
        classes: reports,
        pi0: components,
    };
    Ok((hg, report))
}

/// HomGroupoid(K, G) → Fun(BK, BG), sending α to Bα and g to the transformation with component g.
pub fn iso_to_fun(hg: &HomGroupoid, cap: usize) -> Result<FinFunctor> {
    let (k, g) = (&hg.source, &hg.target);
    let bk = Arc::new(classifying_category(k.monoid()));
    let bg = Arc::new(classifying_category(g.monoid()));
    let fun = functor_category(&bk, &bg, cap)?;
    let b_of = |alpha: &GroupHom| FinFunctor::new(bk.clone(), bg.clone(), vec![0], alpha.clone());
    let mut object_map = Vec::with_capacity(hg.homs.len());
    for alpha in &hg.homs {
        let f = b_of(alpha)?;
        object_map.push(fun.functor_index(&f).ok_or_else(|| Error::NotAFunctor("Bα missing".into()))?);
    }
    let mut morphism_map = Vec::with_capacity(hg.category.num_morphisms());
    for m in 0..hg.category.num_morphisms() {
        let (a, x) = (hg.category.src(m), m % g.order());
        let b = hg.category.tgt(m);
        let t = NatTransformation::new(b_of(&hg.homs[a])?, b_of(&hg.homs[b])?, vec![x])?;
        morphism_map.push(fun.transformation_index(&t).ok_or_else(|| Error::NotNatural("transformation missing".into()))?);
    }
    FinFunctor::new(hg.category.clone(), fun.category.clone(), object_map, morphism_map)
}

/// Composition grp(K, G) × grp(L, K) → grp(L, G):
/// (g: α → β) ∘ (k: δ → ε) = (g·α(k): α∘δ → β∘ε).
pub fn composition_functor(outer: &HomGroupoid, inner: &HomGroupoid, composite: &HomGroupoid) -> Result<FinFunctor> {
    if outer.source != inner.target || composite.source != inner.source || composite.target != outer.target {
        return Err(Error::Malformed("hom groupoids are not composable".into()));
    }
    let g = &outer.target;
    let dom = Arc::new(product(&outer.category, &inner.category));
    let (ni, mi) = (inner.category.num_objects(), inner.category.num_morphisms());
    let compose_homs = |a: usize, d: usize| -> Result<usize> {
        let ad: GroupHom = inner.homs[d].iter().map(|&x| outer.homs[a][x]).collect();
        composite.hom_index(&ad).ok_or_else(|| Error::NotAHomomorphism("the composite of the two homomorphisms".into()))
    };
    let object_map = (0..dom.num_objects()).map(|i| compose_homs(i / ni, i % ni)).collect::<Result<Vec<_>>>()?;
    let mut morphism_map = Vec::with_capacity(dom.num_morphisms());
    for i in 0..dom.num_morphisms() {
        let (gm, km) = (i / mi, i % mi);
        let (alpha, x) = (outer.category.src(gm), gm % g.order());
        let (delta, y) = (inner.category.src(km), km % outer.source.order());
        let elt = g.mul(x, outer.homs[alpha][y]);
        morphism_map.push(composite.morphism(compose_homs(alpha, delta)?, elt));
    }
    FinFunctor::new(dom, composite.category.clone(), object_map, morphism_map)
}
