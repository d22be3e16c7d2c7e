use std::collections::HashMap;
use std::sync::Arc;

use super::sset::{FinSimplicialSet, SimplicialMap};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinFunctor, Morphism};

const NONE: usize = usize::MAX;
const MAX_NODES: usize = 1 << 20;

/// The category c(X) with the images of vertices and 1-simplices.
#[derive(Clone, Debug)]
pub struct Categorification {
    pub category: Arc<FinCategory>,
    /// object of c(X) for each vertex (the identity map on indices)
    pub vertex_object: Vec<usize>,
    /// morphism of c(X) for every 1-simplex, degenerate ones going to identities
    pub edge_morphism: Vec<usize>,
    /// defining word (nondegenerate 1-simplices, first applied first) of each morphism
    pub words: Vec<Vec<usize>>,
}

struct Enumeration<'a> {
    out_edges: &'a [Vec<usize>],
    edge_slot: &'a [usize],
    edge_target: &'a [usize],
    vertex: Vec<usize>,
    next: Vec<Vec<usize>>,
    parent: Vec<usize>,
    word: Vec<Vec<usize>>,
    max_len: usize,
}

impl Enumeration<'_> {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn new_node(&mut self, v: usize, word: Vec<usize>) -> Result<usize> {
        if word.len() > self.max_len || self.vertex.len() >= MAX_NODES {
            return Err(Error::NotFinite { bound: self.max_len });
        }
        let id = self.vertex.len();
        self.vertex.push(v);
        self.next.push(vec![NONE; self.out_edges[v].len()]);
        self.parent.push(id);
        self.word.push(word);
        Ok(id)
    }

    fn step(&mut self, p: usize, e: usize) -> Result<usize> {
        let p = self.find(p);
        let slot = self.edge_slot[e];
        let q = self.next[p][slot];
        if q != NONE {
            return Ok(self.find(q));
        }
        let mut w = self.word[p].clone();
        w.push(e);
        let q = self.new_node(self.edge_target[e], w)?;
        self.next[p][slot] = q;
        Ok(q)
    }

    fn trace(&mut self, p: usize, word: &[usize]) -> Result<usize> {
        let mut p = self.find(p);
        for &e in word {
            p = self.step(p, e)?;
        }
        Ok(p)
    }

    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop] = keep;
            let dropped = std::mem::take(&mut self.next[drop]);
            for (slot, &t) in dropped.iter().enumerate() {
                if t == NONE {
                    continue;
                }
                let k = self.next[keep][slot];
                if k == NONE {
                    self.next[keep][slot] = t;
                } else {
                    queue.push((k, t));
                }
            }
        }
    }
}

/// The category freely generated by the 1-simplices of X modulo the relations
/// d1σ = d0σ ∘ d2σ from 2-simplices σ, with degenerate 1-simplices as identities.
///
/// Only the 2-truncation matters, so any X stored up to degree ≥ 2 is accepted;
/// below that, X must be skeletal.
pub fn categorify(x: &FinSimplicialSet, max_word_length: usize) -> Result<Categorification> {
    if x.bound() < 2 && !x.is_skeletal() {
        return Err(Error::NotSkeletal);
    }
    let nv = x.count(0);
    let edges: Vec<usize> = if x.bound() >= 1 { x.nondegenerate(1) } else { Vec::new() };
    let ne = if x.bound() >= 1 { x.count(1) } else { 0 };
    let mut out_edges = vec![Vec::new(); nv];
    let mut edge_slot = vec![NONE; ne];
    let mut edge_target = vec![NONE; ne];
    for &e in &edges {
        let s = x.d(1, 1, e);
        edge_slot[e] = out_edges[s].len();
        edge_target[e] = x.d(1, 0, e);
        out_edges[s].push(e);
    }
    let as_word = |e: usize| -> Vec<usize> { if x.is_nondegenerate(1, e) { vec![e] } else { Vec::new() } };
    let mut relations: Vec<Vec<(Vec<usize>, Vec<usize>)>> = vec![Vec::new(); nv];
    if x.bound() >= 2 {
        for s in x.nondegenerate(2) {
            let v0 = x.vertices(2, s)[0];
            let mut lhs = as_word(x.d(2, 2, s));
            lhs.extend(as_word(x.d(2, 0, s)));
            relations[v0].push((lhs, as_word(x.d(2, 1, s))));
        }
    }

    let mut objects_nodes: Vec<Vec<(usize, Vec<usize>)>> = Vec::with_capacity(nv);
    let mut tables: Vec<Enumeration> = Vec::with_capacity(nv);
    for root in 0..nv {
        let mut en = Enumeration {
            out_edges: &out_edges,
            edge_slot: &edge_slot,
            edge_target: &edge_target,
            vertex: Vec::new(),
            next: Vec::new(),
            parent: Vec::new(),
            word: Vec::new(),
            max_len: max_word_length,
        };
        en.new_node(root, Vec::new())?;
        let mut i = 0;
        while i < en.vertex.len() {
            if en.find(i) == i {
                let v = en.vertex[i];
                for (lhs, rhs) in &relations[v] {
                    if en.find(i) != i {
                        break;
                    }
                    let a = en.trace(i, lhs)?;
                    let b = en.trace(i, rhs)?;
                    en.coincide(a, b);
                }
                if en.find(i) == i {
                    for &e in &out_edges[v] {
                        en.step(i, e)?;
                    }
                }
            }
            i += 1;
        }
        let mut live: Vec<(usize, Vec<usize>)> = Vec::new();
        for k in 0..en.vertex.len() {
            if en.find(k) == k {
                live.push((k, en.word[k].clone()));
            }
        }
        objects_nodes.push(live);
        tables.push(en);
    }

    let mut morphisms = Vec::new();
    let mut words = Vec::new();
    let mut morph_node = Vec::new();
    let mut node_index: Vec<HashMap<usize, usize>> = vec![HashMap::new(); nv];
    let mut identity = vec![0; nv];
    for root in 0..nv {
        for (node, word) in &objects_nodes[root] {
            let tgt = tables[root].vertex[*node];
            let id = if word.is_empty() {
                identity[root] = morphisms.len();
                format!("id_{}", x.label(0, root))
            } else {
                word.iter().map(|&e| x.label(1, e)).collect::<Vec<_>>().join(".")
            };
            node_index[root].insert(*node, morphisms.len());
            morphisms.push(Morphism { id, src: root, tgt });
            morph_node.push(*node);
            words.push(word.clone());
        }
    }
    let sources: Vec<usize> = morphisms.iter().map(|m| m.src).collect();
    let labels: Vec<String> = (0..nv).map(|v| x.label(0, v).to_string()).collect();
    let cat = FinCategory::build(labels, morphisms, identity, |g, f| {
        let root = sources[f];
        let end = tables[root].trace(morph_node[f], &words[g]).expect("complete table");
        node_index[root][&end]
    })?;
    let cat = Arc::new(cat);
    let edge_morphism = (0..ne)
        .map(|e| {
            if x.is_nondegenerate(1, e) {
                let s = x.d(1, 1, e);
                let end = tables[s].trace(0, &[e]).expect("complete table");
                node_index[s][&end]
            } else {
                cat.identity(x.d(1, 0, e))
            }
        })
        .collect();
    Ok(Categorification { category: cat, vertex_object: (0..nv).collect(), edge_morphism, words })
}

impl Categorification {
    /// The morphism of c(X) represented by a path of 1-simplices (first applied first).
    pub fn path(&self, start: usize, edges: &[usize]) -> usize {
        edges
            .iter()
            .fold(self.category.identity(start), |acc, &e| self.category.compose(self.edge_morphism[e], acc))
    }
}

/// c(f) for a simplicial map between categorified sets.
pub fn categorify_map(f: &SimplicialMap, source: &Categorification, target: &Categorification) -> Result<FinFunctor> {
    let c = &source.category;
    let object_map: Vec<usize> = (0..c.num_objects()).map(|v| target.vertex_object[f.levels[0][v]]).collect();
    let morphism_map = (0..c.num_morphisms())
        .map(|m| {
            source.words[m].iter().fold(target.category.identity(object_map[c.src(m)]), |acc, &e| {
                target.category.compose(target.edge_morphism[f.levels[1][e]], acc)
            })
        })
        .collect();
    FinFunctor::new(source.category.clone(), target.category.clone(), object_map, morphism_map)
}

/// The counit c(N C) → C for a nerve built from `c`.
pub fn counit(cat: &Categorification, c: &Arc<FinCategory>, nerve_edges: &[Vec<usize>]) -> Result<FinFunctor> {
    let k = &cat.category;
    let morphism_map = (0..k.num_morphisms())
        .map(|m| cat.words[m].iter().fold(c.identity(k.src(m)), |acc, &e| c.compose(nerve_edges[e][0], acc)))
        .collect();
    FinFunctor::new(k.clone(), c.clone(), (0..k.num_objects()).collect(), morphism_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{classifying_category, poset_category, FinGroup, FinMonoid};
    use crate::simplicial::{nerve, Face, SkeletalPresentation};

    fn round_trip(c: FinCategory) {
        let c = Arc::new(c);
        let n = nerve(&c, 2);
        let k = categorify(&n.simplicial, 16).unwrap();
        let eps = counit(&k, &c, &n.chains[1]).unwrap();
        assert!(eps.is_isomorphism(), "counit not an isomorphism");
    }

    #[test]
    fn counit_is_iso_on_examples() {
        round_trip(poset_category(3));
        round_trip(classifying_category(FinGroup::cyclic(4).monoid()));
        round_trip(classifying_category(FinGroup::symmetric(3).monoid()));
        round_trip(classifying_category(&FinMonoid::fiedorowicz()));
    }

    #[test]
    fn simplex_categorifies_to_poset() {
        let d2 = SkeletalPresentation::simplex(2).materialize(2);
        let k = categorify(&d2, 16).unwrap();
        assert_eq!((k.category.num_objects(), k.category.num_morphisms()), (3, 6));
        assert!(k.category.is_poset());
    }

    #[test]
    fn boundary_of_triangle_is_free() {
        // no 2-simplex: the free category on the three edges 01, 02, 12
        let b = SkeletalPresentation::boundary(2).materialize(2);
        let k = categorify(&b, 16).unwrap();
        // identities, three edges, and the composite 12∘01
        assert_eq!(k.category.num_morphisms(), 7);
    }

    #[test]
    fn circle_is_not_finite() {
        // one vertex and one loop generate the free monoid on one generator
        let loop_face = Face { dim: 0, index: 0, surj: vec![0] };
        let circle = SkeletalPresentation {
            labels: vec![vec!["v".into()], vec!["a".into()]],
            faces: vec![vec![Vec::new()], vec![vec![loop_face.clone(), loop_face]]],
        };
        let x = circle.materialize(2);
        assert_eq!(categorify(&x, 16).unwrap_err(), Error::NotFinite { bound: 16 });
    }
}
