use std::collections::BTreeMap;
use std::sync::Arc;

use super::category::{FinCategory, Morphism};
use super::functor::FinFunctor;
use super::monoid::{FinGroup, FinMonoid};
use crate::error::{Error, Result};

/// The category with one object and one morphism.
pub fn terminal() -> FinCategory {
    FinCategory::build(vec!["*".into()], vec![Morphism { id: "id".into(), src: 0, tgt: 0 }], vec![0], |_, _| 0)
        .expect("terminal category")
}

/// The category with no objects.
pub fn empty_category() -> FinCategory {
    FinCategory::build(Vec::new(), Vec::new(), Vec::new(), |_, _| unreachable!()).expect("empty category")
}

/// The poset category on named elements with order `leq[x][y]` (x ≤ y),
/// which must be reflexive, transitive and antisymmetric. Morphisms are named "x<=y".
pub fn poset_on(elements: Vec<String>, leq: &[Vec<bool>]) -> Result<FinCategory> {
    let n = elements.len();
    for x in 0..n {
        if !leq[x][x] {
            return Err(Error::Malformed(format!("order is not reflexive at {}", elements[x])));
        }
        for y in 0..n {
            if x != y && leq[x][y] && leq[y][x] {
                return Err(Error::Malformed(format!("order is not antisymmetric at {}, {}", elements[x], elements[y])));
            }
            for z in 0..n {
                if leq[x][y] && leq[y][z] && !leq[x][z] {
                    return Err(Error::Malformed(format!(
                        "order is not transitive at {}, {}, {}",
                        elements[x], elements[y], elements[z]
                    )));
                }
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut index = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            if leq[x][y] {
                index.insert((x, y), morphisms.len());
                morphisms.push(Morphism { id: format!("{}<={}", elements[x], elements[y]), src: x, tgt: y });
            }
        }
    }
    let identity = (0..n).map(|x| index[&(x, x)]).collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.src, m.tgt)).collect();
    FinCategory::build(elements, morphisms, identity, |g, f| index[&(ends[f].0, ends[g].1)])
}

/// The totally ordered poset p[n] = {0 < 1 < ... < n}.
pub fn poset_category(n: usize) -> FinCategory {
    let elements = (0..=n).map(|i| i.to_string()).collect();
    let leq: Vec<Vec<bool>> = (0..=n).map(|x| (0..=n).map(|y| x <= y).collect()).collect();
    poset_on(elements, &leq).expect("total order")
}

/// The one-object category with morphisms the elements of `m`.
pub fn classifying_category(m: &FinMonoid) -> FinCategory {
    let morphisms = m
        .elements()
        .iter()
        .map(|e| Morphism { id: e.clone(), src: 0, tgt: 0 })
        .collect();
    FinCategory::build(vec!["*".into()], morphisms, vec![m.unit()], |g, f| m.mul(g, f))
        .expect("a monoid is a one-object category")
}

/// Cartesian product; objects "(a,b)" and morphisms "(f,g)".
pub fn product(a: &FinCategory, b: &FinCategory) -> FinCategory {
    let (nb, mb) = (b.num_objects(), b.num_morphisms());
    let objects = (0..a.num_objects() * nb)
        .map(|i| format!("({},{})", a.object_id(i / nb), b.object_id(i % nb)))
        .collect();
    let morphisms = (0..a.num_morphisms() * mb)
        .map(|i| {
            let (f, g) = (i / mb, i % mb);
            Morphism {
                id: format!("({},{})", a.morphism(f).id, b.morphism(g).id),
                src: a.src(f) * nb + b.src(g),
                tgt: a.tgt(f) * nb + b.tgt(g),
            }
        })
        .collect();
    let identity = (0..a.num_objects() * nb)
        .map(|i| a.identity(i / nb) * mb + b.identity(i % nb))
        .collect();
    FinCategory::build(objects, morphisms, identity, |g, f| {
        a.compose(g / mb, f / mb) * mb + b.compose(g % mb, f % mb)
    })
    .expect("product of categories")
}

/// Both projections out of `product(a, b)`.
pub fn product_projections(
    a: &Arc<FinCategory>,
    b: &Arc<FinCategory>,
    ab: &Arc<FinCategory>,
) -> (FinFunctor, FinFunctor) {
    let (nb, mb) = (b.num_objects(), b.num_morphisms());
    let n = ab.num_objects();
    let m = ab.num_morphisms();
    let p = FinFunctor::new_unchecked(
        ab.clone(),
        a.clone(),
        (0..n).map(|i| i / nb).collect(),
        (0..m).map(|i| i / mb).collect(),
    );
    let q = FinFunctor::new_unchecked(
        ab.clone(),
        b.clone(),
        (0..n).map(|i| i % nb).collect(),
        (0..m).map(|i| i % mb).collect(),
    );
    (p, q)
}

/// `f × g` as a functor between products.
pub fn product_functor(f: &FinFunctor, g: &FinFunctor) -> FinFunctor {
    let dom = Arc::new(product(f.domain(), g.domain()));
    let cod = Arc::new(product(f.codomain(), g.codomain()));
    let (na, ma) = (g.domain().num_objects(), g.domain().num_morphisms());
    let (nb, mb) = (g.codomain().num_objects(), g.codomain().num_morphisms());
    let object_map = (0..dom.num_objects()).map(|i| f.obj(i / na) * nb + g.obj(i % na)).collect();
    let morphism_map = (0..dom.num_morphisms()).map(|i| f.mor(i / ma) * mb + g.mor(i % ma)).collect();
    FinFunctor::new_unchecked(dom, cod, object_map, morphism_map)
}

/// Disjoint union; ids are prefixed "0." and "1.".
pub fn coproduct(a: &FinCategory, b: &FinCategory) -> FinCategory {
    let (na, ma) = (a.num_objects(), a.num_morphisms());
    let objects = a
        .objects()
        .iter()
        .map(|o| format!("0.{o}"))
        .chain(b.objects().iter().map(|o| format!("1.{o}")))
        .collect();
    let morphisms = a
        .morphisms()
        .iter()
        .map(|m| Morphism { id: format!("0.{}", m.id), src: m.src, tgt: m.tgt })
        .chain(b.morphisms().iter().map(|m| Morphism { id: format!("1.{}", m.id), src: m.src + na, tgt: m.tgt + na }))
        .collect();
    let identity = (0..na)
        .map(|x| a.identity(x))
        .chain((0..b.num_objects()).map(|y| b.identity(y) + ma))
        .collect();
    FinCategory::build(objects, morphisms, identity, |g, f| {
        if g < ma { a.compose(g, f) } else { b.compose(g - ma, f - ma) + ma }
    })
    .expect("coproduct of categories")
}

/// Both coprojections into `coproduct(a, b)`.
pub fn coproduct_injections(
    a: &Arc<FinCategory>,
    b: &Arc<FinCategory>,
    ab: &Arc<FinCategory>,
) -> (FinFunctor, FinFunctor) {
    let (na, ma) = (a.num_objects(), a.num_morphisms());
    let i = FinFunctor::new_unchecked(a.clone(), ab.clone(), (0..na).collect(), (0..ma).collect());
    let j = FinFunctor::new_unchecked(
        b.clone(),
        ab.clone(),
        (0..b.num_objects()).map(|y| y + na).collect(),
        (0..b.num_morphisms()).map(|g| g + ma).collect(),
    );
    (i, j)
}

/// The opposite category, with the same ids.
pub fn opposite(c: &FinCategory) -> FinCategory {
    let morphisms = c
        .morphisms()
        .iter()
        .map(|m| Morphism { id: m.id.clone(), src: m.tgt, tgt: m.src })
        .collect();
    let identity = (0..c.num_objects()).map(|x| c.identity(x)).collect();
    FinCategory::build(c.objects().to_vec(), morphisms, identity, |g, f| c.compose(f, g)).expect("opposite category")
}

/// The full subcategory on the given objects (kept in the given order) with its inclusion.
pub fn full_subcategory(c: &Arc<FinCategory>, objects: &[usize]) -> (Arc<FinCategory>, FinFunctor) {
    let pos: BTreeMap<usize, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut kept = Vec::new();
    let mut new_index = vec![usize::MAX; c.num_morphisms()];
    for f in 0..c.num_morphisms() {
        if pos.contains_key(&c.src(f)) && pos.contains_key(&c.tgt(f)) {
            new_index[f] = kept.len();
            kept.push(f);
        }
    }
    let morphisms = kept
        .iter()
        .map(|&f| Morphism { id: c.morphism(f).id.clone(), src: pos[&c.src(f)], tgt: pos[&c.tgt(f)] })
        .collect();
    let identity = objects.iter().map(|&x| new_index[c.identity(x)]).collect();
    let sub = FinCategory::build(
        objects.iter().map(|&x| c.object_id(x).to_string()).collect(),
        morphisms,
        identity,
        |g, f| new_index[c.compose(kept[g], kept[f])],
    )
    .expect("full subcategory");
    let sub = Arc::new(sub);
    let inclusion = FinFunctor::new_unchecked(sub.clone(), c.clone(), objects.to_vec(), kept);
    (sub, inclusion)
}

/// A right action of a finite group on a category by functors.
#[derive(Clone, Debug)]
pub struct RightAction {
    pub group: FinGroup,
    /// `on_objects[k][x]` is `x·k`
    pub on_objects: Vec<Vec<usize>>,
    /// `on_morphisms[k][f]` is `f·k`
    pub on_morphisms: Vec<Vec<usize>>,
}

impl RightAction {
    pub fn verify(&self, c: &Arc<FinCategory>) -> Result<()> {
        let g = &self.group;
        if self.on_objects.len() != g.order() || self.on_morphisms.len() != g.order() {
            return Err(Error::NotAnAction("one map per group element is required".into()));
        }
        for k in 0..g.order() {
            FinFunctor::new(c.clone(), c.clone(), self.on_objects[k].clone(), self.on_morphisms[k].clone())
                .map_err(|e| Error::NotAnAction(format!("element {} does not act by a functor: {e}", g.name(k))))?;
        }
        let e = g.unit();
        if self.on_objects[e].iter().enumerate().any(|(x, &y)| x != y)
            || self.on_morphisms[e].iter().enumerate().any(|(f, &h)| f != h)
        {
            return Err(Error::NotAnAction("the unit does not act trivially".into()));
        }
        for k in 0..g.order() {
            for l in 0..g.order() {
                let kl = g.mul(k, l);
                for f in 0..c.num_morphisms() {
                    if self.on_morphisms[l][self.on_morphisms[k][f]] != self.on_morphisms[kl][f] {
                        return Err(Error::NotAnAction(format!(
                            "acting by {} then {} differs from acting by their product",
                            g.name(k),
                            g.name(l)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The translation groupoid EG: objects the elements of G, one morphism
/// "(g,h)": h → g for every pair, with the right translation action.
pub fn translation_groupoid(g: &FinGroup) -> (FinCategory, RightAction) {
    let n = g.order();
    let objects: Vec<String> = g.elements().to_vec();
    let morphisms = (0..n * n)
        .map(|i| Morphism { id: format!("({},{})", objects[i / n], objects[i % n]), src: i % n, tgt: i / n })
        .collect();
    let identity = (0..n).map(|x| x * n + x).collect();
    let cat = FinCategory::build(objects, morphisms, identity, |a, b| (a / n) * n + b % n).expect("translation groupoid");
    let on_objects = (0..n).map(|k| (0..n).map(|x| g.mul(x, k)).collect()).collect();
    let on_morphisms = (0..n)
        .map(|k| (0..n * n).map(|i| g.mul(i / n, k) * n + g.mul(i % n, k)).collect())
        .collect();
    (cat, RightAction { group: g.clone(), on_objects, on_morphisms })
}

/// Quotient of a category by the restriction of a free action to a subgroup.
/// Orbits are named "[x]" after their first member in index order. Returns the
/// quotient and the quotient functor.
pub fn quotient_by_free_action(
    c: &Arc<FinCategory>,
    action: &RightAction,
    subgroup: &[usize],
) -> Result<(Arc<FinCategory>, FinFunctor)> {
    action.verify(c)?;
    let g = &action.group;
    let h = g.subgroup(subgroup)?;
    for x in 0..c.num_objects() {
        for &k in &h {
            if k != g.unit() && action.on_objects[k][x] == x {
                return Err(Error::ActionNotFree { object: c.object_id(x).to_string(), element: g.name(k).to_string() });
            }
        }
    }
    let orbit_of = |n: usize, act: &dyn Fn(usize, usize) -> usize| -> (Vec<usize>, Vec<usize>) {
        let mut cls = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if cls[x] == usize::MAX {
                for &k in &h {
                    cls[act(k, x)] = reps.len();
                }
                reps.push(x);
            }
        }
        (cls, reps)
    };
    let (ocls, oreps) = orbit_of(c.num_objects(), &|k, x| action.on_objects[k][x]);
    let (mcls, mreps) = orbit_of(c.num_morphisms(), &|k, f| action.on_morphisms[k][f]);
    let objects = oreps.iter().map(|&x| format!("[{}]", c.object_id(x))).collect();
    let morphisms = mreps
        .iter()
        .map(|&f| Morphism { id: format!("[{}]", c.morphism(f).id), src: ocls[c.src(f)], tgt: ocls[c.tgt(f)] })
        .collect();
    let identity = oreps.iter().map(|&x| mcls[c.identity(x)]).collect();
    let q = FinCategory::build(objects, morphisms, identity, |gq, fq| {
        let f = mreps[fq];
        let g0 = mreps[gq];
        // translate the representative of the outer orbit so it starts where f ends
        let k = h
            .iter()
            .copied()
            .find(|&k| c.src(action.on_morphisms[k][g0]) == c.tgt(f))
            .expect("orbits are composable");
        mcls[c.compose(action.on_morphisms[k][g0], f)]
    })?;
    let q = Arc::new(q);
    let functor = FinFunctor::new(c.clone(), q.clone(), ocls, mcls)?;
    Ok((q, functor))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        let p2 = poset_category(2);
        assert_eq!((p2.num_objects(), p2.num_morphisms()), (3, 6));
        assert!(p2.is_poset());
    }

    #[test]
    fn translation_groupoid_c2() {
        let (e, _) = translation_groupoid(&FinGroup::cyclic(2));
        assert_eq!((e.num_objects(), e.num_morphisms()), (2, 4));
        assert!(e.is_groupoid());
    }

    #[test]
    fn quotient_of_ec2_is_bc2() {
        let (e, act) = translation_groupoid(&FinGroup::cyclic(2));
        let e = Arc::new(e);
        let (q, f) = quotient_by_free_action(&e, &act, &[0, 1]).unwrap();
        assert_eq!((q.num_objects(), q.num_morphisms()), (1, 2));
        assert!(q.is_groupoid());
        f.verify().unwrap();
    }

    #[test]
    fn quotient_by_trivial_subgroup_is_identity() {
        let g = FinGroup::cyclic(3);
        let (e, act) = translation_groupoid(&g);
        let e = Arc::new(e);
        let (q, f) = quotient_by_free_action(&e, &act, &[0]).unwrap();
        assert_eq!((q.num_objects(), q.num_morphisms()), (3, 9));
        assert!(f.is_isomorphism());
    }

    #[test]
    fn ec4_mod_c2() {
        let g = FinGroup::cyclic(4);
        let (e, act) = translation_groupoid(&g);
        let e = Arc::new(e);
        let (q, _) = quotient_by_free_action(&e, &act, &[0, 2]).unwrap();
        assert_eq!(q.num_objects(), 2);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(q.hom(x, y).len(), 2);
            }
        }
    }

    #[test]
    fn non_free_action_is_rejected() {
        // C2 acting trivially on the terminal category
        let t = Arc::new(terminal());
        let act = RightAction { group: FinGroup::cyclic(2), on_objects: vec![vec![0]; 2], on_morphisms: vec![vec![0]; 2] };
        assert!(matches!(quotient_by_free_action(&t, &act, &[0, 1]), Err(Error::ActionNotFree { .. })));
    }

    #[test]
    fn opposite_is_involutive() {
        let bs3 = classifying_category(FinGroup::symmetric(3).monoid());
        assert_eq!(opposite(&opposite(&bs3)), bs3);
    }

    #[test]
    fn product_and_coproduct_sizes() {
        let p1 = poset_category(1);
        let bc2 = classifying_category(FinGroup::cyclic(2).monoid());
        let pr = product(&p1, &bc2);
        assert_eq!((pr.num_objects(), pr.num_morphisms()), (2, 6));
        let co = coproduct(&p1, &bc2);
        assert_eq!((co.num_objects(), co.num_morphisms()), (3, 5));
    }
}
