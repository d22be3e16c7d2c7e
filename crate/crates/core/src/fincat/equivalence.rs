use super::functor::{same_category, FaithfulFailure, FinFunctor, NatTransformation};
use crate::error::Result;

/// Which way a chain element points relative to the walk from the composite to the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainDirection {
    /// the transformation goes from the current functor to the next one
    Forward,
    /// the transformation goes from the next functor to the current one
    Backward,
}

/// Functors F: A → B and G: B → A with zigzags of natural transformations
/// joining G∘F to Id_A and F∘G to Id_B.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub forward: FinFunctor,
    pub backward: FinFunctor,
    pub source_chain: Vec<(NatTransformation, ChainDirection)>,
    pub target_chain: Vec<(NatTransformation, ChainDirection)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceFailure {
    NotFaithful { source: String, target: String },
    NotFull { source: String, target: String },
    NotEssentiallySurjective { object: String },
}

#[derive(Clone, Debug)]
pub enum EquivalenceVerdict {
    Equivalence(Box<EquivalenceWitness>),
    NotEquivalence(EquivalenceFailure),
}

impl EquivalenceVerdict {
    pub fn is_equivalence(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalence(_))
    }

    pub fn witness(&self) -> Option<&EquivalenceWitness> {
        match self {
            EquivalenceVerdict::Equivalence(w) => Some(w),
            EquivalenceVerdict::NotEquivalence(_) => None,
        }
    }
}

/// Decides whether a functor is an equivalence (fully faithful and essentially
/// surjective). A positive answer carries a quasi-inverse with unit and counit.
pub fn check_equivalence(f: &FinFunctor) -> EquivalenceVerdict {
    let (a, b) = (f.domain().clone(), f.codomain().clone());
    if let Some((x, y, kind)) = f.fully_faithful_failure() {
        let (source, target) = (a.object_id(x).to_string(), a.object_id(y).to_string());
        return EquivalenceVerdict::NotEquivalence(match kind {
            FaithfulFailure::NotFaithful => EquivalenceFailure::NotFaithful { source, target },
            FaithfulFailure::NotFull => EquivalenceFailure::NotFull { source, target },
        });
    }
    // for every object y of B: a preimage x_y and an isomorphism φ_y: F x_y → y
    let mut pre = Vec::with_capacity(b.num_objects());
    for y in 0..b.num_objects() {
        let found = (0..a.num_objects()).find_map(|x| {
            b.hom(f.obj(x), y).iter().copied().find(|&g| b.inverse(g).is_some()).map(|g| (x, g))
        });
        match found {
            Some(p) => pre.push(p),
            None => {
                return EquivalenceVerdict::NotEquivalence(EquivalenceFailure::NotEssentiallySurjective {
                    object: b.object_id(y).to_string(),
                })
            }
        }
    }
    // fully faithful: each hom map is a bijection, so preimages are unique
    let lift = |x: usize, x2: usize, g: usize| -> usize {
        *a.hom(x, x2).iter().find(|&&h| f.mor(h) == g).expect("fully faithful")
    };
    let object_map: Vec<usize> = pre.iter().map(|&(x, _)| x).collect();
    let morphism_map: Vec<usize> = (0..b.num_morphisms())
        .map(|g| {
            let (y, y2) = (b.src(g), b.tgt(g));
            let (x, phi) = pre[y];
            let (x2, phi2) = pre[y2];
            let inv2 = b.inverse(phi2).expect("iso");
            lift(x, x2, b.compose(inv2, b.compose(g, phi)))
        })
        .collect();
    let backward = FinFunctor::new_unchecked(b.clone(), a.clone(), object_map, morphism_map);
    let fg = backward.then(f).expect("composable");
    let gf = f.then(&backward).expect("composable");
    let counit = NatTransformation::new_unchecked(fg, FinFunctor::identity(b.clone()), pre.iter().map(|&(_, phi)| phi).collect());
    let unit_components: Vec<usize> = (0..a.num_objects())
        .map(|x| {
            let (x2, phi) = pre[f.obj(x)];
            lift(x, x2, b.inverse(phi).expect("iso"))
        })
        .collect();
    let unit = NatTransformation::new_unchecked(FinFunctor::identity(a.clone()), gf, unit_components);
    EquivalenceVerdict::Equivalence(Box::new(EquivalenceWitness {
        forward: f.clone(),
        backward,
        source_chain: vec![(unit, ChainDirection::Backward)],
        target_chain: vec![(counit, ChainDirection::Forward)],
    }))
}

fn chain_ok(start: &FinFunctor, chain: &[(NatTransformation, ChainDirection)], end: &FinFunctor) -> bool {
    let mut cur = start.clone();
    for (t, dir) in chain {
        if t.verify().is_err() {
            return false;
        }
        let (from, to) = match dir {
            ChainDirection::Forward => (t.source(), t.target()),
            ChainDirection::Backward => (t.target(), t.source()),
        };
        if *from != cur {
            return false;
        }
        cur = to.clone();
    }
    cur == *end
}

/// Checks that every chain element is natural and that the chains connect
/// G∘F to Id_A and F∘G to Id_B.
pub fn validate_homotopy_witness(w: &EquivalenceWitness) -> bool {
    let validated = || -> Result<bool> {
        w.forward.verify()?;
        w.backward.verify()?;
        if !same_category(w.forward.domain(), w.backward.codomain())
            || !same_category(w.forward.codomain(), w.backward.domain())
        {
            return Ok(false);
        }
        let gf = w.forward.then(&w.backward)?;
        let fg = w.backward.then(&w.forward)?;
        Ok(chain_ok(&gf, &w.source_chain, &FinFunctor::identity(w.forward.domain().clone()))
            && chain_ok(&fg, &w.target_chain, &FinFunctor::identity(w.forward.codomain().clone())))
    };
    validated().unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{classifying_category, poset_category, quotient_by_free_action, terminal, translation_groupoid, FinGroup};
    use std::sync::Arc;

    #[test]
    fn identity_is_equivalence() {
        let c = Arc::new(poset_category(2));
        let v = check_equivalence(&FinFunctor::identity(c));
        assert!(validate_homotopy_witness(v.witness().unwrap()));
    }

    #[test]
    fn collapse_of_p1_is_not_full() {
        let f = FinFunctor::constant(Arc::new(poset_category(1)), Arc::new(terminal()), 0);
        match check_equivalence(&f) {
            EquivalenceVerdict::NotEquivalence(EquivalenceFailure::NotFull { source, target }) => {
                assert_eq!((source.as_str(), target.as_str()), ("1", "0"));
            }
            other => panic!("unexpected verdict {other:?}"),
        }
    }

    #[test]
    fn translation_groupoid_collapses() {
        let (e, _) = translation_groupoid(&FinGroup::cyclic(3));
        let f = FinFunctor::constant(Arc::new(e), Arc::new(terminal()), 0);
        let v = check_equivalence(&f);
        assert!(validate_homotopy_witness(v.witness().unwrap()));
    }

    #[test]
    fn quotient_functor_from_ec2_is_not_equivalence() {
        let (e, act) = translation_groupoid(&FinGroup::cyclic(2));
        let e = Arc::new(e);
        let (_, q) = quotient_by_free_action(&e, &act, &[0, 1]).unwrap();
        assert!(!check_equivalence(&q).is_equivalence());
    }

    #[test]
    fn broken_witness_is_rejected() {
        let (e, _) = translation_groupoid(&FinGroup::cyclic(2));
        let f = FinFunctor::constant(Arc::new(e), Arc::new(terminal()), 0);
        let mut w = check_equivalence(&f).witness().unwrap().clone();
        let (t, d) = w.source_chain.pop().unwrap();
        let mut comps = t.components().to_vec();
        comps[0] = 1; // (e,g) starts at the wrong object
        let bad = NatTransformation::new_unchecked(t.source().clone(), t.target().clone(), comps);
        w.source_chain.push((bad, d));
        assert!(!validate_homotopy_witness(&w));
        let bc2 = Arc::new(classifying_category(FinGroup::cyclic(2).monoid()));
        assert!(!check_equivalence(&FinFunctor::constant(bc2, Arc::new(terminal()), 0)).is_equivalence());
    }
}
