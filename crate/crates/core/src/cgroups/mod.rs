//! Complexes of groups over finite posets, their associated categories, the
//! reconstruction of a complex from a category, and Grothendieck constructions.

mod complex;
mod grothendieck;
mod reconstruct;

use std::sync::Arc;

pub use complex::{
    associated_category, random_simple_complex, simple_complexes, validate_complex, ComplexDescription,
    ComplexOfGroups, TransitionDescription, TwistDescription,
};
pub use grothendieck::{
    fun_grothendieck_comparison, grothendieck, ComparisonSummary, Grothendieck, GrothendieckComparison,
    StrictDiagram,
};
pub use reconstruct::{
    check_conditions, reconstruct_complex, ChoicePolicy, ConditionsReport, Reconstruction, ReconstructionChoices,
    Variant,
};

use crate::error::{Error, Result};
use crate::fincat::{classifying_category, FinFunctor};

/// A simple complex as a strict functor x ↦ B𝒢(x) on its poset.
pub fn simple_diagram(g: &ComplexOfGroups) -> Result<StrictDiagram> {
    if !g.is_simple() {
        return Err(Error::Malformed("only simple complexes are strict functors".into()));
    }
    let index = Arc::new(g.poset.to_category());
    let categories: Vec<_> = g.groups.iter().map(|h| Arc::new(classifying_category(h.monoid()))).collect();
    let functors = (0..index.num_morphisms())
        .map(|m| {
            let (x, y) = (index.src(m), index.tgt(m));
            FinFunctor::new(categories[x].clone(), categories[y].clone(), vec![0], g.transition(x, y).clone())
        })
        .collect::<Result<Vec<_>>>()?;
    StrictDiagram::new(index, categories, functors)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::fincat::{opposite, poset_category, terminal, FinCategory, FinGroup, Morphism, Poset};

    fn chain(n: usize) -> Poset {
        let names = (0..n).map(|i| i.to_string()).collect();
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relations(names, &rel).unwrap()
    }

    fn c2_over_arrow() -> ComplexOfGroups {
        let c2 = FinGroup::cyclic(2);
        let transitions = BTreeMap::from([((0, 0), vec![0, 1]), ((0, 1), vec![0, 1]), ((1, 1), vec![0, 1])]);
        ComplexOfGroups::simple(chain(2), vec![c2.clone(), c2], transitions).unwrap()
    }

    /// A complex over p[2] with local groups C2, C2, C4, trivial transitions into
    /// the top and twist 𝒢(0,1,2) = g2. Lax functoriality holds since all maps into
    /// C4 are trivial; the cocycle relation is vacuous for a 3-chain.
    fn twisted() -> ComplexOfGroups {
        let (c2, c4) = (FinGroup::cyclic(2), FinGroup::cyclic(4));
        let mut transitions = BTreeMap::from([((0, 1), vec![0, 1]), ((0, 2), vec![0, 0]), ((1, 2), vec![0, 0])]);
        for (x, n) in [(0, 2), (1, 2), (2, 4)] {
            transitions.insert((x, x), (0..n).collect());
        }
        let p = chain(3);
        let mut twists: BTreeMap<(usize, usize, usize), usize> =
            p.weak_chains(3).into_iter().map(|c| ((c[0], c[1], c[2]), 0)).collect();
        twists.insert((0, 1, 2), c4.index_of("g2").unwrap());
        ComplexOfGroups::new(p, vec![c2.clone(), c2, c4], transitions, twists).unwrap()
    }

    #[test]
    fn simple_and_single_point_complexes_validate() {
        let g = c2_over_arrow();
        assert!(g.is_simple());
        let one = ComplexOfGroups::simple(chain(1), vec![FinGroup::symmetric(3)], BTreeMap::from([((0, 0), (0..6).collect())]))
            .unwrap();
        let c = associated_category(&one).unwrap();
        assert_eq!((c.num_objects(), c.num_morphisms()), (1, 6));
    }

    #[test]
    fn violations_are_named() {
        let g = twisted();
        let mut bad = g.clone();
        bad.twists.insert((0, 0, 2), 1);
        assert!(matches!(bad.validate(), Err(Error::UnitalityViolation(_))));
        // a nontrivial transition into C4 conjugated by a twist is still fine (abelian), so
        // break lax functoriality with a mismatched composite instead
        let mut bad = g.clone();
        bad.transitions.insert((0, 2), vec![0, 2]);
        assert!(matches!(bad.validate(), Err(Error::LaxFunctorialityViolation(_))));
        let mut bad = g.clone();
        bad.transitions.insert((0, 1), vec![0, 0, 0]);
        assert!(matches!(bad.validate(), Err(Error::NotAHomomorphism(_))));
    }

    #[test]
    fn cocycle_mutation_is_caught() {
        // over p[3] with C2 everywhere and identity transitions, twists must form a cocycle
        let c2 = FinGroup::cyclic(2);
        let p = chain(4);
        let transitions: BTreeMap<_, _> = p.weak_chains(2).into_iter().map(|c| ((c[0], c[1]), vec![0, 1])).collect();
        let g = ComplexOfGroups::simple(p.clone(), vec![c2.clone(); 4], transitions).unwrap();
        let mut mutated = 0;
        for ch in p.chains(3) {
            let mut bad = g.clone();
            bad.twists.insert((ch[0], ch[1], ch[2]), 1);
            let err = bad.validate().unwrap_err();
            if ch == [0, 1, 2] || ch == [1, 2, 3] || ch == [0, 1, 3] || ch == [0, 2, 3] {
                assert!(matches!(err, Error::CocycleViolation(_)), "{ch:?}: {err:?}");
                mutated += 1;
            }
        }
        assert_eq!(mutated, 4);
    }

    #[test]
    fn associated_category_hom_sets() {
        let c = associated_category(&c2_over_arrow()).unwrap();
        assert_eq!([c.hom(0, 0).len(), c.hom(0, 1).len(), c.hom(1, 1).len(), c.hom(1, 0).len()], [2, 2, 2, 0]);
        let t = associated_category(&twisted()).unwrap();
        t.verify().unwrap();
        assert_eq!(t.num_morphisms(), 2 + 2 + 4 + 2 + 4 + 4);
    }

    #[test]
    fn conditions() {
        for g in [c2_over_arrow(), twisted()] {
            let c = associated_category(&g).unwrap();
            assert!(check_conditions(&c, Variant::Plain).holds());
        }
        for v in [Variant::Plain, Variant::Opposite] {
            assert!(check_conditions(&poset_category(3), v).holds());
        }
        // two parallel arrows, trivial automorphisms
        let parallel = FinCategory::build(
            vec!["x".into(), "y".into()],
            vec![
                Morphism { id: "1x".into(), src: 0, tgt: 0 },
                Morphism { id: "1y".into(), src: 1, tgt: 1 },
                Morphism { id: "f".into(), src: 0, tgt: 1 },
                Morphism { id: "g".into(), src: 0, tgt: 1 },
            ],
            vec![0, 1],
            |g, f| if g < 2 { f } else { g },
        )
        .unwrap();
        let r = check_conditions(&parallel, Variant::Plain);
        assert!(!r.holds());
        assert_eq!(r.action_violations, vec!["f".to_string(), "g".to_string()]);
        // non-injective transition: precomposition is not free
        let t = associated_category(&twisted()).unwrap();
        assert!(!check_conditions(&t, Variant::Plain).non_free.is_empty());
    }

    #[test]
    fn unit_choices_round_trip_exactly() {
        for g in [c2_over_arrow(), twisted()] {
            let c = Arc::new(associated_category(&g).unwrap());
            let choices = ReconstructionChoices::new(&c, ChoicePolicy::Default);
            let r = reconstruct_complex(&c, &choices).unwrap();
            assert_eq!(r.complex, g);
            assert!(r.kappa.is_isomorphism());
        }
    }

    #[test]
    fn random_choices_keep_kappa_an_isomorphism() {
        let c = Arc::new(associated_category(&twisted()).unwrap());
        let mut twisted_seen = false;
        for seed in 0..20 {
            let r = reconstruct_complex(&c, &ReconstructionChoices::new(&c, ChoicePolicy::Random(seed))).unwrap();
            assert!(r.kappa.is_isomorphism());
            twisted_seen |= !r.complex.is_simple();
        }
        assert!(twisted_seen);
    }

    #[test]
    fn classifying_category_reconstructs_to_a_point() {
        let bg = Arc::new(classifying_category(FinGroup::symmetric(3).monoid()));
        let r = reconstruct_complex(&bg, &ReconstructionChoices::new(&bg, ChoicePolicy::Default)).unwrap();
        assert_eq!(r.complex.groups, vec![FinGroup::symmetric(3)]);
        assert!(r.kappa.morphism_map().iter().enumerate().all(|(a, &b)| a == b));
    }

    #[test]
    fn opposite_variant() {
        let c = associated_category(&twisted()).unwrap();
        let op = Arc::new(opposite(&c));
        assert!(check_conditions(&op, Variant::Opposite).holds());
        assert!(!check_conditions(&op, Variant::Plain).holds());
        assert!(matches!(
            reconstruct_complex(&op, &ReconstructionChoices::new(&op, ChoicePolicy::Default)),
            Err(Error::ConditionsFailed(_))
        ));
    }

    #[test]
    fn bad_choices_are_rejected() {
        let c = Arc::new(associated_category(&c2_over_arrow()).unwrap());
        let mut choices = ReconstructionChoices::new(&c, ChoicePolicy::Default);
        choices.choices.insert((0, 0), c.hom(0, 0)[1]);
        assert!(matches!(reconstruct_complex(&c, &choices), Err(Error::BadChoice(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = twisted();
        assert_eq!(ComplexOfGroups::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn simple_complexes_are_enumerated() {
        let c2 = FinGroup::cyclic(2);
        let all = simple_complexes(&chain(3), &[c2.clone(), c2.clone(), c2], 1000).unwrap();
        // 𝒢(0,2) is forced by the other two
        assert_eq!(all.len(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let groups = [FinGroup::cyclic(1), FinGroup::cyclic(2), FinGroup::cyclic(4)];
        let p = Poset::from_relations((0..4).map(|i| i.to_string()).collect(), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        for _ in 0..10 {
            random_simple_complex(&p, &groups, &mut rng).unwrap();
        }
    }

    #[test]
    fn grothendieck_examples() {
        let c2 = FinGroup::cyclic(2);
        let bc2 = Arc::new(classifying_category(c2.monoid()));
        let p1 = Arc::new(poset_category(1));
        let d = StrictDiagram::constant(p1.clone(), bc2.clone()).unwrap();
        let g = grothendieck(&d, 1000).unwrap();
        let c = &g.category;
        assert_eq!(c.num_objects(), 2);
        assert_eq!([c.hom(0, 0).len(), c.hom(0, 1).len(), c.hom(1, 1).len(), c.hom(1, 0).len()], [2, 2, 2, 0]);
        let point = Arc::new(terminal());
        let g = grothendieck(&StrictDiagram::constant(p1.clone(), point.clone()).unwrap(), 1000).unwrap();
        assert_eq!((g.category.num_objects(), g.category.num_morphisms()), (2, 3));
        let g = grothendieck(&StrictDiagram::constant(point, bc2).unwrap(), 1000).unwrap();
        assert_eq!((g.category.num_objects(), g.category.num_morphisms()), (1, 2));
    }

    #[test]
    fn simple_grothendieck_is_the_associated_category() {
        let g = c2_over_arrow();
        let a = associated_category(&g).unwrap();
        let gr = grothendieck(&simple_diagram(&g).unwrap(), 1000).unwrap();
        let c = &gr.category;
        assert_eq!((c.num_objects(), c.num_morphisms()), (a.num_objects(), a.num_morphisms()));
        // (ψ, x ≤ y) ↔ the element ψ of 𝒢(y) at the pair (x, y)
        let object_map: Vec<usize> = gr.objects.iter().map(|&(_, k)| k).collect();
        let morphism_map: Vec<usize> = gr
            .morphisms
            .iter()
            .map(|&(psi, m)| {
                let (x, y) = (gr.category.src(gr.morphism(psi, m)), gr.category.tgt(gr.morphism(psi, m)));
                a.hom(object_map[x], object_map[y])[psi]
            })
            .collect();
        let f = FinFunctor::new(gr.category.clone(), Arc::new(a), object_map, morphism_map).unwrap();
        assert!(f.is_isomorphism());
    }

    #[test]
    fn fun_grothendieck_comparisons() {
        let c2 = FinGroup::cyclic(2);
        let bc2 = Arc::new(classifying_category(c2.monoid()));
        let p1 = Arc::new(poset_category(1));
        let r = fun_grothendieck_comparison(&bc2, &StrictDiagram::constant(p1, bc2.clone()).unwrap(), 2, 10_000).unwrap();
        assert!(r.isomorphism && r.index_is_poset);
        let r = fun_grothendieck_comparison(&bc2, &StrictDiagram::constant(Arc::new(terminal()), bc2.clone()).unwrap(), 2, 10_000)
            .unwrap();
        assert!(r.isomorphism);
        let r = fun_grothendieck_comparison(&bc2, &StrictDiagram::constant(bc2.clone(), bc2.clone()).unwrap(), 2, 10_000).unwrap();
        assert!(!r.isomorphism);
        let s = r.summary();
        assert_ne!(s.source_size.0, s.target_size.0);
        assert!(s.verdict.is_some());
        assert!(matches!(
            fun_grothendieck_comparison(&Arc::new(poset_category(1)), &StrictDiagram::constant(bc2.clone(), bc2).unwrap(), 2, 100),
            Err(Error::NotStronglyConnected)
        ));
    }
}
