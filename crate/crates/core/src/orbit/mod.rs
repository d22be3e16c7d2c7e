//! The finite-group side: hom groupoids, values of global nerves, generating
//! cells, Γ on cell modules and the fixed-point chain for Fun(EG, −).

mod cells;
mod fixed;
mod global;
mod homs;

pub use cells::{gamma_cell, generating_cell, MAX_CELL_DIMENSION};
pub use fixed::{fixed_point_equivalences, FixedPointChain, StepVerdict};
pub use global::{global_nerve_value, GlobalNerveValue, Restriction};
pub use homs::{
    composition_functor, conjugate_hom, enumerate_homs, hom_groupoid, is_homomorphism, iso_to_fun, ClassReport,
    GroupHom, HomGroupoid, HomGroupoidReport,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::error::Error;
    use crate::fincat::{
        classifying_category, poset_category, terminal, translation_groupoid, FinGroup, NatTransformation,
    };
    use crate::homology::{homology, HomologyGroup};
    use crate::simplicial::{nerve, nerve_map, SkeletalPresentation};

    const CAP: usize = 20_000;

    fn brute_force_homs(k: &FinGroup, g: &FinGroup) -> Vec<GroupHom> {
        let mut out = Vec::new();
        let total = g.order().pow(k.order() as u32);
        for code in 0..total {
            let phi: Vec<usize> = (0..k.order()).map(|i| code / g.order().pow(i as u32) % g.order()).collect();
            if is_homomorphism(k, g, &phi) {
                out.push(phi);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn homs_match_brute_force() {
        let groups = [FinGroup::cyclic(1), FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::cyclic(4), FinGroup::symmetric(3)];
        for k in &groups {
            for g in &groups {
                assert_eq!(enumerate_homs(k, g, 24).unwrap(), brute_force_homs(k, g));
            }
        }
        assert_eq!(enumerate_homs(&FinGroup::cyclic(2), &FinGroup::cyclic(2), 24).unwrap().len(), 2);
        assert_eq!(enumerate_homs(&FinGroup::cyclic(2), &FinGroup::cyclic(3), 24).unwrap().len(), 1);
        assert!(matches!(
            enumerate_homs(&FinGroup::cyclic(5), &FinGroup::cyclic(2), 4),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn hom_groupoid_structure() {
        let (c2, s3) = (FinGroup::cyclic(2), FinGroup::symmetric(3));
        let (_, r) = hom_groupoid(&c2, &c2, 24).unwrap();
        assert_eq!(r.classes.len(), 2);
        assert!(r.classes.iter().all(|c| c.centralizer.len() == 2));
        assert!(r.verified());
        let (_, r) = hom_groupoid(&FinGroup::cyclic(1), &s3, 24).unwrap();
        assert_eq!((r.pi0, r.classes[0].centralizer.len()), (1, 6));
        assert_eq!(r.classes[0].h1, HomologyGroup { betti: 0, torsion: vec![2] });
        assert!(r.verified());
        let (_, r) = hom_groupoid(&c2, &s3, 24).unwrap();
        let mut sizes: Vec<(usize, usize)> = r.classes.iter().map(|c| (c.size, c.centralizer.len())).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![(1, 6), (3, 2)]);
        assert!(r.verified());
    }

    #[test]
    fn hom_groupoid_is_fun_of_classifying_categories() {
        let c2 = FinGroup::cyclic(2);
        let hg = HomGroupoid::new(&c2, &c2, 24).unwrap();
        let f = iso_to_fun(&hg, CAP).unwrap();
        assert!(f.is_isomorphism());
        assert_eq!((f.domain().num_objects(), f.domain().num_morphisms()), (2, 4));
        let s3 = FinGroup::symmetric(3);
        assert!(iso_to_fun(&HomGroupoid::new(&FinGroup::cyclic(3), &s3, 24).unwrap(), CAP).unwrap().is_isomorphism());
        let one = FinGroup::cyclic(1);
        assert!(iso_to_fun(&HomGroupoid::new(&one, &one, 24).unwrap(), CAP).unwrap().is_isomorphism());
    }

    #[test]
    fn composition_matches_horizontal_composition() {
        // C2, C2, C2 triples: the 2-category rule agrees with composing in Fun
        let c2 = FinGroup::cyclic(2);
        let hg = HomGroupoid::new(&c2, &c2, 24).unwrap();
        let comp = composition_functor(&hg, &hg, &hg).unwrap();
        let nm = hg.category.num_morphisms();
        for gm in 0..nm {
            for km in 0..nm {
                let t = |m: usize| -> NatTransformation {
                    let (a, b) = (hg.category.src(m), hg.category.tgt(m));
                    let bc2 = Arc::new(classifying_category(c2.monoid()));
                    let f = |i: usize| crate::fincat::FinFunctor::new(bc2.clone(), bc2.clone(), vec![0], hg.homs[i].clone()).unwrap();
                    NatTransformation::new(f(a), f(b), vec![m % 2]).unwrap()
                };
                let horizontal = t(km).horizontal(&t(gm)).unwrap();
                let composite = comp.mor(gm * nm + km);
                assert_eq!(horizontal.components(), &[composite % 2]);
            }
        }
    }

    #[test]
    fn global_nerve_of_a_point_is_a_point() {
        let v = global_nerve_value(&Arc::new(terminal()), &FinGroup::cyclic(3), 2, &[FinGroup::cyclic(1)], CAP, 24).unwrap();
        assert_eq!(v.value.simplicial.nondegenerate_counts(), vec![1, 0, 0]);
    }

    #[test]
    fn global_nerve_of_bk_is_the_orbit_category() {
        let (c2, c3) = (FinGroup::cyclic(2), FinGroup::cyclic(3));
        for (k, g) in [(&c2, &c2), (&c3, &c2), (&c2, &FinGroup::symmetric(3))] {
            let bk = Arc::new(classifying_category(k.monoid()));
            let family = [FinGroup::cyclic(1), g.clone()];
            let v = global_nerve_value(&bk, g, 3, &family, CAP, 24).unwrap();
            let hg = HomGroupoid::new(g, k, 24).unwrap();
            let iso = iso_to_fun(&hg, CAP).unwrap();
            assert!(iso.is_isomorphism());
            let n_hg = nerve(&hg.category, 3);
            let m = nerve_map(&iso, &n_hg, &nerve(iso.codomain(), 3)).unwrap();
            assert!(m.is_bijective());
            assert_eq!(n_hg.simplicial.nondegenerate_counts(), v.value.simplicial.nondegenerate_counts());
        }
    }

    #[test]
    fn restrictions_are_strictly_functorial() {
        let c2 = FinGroup::cyclic(2);
        let c4 = FinGroup::cyclic(4);
        let c = Arc::new(classifying_category(c2.monoid()));
        let v = global_nerve_value(&c, &c4, 2, &[FinGroup::cyclic(1), c2.clone(), c4.clone()], CAP, 24).unwrap();
        v.verify().unwrap();
        assert_eq!(v.restrictions.len(), 1 + 2 + 4);
    }

    #[test]
    fn fun_into_a_contractible_groupoid() {
        let (ec2, _) = translation_groupoid(&FinGroup::cyclic(2));
        let v = global_nerve_value(&Arc::new(ec2), &FinGroup::cyclic(2), 3, &[], CAP, 24).unwrap();
        let h = homology(&v.value.simplicial, 2).unwrap();
        assert_eq!(h.groups[0], HomologyGroup::integers());
        assert!(h.groups[1].is_zero() && h.groups[2].is_zero());
    }

    #[test]
    fn generating_cells() {
        let (c1, c2) = (FinGroup::cyclic(1), FinGroup::cyclic(2));
        let (i, cert) = generating_cell(0, &c2, 16).unwrap();
        assert_eq!((i.domain().num_objects(), i.codomain().num_objects()), (0, 1));
        cert.verify().unwrap();
        let (i, _) = generating_cell(1, &c1, 16).unwrap();
        assert_eq!(i.codomain().num_objects(), 5);
        assert!(i.codomain().is_poset());
        let (i, cert) = generating_cell(2, &c1, 16).unwrap();
        assert_eq!((i.domain().num_objects(), i.codomain().num_objects()), (12, 25));
        assert!(crate::dwyer::check_dwyer(&i).is_ok());
        cert.verify().unwrap();
        let (i, _) = generating_cell(2, &c2, 16).unwrap();
        assert!(crate::dwyer::check_dwyer(&i).is_ok());
        assert!(matches!(generating_cell(3, &c1, 16), Err(Error::SizeLimitExceeded { .. })));
    }

    #[test]
    fn gamma_on_cells() {
        let bc2 = classifying_category(FinGroup::cyclic(2).monoid());
        let point = SkeletalPresentation::simplex(0).materialize(2);
        let g = gamma_cell(&point, &bc2, 16).unwrap();
        assert_eq!((g.num_objects(), g.num_morphisms()), (1, 2));
        let interval = SkeletalPresentation::simplex(1).materialize(2);
        let g = gamma_cell(&interval, &terminal(), 16).unwrap();
        assert!(g.is_poset());
        assert_eq!(g.num_objects(), 5);
        let two_points = SkeletalPresentation::boundary(1).materialize(2);
        let g = gamma_cell(&two_points, &bc2, 16).unwrap();
        assert_eq!((g.num_objects(), g.num_morphisms()), (2, 4));
        assert!(g.hom(0, 1).is_empty());
        let truncated = nerve(&Arc::new(bc2.clone()), 2).simplicial;
        assert_eq!(gamma_cell(&truncated, &bc2, 16), Err(Error::NotSkeletal));
    }

    #[test]
    fn fixed_point_chain() {
        let (c2, c4) = (FinGroup::cyclic(2), FinGroup::cyclic(4));
        let bc2: Arc<crate::fincat::FinCategory> = Arc::new(classifying_category(c2.monoid()));
        let chain = fixed_point_equivalences(&c2, &[0, 1], &bc2, CAP).unwrap();
        assert!(chain.holds(), "{:?}", chain.verdicts);
        assert_eq!(chain.h_objects.num_objects(), 2);
        let chain = fixed_point_equivalences(&c2, &[0], &bc2, CAP).unwrap();
        assert!(chain.holds(), "{:?}", chain.verdicts);
        let half = [0, c4.index_of("g2").unwrap()];
        for c in [bc2.clone(), Arc::new(terminal()), Arc::new(poset_category(1))] {
            let chain = fixed_point_equivalences(&c4, &half, &c, CAP).unwrap();
            assert!(chain.holds(), "{:?}", chain.verdicts);
        }
        let chain = fixed_point_equivalences(&c2, &[0, 1], &Arc::new(terminal()), CAP).unwrap();
        assert!(chain.verdicts.iter().all(|v| v.source_size == (1, 1) && v.target_size == (1, 1)));
        assert!(matches!(fixed_point_equivalences(&c4, &[0, 1], &bc2, CAP), Err(Error::NotASubgroup(_))));
    }
}
