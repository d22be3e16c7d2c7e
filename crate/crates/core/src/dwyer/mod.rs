//! Dwyer maps, the explicit pushout along them, and how Fun(I, −) treats such pushouts.

mod certificate;
mod preserve;
mod pushout;

pub use certificate::{
    check_dwyer, induced_dwyer, product_dwyer, CertificateDescription, DwyerCertificate, DwyerFailure, InducedDwyer,
};
pub use preserve::{fun_preservation, pushout_homology_check, PreservationReport, PushoutHomologyReport};
pub use pushout::{dwyer_pushout, verify_universal_property, Origin, PushoutResult, UniversalReport};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{classifying_category, empty_category, poset_category, terminal, FinFunctor, FinGroup};
    use crate::homology::ComparisonVerdict;

    fn point_into_arrow(x: usize) -> FinFunctor {
        FinFunctor::from_object_map(Arc::new(terminal()), Arc::new(poset_category(1)), &[x]).unwrap()
    }

    #[test]
    fn source_inclusion_is_dwyer() {
        let cert = check_dwyer(&point_into_arrow(0)).unwrap();
        assert_eq!(cert.cosieve, vec![0, 1]);
        cert.verify().unwrap();
    }

    #[test]
    fn target_inclusion_is_not_a_sieve() {
        assert!(matches!(check_dwyer(&point_into_arrow(1)), Err(DwyerFailure::NotSieve { .. })));
    }

    #[test]
    fn identity_is_dwyer() {
        let c = Arc::new(classifying_category(FinGroup::cyclic(3).monoid()));
        let cert = check_dwyer(&FinFunctor::identity(c)).unwrap();
        assert!(cert.retraction.is_isomorphism());
    }

    #[test]
    fn horn_pushout_is_the_two_simplex() {
        let cert = check_dwyer(&point_into_arrow(0)).unwrap();
        let p = dwyer_pushout(&cert, &point_into_arrow(1)).unwrap();
        assert_eq!((p.category.num_objects(), p.category.num_morphisms()), (3, 6));
        assert!(p.category.is_poset());
        let e = Arc::new(poset_category(2));
        let report = verify_universal_property(&p, &e, 10_000).unwrap();
        assert!(report.holds() && report.cocones > 0, "{report:?}");
    }

    #[test]
    fn pushout_into_bc2_twists_composition() {
        let cert = check_dwyer(&point_into_arrow(0)).unwrap();
        let bc2 = Arc::new(classifying_category(FinGroup::cyclic(2).monoid()));
        let k = FinFunctor::constant(Arc::new(terminal()), bc2, 0);
        let p = dwyer_pushout(&cert, &k).unwrap();
        assert_eq!(p.category.num_objects(), 2);
        // hom(c, v) is a copy of C2
        assert_eq!(p.category.hom(0, 1).len(), 2);
        assert_eq!(p.category.hom(1, 0).len(), 0);
    }

    #[test]
    fn empty_source_gives_coproduct() {
        let e = Arc::new(empty_category());
        let b = Arc::new(poset_category(1));
        let c = Arc::new(classifying_category(FinGroup::cyclic(2).monoid()));
        let i = FinFunctor::new(e.clone(), b, vec![], vec![]).unwrap();
        let k = FinFunctor::new(e, c, vec![], vec![]).unwrap();
        let p = dwyer_pushout(&check_dwyer(&i).unwrap(), &k).unwrap();
        assert_eq!((p.category.num_objects(), p.category.num_morphisms()), (3, 5));
    }

    #[test]
    fn horn_counterexample_and_preservation() {
        let cert = check_dwyer(&point_into_arrow(0)).unwrap();
        let k = point_into_arrow(1);
        let p1 = Arc::new(poset_category(1));
        let bad = fun_preservation(&p1, &cert, &k, 10_000, false).unwrap();
        assert!(!bad.isomorphism);
        assert_eq!(bad.pushout_size.0, 5);
        assert_eq!(bad.functor_category_size.0, 6);
        assert!(matches!(fun_preservation(&p1, &cert, &k, 10_000, true), Err(crate::Error::NotStronglyConnected)));
        let bc2 = Arc::new(classifying_category(FinGroup::cyclic(2).monoid()));
        let good = fun_preservation(&bc2, &cert, &k, 10_000, true).unwrap();
        assert!(good.isomorphism && good.dichotomy == Some(true) && good.mixed_hom_identity == Some(true));
    }

    #[test]
    fn induced_and_product_certificates() {
        let cert = check_dwyer(&point_into_arrow(0)).unwrap();
        let bc2 = Arc::new(classifying_category(FinGroup::cyclic(2).monoid()));
        let induced = induced_dwyer(&cert, &bc2, 10_000).unwrap();
        induced.certificate.verify().unwrap();
        let t = Arc::new(terminal());
        let same = induced_dwyer(&cert, &t, 10_000).unwrap();
        assert_eq!(same.certificate.cosieve.len(), cert.cosieve.len());
        product_dwyer(&cert, &bc2).unwrap().verify().unwrap();
    }

    #[test]
    fn horn_pushout_homology() {
        let cert = check_dwyer(&point_into_arrow(0)).unwrap();
        let family = vec![("terminal".to_string(), Arc::new(terminal()))];
        let r = pushout_homology_check(&cert, &point_into_arrow(1), 2, &family, 10_000).unwrap();
        assert!(r.all_positive());
        assert_eq!(r.per_index[0].1, ComparisonVerdict::HomologyConsistent { k_max: 2 });
    }
}
