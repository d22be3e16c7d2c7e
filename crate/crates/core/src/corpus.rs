//! Named instances shared by the test suites, the CLI demos and the acceptance run.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cgroups::{
    associated_category, random_simple_complex, reconstruct_complex, simple_complexes, ChoicePolicy, ComplexOfGroups,
    ReconstructionChoices,
};
use crate::dwyer::{check_dwyer, DwyerCertificate};
use crate::error::{Error, Result};
use crate::fincat::{
    classifying_category, coproduct, empty_category, poset_category, product, terminal, translation_groupoid,
    FinCategory, FinFunctor, FinGroup, FinMonoid, Morphism, Poset,
};
use crate::orbit::generating_cell;

pub type Named = (String, Arc<FinCategory>);

pub fn bg(g: &FinGroup) -> Arc<FinCategory> {
    Arc::new(classifying_category(g.monoid()))
}

pub fn bm(m: &FinMonoid) -> Arc<FinCategory> {
    Arc::new(classifying_category(m))
}

/// Two objects with two parallel arrows a, b: 0 → 1.
pub fn parallel_arrows() -> FinCategory {
    let morphisms = vec![
        Morphism { id: "id0".into(), src: 0, tgt: 0 },
        Morphism { id: "id1".into(), src: 1, tgt: 1 },
        Morphism { id: "a".into(), src: 0, tgt: 1 },
        Morphism { id: "b".into(), src: 0, tgt: 1 },
    ];
    FinCategory::build(vec!["0".into(), "1".into()], morphisms, vec![0, 1], |g, f| match (g, f) {
        (0 | 1, f) => f,
        (g, _) => g,
    })
    .expect("parallel arrows")
}

/// Monoids of order n up to isomorphism (permuting the non-unit elements).
pub fn monoids_up_to_iso(n: usize) -> Vec<FinMonoid> {
    fn permutations(items: Vec<usize>) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.clone();
            let head = rest.remove(i);
            for mut p in permutations(rest) {
                p.insert(0, head);
                out.push(p);
            }
        }
        out
    }
    let perms: Vec<Vec<usize>> =
        permutations((1..n).collect()).into_iter().map(|p| std::iter::once(0).chain(p).collect()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in FinMonoid::all_of_order(n) {
        let canonical = perms
            .iter()
            .map(|p| {
                // table of the relabelled monoid x ↦ p[x]
                let mut inv = vec![0; n];
                for (x, &px) in p.iter().enumerate() {
                    inv[px] = x;
                }
                (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| p[m.mul(inv[a], inv[b])]).collect::<Vec<_>>()
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canonical) {
            out.push(m);
        }
    }
    out
}

/// Test categories with at most 3 objects and 8 morphisms: every nonempty poset,
/// every monoid of order ≤ 3 up to isomorphism, and a curated list of the rest.
pub fn test_family() -> Vec<Named> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for (i, p) in Poset::all_up_to_iso(n).into_iter().enumerate() {
            out.push((format!("poset{n}.{i}"), Arc::new(p.to_category())));
        }
    }
    for n in 2..=3 {
        for (i, m) in monoids_up_to_iso(n).into_iter().enumerate() {
            out.push((format!("monoid{n}.{i}"), bm(&m)));
        }
    }
    let c2 = FinGroup::cyclic(2);
    let bc2 = classifying_category(c2.monoid());
    let point = terminal();
    out.push(("BC4".into(), bg(&FinGroup::cyclic(4))));
    out.push(("BC2xC2".into(), bg(&c2.product(&c2))));
    out.push(("BS3".into(), bg(&FinGroup::symmetric(3))));
    out.push(("EC2".into(), Arc::new(translation_groupoid(&c2).0)));
    out.push(("parallel".into(), Arc::new(parallel_arrows())));
    out.push(("BC2+pt".into(), Arc::new(coproduct(&bc2, &point))));
    out.push(("BC2+BC2".into(), Arc::new(coproduct(&bc2, &bc2))));
    out.push(("p1xBC2".into(), Arc::new(product(&poset_category(1), &bc2))));
    out.push(("p1+pt".into(), Arc::new(coproduct(&poset_category(1), &point))));
    out.push(("BC3+pt".into(), Arc::new(coproduct(&classifying_category(FinGroup::cyclic(3).monoid()), &point))));
    out
}

/// The index categories of the preservation theorem checks.
pub fn preservation_indices() -> Vec<Named> {
    vec![
        ("terminal".into(), Arc::new(terminal())),
        ("BC2".into(), bg(&FinGroup::cyclic(2))),
        ("BC3".into(), bg(&FinGroup::cyclic(3))),
        ("B(idempotent)".into(), bm(&FinMonoid::idempotent())),
    ]
}

/// A Dwyer map i: A → B with its certificate and a functor k: A → C.
#[derive(Clone, Debug)]
pub struct SuiteSquare {
    pub name: String,
    pub certificate: DwyerCertificate,
    pub k: FinFunctor,
}

fn certify(i: &FinFunctor) -> Result<DwyerCertificate> {
    check_dwyer(i).map_err(|f| Error::Malformed(format!("suite inclusion is not a Dwyer map: {f}")))
}

/// The fixed square suite: horn, cells, identity, empty source and endpoint inclusions.
pub fn suite_squares(max_word_length: usize) -> Result<Vec<SuiteSquare>> {
    let point = Arc::new(terminal());
    let empty = Arc::new(empty_category());
    let (p1, p2) = (Arc::new(poset_category(1)), Arc::new(poset_category(2)));
    let (c2, c3) = (FinGroup::cyclic(2), FinGroup::cyclic(3));
    let (bc2, bc3) = (bg(&c2), bg(&c3));
    let into_arrow = |x: usize| FinFunctor::from_object_map(point.clone(), p1.clone(), &[x]);
    let from_empty = |c: &Arc<FinCategory>| FinFunctor::new(empty.clone(), c.clone(), vec![], vec![]);
    let mut out = Vec::new();

    out.push(SuiteSquare { name: "horn".into(), certificate: certify(&into_arrow(0)?)?, k: into_arrow(1)? });

    // c(Sd²∂Δ[1]) × BC2 → c(Sd²Δ[1]) × BC2, with k folding both endpoints onto BC2
    let (cell, cert) = generating_cell(1, &c2, max_word_length)?;
    let a = cell.domain().clone();
    // product morphisms are indexed f·|C2| + g, so the fold keeps the BC2 coordinate
    let fold = FinFunctor::new(a.clone(), bc2.clone(), vec![0; a.num_objects()], (0..a.num_morphisms()).map(|f| f % 2).collect())?;
    out.push(SuiteSquare { name: "cell1xC2".into(), certificate: cert, k: fold });

    let g = bc2.morphism_index("g").ok_or_else(|| Error::UnknownId("g".into()))?;
    let arrow_to_g = FinFunctor::new(p1.clone(), bc2.clone(), vec![0, 0], (0..p1.num_morphisms()).map(|f| if p1.is_identity(f) { 0 } else { g }).collect())?;
    out.push(SuiteSquare { name: "identity".into(), certificate: certify(&FinFunctor::identity(p1.clone()))?, k: arrow_to_g });

    out.push(SuiteSquare { name: "empty".into(), certificate: certify(&from_empty(&p1)?)?, k: from_empty(&bc2)? });

    out.push(SuiteSquare {
        name: "source-into-BC2".into(),
        certificate: certify(&into_arrow(0)?)?,
        k: FinFunctor::constant(point.clone(), bc2.clone(), 0),
    });

    let d2 = FinFunctor::from_object_map(p1.clone(), p2.clone(), &[0, 1])?;
    let h = bc3.morphism_index("g").ok_or_else(|| Error::UnknownId("g".into()))?;
    let arrow_to_h = FinFunctor::new(p1.clone(), bc3.clone(), vec![0, 0], (0..p1.num_morphisms()).map(|f| if p1.is_identity(f) { 0 } else { h }).collect())?;
    out.push(SuiteSquare { name: "edge-into-BC3".into(), certificate: certify(&d2)?, k: arrow_to_h });

    let (cell0, cert0) = generating_cell(0, &c2, max_word_length)?;
    let k0 = FinFunctor::new(cell0.domain().clone(), bc2.clone(), vec![], vec![])?;
    out.push(SuiteSquare { name: "cell0xC2".into(), certificate: cert0, k: k0 });
    Ok(out)
}

/// At least twenty categories for the counit check.
pub fn counit_corpus() -> Result<Vec<Named>> {
    let mut out = Vec::new();
    for n in 0..=3 {
        out.push((format!("p[{n}]"), Arc::new(poset_category(n))));
    }
    for (i, p) in Poset::all_up_to_iso(3).into_iter().enumerate() {
        out.push((format!("poset3.{i}"), Arc::new(p.to_category())));
    }
    for n in 1..=6 {
        out.push((format!("BC{n}"), bg(&FinGroup::cyclic(n))));
    }
    out.push(("BS3".into(), bg(&FinGroup::symmetric(3))));
    out.push(("B(idempotent)".into(), bm(&FinMonoid::idempotent())));
    out.push(("B(fiedorowicz)".into(), bm(&FinMonoid::fiedorowicz())));
    out.push(("EC2".into(), Arc::new(translation_groupoid(&FinGroup::cyclic(2)).0)));
    out.push(("parallel".into(), Arc::new(parallel_arrows())));
    for (name, g) in [("simple", sample_complex()?), ("twisted", twisted_sample_complex()?)] {
        out.push((format!("c({name})"), Arc::new(associated_category(&g)?)));
    }
    Ok(out)
}

/// C2 → C4 → C4 over the chain 0 < 1 < 2, with the inclusion and then the identity.
pub fn sample_complex() -> Result<ComplexOfGroups> {
    let chain = Poset::new(
        vec!["0".into(), "1".into(), "2".into()],
        (0..3).map(|x| (0..3).map(|y| x <= y).collect()).collect(),
    )?;
    let (c2, c4) = (FinGroup::cyclic(2), FinGroup::cyclic(4));
    let incl = vec![0, c4.index_of("g2").ok_or_else(|| Error::UnknownId("g2".into()))?];
    let transitions = [((0, 0), vec![0, 1]), ((1, 1), vec![0, 1, 2, 3]), ((2, 2), vec![0, 1, 2, 3]), ((0, 1), incl.clone()), ((1, 2), vec![0, 1, 2, 3]), ((0, 2), incl)]
        .into_iter()
        .map(|((x, y), phi): ((usize, usize), Vec<usize>)| ((x, y), phi))
        .collect();
    ComplexOfGroups::simple(chain, vec![c2, c4.clone(), c4], transitions)
}

/// The sample complex reconstructed from its associated category with random
/// choices, which gives nontrivial twisting elements.
pub fn twisted_sample_complex() -> Result<ComplexOfGroups> {
    let c = Arc::new(associated_category(&sample_complex()?)?);
    for seed in 0..64 {
        let r = reconstruct_complex(&c, &ReconstructionChoices::new(&c, ChoicePolicy::Random(seed)))?;
        if !r.complex.is_simple() {
            return Ok(r.complex);
        }
    }
    Err(Error::Malformed("no random choice produced a twist".into()))
}

/// Every simple complex over a poset with at most `max_elements` elements
/// (up to isomorphism) and local groups drawn from `groups`.
pub fn exhaustive_simple_complexes(max_elements: usize, groups: &[FinGroup], limit: usize) -> Result<Vec<ComplexOfGroups>> {
    let mut out = Vec::new();
    for n in 1..=max_elements {
        for poset in Poset::all_up_to_iso(n) {
            let mut assignment = vec![0usize; n];
            loop {
                let local: Vec<FinGroup> = assignment.iter().map(|&i| groups[i].clone()).collect();
                out.extend(simple_complexes(&poset, &local, limit)?);
                if out.len() > limit {
                    return Err(Error::SizeLimitExceeded { what: "complexes".into(), limit });
                }
                // next assignment in odometer order
                let mut pos = 0;
                while pos < n && assignment[pos] + 1 == groups.len() {
                    assignment[pos] = 0;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
                assignment[pos] += 1;
            }
        }
    }
    Ok(out)
}

/// A seeded complex over a random poset with `n` elements: a random simple complex,
/// then re-read through random reconstruction choices so twists appear.
pub fn random_complex(n: usize, groups: &[FinGroup], seed: u64) -> Result<ComplexOfGroups> {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let posets = Poset::all_up_to_iso(n);
    let poset = posets.choose(&mut rng).ok_or_else(|| Error::Malformed("no posets".into()))?;
    let simple = random_simple_complex(poset, groups, &mut rng)?;
    let c = Arc::new(associated_category(&simple)?);
    let choices = ReconstructionChoices::new(&c, ChoicePolicy::Random(seed));
    Ok(reconstruct_complex(&c, &choices)?.complex)
}

/// The (G, H) pairs and target categories of the fixed-point chain checks.
pub fn fixed_point_cases() -> Vec<(String, FinGroup, Vec<usize>, Named)> {
    let (c2, c4) = (FinGroup::cyclic(2), FinGroup::cyclic(4));
    let half = vec![0, c4.index_of("g2").expect("C4 has g2")];
    let pairs = [("C2/C2", c2.clone(), vec![0, 1]), ("C2/e", c2.clone(), vec![0]), ("C4/C2", c4, half)];
    let targets: Vec<Named> = vec![
        ("BC2".into(), bg(&c2)),
        ("terminal".into(), Arc::new(terminal())),
        ("p[1]".into(), Arc::new(poset_category(1))),
    ];
    let mut out = Vec::new();
    for (name, g, h) in &pairs {
        for t in &targets {
            out.push((name.to_string(), g.clone(), h.clone(), t.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_respects_the_size_bounds() {
        let family = test_family();
        assert!(family.iter().all(|(_, c)| c.num_objects() <= 3 && c.num_morphisms() <= 8));
        assert_eq!(monoids_up_to_iso(2).len(), 2);
        assert_eq!(monoids_up_to_iso(3).len(), 7);
        assert_eq!(family.iter().filter(|(n, _)| n.starts_with("poset")).count(), 1 + 2 + 5);
    }

    #[test]
    fn suite_is_certified() {
        let suite = suite_squares(16).unwrap();
        assert_eq!(suite.len(), 7);
        for s in &suite {
            s.certificate.verify().unwrap();
            assert_eq!(**s.k.domain(), **s.certificate.source(), "{}", s.name);
        }
    }

    #[test]
    fn corpora_are_large_enough() {
        assert!(counit_corpus().unwrap().len() >= 20);
        assert!(!twisted_sample_complex().unwrap().is_simple());
        assert_eq!(fixed_point_cases().len(), 9);
    }

    #[test]
    fn random_complexes_are_valid() {
        let groups: Vec<FinGroup> = (1..=4).map(FinGroup::cyclic).collect();
        for seed in 0..5 {
            let g = random_complex(4, &groups, seed).unwrap();
            assert_eq!(g.poset.len(), 4);
        }
    }
}
