use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{homology, homology_of_complex, normalized_chains, pi0, ChainComplex, SparseMatrix};
use crate::error::{Error, Result};
use crate::fincat::{check_equivalence, FinFunctor};
use crate::simplicial::{nerve, nerve_map, FinSimplicialSet, SimplicialMap};

/// How strongly a map has been shown to be a weak equivalence.
///
/// `HomologyConsistent` is evidence, not proof: π0 and H_0..H_k agree along the map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ComparisonVerdict {
    CertifiedEquivalence,
    HomologyConsistent { k_max: usize },
    Distinguished { degree: usize, reason: String },
}

impl ComparisonVerdict {
    pub fn is_positive(&self) -> bool {
        !matches!(self, ComparisonVerdict::Distinguished { .. })
    }
}

fn check_bound(x: &FinSimplicialSet, k_max: usize) -> Result<()> {
    if !x.is_skeletal() && x.bound() < k_max + 1 {
        return Err(Error::InsufficientTruncation { required: k_max + 1, actual: x.bound() });
    }
    Ok(())
}

/// The mapping cone of the normalized chain map of f, in degrees 0..=top.
fn mapping_cone(f: &SimplicialMap, cx: &ChainComplex, cy: &ChainComplex, top: usize) -> ChainComplex {
    let rank = |c: &ChainComplex, n: isize| if n < 0 { 0 } else { c.ranks.get(n as usize).copied().unwrap_or(0) };
    let ypos: Vec<HashMap<usize, usize>> =
        cy.basis.iter().map(|b| b.iter().enumerate().map(|(i, &s)| (s, i)).collect()).collect();
    let ranks: Vec<usize> = (0..=top).map(|k| rank(cy, k as isize) + rank(cx, k as isize - 1)).collect();
    let mut boundaries = vec![SparseMatrix::zeros(0, ranks[0])];
    for k in 1..=top {
        let (ry, rx) = (rank(cy, k as isize - 1), rank(cx, k as isize - 2));
        let (cyk, cxk) = (rank(cy, k as isize), rank(cx, k as isize - 1));
        let mut m = SparseMatrix::zeros(ry + rx, cyk + cxk);
        if cyk > 0 {
            for (r, row) in cy.boundaries[k].data.iter().enumerate() {
                for (c, v) in row {
                    m.add(r, *c, i64::try_from(v).expect("boundary coefficient"));
                }
            }
        }
        // f on C_{k-1}(X) lands in C_{k-1}(Y)
        if cxk > 0 {
            let n = k - 1;
            for (col, &s) in cx.basis[n].iter().enumerate() {
                if let Some(&row) = ypos.get(n).and_then(|p| p.get(&f.levels[n][s])) {
                    m.add(row, cyk + col, 1);
                }
            }
            if k >= 2 {
                for (r, row) in cx.boundaries[k - 1].data.iter().enumerate() {
                    for (c, v) in row {
                        m.add(ry + r, cyk + *c, -i64::try_from(v).expect("boundary coefficient"));
                    }
                }
            }
        }
        boundaries.push(m);
    }
    ChainComplex { ranks, boundaries, basis: Vec::new() }
}

/// Compares a simplicial map through π0 and integer homology up to `k_max`.
///
/// Besides comparing the homology groups abstractly, the mapping cone is checked
/// to be acyclic through degree k_max, so f induces surjections between
/// isomorphic finitely generated groups, which are then isomorphisms.
pub fn compare_map(f: &SimplicialMap, k_max: usize) -> Result<ComparisonVerdict> {
    let (x, y) = (&*f.domain, &*f.codomain);
    check_bound(x, k_max)?;
    check_bound(y, k_max)?;
    let (px, py) = (pi0(x), pi0(y));
    let mut image = vec![usize::MAX; px.count];
    for v in 0..x.count(0) {
        image[px.component[v]] = py.component[f.levels[0][v]];
    }
    let mut hit = vec![false; py.count];
    for &c in &image {
        if hit[c] {
            return Ok(ComparisonVerdict::Distinguished { degree: 0, reason: "two components are identified".into() });
        }
        hit[c] = true;
    }
    if hit.iter().any(|h| !h) {
        return Ok(ComparisonVerdict::Distinguished { degree: 0, reason: "a component is missed".into() });
    }
    let (hx, hy) = (homology(x, k_max)?, homology(y, k_max)?);
    for k in 0..=k_max {
        if hx.groups[k] != hy.groups[k] {
            return Ok(ComparisonVerdict::Distinguished {
                degree: k,
                reason: format!("H{k} differs: {} vs {}", hx.groups[k], hy.groups[k]),
            });
        }
    }
    let (cx, cy) = (normalized_chains(x), normalized_chains(y));
    let cone = mapping_cone(f, &cx, &cy, k_max + 1);
    let hc = homology_of_complex(&cone, k_max);
    if let Some(k) = hc.iter().position(|g| !g.is_zero()) {
        return Ok(ComparisonVerdict::Distinguished {
            degree: k,
            reason: format!("the induced map is not an isomorphism near H{k} (cone has {})", hc[k]),
        });
    }
    Ok(ComparisonVerdict::HomologyConsistent { k_max })
}

/// Compares a functor: a certified equivalence if one is found, else through nerves.
pub fn compare(f: &FinFunctor, k_max: usize) -> Result<ComparisonVerdict> {
    if check_equivalence(f).is_equivalence() {
        return Ok(ComparisonVerdict::CertifiedEquivalence);
    }
    let bound = k_max + 1;
    let (nx, ny) = (nerve(f.domain(), bound), nerve(f.codomain(), bound));
    compare_map(&nerve_map(f, &nx, &ny)?, k_max)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{classifying_category, poset_category, terminal, FinGroup, FinMonoid};

    #[test]
    fn identity_is_certified() {
        let c = Arc::new(classifying_category(FinGroup::cyclic(3).monoid()));
        assert_eq!(compare(&FinFunctor::identity(c), 2).unwrap(), ComparisonVerdict::CertifiedEquivalence);
    }

    #[test]
    fn bc2_to_point_is_distinguished_in_degree_one() {
        let c = Arc::new(classifying_category(FinGroup::cyclic(2).monoid()));
        let f = FinFunctor::constant(c, Arc::new(terminal()), 0);
        assert!(matches!(compare(&f, 2).unwrap(), ComparisonVerdict::Distinguished { degree: 1, .. }));
    }

    #[test]
    fn poset_to_point_is_consistent() {
        let f = FinFunctor::constant(Arc::new(poset_category(2)), Arc::new(terminal()), 0);
        assert_eq!(compare(&f, 3).unwrap(), ComparisonVerdict::HomologyConsistent { k_max: 3 });
    }

    #[test]
    fn fiedorowicz_to_point_is_caught_by_homology() {
        let c = Arc::new(classifying_category(&FinMonoid::fiedorowicz()));
        let f = FinFunctor::constant(c, Arc::new(terminal()), 0);
        assert!(matches!(compare(&f, 2).unwrap(), ComparisonVerdict::Distinguished { degree: 2, .. }));
    }

    #[test]
    fn cone_sees_a_non_isomorphism_between_isomorphic_groups() {
        // squaring on BC3 induces x ↦ 2x on H1 = Z/3, which is still an isomorphism;
        // the trivial endomorphism is not, although the groups agree
        let g = FinGroup::cyclic(3);
        let c = Arc::new(classifying_category(g.monoid()));
        let trivial = FinFunctor::new(c.clone(), c.clone(), vec![0], vec![0; 3]).unwrap();
        let verdict = compare(&trivial, 1).unwrap();
        assert!(matches!(verdict, ComparisonVerdict::Distinguished { degree: 1, .. }), "{verdict:?}");
        let square = FinFunctor::new(c.clone(), c.clone(), vec![0], (0..3).map(|i| g.mul(i, i)).collect()).unwrap();
        assert!(compare(&square, 1).unwrap().is_positive());
    }
}
