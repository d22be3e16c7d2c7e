//! Integer homology of truncated simplicial sets and the comparison verdicts built on it.

mod compare;
mod snf;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::FinSimplicialSet;

pub use compare::{compare, compare_map, ComparisonVerdict};
pub use snf::{smith_normal_form, SmithForm, SparseMatrix};

/// Normalized chains: the basis in degree n is the nondegenerate n-simplices.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    /// boundaries[n]: C_n → C_{n-1} with rows indexed by C_{n-1}; boundaries[0] is empty
    pub boundaries: Vec<SparseMatrix>,
    /// basis[n][i]: the simplex of the n-th basis element
    pub basis: Vec<Vec<usize>>,
}

impl ChainComplex {
    /// Checks ∂∘∂ = 0 in every degree.
    pub fn verify(&self) -> Result<()> {
        for n in 2..self.ranks.len() {
            if !self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero() {
                return Err(Error::Malformed(format!("boundary squares to a nonzero map in degree {n}")));
            }
        }
        Ok(())
    }
}

pub fn normalized_chains(x: &FinSimplicialSet) -> ChainComplex {
    let bound = x.bound();
    let basis: Vec<Vec<usize>> = (0..=bound).map(|n| x.nondegenerate(n)).collect();
    let pos: Vec<HashMap<usize, usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(i, &s)| (s, i)).collect()).collect();
    let mut boundaries = vec![SparseMatrix::zeros(0, basis[0].len())];
    for n in 1..=bound {
        let mut m = SparseMatrix::zeros(basis[n - 1].len(), basis[n].len());
        for (col, &s) in basis[n].iter().enumerate() {
            for i in 0..=n {
                // degenerate faces vanish in normalized chains
                if let Some(&row) = pos[n - 1].get(&x.d(n, i, s)) {
                    m.add(row, col, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        boundaries.push(m);
    }
    let c = ChainComplex { ranks: basis.iter().map(Vec::len).collect(), boundaries, basis };
    debug_assert!(c.verify().is_ok());
    c
}

/// One homology group Z^betti ⊕ ⊕ Z/t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn integers() -> Self {
        HomologyGroup { betti: 1, torsion: Vec::new() }
    }

    pub fn zero() -> Self {
        HomologyGroup { betti: 0, torsion: Vec::new() }
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// H_0 .. H_{k_max}, with the largest degree the truncation vouches for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
    /// None when the input is skeletal, in which case every degree is exact
    pub ceiling: Option<usize>,
}

fn torsion_of(f: &SmithForm) -> Vec<u64> {
    f.invariant_factors
        .iter()
        .filter(|v| !v.is_one())
        .map(|v: &BigInt| v.to_u64().expect("torsion coefficient fits in 64 bits"))
        .collect()
}

/// Integer homology up to degree `k_max`.
///
/// Truncated inputs need bound ≥ k_max + 1; skeletal inputs are exact in every degree.
pub fn homology(x: &FinSimplicialSet, k_max: usize) -> Result<HomologyResult> {
    let ceiling = if x.is_skeletal() { None } else { Some(x.bound().saturating_sub(1)) };
    if !x.is_skeletal() && x.bound() < k_max + 1 {
        return Err(Error::InsufficientTruncation { required: k_max + 1, actual: x.bound() });
    }
    let c = normalized_chains(x);
    Ok(HomologyResult { groups: homology_of_complex(&c, k_max), ceiling })
}

/// Homology of a chain complex in degrees 0..=k_max; chains above the stored range count as zero.
pub fn homology_of_complex(c: &ChainComplex, k_max: usize) -> Vec<HomologyGroup> {
    let top = c.ranks.len();
    let forms: Vec<Option<SmithForm>> = (0..=k_max + 1)
        .map(|n| if n >= 1 && n < top { Some(smith_normal_form(&c.boundaries[n])) } else { None })
        .collect();
    (0..=k_max)
        .map(|k| {
            let rank_k = c.ranks.get(k).copied().unwrap_or(0);
            let out = forms[k].as_ref().map_or(0, SmithForm::rank);
            let inc = forms[k + 1].as_ref();
            let betti = rank_k - out - inc.map_or(0, SmithForm::rank);
            HomologyGroup { betti, torsion: inc.map_or_else(Vec::new, torsion_of) }
        })
        .collect()
}

/// Path components of the vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi0 {
    pub count: usize,
    /// component number of each vertex, numbered by first appearance
    pub component: Vec<usize>,
}

pub fn pi0(x: &FinSimplicialSet) -> Pi0 {
    let nv = x.count(0);
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    if x.bound() >= 1 {
        for e in 0..x.count(1) {
            let (a, b) = (find(&mut parent, x.d(1, 0, e)), find(&mut parent, x.d(1, 1, e)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut number: HashMap<usize, usize> = HashMap::new();
    let component = (0..nv)
        .map(|v| {
            let r = find(&mut parent, v);
            let next = number.len();
            *number.entry(r).or_insert(next)
        })
        .collect();
    Pi0 { count: number.len(), component }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{classifying_category, FinGroup, FinMonoid};
    use crate::simplicial::{nerve, SkeletalPresentation};

    fn z() -> HomologyGroup {
        HomologyGroup::integers()
    }

    fn zero() -> HomologyGroup {
        HomologyGroup::zero()
    }

    fn zmod(t: u64) -> HomologyGroup {
        HomologyGroup { betti: 0, torsion: vec![t] }
    }

    #[test]
    fn simplex_is_acyclic() {
        for n in 0..4 {
            let d = SkeletalPresentation::simplex(n).materialize(n + 1);
            let h = homology(&d, n + 2).unwrap();
            assert_eq!(h.groups[0], z());
            assert!(h.groups[1..].iter().all(HomologyGroup::is_zero));
            assert_eq!(h.ceiling, None);
        }
    }

    #[test]
    fn sphere_from_boundary() {
        let b = SkeletalPresentation::boundary(3).materialize(3);
        let h = homology(&b, 3).unwrap();
        assert_eq!(h.groups, vec![z(), zero(), z(), zero()]);
    }

    #[test]
    fn bc2_has_periodic_torsion() {
        let n = nerve(&Arc::new(classifying_category(FinGroup::cyclic(2).monoid())), 5);
        let c = normalized_chains(&n.simplicial);
        assert_eq!(c.ranks, vec![1, 1, 1, 1, 1, 1]);
        let h = homology(&n.simplicial, 4).unwrap();
        assert_eq!(h.groups, vec![z(), zmod(2), zero(), zmod(2), zero()]);
        assert_eq!(h.ceiling, Some(4));
        let d2 = smith_normal_form(&c.boundaries[2]);
        assert_eq!(d2.invariant_factors, vec![BigInt::from(2)]);
    }

    #[test]
    fn fiedorowicz_monoid_is_a_sphere() {
        let n = nerve(&Arc::new(classifying_category(&FinMonoid::fiedorowicz())), 4);
        let c = normalized_chains(&n.simplicial);
        c.verify().unwrap();
        let h = homology(&n.simplicial, 3).unwrap();
        assert_eq!(h.groups, vec![z(), zero(), z(), zero()]);
    }

    #[test]
    fn truncation_is_enforced() {
        let n = nerve(&Arc::new(classifying_category(FinGroup::cyclic(2).monoid())), 2);
        assert_eq!(homology(&n.simplicial, 2), Err(Error::InsufficientTruncation { required: 3, actual: 2 }));
    }

    #[test]
    fn components() {
        let two_points = SkeletalPresentation::boundary(1).materialize(1);
        assert_eq!(pi0(&two_points).count, 2);
        let empty = SkeletalPresentation::boundary(0).materialize(1);
        assert_eq!(pi0(&empty).count, 0);
        assert_eq!(pi0(&SkeletalPresentation::simplex(2).materialize(2)).count, 1);
    }

    #[test]
    fn display() {
        assert_eq!(HomologyGroup { betti: 2, torsion: vec![2, 4] }.to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(zero().to_string(), "0");
    }
}
