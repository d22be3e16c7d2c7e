use std::collections::HashMap;
use std::sync::Arc;

use super::sset::{FinSimplicialSet, SimplicialMap};
use crate::error::Result;
use crate::fincat::{FinCategory, FinFunctor};

/// The nerve of a finite category truncated at `bound`, keeping the strings
/// of composable morphisms behind each simplex.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub category: Arc<FinCategory>,
    pub simplicial: Arc<FinSimplicialSet>,
    /// chains[n][x]: the n composable morphisms (first applied first); for n = 0 the object
    pub chains: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn simplex_of(&self, n: usize, chain: &[usize]) -> Option<usize> {
        self.index[n].get(chain).copied()
    }
}

/// Composable strings of n non-identity morphisms exist for every n (a cycle)
/// or up to some maximum length.
pub fn longest_nondegenerate_chain(c: &FinCategory) -> Option<usize> {
    let n = c.num_objects();
    // longest path of non-identity morphisms, detecting cycles by DFS colouring
    let mut memo: Vec<Option<usize>> = vec![None; n];
    let mut state = vec![0u8; n];
    fn visit(c: &FinCategory, x: usize, memo: &mut Vec<Option<usize>>, state: &mut Vec<u8>) -> Option<usize> {
        if state[x] == 1 {
            return None;
        }
        if state[x] == 2 {
            return memo[x];
        }
        state[x] = 1;
        let mut best = 0;
        for &f in c.outgoing(x) {
            if c.is_identity(f) {
                continue;
            }
            let y = c.tgt(f);
            if y == x {
                return None;
            }
            best = best.max(1 + visit(c, y, memo, state)?);
        }
        state[x] = 2;
        memo[x] = Some(best);
        Some(best)
    }
    let mut best = 0;
    for x in 0..n {
        best = best.max(visit(c, x, &mut memo, &mut state)?);
    }
    Some(best)
}

/// The nerve of `c` stored up to degree `bound`.
pub fn nerve(c: &Arc<FinCategory>, bound: usize) -> Nerve {
    let mut chains: Vec<Vec<Vec<usize>>> = vec![(0..c.num_objects()).map(|x| vec![x]).collect()];
    if bound >= 1 {
        chains.push((0..c.num_morphisms()).map(|f| vec![f]).collect());
    }
    for n in 2..=bound {
        let mut level = Vec::new();
        for ch in &chains[n - 1] {
            let last = *ch.last().expect("nonempty chain");
            for &g in c.outgoing(c.tgt(last)) {
                let mut next = ch.clone();
                next.push(g);
                level.push(next);
            }
        }
        chains.push(level);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = chains
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, ch)| (ch, i)).collect())
        .collect();
    let labels = chains
        .iter()
        .enumerate()
        .map(|(n, l)| {
            l.iter()
                .map(|ch| {
                    if n == 0 {
                        c.object_id(ch[0]).to_string()
                    } else {
                        ch.iter().map(|&f| c.morphism(f).id.as_str()).collect::<Vec<_>>().join("|")
                    }
                })
                .collect()
        })
        .collect();
    let faces = (0..=bound)
        .map(|n| {
            chains[n]
                .iter()
                .map(|ch| {
                    if n == 0 {
                        return Vec::new();
                    }
                    if n == 1 {
                        return vec![c.tgt(ch[0]), c.src(ch[0])];
                    }
                    (0..=n)
                        .map(|i| {
                            let face: Vec<usize> = if i == 0 {
                                ch[1..].to_vec()
                            } else if i == n {
                                ch[..n - 1].to_vec()
                            } else {
                                let mut v = ch[..i - 1].to_vec();
                                v.push(c.compose(ch[i], ch[i - 1]));
                                v.extend_from_slice(&ch[i + 1..]);
                                v
                            };
                            index[n - 1][&face]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..=bound)
        .map(|n| {
            chains[n]
                .iter()
                .map(|ch| {
                    if n == bound {
                        return Vec::new();
                    }
                    if n == 0 {
                        return vec![index[1][&vec![c.identity(ch[0])]]];
                    }
                    (0..=n)
                        .map(|i| {
                            // identity at the i-th vertex
                            let vertex = if i == 0 { c.src(ch[0]) } else { c.tgt(ch[i - 1]) };
                            let mut v = ch[..i].to_vec();
                            v.push(c.identity(vertex));
                            v.extend_from_slice(&ch[i..]);
                            index[n + 1][&v]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let skeletal = longest_nondegenerate_chain(c).is_some_and(|l| l <= bound);
    let simplicial = FinSimplicialSet::new(bound, labels, faces, degeneracies, skeletal).expect("nerve is simplicial");
    Nerve { category: c.clone(), simplicial: Arc::new(simplicial), chains, index }
}

/// N(F) between nerves built at the same bound.
pub fn nerve_map(f: &FinFunctor, source: &Nerve, target: &Nerve) -> Result<SimplicialMap> {
    let bound = source.simplicial.bound().min(target.simplicial.bound());
    let levels = (0..=bound)
        .map(|n| {
            source.chains[n]
                .iter()
                .map(|ch| {
                    let img: Vec<usize> = if n == 0 { vec![f.obj(ch[0])] } else { ch.iter().map(|&m| f.mor(m)).collect() };
                    target.index[n][&img]
                })
                .collect()
        })
        .collect();
    SimplicialMap::new(source.simplicial.clone(), target.simplicial.clone(), levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{classifying_category, poset_category, FinGroup, FinMonoid};
    use crate::simplicial::SkeletalPresentation;

    #[test]
    fn nerve_of_poset_is_simplex() {
        let n = nerve(&Arc::new(poset_category(2)), 3);
        assert_eq!(n.simplicial.nondegenerate_counts(), vec![3, 3, 1, 0]);
        assert!(n.simplicial.is_skeletal());
        let d2 = SkeletalPresentation::simplex(2).materialize(3);
        assert_eq!((0..=3).map(|k| n.simplicial.count(k)).collect::<Vec<_>>(), (0..=3).map(|k| d2.count(k)).collect::<Vec<_>>());
    }

    #[test]
    fn nerve_of_bc2() {
        let n = nerve(&Arc::new(classifying_category(FinGroup::cyclic(2).monoid())), 3);
        assert_eq!(n.simplicial.nondegenerate_counts(), vec![1, 1, 1, 1]);
        assert!(!n.simplicial.is_skeletal());
    }

    #[test]
    fn nerve_of_fiedorowicz_monoid() {
        let n = nerve(&Arc::new(classifying_category(&FinMonoid::fiedorowicz())), 3);
        assert_eq!(n.simplicial.nondegenerate_counts(), vec![1, 4, 16, 64]);
    }

    #[test]
    fn chain_lengths() {
        assert_eq!(longest_nondegenerate_chain(&poset_category(3)), Some(3));
        assert_eq!(longest_nondegenerate_chain(&classifying_category(FinGroup::cyclic(2).monoid())), None);
    }
}
