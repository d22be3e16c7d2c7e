use std::collections::HashMap;
use std::sync::Arc;

use super::monotone;
use super::sset::{FinSimplicialSet, SimplicialMap};
use crate::error::{Error, Result};

/// Strict chains of nonempty subsets of [k] as bitmasks, grouped by length - 1.
fn subset_chains(k: usize) -> Vec<Vec<Vec<u32>>> {
    let full = (1u32 << (k + 1)) - 1;
    let mut by_len: Vec<Vec<Vec<u32>>> = vec![Vec::new(); k + 1];
    fn go(full: u32, cur: &mut Vec<u32>, by_len: &mut Vec<Vec<Vec<u32>>>) {
        by_len[cur.len() - 1].push(cur.clone());
        let last = *cur.last().expect("nonempty");
        // strict supersets of `last`
        let rest = full & !last;
        let mut add = rest;
        while add > 0 {
            cur.push(last | add);
            go(full, cur, by_len);
            cur.pop();
            add = (add - 1) & rest;
        }
    }
    for s in 1..=full {
        go(full, &mut vec![s], &mut by_len);
    }
    for l in by_len.iter_mut() {
        l.sort();
    }
    by_len
}

/// Image of a chain of subsets under a monotone map [k] → [m].
fn push_chain(chain: &[u32], theta: &[usize]) -> Vec<u32> {
    chain
        .iter()
        .map(|&s| {
            let mut out = 0u32;
            for (v, &t) in theta.iter().enumerate() {
                if s >> v & 1 == 1 {
                    out |= 1 << t;
                }
            }
            out
        })
        .collect()
}

struct Shape {
    chains: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl Shape {
    fn new(k: usize) -> Shape {
        let chains = subset_chains(k);
        let index = chains.iter().map(|l| l.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect()).collect();
        Shape { chains, index }
    }
}

/// A simplex of Ex X: a map Sd Δ[k] → X given on strict chains (degree by degree).
type Assignment = Vec<Vec<usize>>;

/// Evaluates an assignment on a weak chain by degenerating the value on its strict part.
fn eval(x: &FinSimplicialSet, shape: &Shape, a: &Assignment, weak: &[u32]) -> usize {
    let (surj, strict) = {
        let mut strict: Vec<u32> = Vec::new();
        let mut surj = Vec::new();
        for &s in weak {
            if strict.last() != Some(&s) {
                strict.push(s);
            }
            surj.push(strict.len() - 1);
        }
        (surj, strict)
    };
    let j = strict.len() - 1;
    let y = a[j][shape.index[j][&strict]];
    x.apply(&surj, j, y)
}

/// Ex X in degrees 0..=n together with the natural map κ: X → Ex X
/// (precomposition with the last-vertex map Sd Δ[k] → Δ[k]).
///
/// The k-simplices are enumerated as compatible assignments of simplices of X to
/// the nondegenerate simplices of Sd Δ[k]; `max_simplices` caps each degree.
pub fn ex_truncated(x: &FinSimplicialSet, n: usize, max_simplices: usize) -> Result<(FinSimplicialSet, SimplicialMap)> {
    if x.bound() < n {
        return Err(Error::InsufficientTruncation { required: n, actual: x.bound() });
    }
    // simplices of X keyed by their face tuple
    let by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>> = (0..=n)
        .map(|m| {
            let mut h: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            if m > 0 {
                for y in 0..x.count(m) {
                    h.entry((0..=m).map(|i| x.d(m, i, y)).collect()).or_default().push(y);
                }
            }
            h
        })
        .collect();
    let shapes: Vec<Shape> = (0..=n).map(Shape::new).collect();
    let mut levels: Vec<Vec<Assignment>> = Vec::with_capacity(n + 1);
    for (k, shape) in shapes.iter().enumerate() {
        let order: Vec<(usize, usize)> =
            (0..=k).flat_map(|j| (0..shape.chains[j].len()).map(move |c| (j, c))).collect();
        let mut cur: Assignment = shape.chains.iter().map(|l| vec![usize::MAX; l.len()]).collect();
        let mut out = Vec::new();
        enumerate_assignments(x, shape, &by_faces, &order, 0, &mut cur, &mut out, max_simplices)?;
        levels.push(out);
    }
    let index: Vec<HashMap<Assignment, usize>> =
        levels.iter().map(|l| l.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect()).collect();

    // θ* on Ex: (θ*φ)(c) = φ(θ(c))
    let act = |theta: &[usize], src: usize, a: &Assignment| -> Assignment {
        let m = theta.len() - 1;
        shapes[m]
            .chains
            .iter()
            .map(|l| l.iter().map(|c| eval(x, &shapes[src], a, &push_chain(c, theta))).collect())
            .collect()
    };
    let faces = (0..=n)
        .map(|k| {
            levels[k]
                .iter()
                .map(|a| {
                    if k == 0 {
                        return Vec::new();
                    }
                    (0..=k).map(|i| index[k - 1][&act(&monotone::coface(k, i), k, a)]).collect()
                })
                .collect()
        })
        .collect();
    let degeneracies = (0..=n)
        .map(|k| {
            levels[k]
                .iter()
                .map(|a| {
                    if k == n {
                        return Vec::new();
                    }
                    (0..=k).map(|i| index[k + 1][&act(&monotone::codegeneracy(k, i), k, a)]).collect()
                })
                .collect()
        })
        .collect();
    let labels = levels
        .iter()
        .enumerate()
        .map(|(k, l)| {
            l.iter()
                .map(|a| {
                    if k == 0 {
                        return format!("<{}>", x.label(0, a[0][0]));
                    }
                    // values on the maximal chains determine the map
                    let top: Vec<&str> = a[k].iter().map(|&y| x.label(k, y)).collect();
                    format!("<{}>", top.join(","))
                })
                .collect::<Vec<String>>()
        })
        .collect::<Vec<_>>();
    // labels of X may contain commas, so keep them unique regardless
    let labels = disambiguate(labels);
    let ex = FinSimplicialSet::new(n, labels, faces, degeneracies, false)?;

    // κ(y)(c) = θ_c*(y) where θ_c sends position p of the chain to max c_p
    let kappa_levels = (0..=n)
        .map(|k| {
            (0..x.count(k))
                .map(|y| {
                    let a: Assignment = shapes[k]
                        .chains
                        .iter()
                        .map(|l| {
                            l.iter()
                                .map(|c| {
                                    let theta: Vec<usize> = c.iter().map(|&s| 31 - s.leading_zeros() as usize).collect();
                                    x.apply(&theta, k, y)
                                })
                                .collect()
                        })
                        .collect();
                    index[k][&a]
                })
                .collect()
        })
        .collect();
    let source = Arc::new(x.truncate(n));
    let kappa = SimplicialMap::new(source, Arc::new(ex.clone()), kappa_levels)?;
    Ok((ex, kappa))
}

fn disambiguate(labels: Vec<Vec<String>>) -> Vec<Vec<String>> {
    labels
        .into_iter()
        .map(|l| {
            let mut seen: HashMap<String, usize> = HashMap::new();
            l.into_iter()
                .map(|s| {
                    let c = seen.entry(s.clone()).or_insert(0);
                    *c += 1;
                    if *c == 1 {
                        s
                    } else {
                        format!("{s}#{}", *c - 1)
                    }
                })
                .collect()
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn enumerate_assignments(
    x: &FinSimplicialSet,
    shape: &Shape,
    by_faces: &[HashMap<Vec<usize>, Vec<usize>>],
    order: &[(usize, usize)],
    pos: usize,
    cur: &mut Assignment,
    out: &mut Vec<Assignment>,
    cap: usize,
) -> Result<()> {
    if pos == order.len() {
        if out.len() >= cap {
            return Err(Error::SizeLimitExceeded { what: "Ex simplices".into(), limit: cap });
        }
        out.push(cur.clone());
        return Ok(());
    }
    let (j, c) = order[pos];
    let candidates: Vec<usize> = if j == 0 {
        (0..x.count(0)).collect()
    } else {
        let chain = &shape.chains[j][c];
        let key: Vec<usize> = (0..=j)
            .map(|i| {
                let mut f = chain.clone();
                f.remove(i);
                cur[j - 1][shape.index[j - 1][&f]]
            })
            .collect();
        by_faces[j].get(&key).cloned().unwrap_or_default()
    };
    for y in candidates {
        cur[j][c] = y;
        enumerate_assignments(x, shape, by_faces, order, pos + 1, cur, out, cap)?;
    }
    cur[j][c] = usize::MAX;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{classifying_category, FinGroup};
    use crate::simplicial::{nerve, SkeletalPresentation};

    /// Maps of posets from the nonempty subsets of [k] into [m], counted directly.
    fn monotone_maps_from_subsets(k: usize, m: usize) -> usize {
        let subsets: Vec<u32> = (1..(1u32 << (k + 1))).collect();
        let mut count = 0;
        let total = (m + 1).pow(subsets.len() as u32);
        for code in 0..total {
            let mut c = code;
            let val: Vec<usize> = subsets
                .iter()
                .map(|_| {
                    let v = c % (m + 1);
                    c /= m + 1;
                    v
                })
                .collect();
            let ok = subsets.iter().enumerate().all(|(i, &s)| {
                subsets.iter().enumerate().all(|(j, &t)| s & t != s || val[i] <= val[j])
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn ex_of_interval_matches_oracle() {
        let d1 = SkeletalPresentation::simplex(1).materialize(2);
        let (ex, kappa) = ex_truncated(&d1, 2, 100_000).unwrap();
        assert_eq!(ex.count(0), 2);
        assert_eq!(ex.count(1), monotone_maps_from_subsets(1, 1));
        assert_eq!(ex.count(1), 5);
        assert_eq!(ex.count(2), monotone_maps_from_subsets(2, 1));
        assert!(kappa.is_injective_in_degree(0) && kappa.is_injective_in_degree(1));
    }

    #[test]
    fn ex_of_point_is_point() {
        let p = SkeletalPresentation::simplex(0).materialize(3);
        let (ex, _) = ex_truncated(&p, 3, 1000).unwrap();
        assert_eq!((0..=3).map(|k| ex.count(k)).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn ex_of_bc2_vertices_and_edges() {
        // Sd Δ[1] has two edges into the barycentre, each sent to either 1-simplex
        let n = nerve(&Arc::new(classifying_category(FinGroup::cyclic(2).monoid())), 2);
        let (ex, kappa) = ex_truncated(&n.simplicial, 1, 1000).unwrap();
        assert_eq!((ex.count(0), ex.count(1)), (1, 4));
        assert!(kappa.is_injective_in_degree(1));
    }

    #[test]
    fn truncation_too_low() {
        let p = SkeletalPresentation::simplex(0).materialize(0);
        assert!(matches!(ex_truncated(&p, 1, 10), Err(Error::InsufficientTruncation { .. })));
    }
}
