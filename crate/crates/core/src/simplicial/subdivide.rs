use std::collections::HashMap;
use std::sync::Arc;

use super::monotone;
use super::sset::{Face, FinSimplicialSet, SimplicialMap, SkeletalPresentation};
use crate::error::{Error, Result};

/// A simplicial map between presented simplicial sets, given on nondegenerate
/// simplices: `images[n][x]` is the image of x in Eilenberg–Zilber form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationMap {
    pub images: Vec<Vec<Face>>,
}

impl PresentationMap {
    /// Checks compatibility with faces.
    pub fn verify(&self, source: &SkeletalPresentation, target: &SkeletalPresentation) -> Result<()> {
        for n in 0..=source.dim() {
            for x in 0..source.count(n) {
                let img = &self.images[n][x];
                if img.surj.len() != n + 1 || img.index >= target.count(img.dim) {
                    return Err(Error::NotSimplicialMap(format!("image of {} is malformed", source.labels[n][x])));
                }
                if n == 0 {
                    continue;
                }
                for i in 0..=n {
                    // f(d_i x) = d_i f(x)
                    let face = &source.faces[n][x][i];
                    let lhs = self.apply(target, face);
                    let rhs = target.reduce(&monotone::compose(&img.surj, &monotone::coface(n, i)), img.dim, img.index);
                    if lhs != rhs {
                        return Err(Error::NotSimplicialMap(format!("d{i} not preserved at {}", source.labels[n][x])));
                    }
                }
            }
        }
        Ok(())
    }

    /// Image of a simplex given in EZ form.
    pub fn apply(&self, target: &SkeletalPresentation, s: &Face) -> Face {
        let img = &self.images[s.dim][s.index];
        target.reduce(&monotone::compose(&img.surj, &s.surj), img.dim, img.index)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &PresentationMap, target: &SkeletalPresentation) -> PresentationMap {
        let images = self
            .images
            .iter()
            .map(|level| level.iter().map(|f| other.apply(target, f)).collect())
            .collect();
        PresentationMap { images }
    }

    /// The induced map between materializations at a common bound.
    pub fn materialize(
        &self,
        source: &SkeletalPresentation,
        target: &SkeletalPresentation,
        bound: usize,
    ) -> SimplicialMap {
        let (xs, xi) = source.materialize_indexed(bound);
        let (ys, yi) = target.materialize_indexed(bound);
        let levels = (0..=bound)
            .map(|m| {
                xi.simplices[m]
                    .iter()
                    .map(|s| {
                        let f = self.apply(target, s);
                        yi.index[m][&f]
                    })
                    .collect()
            })
            .collect();
        SimplicialMap::new(Arc::new(xs), Arc::new(ys), levels).expect("presentation map is simplicial")
    }

    /// The map given by matching labels of nondegenerate simplices (for subcomplex inclusions).
    pub fn inclusion_by_label(source: &SkeletalPresentation, target: &SkeletalPresentation) -> Result<PresentationMap> {
        let images = source
            .labels
            .iter()
            .enumerate()
            .map(|(n, level)| {
                level
                    .iter()
                    .map(|l| {
                        let idx = target.labels.get(n).and_then(|t| t.iter().position(|u| u == l));
                        idx.map(|index| Face { dim: n, index, surj: monotone::identity(n) })
                            .ok_or_else(|| Error::UnknownId(l.clone()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = PresentationMap { images };
        m.verify(source, target)?;
        Ok(m)
    }
}

/// Lookup tables for a materialized presentation.
pub struct MaterialIndex {
    pub simplices: Vec<Vec<Face>>,
    pub index: Vec<HashMap<Face, usize>>,
}

impl SkeletalPresentation {
    /// Materializes and also returns, per degree, the EZ form of each simplex.
    pub fn materialize_indexed(&self, bound: usize) -> (FinSimplicialSet, MaterialIndex) {
        let x = self.materialize(bound);
        let nondeg_pos: Vec<HashMap<usize, usize>> = (0..=bound)
            .map(|n| x.nondegenerate(n).into_iter().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let simplices: Vec<Vec<Face>> = (0..=bound)
            .map(|m| {
                (0..x.count(m))
                    .map(|s| {
                        let (k, y, eta) = x.ez(m, s).clone();
                        Face { dim: k, index: nondeg_pos[k][&y], surj: eta }
                    })
                    .collect()
            })
            .collect();
        let index = simplices
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect())
            .collect();
        (x, MaterialIndex { simplices, index })
    }
}

fn subset_label(s: u32, n: usize) -> String {
    (0..=n).filter(|&i| s >> i & 1 == 1).map(|i| i.to_string()).collect::<Vec<_>>().join(if n >= 10 { "," } else { "" })
}

/// Strict chains of nonempty subsets of [n] (as bitmasks) ending in [n].
fn top_chains(n: usize, len: usize) -> Vec<Vec<u32>> {
    let full: u32 = (1u32 << (n + 1)) - 1;
    let mut out = Vec::new();
    // build backwards from the top
    let mut cur = vec![full];
    fn go(len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            let mut c = cur.clone();
            c.reverse();
            out.push(c);
            return;
        }
        let last = *cur.last().expect("nonempty");
        // proper nonempty subsets of `last`
        let mut sub = (last - 1) & last;
        while sub > 0 {
            cur.push(sub);
            go(len, cur, out);
            cur.pop();
            sub = (sub - 1) & last;
        }
    }
    go(len, &mut cur, &mut out);
    out.sort();
    out
}

/// Kan's subdivision of a presented simplicial set: nondegenerate k-simplices
/// are a nondegenerate simplex τ of X with a strict chain of k+1 nonempty
/// subsets of its vertex set ending in the full set. Labels look like "τ|0<01".
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub presentation: SkeletalPresentation,
    /// (degree of τ, τ, chain) for each nondegenerate simplex, per degree
    pub cells: Vec<Vec<(usize, usize, Vec<u32>)>>,
    lookup: Vec<HashMap<(usize, usize, Vec<u32>), usize>>,
}

impl Subdivision {
    fn cell_face(&self, x: &SkeletalPresentation, n: usize, tau: usize, chain: &[u32]) -> Face {
        // chain of subsets of [n] ending at some T; renormalize into the face δ_T* τ
        let top = *chain.last().expect("nonempty chain");
        let t: Vec<usize> = (0..=n).filter(|&i| top >> i & 1 == 1).collect();
        let f = x.reduce(&t, n, tau);
        // η: [|T|-1] → [f.dim] pushes subsets of T forward
        let pushed: Vec<u32> = chain
            .iter()
            .map(|&s| {
                let mut m = 0u32;
                for (pos, &v) in t.iter().enumerate() {
                    if s >> v & 1 == 1 {
                        m |= 1 << f.surj[pos];
                    }
                }
                m
            })
            .collect();
        let mut strict: Vec<u32> = Vec::new();
        let mut surj = Vec::with_capacity(pushed.len());
        for &s in &pushed {
            if strict.last() != Some(&s) {
                strict.push(s);
            }
            surj.push(strict.len() - 1);
        }
        let k = strict.len() - 1;
        Face { dim: k, index: self.lookup[k][&(f.dim, f.index, strict)], surj }
    }
}

pub fn subdivide(x: &SkeletalPresentation) -> Subdivision {
    let dim = x.dim();
    let mut cells: Vec<Vec<(usize, usize, Vec<u32>)>> = vec![Vec::new(); dim + 1];
    if x.count(0) == 0 && dim == 0 {
        return Subdivision {
            presentation: SkeletalPresentation { labels: vec![Vec::new()], faces: vec![Vec::new()] },
            cells,
            lookup: vec![HashMap::new()],
        };
    }
    for n in 0..=dim {
        for tau in 0..x.count(n) {
            for k in 0..=n {
                for chain in top_chains(n, k + 1) {
                    cells[k].push((n, tau, chain));
                }
            }
        }
    }
    let lookup = cells
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let labels = cells
        .iter()
        .map(|l| {
            l.iter()
                .map(|(n, tau, chain)| {
                    let parts: Vec<String> = chain.iter().map(|&s| subset_label(s, *n)).collect();
                    format!("{}|{}", x.labels[*n][*tau], parts.join("<"))
                })
                .collect()
        })
        .collect();
    let mut sd = Subdivision {
        presentation: SkeletalPresentation { labels, faces: Vec::new() },
        cells,
        lookup,
    };
    let faces = sd
        .cells
        .iter()
        .enumerate()
        .map(|(k, l)| {
            l.iter()
                .map(|(n, tau, chain)| {
                    if k == 0 {
                        return Vec::new();
                    }
                    (0..=k)
                        .map(|i| {
                            let mut c = chain.clone();
                            c.remove(i);
                            if i < k {
                                Face { dim: k - 1, index: sd.lookup[k - 1][&(*n, *tau, c)], surj: monotone::identity(k - 1) }
                            } else {
                                sd.cell_face(x, *n, *tau, &c)
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    sd.presentation.faces = faces;
    sd
}

/// Sd f on presentations.
pub fn subdivide_map(f: &PresentationMap, sd_source: &Subdivision, sd_target: &Subdivision) -> PresentationMap {
    let images = sd_source
        .cells
        .iter()
        .map(|l| {
            l.iter()
                .map(|(n, tau, chain)| {
                    let img = &f.images[*n][*tau];
                    // push the chain forward along the surjection part of f(τ)
                    let pushed: Vec<u32> = chain
                        .iter()
                        .map(|&s| {
                            let mut m = 0u32;
                            for v in 0..=*n {
                                if s >> v & 1 == 1 {
                                    m |= 1 << img.surj[v];
                                }
                            }
                            m
                        })
                        .collect();
                    let mut strict: Vec<u32> = Vec::new();
                    let mut surj = Vec::with_capacity(pushed.len());
                    for &s in &pushed {
                        if strict.last() != Some(&s) {
                            strict.push(s);
                        }
                        surj.push(strict.len() - 1);
                    }
                    let k = strict.len() - 1;
                    Face { dim: k, index: sd_target.lookup[k][&(img.dim, img.index, strict)], surj }
                })
                .collect()
        })
        .collect();
    PresentationMap { images }
}

/// Sd applied twice.
pub fn subdivide_twice(x: &SkeletalPresentation) -> SkeletalPresentation {
    subdivide(&subdivide(x).presentation).presentation
}

/// Sd² of a map between presentations, returning the subdivided presentations too.
pub fn subdivide_map_twice(
    f: &PresentationMap,
    source: &SkeletalPresentation,
    target: &SkeletalPresentation,
) -> (SkeletalPresentation, SkeletalPresentation, PresentationMap) {
    let s1 = subdivide(source);
    let t1 = subdivide(target);
    let f1 = subdivide_map(f, &s1, &t1);
    let s2 = subdivide(&s1.presentation);
    let t2 = subdivide(&t1.presentation);
    let f2 = subdivide_map(&f1, &s2, &t2);
    (s2.presentation, t2.presentation, f2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(p: &SkeletalPresentation) -> Vec<usize> {
        (0..=p.dim()).map(|n| p.count(n)).collect()
    }

    #[test]
    fn subdivided_interval() {
        let sd = subdivide(&SkeletalPresentation::simplex(1));
        assert_eq!(counts(&sd.presentation), vec![3, 2]);
        sd.presentation.materialize(2);
    }

    #[test]
    fn subdivided_triangle_boundary_is_hexagon() {
        let sd = subdivide(&SkeletalPresentation::boundary(2));
        assert_eq!(counts(&sd.presentation), vec![6, 6]);
    }

    #[test]
    fn flag_counts() {
        // ordered set partitions: 1, 3 13, 7 25 ... nondegenerate simplices of Sd Δ[n]
        let sd3 = subdivide(&SkeletalPresentation::simplex(3));
        assert_eq!(counts(&sd3.presentation), vec![15, 50, 60, 24]);
        sd3.presentation.materialize(3);
    }

    #[test]
    fn twice_subdivided_simplex() {
        let p = subdivide_twice(&SkeletalPresentation::simplex(2));
        assert_eq!(p.count(0), 25);
        let p0 = subdivide_twice(&SkeletalPresentation::simplex(0));
        assert_eq!(counts(&p0), vec![1]);
    }

    #[test]
    fn subdividing_a_degenerate_face() {
        // a 2-simplex with one edge collapsed to a point
        let point = Face { dim: 0, index: 0, surj: vec![0, 0] };
        let edge = |i: usize| Face { dim: 1, index: i, surj: vec![0, 1] };
        let p = SkeletalPresentation {
            labels: vec![vec!["a".into(), "b".into()], vec!["e".into(), "f".into()], vec!["t".into()]],
            faces: vec![
                vec![Vec::new(), Vec::new()],
                vec![
                    vec![Face { dim: 0, index: 1, surj: vec![0] }, Face { dim: 0, index: 0, surj: vec![0] }],
                    vec![Face { dim: 0, index: 1, surj: vec![0] }, Face { dim: 0, index: 0, surj: vec![0] }],
                ],
                // t: a → a → b with d2 degenerate at a, d0 = e, d1 = f
                vec![vec![edge(0), edge(1), point]],
            ],
        };
        p.materialize(3);
        let sd = subdivide(&p);
        sd.presentation.materialize(3);
    }

    #[test]
    fn subdivided_inclusion() {
        let b = SkeletalPresentation::boundary(2);
        let d = SkeletalPresentation::simplex(2);
        let inc = PresentationMap::inclusion_by_label(&b, &d).unwrap();
        let (sb, sdd, f) = subdivide_map_twice(&inc, &b, &d);
        f.verify(&sb, &sdd).unwrap();
        assert_eq!((sb.count(0), sdd.count(0)), (12, 25));
    }
}
