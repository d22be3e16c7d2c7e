use std::collections::HashSet;
use std::sync::Arc;

use super::sset::{FinSimplicialSet, SimplicialMap};
use crate::error::{Error, Result};

/// Degreewise product X × Y, stored up to the smaller of the two bounds.
/// The simplex (a, b) in degree n has index a·|Y_n| + b and label "(a,b)".
pub fn sset_product(x: &FinSimplicialSet, y: &FinSimplicialSet) -> FinSimplicialSet {
    let bound = x.bound().min(y.bound());
    let (x, y) = (x.truncate(bound), y.truncate(bound));
    let pair = |n: usize, a: usize, b: usize| a * y.count(n) + b;
    let mut labels = Vec::with_capacity(bound + 1);
    let mut faces = Vec::with_capacity(bound + 1);
    let mut degeneracies = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut l = Vec::new();
        let mut fl = Vec::new();
        let mut dl = Vec::new();
        for a in 0..x.count(n) {
            for b in 0..y.count(n) {
                l.push(format!("({},{})", x.label(n, a), y.label(n, b)));
                fl.push(if n == 0 { Vec::new() } else { (0..=n).map(|i| pair(n - 1, x.d(n, i, a), y.d(n, i, b))).collect() });
                dl.push(if n == bound { Vec::new() } else { (0..=n).map(|i| pair(n + 1, x.s(n, i, a), y.s(n, i, b))).collect() });
            }
        }
        labels.push(l);
        faces.push(fl);
        degeneracies.push(dl);
    }
    // nondegenerate simplices of X × Y live in degrees up to dim X + dim Y
    let skeletal = x.is_skeletal()
        && y.is_skeletal()
        && match (x.dimension(), y.dimension()) {
            (Some(p), Some(q)) => p + q <= bound,
            _ => true,
        };
    FinSimplicialSet::new(bound, labels, faces, degeneracies, skeletal).expect("product of simplicial sets")
}

/// The pushout of Y ← A → X with A → X injective, degreewise Y ⊔ (X ∖ A).
#[derive(Clone, Debug)]
pub struct SimplicialPushout {
    pub object: Arc<FinSimplicialSet>,
    /// X → P
    pub from_x: SimplicialMap,
    /// Y → P
    pub from_y: SimplicialMap,
}

pub fn sset_pushout(inclusion: &SimplicialMap, g: &SimplicialMap) -> Result<SimplicialPushout> {
    let x = &*inclusion.codomain;
    let y = &*g.codomain;
    let bound = x.bound().min(y.bound()).min(inclusion.domain.bound());
    for n in 0..=bound {
        if !inclusion.is_injective_in_degree(n) {
            return Err(Error::NotSimplicialMap(format!("pushout leg is not injective in degree {n}")));
        }
    }
    // where each simplex of X goes in P
    let mut x_to_p: Vec<Vec<usize>> = Vec::with_capacity(bound + 1);
    let mut labels = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut to_p = vec![usize::MAX; x.count(n)];
        for (a, &xa) in inclusion.levels[n].iter().enumerate() {
            to_p[xa] = g.levels[n][a];
        }
        let mut l: Vec<String> = (0..y.count(n)).map(|b| format!("y:{}", y.label(n, b))).collect();
        for (s, slot) in to_p.iter_mut().enumerate() {
            if *slot == usize::MAX {
                *slot = l.len();
                l.push(format!("x:{}", x.label(n, s)));
            }
        }
        x_to_p.push(to_p);
        labels.push(l);
    }
    let mut faces = Vec::with_capacity(bound + 1);
    let mut degeneracies = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let new_x: Vec<usize> = {
            let image: HashSet<usize> = inclusion.levels[n].iter().copied().collect();
            (0..x.count(n)).filter(|s| !image.contains(s)).collect()
        };
        let mut fl: Vec<Vec<usize>> = (0..y.count(n))
            .map(|b| if n == 0 { Vec::new() } else { (0..=n).map(|i| y.d(n, i, b)).collect() })
            .collect();
        let mut dl: Vec<Vec<usize>> = (0..y.count(n))
            .map(|b| if n == bound { Vec::new() } else { (0..=n).map(|i| y.s(n, i, b)).collect() })
            .collect();
        for &s in &new_x {
            fl.push(if n == 0 { Vec::new() } else { (0..=n).map(|i| x_to_p[n - 1][x.d(n, i, s)]).collect() });
            dl.push(if n == bound { Vec::new() } else { (0..=n).map(|i| x_to_p[n + 1][x.s(n, i, s)]).collect() });
        }
        faces.push(fl);
        degeneracies.push(dl);
    }
    let skeletal = x.is_skeletal() && y.is_skeletal();
    let p = Arc::new(FinSimplicialSet::new(bound, labels, faces, degeneracies, skeletal)?);
    let from_x = SimplicialMap::new(Arc::new(x.truncate(bound)), p.clone(), x_to_p)?;
    let from_y = SimplicialMap::new(Arc::new(y.truncate(bound)), p.clone(), (0..=bound).map(|n| (0..y.count(n)).collect()).collect())?;
    Ok(SimplicialPushout { object: p, from_x, from_y })
}

impl SimplicialPushout {
    /// The map P → Z induced by u: X → Z and v: Y → Z agreeing on A.
    pub fn induced(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        let p = &self.object;
        let bound = p.bound();
        let mut levels: Vec<Vec<usize>> = (0..=bound).map(|n| vec![usize::MAX; p.count(n)]).collect();
        for n in 0..=bound {
            for (b, &t) in self.from_y.levels[n].iter().enumerate() {
                levels[n][t] = v.levels[n][b];
            }
            for (s, &t) in self.from_x.levels[n].iter().enumerate() {
                let val = u.levels[n][s];
                if levels[n][t] != usize::MAX && levels[n][t] != val {
                    return Err(Error::NotSimplicialMap("legs disagree on the glued part".into()));
                }
                levels[n][t] = val;
            }
        }
        SimplicialMap::new(p.clone(), u.codomain.clone(), levels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{poset_category, product, terminal, FinFunctor};
    use crate::simplicial::{nerve, nerve_map, SkeletalPresentation};

    #[test]
    fn square_has_two_triangles() {
        let d1 = SkeletalPresentation::simplex(1).materialize(3);
        let sq = sset_product(&d1, &d1);
        assert_eq!(sq.nondegenerate_counts(), vec![4, 5, 2, 0]);
        assert!(sq.is_skeletal());
    }

    #[test]
    fn product_with_point() {
        let d2 = SkeletalPresentation::simplex(2).materialize(3);
        let pt = SkeletalPresentation::simplex(0).materialize(3);
        let x = sset_product(&d2, &pt);
        assert_eq!(x.nondegenerate_counts(), d2.nondegenerate_counts());
    }

    #[test]
    fn nerve_preserves_products() {
        let a = Arc::new(poset_category(1));
        let b = Arc::new(poset_category(2));
        let ab = Arc::new(product(&a, &b));
        let lhs = sset_product(&nerve(&a, 3).simplicial, &nerve(&b, 3).simplicial);
        let rhs = nerve(&ab, 3).simplicial;
        assert_eq!(
            (0..=3).map(|n| lhs.count(n)).collect::<Vec<_>>(),
            (0..=3).map(|n| rhs.count(n)).collect::<Vec<_>>()
        );
        assert_eq!(lhs.nondegenerate_counts(), rhs.nondegenerate_counts());
    }

    #[test]
    fn inner_horn() {
        let p0 = Arc::new(terminal());
        let p1 = Arc::new(poset_category(1));
        let p2 = Arc::new(poset_category(2));
        let (n0, n1, n2) = (nerve(&p0, 3), nerve(&p1, 3), nerve(&p2, 3));
        let obj = |x: usize| FinFunctor::from_object_map(p0.clone(), p1.clone(), &[x]).unwrap();
        let i = nerve_map(&obj(0), &n0, &n1).unwrap();
        let k = nerve_map(&obj(1), &n0, &n1).unwrap();
        let po = sset_pushout(&i, &k).unwrap();
        assert_eq!(po.object.nondegenerate_counts(), vec![3, 2, 0, 0]);
        let up = |a: usize, b: usize| FinFunctor::from_object_map(p1.clone(), p2.clone(), &[a, b]).unwrap();
        let u = nerve_map(&up(1, 2), &n1, &n2).unwrap();
        let v = nerve_map(&up(0, 1), &n1, &n2).unwrap();
        let c = po.induced(&u, &v).unwrap();
        assert!(c.is_injective_in_degree(1));
    }
}
