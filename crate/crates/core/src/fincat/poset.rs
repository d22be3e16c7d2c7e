use std::sync::Arc;

use super::category::FinCategory;
use super::constructions::poset_on;
use super::functor::FinFunctor;
use crate::error::Result;

/// A finite partial order, `leq[x][y]` meaning x ≤ y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn new(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        poset_on(elements.clone(), &leq)?;
        Ok(Poset { elements, leq })
    }

    /// Builds the order generated by the given relations (reflexive-transitive closure).
    pub fn from_relations(elements: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in relations {
            leq[x][y] = true;
        }
        for k in 0..n {
            for x in 0..n {
                if leq[x][k] {
                    for y in 0..n {
                        if leq[k][y] {
                            leq[x][y] = true;
                        }
                    }
                }
            }
        }
        Self::new(elements, leq)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn to_category(&self) -> FinCategory {
        poset_on(self.elements.clone(), &self.leq).expect("validated order")
    }

    /// Strict chains x0 < x1 < ... < xk of the given length k+1.
    pub fn chains(&self, len: usize) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(p: &Poset, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for y in 0..n {
                if cur.last().is_none_or(|&x| x != y && p.leq[x][y]) {
                    cur.push(y);
                    go(p, n, len, cur, out);
                    cur.pop();
                }
            }
        }
        go(self, n, len, &mut cur, &mut out);
        out
    }

    /// Weak chains x0 ≤ x1 ≤ ... of the given length.
    pub fn weak_chains(&self, len: usize) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(p: &Poset, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for y in 0..n {
                if cur.last().is_none_or(|&x| p.leq[x][y]) {
                    cur.push(y);
                    go(p, n, len, cur, out);
                    cur.pop();
                }
            }
        }
        go(self, n, len, &mut cur, &mut out);
        out
    }

    /// All partial orders on "0".."n-1" for which the index order is a linear
    /// extension. Every finite poset is isomorphic to one of these.
    pub fn naturally_labelled(n: usize) -> Vec<Poset> {
        let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut out = Vec::new();
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        // decide the relations into y one column at a time, keeping transitivity
        fn go(y: usize, n: usize, leq: &mut Vec<Vec<bool>>, elements: &[String], out: &mut Vec<Poset>) {
            if y == n {
                out.push(Poset { elements: elements.to_vec(), leq: leq.clone() });
                return;
            }
            for mask in 0u32..(1u32 << y) {
                let below: Vec<bool> = (0..y).map(|x| mask >> x & 1 == 1).collect();
                // the down-set of y must be closed downward
                let closed = (0..y).all(|x| !below[x] || (0..y).all(|w| !leq[w][x] || below[w]));
                if !closed {
                    continue;
                }
                for x in 0..y {
                    leq[x][y] = below[x];
                }
                go(y + 1, n, leq, elements, out);
            }
            for x in 0..y {
                leq[x][y] = false;
            }
        }
        go(0, n, &mut leq, &elements, &mut out);
        out
    }

    /// Relation matrix under the least relabelling, among those sorting
    /// elements by (down-set size, up-set size). Isomorphic posets share it.
    pub fn canonical_form(&self) -> Vec<bool> {
        let n = self.len();
        let inv: Vec<(usize, usize)> = (0..n)
            .map(|x| ((0..n).filter(|&w| self.leq[w][x]).count(), (0..n).filter(|&w| self.leq[x][w]).count()))
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| inv[x]);
        let mut best: Option<Vec<bool>> = None;
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn go(
            p: &Poset,
            inv: &[(usize, usize)],
            order: &[usize],
            cur: &mut Vec<usize>,
            used: &mut Vec<bool>,
            best: &mut Option<Vec<bool>>,
        ) {
            let n = p.len();
            if cur.len() == n {
                let bits: Vec<bool> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| p.leq[cur[x]][cur[y]]).collect();
                if best.as_ref().is_none_or(|b| bits < *b) {
                    *best = Some(bits);
                }
                return;
            }
            let want = inv[order[cur.len()]];
            for x in 0..n {
                if !used[x] && inv[x] == want {
                    used[x] = true;
                    cur.push(x);
                    go(p, inv, order, cur, used, best);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        go(self, &inv, &order, &mut cur, &mut used, &mut best);
        best.unwrap_or_default()
    }

    /// Partial orders on n points up to isomorphism, one representative each.
    pub fn all_up_to_iso(n: usize) -> Vec<Poset> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for p in Poset::naturally_labelled(n) {
            if seen.insert(p.canonical_form()) {
                out.push(p);
            }
        }
        out
    }
}

/// Every ordered pair of objects has a morphism between them. The empty category qualifies.
pub fn is_strongly_connected(c: &FinCategory) -> bool {
    let n = c.num_objects();
    (0..n).all(|x| (0..n).all(|y| !c.hom(x, y).is_empty()))
}

fn reachability(c: &FinCategory) -> Vec<Vec<bool>> {
    let n = c.num_objects();
    let mut r = vec![vec![false; n]; n];
    for (x, row) in r.iter_mut().enumerate() {
        for y in 0..n {
            row[y] = !c.hom(x, y).is_empty();
        }
    }
    r
}

/// The poset reflection: objects modulo mutual reachability, ordered by
/// reachability, together with the quotient functor.
pub fn poset_reflection(c: &Arc<FinCategory>) -> (Poset, Arc<FinCategory>, FinFunctor) {
    let n = c.num_objects();
    let r = reachability(c);
    let mut class = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class[x] == usize::MAX {
            let mem: Vec<usize> = (x..n).filter(|&y| r[x][y] && r[y][x]).collect();
            for &y in &mem {
                class[y] = members.len();
            }
            members.push(mem);
        }
    }
    let elements: Vec<String> = members
        .iter()
        .map(|m| {
            if m.len() == 1 {
                c.object_id(m[0]).to_string()
            } else {
                format!("{{{}}}", m.iter().map(|&x| c.object_id(x)).collect::<Vec<_>>().join("|"))
            }
        })
        .collect();
    let k = members.len();
    let leq = (0..k)
        .map(|a| (0..k).map(|b| r[members[a][0]][members[b][0]]).collect())
        .collect();
    let poset = Poset { elements, leq };
    let cat = Arc::new(poset.to_category());
    let object_map = class.clone();
    let morphism_map = (0..c.num_morphisms())
        .map(|f| cat.hom(class[c.src(f)], class[c.tgt(f)])[0])
        .collect();
    let functor = FinFunctor::new_unchecked(c.clone(), cat.clone(), object_map, morphism_map);
    (poset, cat, functor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{classifying_category, empty_category, poset_category, translation_groupoid, FinGroup};

    #[test]
    fn strong_connectivity() {
        assert!(is_strongly_connected(&classifying_category(FinGroup::cyclic(3).monoid())));
        assert!(!is_strongly_connected(&poset_category(1)));
        assert!(is_strongly_connected(&empty_category()));
    }

    #[test]
    fn reflection_examples() {
        let bg = Arc::new(classifying_category(FinGroup::cyclic(3).monoid()));
        assert_eq!(poset_reflection(&bg).0.len(), 1);
        let p2 = Arc::new(poset_category(2));
        let (_, cat, f) = poset_reflection(&p2);
        assert_eq!(*cat, *p2);
        assert!(f.is_isomorphism());
        let (e, _) = translation_groupoid(&FinGroup::cyclic(2));
        let (p, _, _) = poset_reflection(&Arc::new(e));
        assert_eq!(p.elements, vec!["{e|g}".to_string()]);
    }

    #[test]
    fn posets_up_to_iso_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| Poset::all_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
        assert_eq!(Poset::naturally_labelled(4).len(), 40);
    }
}
