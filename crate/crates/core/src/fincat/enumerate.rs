use std::collections::VecDeque;
use std::sync::Arc;

use super::category::FinCategory;
use super::functor::{FinFunctor, NatTransformation};
use crate::error::{Error, Result};

enum Step {
    Object(usize),
    Morphism(usize),
}

/// All functors `a → b`, sorted by (object map, morphism map).
pub fn enumerate_functors(a: &Arc<FinCategory>, b: &Arc<FinCategory>, cap: usize) -> Result<Vec<FinFunctor>> {
    let objs = vec![None; a.num_objects()];
    let mors = vec![None; a.num_morphisms()];
    enumerate_functors_with(a, b, &objs, &mors, cap)
}

/// All functors `a → b` agreeing with the given partial assignment.
pub fn enumerate_functors_with(
    a: &Arc<FinCategory>,
    b: &Arc<FinCategory>,
    fixed_objects: &[Option<usize>],
    fixed_morphisms: &[Option<usize>],
    cap: usize,
) -> Result<Vec<FinFunctor>> {
    let n = a.num_objects();
    let m = a.num_morphisms();

    // objects in breadth-first order along morphisms, so morphisms get scheduled early
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &f in a.outgoing(x).iter().chain(a.incoming(x)) {
                for y in [a.src(f), a.tgt(f)] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
    }

    let mut steps = Vec::new();
    let mut step_of_morphism = vec![0usize; m];
    let mut placed = vec![false; n];
    let mut scheduled = vec![false; m];
    for &x in &order {
        placed[x] = true;
        steps.push(Step::Object(x));
        step_of_morphism[a.identity(x)] = steps.len() - 1;
        scheduled[a.identity(x)] = true;
        for f in 0..m {
            if !scheduled[f] && placed[a.src(f)] && placed[a.tgt(f)] {
                scheduled[f] = true;
                steps.push(Step::Morphism(f));
                step_of_morphism[f] = steps.len() - 1;
            }
        }
    }

    // composition constraints, checked at the step assigning the last of g, f, g∘f
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); steps.len()];
    for f in 0..m {
        if a.is_identity(f) {
            continue;
        }
        for &g in a.outgoing(a.tgt(f)) {
            if a.is_identity(g) {
                continue;
            }
            let gf = a.compose(g, f);
            let last = step_of_morphism[f].max(step_of_morphism[g]).max(step_of_morphism[gf]);
            checks[last].push((g, f, gf));
        }
    }

    let mut search = Search {
        a,
        b,
        steps: &steps,
        checks: &checks,
        fixed_objects,
        fixed_morphisms,
        object_map: vec![usize::MAX; n],
        morphism_map: vec![usize::MAX; m],
        found: Vec::new(),
        cap,
    };
    search.run(0)?;
    let mut found = search.found;
    found.sort();
    Ok(found
        .into_iter()
        .map(|(o, mm)| FinFunctor::new_unchecked(a.clone(), b.clone(), o, mm))
        .collect())
}

struct Search<'a> {
    a: &'a FinCategory,
    b: &'a FinCategory,
    steps: &'a [Step],
    checks: &'a [Vec<(usize, usize, usize)>],
    fixed_objects: &'a [Option<usize>],
    fixed_morphisms: &'a [Option<usize>],
    object_map: Vec<usize>,
    morphism_map: Vec<usize>,
    found: Vec<(Vec<usize>, Vec<usize>)>,
    cap: usize,
}

impl Search<'_> {
    fn consistent(&self, step: usize) -> bool {
        self.checks[step]
            .iter()
            .all(|&(g, f, gf)| self.morphism_map[gf] == self.b.compose(self.morphism_map[g], self.morphism_map[f]))
    }

    fn run(&mut self, step: usize) -> Result<()> {
        if step == self.steps.len() {
            if self.found.len() == self.cap {
                return Err(Error::SizeLimitExceeded { what: "functors".into(), limit: self.cap });
            }
            self.found.push((self.object_map.clone(), self.morphism_map.clone()));
            return Ok(());
        }
        match self.steps[step] {
            Step::Object(x) => {
                let id = self.a.identity(x);
                let candidates: Vec<usize> = match self.fixed_objects[x] {
                    Some(y) => vec![y],
                    None => (0..self.b.num_objects()).collect(),
                };
                for y in candidates {
                    let idy = self.b.identity(y);
                    if matches!(self.fixed_morphisms[id], Some(v) if v != idy) {
                        continue;
                    }
                    self.object_map[x] = y;
                    self.morphism_map[id] = idy;
                    if self.consistent(step) {
                        self.run(step + 1)?;
                    }
                }
            }
            Step::Morphism(f) => {
                let (x, y) = (self.object_map[self.a.src(f)], self.object_map[self.a.tgt(f)]);
                let b = self.b;
                let hom = b.hom(x, y);
                for &g in hom {
                    if matches!(self.fixed_morphisms[f], Some(v) if v != g) {
                        continue;
                    }
                    self.morphism_map[f] = g;
                    if self.consistent(step) {
                        self.run(step + 1)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// All natural transformations `f ⇒ g`, sorted by components.
pub fn enumerate_transformations(f: &FinFunctor, g: &FinFunctor, cap: usize) -> Result<Vec<NatTransformation>> {
    let a = f.domain().clone();
    let b = f.codomain().clone();
    let n = a.num_objects();
    // naturality squares checked once both endpoint components are chosen
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for m in 0..a.num_morphisms() {
        checks[a.src(m).max(a.tgt(m))].push(m);
    }
    let mut comps = vec![usize::MAX; n];
    let mut out = Vec::new();
    fn go(
        x: usize,
        a: &FinCategory,
        b: &FinCategory,
        f: &FinFunctor,
        g: &FinFunctor,
        checks: &[Vec<usize>],
        comps: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if x == a.num_objects() {
            if out.len() == cap {
                return Err(Error::SizeLimitExceeded { what: "natural transformations".into(), limit: cap });
            }
            out.push(comps.clone());
            return Ok(());
        }
        for &c in b.hom(f.obj(x), g.obj(x)) {
            comps[x] = c;
            let ok = checks[x].iter().all(|&m| {
                b.compose(g.mor(m), comps[a.src(m)]) == b.compose(comps[a.tgt(m)], f.mor(m))
            });
            if ok {
                go(x + 1, a, b, f, g, checks, comps, out, cap)?;
            }
        }
        Ok(())
    }
    go(0, &a, &b, f, g, &checks, &mut comps, &mut out, cap)?;
    Ok(out
        .into_iter()
        .map(|c| NatTransformation::new_unchecked(f.clone(), g.clone(), c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{classifying_category, poset_category, terminal, FinGroup};

    #[test]
    fn endofunctors_of_bc2() {
        let bc2 = Arc::new(classifying_category(FinGroup::cyclic(2).monoid()));
        let fs = enumerate_functors(&bc2, &bc2, 100).unwrap();
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn functors_from_p1_count_composable_arrows() {
        let p1 = Arc::new(poset_category(1));
        let p2 = Arc::new(poset_category(2));
        // functors p[1] → p[2] are pairs x ≤ y
        assert_eq!(enumerate_functors(&p1, &p2, 100).unwrap().len(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let p1 = Arc::new(poset_category(1));
        let p3 = Arc::new(poset_category(3));
        assert!(matches!(enumerate_functors(&p1, &p3, 5), Err(Error::SizeLimitExceeded { .. })));
    }

    #[test]
    fn fixed_assignments_are_respected() {
        let t = Arc::new(terminal());
        let p2 = Arc::new(poset_category(2));
        let fs = enumerate_functors_with(&t, &p2, &[Some(1)], &[None], 10).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].obj(0), 1);
    }

    #[test]
    fn transformations_between_homs() {
        let bc2 = Arc::new(classifying_category(FinGroup::cyclic(2).monoid()));
        let fs = enumerate_functors(&bc2, &bc2, 100).unwrap();
        let mut total = 0;
        for f in &fs {
            for g in &fs {
                total += enumerate_transformations(f, g, 100).unwrap().len();
            }
        }
        // conjugation is trivial in an abelian group: each homomorphism has two
        // automorphisms and distinct homomorphisms are not isomorphic
        assert_eq!(total, 4);
    }
}
