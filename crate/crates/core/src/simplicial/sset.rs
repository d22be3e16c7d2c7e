use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monotone;
use crate::error::{Error, Result};

/// A simplicial set stored up to degree `bound`.
///
/// `faces[n][x]` lists d_0 x, ..., d_n x for x in degree n ≥ 1, and
/// `degeneracies[n][x]` lists s_0 x, ..., s_n x for n < bound. When `skeletal`
/// is set, every simplex above the bound is degenerate, so the stored data
/// determine the whole simplicial set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSimplicialSet {
    bound: usize,
    labels: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
    skeletal: bool,
    // Eilenberg–Zilber data: x = η*(y) with y nondegenerate of degree k
    ez: Vec<Vec<(usize, usize, Vec<usize>)>>,
}

/// Serialized form; simplices are referenced by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialDescription {
    pub bound: usize,
    pub skeletal: bool,
    pub simplices: Vec<Vec<String>>,
    pub faces: Vec<Vec<Vec<String>>>,
    pub degeneracies: Vec<Vec<Vec<String>>>,
}

impl FinSimplicialSet {
    pub fn new(
        bound: usize,
        labels: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
        skeletal: bool,
    ) -> Result<Self> {
        let mut x = FinSimplicialSet { bound, labels, faces, degeneracies, skeletal, ez: Vec::new() };
        x.verify()?;
        x.ez = x.compute_ez();
        Ok(x)
    }

    fn verify(&self) -> Result<()> {
        let b = self.bound;
        if self.labels.len() != b + 1 || self.faces.len() != b + 1 || self.degeneracies.len() != b + 1 {
            return Err(Error::Malformed("simplicial data must cover degrees 0 through the bound".into()));
        }
        for n in 0..=b {
            let cnt = self.labels[n].len();
            if self.faces[n].len() != cnt || self.degeneracies[n].len() != cnt {
                return Err(Error::Malformed(format!("tables in degree {n} do not match the simplex count")));
            }
            let mut seen = HashMap::new();
            for l in &self.labels[n] {
                if seen.insert(l.as_str(), ()).is_some() {
                    return Err(Error::DuplicateId(l.clone()));
                }
            }
            for x in 0..cnt {
                let fl = if n == 0 { 0 } else { n + 1 };
                if self.faces[n][x].len() != fl || self.faces[n][x].iter().any(|&y| n == 0 || y >= self.labels[n - 1].len()) {
                    return Err(Error::Malformed(format!("bad face list for {}", self.labels[n][x])));
                }
                let dl = if n < b { n + 1 } else { 0 };
                if self.degeneracies[n][x].len() != dl
                    || self.degeneracies[n][x].iter().any(|&y| y >= self.labels[n + 1].len())
                {
                    return Err(Error::Malformed(format!("bad degeneracy list for {}", self.labels[n][x])));
                }
            }
        }
        let fail = |what: String| Err(Error::SimplicialIdentity(what));
        for n in 2..=b {
            for x in 0..self.labels[n].len() {
                for j in 0..=n {
                    for i in 0..j {
                        if self.d(n - 1, i, self.d(n, j, x)) != self.d(n - 1, j - 1, self.d(n, i, x)) {
                            return fail(format!("d{i} d{j} = d{} d{i} fails at {}", j - 1, self.labels[n][x]));
                        }
                    }
                }
            }
        }
        for n in 0..b {
            for x in 0..self.labels[n].len() {
                for j in 0..=n {
                    let sx = self.s(n, j, x);
                    for i in 0..=n + 1 {
                        if n == 0 {
                            // faces of a degenerate edge are the vertex itself
                            if self.d(1, i, sx) != x {
                                return fail(format!("d{i} s{j} fails at {}", self.labels[n][x]));
                            }
                            continue;
                        }
                        let lhs = self.d(n + 1, i, sx);
                        let rhs = if i < j {
                            self.s(n - 1, j - 1, self.d(n, i, x))
                        } else if i == j || i == j + 1 {
                            x
                        } else {
                            self.s(n - 1, j, self.d(n, i - 1, x))
                        };
                        if lhs != rhs {
                            return fail(format!("d{i} s{j} fails at {}", self.labels[n][x]));
                        }
                    }
                    if n + 1 < b {
                        for i in 0..=j {
                            if self.s(n + 1, i, sx) != self.s(n + 1, j + 1, self.s(n, i, x)) {
                                return fail(format!("s{i} s{j} = s{} s{i} fails at {}", j + 1, self.labels[n][x]));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_ez(&self) -> Vec<Vec<(usize, usize, Vec<usize>)>> {
        let mut ez: Vec<Vec<(usize, usize, Vec<usize>)>> = Vec::with_capacity(self.bound + 1);
        for n in 0..=self.bound {
            let mut level = Vec::with_capacity(self.labels[n].len());
            for x in 0..self.labels[n].len() {
                let found = (0..n).find(|&i| self.s(n - 1, i, self.d(n, i, x)) == x);
                match found {
                    None => level.push((n, x, monotone::identity(n))),
                    Some(i) => {
                        let (k, y, eta) = ez[n - 1][self.d(n, i, x)].clone();
                        level.push((k, y, monotone::compose(&eta, &monotone::codegeneracy(n - 1, i))));
                    }
                }
            }
            ez.push(level);
        }
        ez
    }

    #[inline]
    pub fn d(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][x][i]
    }

    #[inline]
    pub fn s(&self, n: usize, i: usize, x: usize) -> usize {
        self.degeneracies[n][x][i]
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_skeletal(&self) -> bool {
        self.skeletal
    }

    pub fn count(&self, n: usize) -> usize {
        self.labels[n].len()
    }

    pub fn label(&self, n: usize, x: usize) -> &str {
        &self.labels[n][x]
    }

    pub fn labels(&self, n: usize) -> &[String] {
        &self.labels[n]
    }

    pub fn index_of(&self, n: usize, label: &str) -> Option<usize> {
        self.labels[n].iter().position(|l| l == label)
    }

    pub fn is_nondegenerate(&self, n: usize, x: usize) -> bool {
        self.ez[n][x].0 == n
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.count(n)).filter(|&x| self.is_nondegenerate(n, x)).collect()
    }

    /// Nondegenerate simplex counts in degrees 0..=bound.
    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.bound).map(|n| self.nondegenerate(n).len()).collect()
    }

    /// Eilenberg–Zilber decomposition x = η*(y): (degree of y, y, η).
    pub fn ez(&self, n: usize, x: usize) -> &(usize, usize, Vec<usize>) {
        &self.ez[n][x]
    }

    /// θ*(x) for a monotone θ: [m] → [n], m ≤ bound.
    pub fn apply(&self, theta: &[usize], n: usize, x: usize) -> usize {
        let (surj, image) = monotone::factor(theta);
        let mut y = x;
        let mut deg = n;
        for i in monotone::missing_descending(&image, n) {
            y = self.d(deg, i, y);
            deg -= 1;
        }
        for i in monotone::repeats(&surj) {
            y = self.s(deg, i, y);
            deg += 1;
        }
        y
    }

    /// The vertices of an n-simplex in order.
    pub fn vertices(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n).map(|i| self.apply(&[i], n, x)).collect()
    }

    /// Same simplicial set with a smaller bound; skeletal only if it still holds.
    pub fn truncate(&self, bound: usize) -> FinSimplicialSet {
        assert!(bound <= self.bound, "truncation cannot raise the bound");
        let mut degeneracies = self.degeneracies[..=bound].to_vec();
        for d in degeneracies[bound].iter_mut() {
            d.clear();
        }
        let skeletal = self.skeletal && (bound + 1..=self.bound).all(|n| self.nondegenerate(n).is_empty());
        FinSimplicialSet {
            bound,
            labels: self.labels[..=bound].to_vec(),
            faces: self.faces[..=bound].to_vec(),
            degeneracies,
            skeletal,
            ez: self.ez[..=bound].to_vec(),
        }
    }

    /// Highest degree carrying a nondegenerate simplex, if any.
    pub fn dimension(&self) -> Option<usize> {
        (0..=self.bound).rev().find(|&n| !self.nondegenerate(n).is_empty())
    }

    pub fn describe(&self) -> SimplicialDescription {
        let lab = |n: usize, v: &[usize]| v.iter().map(|&y| self.labels[n][y].clone()).collect::<Vec<_>>();
        SimplicialDescription {
            bound: self.bound,
            skeletal: self.skeletal,
            simplices: self.labels.clone(),
            faces: (0..=self.bound)
                .map(|n| self.faces[n].iter().map(|f| if n == 0 { Vec::new() } else { lab(n - 1, f) }).collect())
                .collect(),
            degeneracies: (0..=self.bound)
                .map(|n| self.degeneracies[n].iter().map(|s| if n == self.bound { Vec::new() } else { lab(n + 1, s) }).collect())
                .collect(),
        }
    }

    pub fn from_description(desc: &SimplicialDescription) -> Result<Self> {
        let b = desc.bound;
        if desc.simplices.len() != b + 1 || desc.faces.len() != b + 1 || desc.degeneracies.len() != b + 1 {
            return Err(Error::Malformed("simplicial data must cover degrees 0 through the bound".into()));
        }
        let index: Vec<HashMap<&str, usize>> = desc
            .simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect())
            .collect();
        let look = |n: usize, s: &str| index[n].get(s).copied().ok_or_else(|| Error::UnknownId(s.to_string()));
        let mut faces = Vec::with_capacity(b + 1);
        let mut degeneracies = Vec::with_capacity(b + 1);
        for n in 0..=b {
            let mut fl = Vec::new();
            for f in &desc.faces[n] {
                if n == 0 {
                    if !f.is_empty() {
                        return Err(Error::Malformed("vertices have no faces".into()));
                    }
                    fl.push(Vec::new());
                } else {
                    fl.push(f.iter().map(|s| look(n - 1, s)).collect::<Result<Vec<_>>>()?);
                }
            }
            faces.push(fl);
            let mut dl = Vec::new();
            for s in &desc.degeneracies[n] {
                if n == b {
                    if !s.is_empty() {
                        return Err(Error::Malformed("no degeneracies out of the top stored degree".into()));
                    }
                    dl.push(Vec::new());
                } else {
                    dl.push(s.iter().map(|t| look(n + 1, t)).collect::<Result<Vec<_>>>()?);
                }
            }
            degeneracies.push(dl);
        }
        Self::new(b, desc.simplices.clone(), faces, degeneracies, desc.skeletal)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.describe()).expect("simplicial description serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let desc: SimplicialDescription = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_description(&desc)
    }

    /// The nondegenerate simplices and their faces in Eilenberg–Zilber form.
    pub fn presentation(&self) -> Result<SkeletalPresentation> {
        if !self.skeletal {
            return Err(Error::NotSkeletal);
        }
        let nondeg: Vec<Vec<usize>> = (0..=self.bound).map(|n| self.nondegenerate(n)).collect();
        let pos: Vec<HashMap<usize, usize>> = nondeg
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, &x)| (x, i)).collect())
            .collect();
        let labels = nondeg
            .iter()
            .enumerate()
            .map(|(n, v)| v.iter().map(|&x| self.labels[n][x].clone()).collect())
            .collect();
        let faces = nondeg
            .iter()
            .enumerate()
            .map(|(n, v)| {
                v.iter()
                    .map(|&x| {
                        if n == 0 {
                            return Vec::new();
                        }
                        (0..=n)
                            .map(|i| {
                                let (k, y, eta) = self.ez(n - 1, self.d(n, i, x)).clone();
                                Face { dim: k, index: pos[k][&y], surj: eta }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut p = SkeletalPresentation { labels, faces };
        p.trim();
        Ok(p)
    }
}

/// A face of a nondegenerate simplex in Eilenberg–Zilber form: the
/// degeneracy `surj*` of the nondegenerate simplex `index` in degree `dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    pub dim: usize,
    pub index: usize,
    pub surj: Vec<usize>,
}

/// A simplicial set with finitely many nondegenerate simplices, given by
/// those simplices and their faces. It determines the simplicial set in all degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletalPresentation {
    /// labels of nondegenerate simplices per degree
    pub labels: Vec<Vec<String>>,
    /// faces[n][x][i] = d_i of the nondegenerate simplex x in degree n
    pub faces: Vec<Vec<Vec<Face>>>,
}

impl SkeletalPresentation {
    fn trim(&mut self) {
        while self.labels.len() > 1 && self.labels.last().is_some_and(|l| l.is_empty()) {
            self.labels.pop();
            self.faces.pop();
        }
    }

    /// Highest degree with a nondegenerate simplex (0 for the empty set).
    pub fn dim(&self) -> usize {
        self.labels.len().saturating_sub(1)
    }

    pub fn count(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, Vec::len)
    }

    /// θ*(y) for θ: [m] → [k] and y nondegenerate in degree k, in EZ form.
    pub fn reduce(&self, theta: &[usize], k: usize, y: usize) -> Face {
        let (surj, image) = monotone::factor(theta);
        if image.len() == k + 1 {
            return Face { dim: k, index: y, surj };
        }
        let i = monotone::missing_descending(&image, k)[0];
        let face = &self.faces[k][y][i];
        let inner: Vec<usize> = theta.iter().map(|&v| if v < i { v } else { v - 1 }).collect();
        self.reduce(&monotone::compose(&face.surj, &inner), face.dim, face.index)
    }

    /// Expands the presentation into a simplicial set stored up to `bound`.
    pub fn materialize(&self, bound: usize) -> FinSimplicialSet {
        let mut simplices: Vec<Vec<(usize, usize, Vec<usize>)>> = Vec::with_capacity(bound + 1);
        let mut index: Vec<HashMap<(usize, usize, Vec<usize>), usize>> = Vec::with_capacity(bound + 1);
        for m in 0..=bound {
            let mut level = Vec::new();
            for k in (0..=m.min(self.dim())).rev() {
                let surjs = monotone::surjections(m, k);
                for y in 0..self.count(k) {
                    for eta in &surjs {
                        level.push((k, y, eta.clone()));
                    }
                }
            }
            index.push(level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect());
            simplices.push(level);
        }
        let labels = simplices
            .iter()
            .enumerate()
            .map(|(m, level)| {
                level
                    .iter()
                    .map(|(k, y, eta)| {
                        if *k == m {
                            self.labels[*k][*y].clone()
                        } else {
                            let e: Vec<String> = eta.iter().map(|v| v.to_string()).collect();
                            format!("{}·[{}]", self.labels[*k][*y], e.join(","))
                        }
                    })
                    .collect()
            })
            .collect();
        let faces = (0..=bound)
            .map(|m| {
                simplices[m]
                    .iter()
                    .map(|(k, y, eta)| {
                        if m == 0 {
                            return Vec::new();
                        }
                        (0..=m)
                            .map(|i| {
                                let theta = monotone::compose(eta, &monotone::coface(m, i));
                                let f = self.reduce(&theta, *k, *y);
                                index[m - 1][&(f.dim, f.index, f.surj)]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degeneracies = (0..=bound)
            .map(|m| {
                simplices[m]
                    .iter()
                    .map(|(k, y, eta)| {
                        if m == bound {
                            return Vec::new();
                        }
                        (0..=m)
                            .map(|i| index[m + 1][&(*k, *y, monotone::compose(eta, &monotone::codegeneracy(m, i)))])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let skeletal = self.dim() <= bound;
        FinSimplicialSet::new(bound, labels, faces, degeneracies, skeletal).expect("materialized presentation is simplicial")
    }

    /// The standard simplex Δ[n]; simplices are named by their vertex sets, e.g. "013".
    pub fn simplex(n: usize) -> SkeletalPresentation {
        Self::subsets(n, true)
    }

    /// The boundary ∂Δ[n].
    pub fn boundary(n: usize) -> SkeletalPresentation {
        Self::subsets(n, false)
    }

    fn subsets(n: usize, include_top: bool) -> SkeletalPresentation {
        let top = if include_top { n } else { n.saturating_sub(1) };
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        if n == 0 && !include_top {
            return SkeletalPresentation { labels: vec![Vec::new()], faces: vec![Vec::new()] };
        }
        for mask in 1u32..(1u32 << (n + 1)) {
            let s: Vec<usize> = (0..=n).filter(|&i| mask >> i & 1 == 1).collect();
            if s.len() - 1 <= top {
                by_dim[s.len() - 1].push(s);
            }
        }
        for level in by_dim.iter_mut() {
            level.sort();
        }
        let pos: Vec<HashMap<Vec<usize>, usize>> = by_dim
            .iter()
            .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let labels = by_dim
            .iter()
            .map(|l| l.iter().map(|s| s.iter().map(|v| v.to_string()).collect::<String>()).collect())
            .collect();
        let faces = by_dim
            .iter()
            .enumerate()
            .map(|(k, l)| {
                l.iter()
                    .map(|s| {
                        if k == 0 {
                            return Vec::new();
                        }
                        (0..=k)
                            .map(|i| {
                                let mut t = s.clone();
                                t.remove(i);
                                Face { dim: k - 1, index: pos[k - 1][&t], surj: monotone::identity(k - 1) }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SkeletalPresentation { labels, faces }
    }

    /// The image of a presentation-level face d_i for the nondegenerate simplex y of degree k.
    pub fn face(&self, k: usize, y: usize, i: usize) -> &Face {
        &self.faces[k][y][i]
    }
}

/// A map of simplicial sets on the stored range.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub domain: Arc<FinSimplicialSet>,
    pub codomain: Arc<FinSimplicialSet>,
    pub levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn new(domain: Arc<FinSimplicialSet>, codomain: Arc<FinSimplicialSet>, levels: Vec<Vec<usize>>) -> Result<Self> {
        let m = SimplicialMap { domain, codomain, levels };
        m.verify()?;
        Ok(m)
    }

    pub fn verify(&self) -> Result<()> {
        let (x, y) = (&*self.domain, &*self.codomain);
        let b = x.bound().min(y.bound());
        if self.levels.len() < b + 1 {
            return Err(Error::NotSimplicialMap("missing levels".into()));
        }
        for n in 0..=b {
            if self.levels[n].len() != x.count(n) || self.levels[n].iter().any(|&v| v >= y.count(n)) {
                return Err(Error::NotSimplicialMap(format!("level {n} has the wrong shape")));
            }
            for s in 0..x.count(n) {
                let fs = self.levels[n][s];
                if n > 0 {
                    for i in 0..=n {
                        if self.levels[n - 1][x.d(n, i, s)] != y.d(n, i, fs) {
                            return Err(Error::NotSimplicialMap(format!("d{i} not preserved at {}", x.label(n, s))));
                        }
                    }
                }
                if n < b {
                    for i in 0..=n {
                        if self.levels[n + 1][x.s(n, i, s)] != y.s(n, i, fs) {
                            return Err(Error::NotSimplicialMap(format!("s{i} not preserved at {}", x.label(n, s))));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_injective_in_degree(&self, n: usize) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.levels[n].iter().all(|v| seen.insert(*v))
    }

    pub fn is_bijective(&self) -> bool {
        (0..self.levels.len()).all(|n| self.is_injective_in_degree(n) && self.levels[n].len() == self.codomain.count(n))
    }
}
