use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinGroup, FinMonoid, MonoidDescription, Morphism, Poset};
use crate::orbit::{enumerate_homs, is_homomorphism, GroupHom};

/// A complex of groups over a finite poset: local groups, transition
/// homomorphisms for x ≤ y and twisting elements of 𝒢(z) for x ≤ y ≤ z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexOfGroups {
    pub poset: Poset,
    pub groups: Vec<FinGroup>,
    /// one entry per comparable pair, including x ≤ x
    pub transitions: BTreeMap<(usize, usize), GroupHom>,
    /// one entry per weakly increasing triple
    pub twists: BTreeMap<(usize, usize, usize), usize>,
}

impl ComplexOfGroups {
    /// Validates the data: shapes, homomorphisms, unitality, lax functoriality and the cocycle relation.
    pub fn new(
        poset: Poset,
        groups: Vec<FinGroup>,
        transitions: BTreeMap<(usize, usize), GroupHom>,
        twists: BTreeMap<(usize, usize, usize), usize>,
    ) -> Result<Self> {
        let c = ComplexOfGroups { poset, groups, transitions, twists };
        c.validate()?;
        Ok(c)
    }

    /// The simple complex of a strict functor: all twists are 1.
    pub fn simple(poset: Poset, groups: Vec<FinGroup>, transitions: BTreeMap<(usize, usize), GroupHom>) -> Result<Self> {
        let twists = poset.weak_chains(3).into_iter().map(|ch| ((ch[0], ch[1], ch[2]), groups[ch[2]].unit())).collect();
        Self::new(poset, groups, transitions, twists)
    }

    pub fn name(&self, x: usize) -> &str {
        &self.poset.elements[x]
    }

    fn chain(&self, xs: &[usize]) -> String {
        let names: Vec<&str> = xs.iter().map(|&x| self.name(x)).collect();
        format!("({})", names.join(" ≤ "))
    }

    pub fn transition(&self, x: usize, y: usize) -> &GroupHom {
        &self.transitions[&(x, y)]
    }

    pub fn twist(&self, x: usize, y: usize, z: usize) -> usize {
        self.twists[&(x, y, z)]
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.poset;
        let n = p.len();
        if self.groups.len() != n {
            return Err(Error::Malformed("one local group per poset element is required".into()));
        }
        let pairs = p.weak_chains(2);
        if self.transitions.len() != pairs.len() {
            return Err(Error::Malformed("transitions must be given exactly for the comparable pairs".into()));
        }
        for ch in &pairs {
            let (x, y) = (ch[0], ch[1]);
            let phi = self
                .transitions
                .get(&(x, y))
                .ok_or_else(|| Error::Malformed(format!("missing transition {}", self.chain(ch))))?;
            if phi.iter().any(|&v| v >= self.groups[y].order()) || !is_homomorphism(&self.groups[x], &self.groups[y], phi) {
                return Err(Error::NotAHomomorphism(format!("transition {}", self.chain(ch))));
            }
        }
        let triples = p.weak_chains(3);
        if self.twists.len() != triples.len() {
            return Err(Error::Malformed("twists must be given exactly for the comparable triples".into()));
        }
        for ch in &triples {
            let t = self
                .twists
                .get(&(ch[0], ch[1], ch[2]))
                .ok_or_else(|| Error::Malformed(format!("missing twist {}", self.chain(ch))))?;
            if *t >= self.groups[ch[2]].order() {
                return Err(Error::Malformed(format!("twist at {} is not an element", self.chain(ch))));
            }
        }

        for x in 0..n {
            if self.transition(x, x).iter().enumerate().any(|(a, &b)| a != b) {
                return Err(Error::UnitalityViolation(format!("transition {} is not the identity", self.chain(&[x, x]))));
            }
        }
        for ch in &pairs {
            let (x, z) = (ch[0], ch[1]);
            let e = self.groups[z].unit();
            if self.twist(x, x, z) != e {
                return Err(Error::UnitalityViolation(format!("twist at {} is not 1", self.chain(&[x, x, z]))));
            }
            if self.twist(x, z, z) != e {
                return Err(Error::UnitalityViolation(format!("twist at {} is not 1", self.chain(&[x, z, z]))));
            }
        }
        for ch in &triples {
            let (x, y, z) = (ch[0], ch[1], ch[2]);
            let gz = &self.groups[z];
            let t = self.twist(x, y, z);
            let (xz, xy, yz) = (self.transition(x, z), self.transition(x, y), self.transition(y, z));
            if (0..self.groups[x].order()).any(|h| gz.conjugate(t, xz[h]) != yz[xy[h]]) {
                return Err(Error::LaxFunctorialityViolation(format!("at {}", self.chain(ch))));
            }
        }
        for ch in p.weak_chains(4) {
            let (w, x, y, z) = (ch[0], ch[1], ch[2], ch[3]);
            let gz = &self.groups[z];
            let lhs = gz.mul(self.twist(x, y, z), self.twist(w, x, z));
            let rhs = gz.mul(self.transition(y, z)[self.twist(w, x, y)], self.twist(w, y, z));
            if lhs != rhs {
                return Err(Error::CocycleViolation(format!("at {}", self.chain(&ch))));
            }
        }
        Ok(())
    }

    pub fn is_simple(&self) -> bool {
        self.twists.iter().all(|(&(_, _, z), &t)| t == self.groups[z].unit())
    }

    /// Comparable pairs x < y whose transition is not injective.
    pub fn non_injective_transitions(&self) -> Vec<(usize, usize)> {
        self.transitions
            .iter()
            .filter(|(&(x, y), phi)| x != y && {
                let mut img = (*phi).clone();
                img.sort_unstable();
                img.dedup();
                img.len() < phi.len()
            })
            .map(|(&k, _)| k)
            .collect()
    }

    pub fn describe(&self) -> ComplexDescription {
        let p = &self.poset;
        let mut relations = Vec::new();
        for x in 0..p.len() {
            for y in 0..p.len() {
                if x != y && p.leq[x][y] {
                    relations.push((self.name(x).to_string(), self.name(y).to_string()));
                }
            }
        }
        let group_name = |x: usize| format!("G({})", self.name(x));
        ComplexDescription {
            elements: p.elements.clone(),
            relations,
            groups: (0..p.len()).map(|x| (group_name(x), self.groups[x].monoid().describe())).collect(),
            local: (0..p.len()).map(|x| (self.name(x).to_string(), group_name(x))).collect(),
            transitions: self
                .transitions
                .iter()
                .map(|(&(x, y), phi)| TransitionDescription {
                    from: self.name(x).to_string(),
                    to: self.name(y).to_string(),
                    map: phi
                        .iter()
                        .enumerate()
                        .map(|(a, &b)| (self.groups[x].name(a).to_string(), self.groups[y].name(b).to_string()))
                        .collect(),
                })
                .collect(),
            twists: self
                .twists
                .iter()
                .map(|(&(x, y, z), &t)| TwistDescription {
                    chain: [x, y, z].map(|v| self.name(v).to_string()),
                    element: self.groups[z].name(t).to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.describe()).expect("complex description serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let desc: ComplexDescription = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        validate_complex(&desc)
    }
}

/// The file format: a relation list generating the order, named group tables,
/// a group per element, transition tables and twist elements. Transitions
/// x ≤ x and twists left out default to the identity and to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDescription {
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
    pub groups: BTreeMap<String, MonoidDescription>,
    pub local: BTreeMap<String, String>,
    #[serde(default)]
    pub transitions: Vec<TransitionDescription>,
    #[serde(default)]
    pub twists: Vec<TwistDescription>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionDescription {
    pub from: String,
    pub to: String,
    pub map: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistDescription {
    pub chain: [String; 3],
    pub element: String,
}

/// Reads raw complex data and checks every axiom.
pub fn validate_complex(desc: &ComplexDescription) -> Result<ComplexOfGroups> {
    let index: HashMap<&str, usize> = desc.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    let look = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownId(s.to_string()));
    let relations = desc.relations.iter().map(|(a, b)| Ok((look(a)?, look(b)?))).collect::<Result<Vec<_>>>()?;
    let poset = Poset::from_relations(desc.elements.clone(), &relations)?;
    let mut tables: HashMap<&str, FinGroup> = HashMap::new();
    for (name, table) in &desc.groups {
        tables.insert(name.as_str(), FinMonoid::from_description(table)?.to_group()?);
    }
    let groups = desc
        .elements
        .iter()
        .map(|e| {
            let g = desc.local.get(e).ok_or_else(|| Error::Malformed(format!("no local group at {e}")))?;
            tables.get(g.as_str()).cloned().ok_or_else(|| Error::UnknownId(g.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut transitions = BTreeMap::new();
    for t in &desc.transitions {
        let (x, y) = (look(&t.from)?, look(&t.to)?);
        if !poset.leq[x][y] {
            return Err(Error::Malformed(format!("transition {} → {} between incomparable elements", t.from, t.to)));
        }
        let (gx, gy) = (&groups[x], &groups[y]);
        let mut phi = vec![usize::MAX; gx.order()];
        for (a, b) in &t.map {
            let a = gx.index_of(a).ok_or_else(|| Error::UnknownId(a.clone()))?;
            phi[a] = gy.index_of(b).ok_or_else(|| Error::UnknownId(b.clone()))?;
        }
        if phi.contains(&usize::MAX) {
            return Err(Error::Malformed(format!("transition {} → {} is not total", t.from, t.to)));
        }
        if transitions.insert((x, y), phi).is_some() {
            return Err(Error::DuplicateId(format!("{}→{}", t.from, t.to)));
        }
    }
    for x in 0..poset.len() {
        transitions.entry((x, x)).or_insert_with(|| (0..groups[x].order()).collect());
    }
    let mut twists = BTreeMap::new();
    for t in &desc.twists {
        let [x, y, z] = [look(&t.chain[0])?, look(&t.chain[1])?, look(&t.chain[2])?];
        if !(poset.leq[x][y] && poset.leq[y][z]) {
            return Err(Error::Malformed(format!("twist at non-chain {:?}", t.chain)));
        }
        let v = groups[z].index_of(&t.element).ok_or_else(|| Error::UnknownId(t.element.clone()))?;
        if twists.insert((x, y, z), v).is_some() {
            return Err(Error::DuplicateId(format!("{:?}", t.chain)));
        }
    }
    for ch in poset.weak_chains(3) {
        twists.entry((ch[0], ch[1], ch[2])).or_insert(groups[ch[2]].unit());
    }
    ComplexOfGroups::new(poset, groups, transitions, twists)
}

/// Morphism x → y of c(𝒢) for the element g of 𝒢(y) is numbered offset[(x, y)] + g.
fn offsets(g: &ComplexOfGroups) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    let mut next = 0;
    for &(x, y) in g.transitions.keys() {
        out.insert((x, y), next);
        next += g.groups[y].order();
    }
    out
}

/// The associated category c(𝒢): hom(x, y) = 𝒢(y) for x ≤ y, composed by
/// g ∘ h = g · 𝒢(y,z)(h) · 𝒢(x,y,z). Morphisms are named "x>y:g".
pub fn associated_category(g: &ComplexOfGroups) -> Result<FinCategory> {
    let off = offsets(g);
    let mut morphisms = Vec::new();
    let mut pair_of = Vec::new();
    for &(x, y) in off.keys() {
        for a in 0..g.groups[y].order() {
            morphisms.push(Morphism { id: format!("{}>{}:{}", g.name(x), g.name(y), g.groups[y].name(a)), src: x, tgt: y });
            pair_of.push((x, y, a));
        }
    }
    let identity = (0..g.poset.len()).map(|x| off[&(x, x)] + g.groups[x].unit()).collect();
    FinCategory::build(g.poset.elements.clone(), morphisms, identity, |gm, hm| {
        let (y, z, a) = pair_of[gm];
        let (x, _, b) = pair_of[hm];
        let gz = &g.groups[z];
        off[&(x, z)] + gz.mul(gz.mul(a, g.transition(y, z)[b]), g.twist(x, y, z))
    })
}

/// All strict functors P → groups with the given local groups (simple complexes).
pub fn simple_complexes(poset: &Poset, groups: &[FinGroup], limit: usize) -> Result<Vec<ComplexOfGroups>> {
    let pairs: Vec<(usize, usize)> = strict_pairs(poset);
    let mut homs = HashMap::new();
    for &(x, y) in &pairs {
        homs.insert((x, y), enumerate_homs(&groups[x], &groups[y], usize::MAX)?);
    }
    let mut out = Vec::new();
    let mut chosen: BTreeMap<(usize, usize), GroupHom> = identities(groups);
    fn go(
        d: usize,
        pairs: &[(usize, usize)],
        poset: &Poset,
        homs: &HashMap<(usize, usize), Vec<GroupHom>>,
        chosen: &mut BTreeMap<(usize, usize), GroupHom>,
        groups: &[FinGroup],
        limit: usize,
        out: &mut Vec<ComplexOfGroups>,
    ) -> Result<()> {
        if d == pairs.len() {
            if out.len() >= limit {
                return Err(Error::SizeLimitExceeded { what: "simple complexes".into(), limit });
            }
            out.push(ComplexOfGroups::simple(poset.clone(), groups.to_vec(), chosen.clone())?);
            return Ok(());
        }
        let (x, z) = pairs[d];
        for phi in &homs[&(x, z)] {
            if strictly_compatible(poset, chosen, x, z, phi) {
                chosen.insert((x, z), phi.clone());
                go(d + 1, pairs, poset, homs, chosen, groups, limit, out)?;
                chosen.remove(&(x, z));
            }
        }
        Ok(())
    }
    go(0, &pairs, poset, &homs, &mut chosen, groups, limit, &mut out)?;
    Ok(out)
}

/// Pairs x < y ordered so that every pair comes after the shorter intervals it factors through.
fn strict_pairs(poset: &Poset) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> =
        poset.chains(2).into_iter().map(|c| (c[0], c[1])).collect();
    let between = |&(x, z): &(usize, usize)| (0..poset.len()).filter(|&y| poset.leq[x][y] && poset.leq[y][z]).count();
    pairs.sort_by_key(|p| (between(p), *p));
    pairs
}

fn identities(groups: &[FinGroup]) -> BTreeMap<(usize, usize), GroupHom> {
    groups.iter().enumerate().map(|(x, g)| ((x, x), (0..g.order()).collect())).collect()
}

/// φ = 𝒢(y,z)∘𝒢(x,y) for every y strictly between x and z.
fn strictly_compatible(poset: &Poset, chosen: &BTreeMap<(usize, usize), GroupHom>, x: usize, z: usize, phi: &[usize]) -> bool {
    (0..poset.len()).filter(|&y| y != x && y != z && poset.leq[x][y] && poset.leq[y][z]).all(|y| {
        let (xy, yz) = (&chosen[&(x, y)], &chosen[&(y, z)]);
        (0..phi.len()).all(|h| phi[h] == yz[xy[h]])
    })
}

/// A random simple complex with local groups drawn from `groups`.
pub fn random_simple_complex<R: Rng>(poset: &Poset, groups: &[FinGroup], rng: &mut R) -> Result<ComplexOfGroups> {
    let local: Vec<FinGroup> = (0..poset.len()).map(|_| groups.choose(rng).expect("nonempty family").clone()).collect();
    let pairs = strict_pairs(poset);
    let mut chosen = identities(&local);
    for &(x, z) in &pairs {
        let mut candidates: Vec<GroupHom> = enumerate_homs(&local[x], &local[z], usize::MAX)?
            .into_iter()
            .filter(|phi| strictly_compatible(poset, &chosen, x, z, phi))
            .collect();
        if candidates.is_empty() {
            // the trivial homomorphisms always fit; retreat to them
            return ComplexOfGroups::simple(
                poset.clone(),
                local.clone(),
                poset.weak_chains(2).into_iter().map(|c| {
                    let (x, y) = (c[0], c[1]);
                    let phi = if x == y { (0..local[x].order()).collect() } else { vec![local[y].unit(); local[x].order()] };
                    ((x, y), phi)
                }).collect(),
            );
        }
        candidates.shuffle(rng);
        chosen.insert((x, z), candidates.swap_remove(0));
    }
    ComplexOfGroups::simple(poset.clone(), local, chosen)
}
