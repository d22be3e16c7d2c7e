use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite monoid stored by its multiplication table; `mult[a][b]` is `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMonoid {
    elements: Vec<String>,
    unit: usize,
    mult: Vec<Vec<usize>>,
}

/// A finite group: a monoid together with its verified inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    monoid: FinMonoid,
    inverse: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDescription {
    pub elements: Vec<String>,
    pub unit: String,
    pub mult: Vec<Vec<String>>,
}

impl FinMonoid {
    pub fn new(elements: Vec<String>, unit: usize, mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if unit >= n {
            return Err(Error::NotAMonoid("unit is not an element".into()));
        }
        let mut seen = BTreeSet::new();
        for e in &elements {
            if !seen.insert(e) {
                return Err(Error::DuplicateId(e.clone()));
            }
        }
        if mult.len() != n || mult.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::NotAMonoid("multiplication table is not a total table on the elements".into()));
        }
        for a in 0..n {
            if mult[unit][a] != a || mult[a][unit] != a {
                return Err(Error::NotAMonoid(format!("{} is not a unit for {}", elements[unit], elements[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::NotAMonoid(format!(
                            "({}·{})·{} differs from {}·({}·{})",
                            elements[a], elements[b], elements[c], elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(FinMonoid { elements, unit, mult })
    }

    pub fn from_description(desc: &MonoidDescription) -> Result<Self> {
        let index: HashMap<&str, usize> =
            desc.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let look = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownId(s.to_string()));
        let unit = look(&desc.unit)?;
        let mult = desc
            .mult
            .iter()
            .map(|row| row.iter().map(|s| look(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(desc.elements.clone(), unit, mult)
    }

    pub fn describe(&self) -> MonoidDescription {
        MonoidDescription {
            elements: self.elements.clone(),
            unit: self.elements[self.unit].clone(),
            mult: self
                .mult
                .iter()
                .map(|row| row.iter().map(|&x| self.elements[x].clone()).collect())
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let desc: MonoidDescription = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_description(&desc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.describe()).expect("monoid description serializes")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    /// Returns the group structure when every element is invertible.
    pub fn to_group(&self) -> Result<FinGroup> {
        let n = self.order();
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| self.mult[a][b] == self.unit && self.mult[b][a] == self.unit) {
                Some(b) => inverse.push(b),
                None => return Err(Error::NotAGroup(format!("{} has no inverse", self.elements[a]))),
            }
        }
        Ok(FinGroup { monoid: self.clone(), inverse })
    }

    /// Cartesian product with componentwise multiplication; elements are named "(a,b)".
    pub fn product(&self, other: &FinMonoid) -> FinMonoid {
        let m = other.order();
        let n = self.order() * m;
        let elements = (0..n)
            .map(|i| format!("({},{})", self.elements[i / m], other.elements[i % m]))
            .collect();
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.mul(i / m, j / m) * m + other.mul(i % m, j % m))
                    .collect()
            })
            .collect();
        FinMonoid { elements, unit: self.unit * m + other.unit, mult }
    }

    /// The trivial monoid.
    pub fn trivial() -> FinMonoid {
        FinMonoid { elements: vec!["1".into()], unit: 0, mult: vec![vec![0]] }
    }

    /// The two-element monoid {1, e} with e·e = e.
    pub fn idempotent() -> FinMonoid {
        FinMonoid::new(vec!["1".into(), "e".into()], 0, vec![vec![0, 1], vec![1, 1]]).expect("valid monoid")
    }

    /// The five-element monoid {1, a, b, ab, ba} generated by a, b with
    /// a² = a = aba and b² = b = bab. Its classifying space is a 2-sphere.
    pub fn fiedorowicz() -> FinMonoid {
        let names = ["1", "a", "b", "ab", "ba"];
        // normal forms are reduced alternating words of length at most 2
        let word = |i: usize| -> &'static str { ["", "a", "b", "ab", "ba"][i] };
        let reduce = |w: &str| -> usize {
            let mut out: Vec<char> = Vec::new();
            for c in w.chars() {
                if out.last() == Some(&c) {
                    continue;
                }
                out.push(c);
                // xyx = x
                if out.len() >= 3 && out[out.len() - 1] == out[out.len() - 3] {
                    out.truncate(out.len() - 2);
                }
            }
            let s: String = out.into_iter().collect();
            ["", "a", "b", "ab", "ba"].iter().position(|&x| x == s).expect("reduced word has length at most 2")
        };
        let mult = (0..5)
            .map(|i| (0..5).map(|j| reduce(&format!("{}{}", word(i), word(j)))).collect())
            .collect();
        FinMonoid::new(names.iter().map(|s| s.to_string()).collect(), 0, mult).expect("valid monoid")
    }

    /// All monoids on {0..n-1} with unit 0, without identifying isomorphic ones.
    pub fn all_of_order(n: usize) -> Vec<FinMonoid> {
        let names: Vec<String> = (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("m{i}") }).collect();
        if n == 0 {
            return Vec::new();
        }
        let free: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            table[0][a] = a;
            table[a][0] = a;
        }
        let mut out = Vec::new();
        let total = n.pow(free.len() as u32);
        for code in 0..total {
            let mut c = code;
            for &(a, b) in &free {
                table[a][b] = c % n;
                c /= n;
            }
            if let Ok(m) = FinMonoid::new(names.clone(), 0, table.clone()) {
                out.push(m);
            }
        }
        out
    }
}

impl FinGroup {
    pub fn new(elements: Vec<String>, unit: usize, mult: Vec<Vec<usize>>) -> Result<Self> {
        FinMonoid::new(elements, unit, mult)?.to_group()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        FinMonoid::from_json(text)?.to_group()
    }

    pub fn to_json(&self) -> String {
        self.monoid.to_json()
    }

    pub fn monoid(&self) -> &FinMonoid {
        &self.monoid
    }

    pub fn order(&self) -> usize {
        self.monoid.order()
    }

    pub fn unit(&self) -> usize {
        self.monoid.unit
    }

    pub fn name(&self, a: usize) -> &str {
        self.monoid.name(a)
    }

    pub fn elements(&self) -> &[String] {
        self.monoid.elements()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.monoid.index_of(name)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.monoid.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// g·a·g⁻¹
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.unit() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks that a subset is a subgroup and returns it sorted.
    pub fn subgroup(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        if set.iter().any(|&a| a >= self.order()) {
            return Err(Error::NotASubgroup("element out of range".into()));
        }
        if !set.contains(&self.unit()) {
            return Err(Error::NotASubgroup("missing the unit".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "{}·{} leaves the subset",
                        self.name(a),
                        self.name(b)
                    )));
                }
            }
        }
        Ok(set.into_iter().collect())
    }

    /// The subgroup generated by a set of elements.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.unit()]);
        let mut frontier = vec![self.unit()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.generated(&gens);
        for a in 0..self.order() {
            if !span.contains(&a) {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// Elements commuting with every element of `subset`.
    pub fn centralizer(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&g| subset.iter().all(|&a| self.mul(g, a) == self.mul(a, g)))
            .collect()
    }

    /// The group structure on a subgroup, with element names inherited.
    pub fn restrict(&self, subgroup: &[usize]) -> Result<FinGroup> {
        let sub = self.subgroup(subgroup)?;
        let pos: HashMap<usize, usize> = sub.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let elements = sub.iter().map(|&a| self.name(a).to_string()).collect();
        let mult = sub.iter().map(|&a| sub.iter().map(|&b| pos[&self.mul(a, b)]).collect()).collect();
        FinGroup::new(elements, pos[&self.unit()], mult)
    }

    pub fn product(&self, other: &FinGroup) -> FinGroup {
        self.monoid.product(&other.monoid).to_group().expect("product of groups is a group")
    }

    /// Cyclic group of order n with elements e, g, g2, ...
    pub fn cyclic(n: usize) -> FinGroup {
        assert!(n >= 1, "cyclic group needs positive order");
        let elements = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FinGroup::new(elements, 0, mult).expect("cyclic group is a group")
    }

    /// Symmetric group on n letters; elements are named by one-line notation.
    pub fn symmetric(n: usize) -> FinGroup {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(n, &mut Vec::new(), &mut perms);
        let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let elements = perms
            .iter()
            .map(|p| p.iter().map(|&i| char::from(b'1' + i as u8)).collect())
            .collect();
        // (a·b)(i) = a(b(i))
        let mult = perms
            .iter()
            .map(|a| perms.iter().map(|b| index[&(0..n).map(|i| a[b[i]]).collect::<Vec<_>>()]).collect())
            .collect();
        FinGroup::new(elements, 0, mult).expect("symmetric group is a group")
    }

    /// Quotient by the commutator subgroup, returned as the list of coset
    /// element orders (an isomorphism invariant of a finite abelian group).
    pub fn abelianization_order_profile(&self) -> Vec<usize> {
        let n = self.order();
        let commutators: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
            .collect();
        let kernel = self.generated(&commutators);
        let coset_of = |a: usize| -> Vec<usize> {
            let mut c: Vec<usize> = kernel.iter().map(|&k| self.mul(a, k)).collect();
            c.sort_unstable();
            c
        };
        let cosets: BTreeSet<Vec<usize>> = (0..n).map(coset_of).collect();
        let mut profile: Vec<usize> = cosets
            .iter()
            .map(|c| {
                let a = c[0];
                let mut k = 1;
                let mut x = a;
                while !kernel.contains(&x) {
                    x = self.mul(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        profile.sort_unstable();
        profile
    }
}

fn permutations(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for i in 0..n {
        if !prefix.contains(&i) {
            prefix.push(i);
            permutations(n, prefix, out);
            prefix.pop();
        }
    }
}

/// Element order profile of a finite abelian group given by invariant factors.
pub fn abelian_order_profile(factors: &[u64], betti: usize) -> Option<Vec<usize>> {
    if betti > 0 {
        return None;
    }
    let mut profile = vec![1usize];
    for &d in factors {
        let d = d as usize;
        let mut next = Vec::with_capacity(profile.len() * d);
        for &o in &profile {
            for k in 0..d {
                let ok = d / gcd(d, k);
                next.push(lcm(o, ok));
            }
        }
        profile = next;
    }
    profile.sort_unstable();
    Some(profile)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiedorowicz_relations() {
        let m = FinMonoid::fiedorowicz();
        let [a, b] = [m.index_of("a").unwrap(), m.index_of("b").unwrap()];
        assert_eq!(m.mul(a, a), a);
        assert_eq!(m.mul(m.mul(a, b), a), a);
        assert_eq!(m.mul(b, b), b);
        assert_eq!(m.mul(m.mul(b, a), b), b);
        assert_eq!(m.order(), 5);
        assert!(m.to_group().is_err());
    }

    #[test]
    fn symmetric_three() {
        let s3 = FinGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.abelianization_order_profile(), vec![1, 2]);
    }

    #[test]
    fn cyclic_profiles_match_invariant_factors() {
        let c6 = FinGroup::cyclic(6);
        assert_eq!(c6.abelianization_order_profile(), abelian_order_profile(&[6], 0).unwrap());
        let v4 = FinGroup::cyclic(2).product(&FinGroup::cyclic(2));
        assert_eq!(v4.abelianization_order_profile(), abelian_order_profile(&[2, 2], 0).unwrap());
        assert_ne!(v4.abelianization_order_profile(), abelian_order_profile(&[4], 0).unwrap());
    }

    #[test]
    fn monoids_of_small_order() {
        assert_eq!(FinMonoid::all_of_order(1).len(), 1);
        assert_eq!(FinMonoid::all_of_order(2).len(), 2);
        let three = FinMonoid::all_of_order(3);
        assert!(three.iter().all(|m| m.order() == 3));
        assert!(three.len() >= 7);
    }

    #[test]
    fn subgroup_checks() {
        let c4 = FinGroup::cyclic(4);
        assert_eq!(c4.subgroup(&[0, 2]).unwrap(), vec![0, 2]);
        assert!(c4.subgroup(&[0, 1]).is_err());
        assert_eq!(c4.restrict(&[0, 2]).unwrap().order(), 2);
    }

    #[test]
    fn json_round_trip() {
        let m = FinMonoid::fiedorowicz();
        let back = FinMonoid::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
