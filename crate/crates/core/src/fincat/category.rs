use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A morphism of a finite category: an opaque id plus source and target object indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category with a total composition table.
///
/// Objects and morphisms are addressed by index; ids are kept for I/O and for
/// deriving ids of constructed categories. Composition `compose(g, f)` means
/// "first `f`, then `g`" and is only defined when `tgt(f) == src(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    in_pos: Vec<usize>,
    hom: HashMap<(usize, usize), Vec<usize>>,
    // table[g][in_pos[f]] = g . f for every f with tgt(f) == src(g)
    table: Vec<Vec<u32>>,
}

/// Serialized form of a category, matching the JSON file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDescription {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDescription>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDescription {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

const NONE: u32 = u32::MAX;

impl FinCategory {
    /// Builds a category from index-level data and a composition rule, then
    /// verifies every axiom exhaustively.
    pub fn build<F>(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        mut compose: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize) -> usize,
    {
        let mut cat = Self::skeleton(objects, morphisms, identity)?;
        for g in 0..cat.morphisms.len() {
            let src = cat.morphisms[g].src;
            let row: Vec<u32> = cat.incoming[src]
                .iter()
                .map(|&f| {
                    let gf = compose(g, f);
                    u32::try_from(gf).expect("morphism index fits in u32")
                })
                .collect();
            cat.table[g] = row;
        }
        cat.verify()?;
        Ok(cat)
    }

    /// Object/morphism bookkeeping without composition; table rows are filled with NONE.
    fn skeleton(objects: Vec<String>, morphisms: Vec<Morphism>, identity: Vec<usize>) -> Result<Self> {
        let n = objects.len();
        let mut seen = HashMap::new();
        for o in &objects {
            if seen.insert(o.as_str(), ()).is_some() {
                return Err(Error::DuplicateId(o.clone()));
            }
        }
        let mut seen = HashMap::new();
        for m in &morphisms {
            if seen.insert(m.id.as_str(), ()).is_some() {
                return Err(Error::DuplicateId(m.id.clone()));
            }
            if m.src >= n || m.tgt >= n {
                return Err(Error::Malformed(format!("morphism {} has an out-of-range endpoint", m.id)));
            }
        }
        if identity.len() != n {
            return Err(Error::Malformed("identity assignment must cover every object".into()));
        }
        for (x, &id) in identity.iter().enumerate() {
            let Some(m) = morphisms.get(id) else {
                return Err(Error::BadIdentity { object: objects[x].clone(), reason: "identity index out of range".into() });
            };
            if m.src != x || m.tgt != x {
                return Err(Error::BadIdentity { object: objects[x].clone(), reason: format!("{} is not an endomorphism of it", m.id) });
            }
        }
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut in_pos = vec![0; morphisms.len()];
        let mut hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.src].push(i);
            in_pos[i] = incoming[m.tgt].len();
            incoming[m.tgt].push(i);
            hom.entry((m.src, m.tgt)).or_default().push(i);
        }
        let table = morphisms.iter().map(|m| vec![NONE; incoming[m.src].len()]).collect();
        Ok(FinCategory { objects, morphisms, identity, outgoing, incoming, in_pos, hom, table })
    }

    /// Validates a raw category description. Composites involving an identity may be omitted.
    pub fn from_description(desc: &CategoryDescription) -> Result<Self> {
        let obj_index: HashMap<&str, usize> =
            desc.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj_index.len() != desc.objects.len() {
            let dup = find_duplicate(desc.objects.iter().map(String::as_str));
            return Err(Error::DuplicateId(dup));
        }
        let lookup_obj = |s: &str| obj_index.get(s).copied().ok_or_else(|| Error::UnknownId(s.to_string()));
        let mut morphisms = Vec::with_capacity(desc.morphisms.len());
        for m in &desc.morphisms {
            morphisms.push(Morphism { id: m.id.clone(), src: lookup_obj(&m.src)?, tgt: lookup_obj(&m.tgt)? });
        }
        let mor_index: HashMap<&str, usize> =
            desc.morphisms.iter().enumerate().map(|(i, m)| (m.id.as_str(), i)).collect();
        if mor_index.len() != desc.morphisms.len() {
            let dup = find_duplicate(desc.morphisms.iter().map(|m| m.id.as_str()));
            return Err(Error::DuplicateId(dup));
        }
        let lookup_mor = |s: &str| mor_index.get(s).copied().ok_or_else(|| Error::UnknownId(s.to_string()));
        let mut identity = Vec::with_capacity(desc.objects.len());
        for o in &desc.objects {
            let Some(id) = desc.identities.get(o) else {
                return Err(Error::BadIdentity { object: o.clone(), reason: "no identity given".into() });
            };
            identity.push(lookup_mor(id)?);
        }
        for key in desc.identities.keys() {
            lookup_obj(key)?;
        }
        let mut cat = Self::skeleton(desc.objects.clone(), morphisms, identity)?;
        for [g, f, gf] in &desc.compose {
            let (g, f, gf) = (lookup_mor(g)?, lookup_mor(f)?, lookup_mor(gf)?);
            let (mg, mf, mgf) = (&cat.morphisms[g], &cat.morphisms[f], &cat.morphisms[gf]);
            if mf.tgt != mg.src || mgf.src != mf.src || mgf.tgt != mg.tgt {
                return Err(Error::BadComposite { g: mg.id.clone(), f: mf.id.clone(), gf: mgf.id.clone() });
            }
            let slot = &mut cat.table[g][cat.in_pos[f]];
            if *slot != NONE && *slot as usize != gf {
                return Err(Error::Malformed(format!("composite of ({}, {}) given twice", mg.id, mf.id)));
            }
            *slot = gf as u32;
        }
        // implied identity composites
        for g in 0..cat.morphisms.len() {
            let src = cat.morphisms[g].src;
            let tgt = cat.morphisms[g].tgt;
            let id_src = cat.identity[src];
            let slot = &mut cat.table[g][cat.in_pos[id_src]];
            if *slot == NONE {
                *slot = g as u32;
            }
            let id_tgt = cat.identity[tgt];
            let slot = &mut cat.table[id_tgt][cat.in_pos[g]];
            if *slot == NONE {
                *slot = g as u32;
            }
        }
        cat.verify()?;
        Ok(cat)
    }

    /// Exhaustive verification of totality, typing, unit laws and associativity.
    pub fn verify(&self) -> Result<()> {
        for g in 0..self.morphisms.len() {
            let mg = &self.morphisms[g];
            for (pos, &f) in self.incoming[mg.src].iter().enumerate() {
                let gf = self.table[g][pos];
                let mf = &self.morphisms[f];
                if gf == NONE {
                    return Err(Error::MissingComposite { g: mg.id.clone(), f: mf.id.clone() });
                }
                let mgf = &self.morphisms[gf as usize];
                if mgf.src != mf.src || mgf.tgt != mg.tgt {
                    return Err(Error::BadComposite { g: mg.id.clone(), f: mf.id.clone(), gf: mgf.id.clone() });
                }
            }
        }
        for x in 0..self.objects.len() {
            let id = self.identity[x];
            for &f in &self.incoming[x] {
                if self.compose(id, f) != f {
                    return Err(Error::BadIdentity {
                        object: self.objects[x].clone(),
                        reason: format!("not a left unit for {}", self.morphisms[f].id),
                    });
                }
            }
            for &g in &self.outgoing[x] {
                if self.compose(g, id) != g {
                    return Err(Error::BadIdentity {
                        object: self.objects[x].clone(),
                        reason: format!("not a right unit for {}", self.morphisms[g].id),
                    });
                }
            }
        }
        for f in 0..self.morphisms.len() {
            let y = self.morphisms[f].tgt;
            for &g in &self.outgoing[y] {
                let gf = self.compose(g, f);
                let z = self.morphisms[g].tgt;
                for &h in &self.outgoing[z] {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(Error::NonAssociative {
                            h: self.morphisms[h].id.clone(),
                            g: self.morphisms[g].id.clone(),
                            f: self.morphisms[f].id.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> CategoryDescription {
        let objects = self.objects.clone();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorphismDescription {
                id: m.id.clone(),
                src: self.objects[m.src].clone(),
                tgt: self.objects[m.tgt].clone(),
            })
            .collect();
        let identities = self
            .objects
            .iter()
            .zip(&self.identity)
            .map(|(o, &i)| (o.clone(), self.morphisms[i].id.clone()))
            .collect();
        let mut compose = Vec::new();
        for g in 0..self.morphisms.len() {
            for &f in &self.incoming[self.morphisms[g].src] {
                let gf = self.compose(g, f);
                compose.push([
                    self.morphisms[g].id.clone(),
                    self.morphisms[f].id.clone(),
                    self.morphisms[gf].id.clone(),
                ]);
            }
        }
        CategoryDescription { objects, morphisms, identities, compose }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.describe()).expect("category description serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let desc: CategoryDescription =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_description(&desc)
    }

    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> usize {
        debug_assert_eq!(self.morphisms[f].tgt, self.morphisms[g].src, "composing non-composable morphisms");
        self.table[g][self.in_pos[f]] as usize
    }

    /// Composite of a path given in application order (first element applied first).
    pub fn compose_path(&self, path: &[usize]) -> Option<usize> {
        let (&first, rest) = path.split_first()?;
        Some(rest.iter().fold(first, |acc, &g| self.compose(g, acc)))
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.morphisms[f].src] == f
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.hom.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn outgoing(&self, x: usize) -> &[usize] {
        &self.outgoing[x]
    }

    pub fn incoming(&self, y: usize) -> &[usize] {
        &self.incoming[y]
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == id)
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == id)
    }

    /// Returns `Some(inverse)` when `f` is an isomorphism.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let m = &self.morphisms[f];
        self.hom(m.tgt, m.src).iter().copied().find(|&g| {
            self.compose(g, f) == self.identity[m.src] && self.compose(f, g) == self.identity[m.tgt]
        })
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.morphisms.len()).all(|f| self.inverse(f).is_some())
    }

    /// True when there is at most one morphism between any two objects and
    /// mutually reachable objects coincide.
    pub fn is_poset(&self) -> bool {
        self.hom.iter().all(|(&(x, y), v)| v.len() <= 1 && (x == y || self.hom(y, x).is_empty()))
    }
}

fn find_duplicate<'a>(items: impl Iterator<Item = &'a str>) -> String {
    let mut seen = HashMap::new();
    for s in items {
        if seen.insert(s, ()).is_some() {
            return s.to_string();
        }
    }
    String::new()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(objects: &[&str], morphisms: &[(&str, &str, &str)], ids: &[(&str, &str)], compose: &[[&str; 3]]) -> CategoryDescription {
        CategoryDescription {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            morphisms: morphisms
                .iter()
                .map(|(i, s, t)| MorphismDescription { id: i.to_string(), src: s.to_string(), tgt: t.to_string() })
                .collect(),
            identities: ids.iter().map(|(o, m)| (o.to_string(), m.to_string())).collect(),
            compose: compose.iter().map(|c| c.map(str::to_string)).collect(),
        }
    }

    #[test]
    fn terminal_is_valid() {
        let d = desc(&["*"], &[("id", "*", "*")], &[("*", "id")], &[["id", "id", "id"]]);
        let c = FinCategory::from_description(&d).unwrap();
        assert_eq!((c.num_objects(), c.num_morphisms()), (1, 1));
    }

    #[test]
    fn bc2_is_valid() {
        let d = desc(&["*"], &[("e", "*", "*"), ("g", "*", "*")], &[("*", "e")], &[["g", "g", "e"]]);
        let c = FinCategory::from_description(&d).unwrap();
        assert!(c.is_groupoid());
        assert_eq!(c.compose(1, 1), 0);
    }

    #[test]
    fn missing_composite_is_reported() {
        let d = desc(&["*"], &[("e", "*", "*"), ("g", "*", "*")], &[("*", "e")], &[]);
        assert!(matches!(FinCategory::from_description(&d), Err(Error::MissingComposite { .. })));
    }

    #[test]
    fn non_associative_is_reported() {
        // (a.a).a = b.a = a but a.(a.a) = a.b = b
        let d = desc(
            &["*"],
            &[("e", "*", "*"), ("a", "*", "*"), ("b", "*", "*")],
            &[("*", "e")],
            &[["a", "a", "b"], ["a", "b", "b"], ["b", "a", "a"], ["b", "b", "a"]],
        );
        assert!(matches!(FinCategory::from_description(&d), Err(Error::NonAssociative { .. })));
    }

    #[test]
    fn bad_identity_is_reported() {
        let d = desc(
            &["*"],
            &[("e", "*", "*"), ("g", "*", "*")],
            &[("*", "e")],
            &[["e", "g", "e"], ["g", "g", "e"]],
        );
        assert!(matches!(FinCategory::from_description(&d), Err(Error::BadIdentity { .. })));
    }

    #[test]
    fn unknown_object_is_reported() {
        let d = desc(&["*"], &[("e", "*", "x")], &[("*", "e")], &[]);
        assert!(matches!(FinCategory::from_description(&d), Err(Error::UnknownId(_))));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let d = desc(&["*"], &[("e", "*", "*"), ("g", "*", "*")], &[("*", "e")], &[["g", "g", "e"]]);
        let c = FinCategory::from_description(&d).unwrap();
        let text = c.to_json();
        let back = FinCategory::from_json(&text).unwrap();
        assert_eq!(back.to_json(), text);
        assert_eq!(back, c);
    }
}
