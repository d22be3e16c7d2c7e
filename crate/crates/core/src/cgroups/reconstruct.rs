use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::complex::{associated_category, ComplexOfGroups};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinFunctor, FinGroup, Poset};

/// Which uniqueness condition to check: post-composition (plain) or pre-composition (opposite).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Plain,
    Opposite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsReport {
    pub variant: Variant,
    /// distinct objects with morphisms both ways
    pub antisymmetry_violations: Vec<(String, String)>,
    /// morphisms f for which α ↦ α∘f (or ω ↦ f∘ω) is not a bijection onto the hom-set
    pub action_violations: Vec<String>,
    /// pairs x < y where the other-sided action is not free (non-injective transitions); informational
    pub non_free: Vec<(String, String)>,
}

impl ConditionsReport {
    pub fn holds(&self) -> bool {
        self.antisymmetry_violations.is_empty() && self.action_violations.is_empty()
    }
}

fn acts_bijectively(c: &FinCategory, f: usize, by: &[usize], post: bool) -> bool {
    let hom = c.hom(c.src(f), c.tgt(f));
    if by.len() != hom.len() {
        return false;
    }
    let mut image: Vec<usize> = by.iter().map(|&a| if post { c.compose(a, f) } else { c.compose(f, a) }).collect();
    image.sort_unstable();
    image.dedup();
    image.len() == hom.len()
}

/// Checks (a) and (b), or (a) and (b)ᵒᵖ. In a finite category these imply
/// that endomorphisms are automorphisms, so the automorphism groups are finite groups.
pub fn check_conditions(c: &FinCategory, variant: Variant) -> ConditionsReport {
    let n = c.num_objects();
    let mut report = ConditionsReport {
        variant,
        antisymmetry_violations: Vec::new(),
        action_violations: Vec::new(),
        non_free: Vec::new(),
    };
    for x in 0..n {
        for y in x + 1..n {
            if !c.hom(x, y).is_empty() && !c.hom(y, x).is_empty() {
                report.antisymmetry_violations.push((c.object_id(x).into(), c.object_id(y).into()));
            }
        }
    }
    let post = variant == Variant::Plain;
    for f in 0..c.num_morphisms() {
        let (x, y) = (c.src(f), c.tgt(f));
        let (acting, other) = if post { (c.hom(y, y), c.hom(x, x)) } else { (c.hom(x, x), c.hom(y, y)) };
        if !acts_bijectively(c, f, acting, post) {
            report.action_violations.push(c.morphism(f).id.clone());
        }
        // freeness of the other action, per hom-set (checked at its first morphism)
        if x != y && c.hom(x, y)[0] == f {
            let mut image: Vec<usize> =
                other.iter().map(|&a| if post { c.compose(f, a) } else { c.compose(a, f) }).collect();
            image.sort_unstable();
            image.dedup();
            if image.len() < other.len() {
                report.non_free.push((c.object_id(x).into(), c.object_id(y).into()));
            }
        }
    }
    report
}

/// A chosen morphism f_{y,x}: x → y for every comparable pair, identities on the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionChoices {
    pub choices: BTreeMap<(usize, usize), usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChoicePolicy {
    /// the unit-labeled morphism "x>y:u" when the category came from a complex, else the least id
    Default,
    Lexicographic,
    Random(u64),
}

/// For x>y:u with u the label of the identity of y, if such ids are in use.
fn unit_labeled(c: &FinCategory, x: usize, y: usize) -> Option<usize> {
    let id_y = &c.morphism(c.identity(y)).id;
    let prefix = format!("{}>{}:", c.object_id(y), c.object_id(y));
    let unit = id_y.strip_prefix(&prefix)?;
    let wanted = format!("{}>{}:{}", c.object_id(x), c.object_id(y), unit);
    c.hom(x, y).iter().copied().find(|&f| c.morphism(f).id == wanted)
}

impl ReconstructionChoices {
    pub fn new(c: &FinCategory, policy: ChoicePolicy) -> Self {
        let mut rng = match policy {
            ChoicePolicy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut choices = BTreeMap::new();
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                let hom = c.hom(x, y);
                if hom.is_empty() {
                    continue;
                }
                let least = || *hom.iter().min_by_key(|&&f| &c.morphism(f).id).expect("nonempty");
                let f = if x == y {
                    c.identity(x)
                } else {
                    match (policy, rng.as_mut()) {
                        (ChoicePolicy::Random(_), Some(r)) => *hom.choose(r).expect("nonempty"),
                        (ChoicePolicy::Default, _) => unit_labeled(c, x, y).unwrap_or_else(least),
                        _ => least(),
                    }
                };
                choices.insert((x, y), f);
            }
        }
        ReconstructionChoices { choices }
    }

    /// Checks that there is exactly one choice per nonempty hom-set and identities on the diagonal.
    pub fn validate(&self, c: &FinCategory) -> Result<()> {
        for x in 0..c.num_objects() {
            for y in 0..c.num_objects() {
                let hom = c.hom(x, y);
                match self.choices.get(&(x, y)) {
                    None if hom.is_empty() => {}
                    None => return Err(Error::BadChoice(format!("no choice for {} → {}", c.object_id(x), c.object_id(y)))),
                    Some(&f) if !hom.contains(&f) => {
                        return Err(Error::BadChoice(format!("{} is not a morphism {} → {}", f, c.object_id(x), c.object_id(y))))
                    }
                    Some(&f) if x == y && f != c.identity(x) => {
                        return Err(Error::BadChoice(format!("f at {} must be the identity", c.object_id(x))))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub complex: ComplexOfGroups,
    /// c(aut), the category associated to the reconstructed complex
    pub associated: Arc<FinCategory>,
    /// κ(γ) = γ ∘ f_{y,x}
    pub kappa: FinFunctor,
}

/// The unique α in `candidates` with α∘f = target.
fn solve(c: &FinCategory, candidates: &[usize], f: usize, target: usize) -> Result<usize> {
    let mut hits = candidates.iter().copied().filter(|&a| c.compose(a, f) == target);
    match (hits.next(), hits.next()) {
        (Some(a), None) => Ok(a),
        _ => Err(Error::ConditionsFailed(format!("no unique solution through {}", c.morphism(f).id))),
    }
}

/// Rebuilds a complex of groups aut: pos(C) → grp from a category satisfying (a) and (b),
/// with the comparison κ: c(aut) → C, which is checked to be an isomorphism.
pub fn reconstruct_complex(c: &Arc<FinCategory>, choices: &ReconstructionChoices) -> Result<Reconstruction> {
    let report = check_conditions(c, Variant::Plain);
    if !report.holds() {
        return Err(Error::ConditionsFailed(format!(
            "{} antisymmetry and {} uniqueness violations",
            report.antisymmetry_violations.len(),
            report.action_violations.len()
        )));
    }
    choices.validate(c)?;
    let n = c.num_objects();
    let leq: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| !c.hom(x, y).is_empty()).collect()).collect();
    let poset = Poset::new(c.objects().to_vec(), leq)?;
    let f = |y: usize, x: usize| choices.choices[&(x, y)];

    // local groups C(x, x), element names stripped of an "x>x:" prefix when present
    let mut groups = Vec::with_capacity(n);
    for x in 0..n {
        let ends = c.hom(x, x);
        let pos = |m: usize| ends.iter().position(|&e| e == m).expect("closed under composition");
        let prefix = format!("{}>{}:", c.object_id(x), c.object_id(x));
        let names = ends
            .iter()
            .map(|&e| {
                let id = &c.morphism(e).id;
                id.strip_prefix(&prefix).unwrap_or(id).to_string()
            })
            .collect();
        let mult = ends.iter().map(|&a| ends.iter().map(|&b| pos(c.compose(a, b))).collect()).collect();
        groups.push(FinGroup::new(names, pos(c.identity(x)), mult)?);
    }
    let local_index = |x: usize, m: usize| c.hom(x, x).iter().position(|&e| e == m).expect("endomorphism");

    let mut transitions = BTreeMap::new();
    for ch in poset.weak_chains(2) {
        let (x, y) = (ch[0], ch[1]);
        let fyx = f(y, x);
        let mut phi = Vec::with_capacity(groups[x].order());
        for &beta in c.hom(x, x) {
            let a = solve(c, c.hom(y, y), fyx, c.compose(fyx, beta))?;
            phi.push(local_index(y, a));
        }
        transitions.insert((x, y), phi);
    }
    let mut twists = BTreeMap::new();
    for ch in poset.weak_chains(3) {
        let (x, y, z) = (ch[0], ch[1], ch[2]);
        let t = solve(c, c.hom(z, z), f(z, x), c.compose(f(z, y), f(y, x)))?;
        twists.insert((x, y, z), local_index(z, t));
    }
    let complex = ComplexOfGroups::new(poset, groups, transitions, twists)?;
    let associated = Arc::new(associated_category(&complex)?);

    let mut morphism_map = Vec::with_capacity(associated.num_morphisms());
    for m in 0..associated.num_morphisms() {
        let (x, y) = (associated.src(m), associated.tgt(m));
        let gamma_index = associated.hom(x, y).iter().position(|&e| e == m).expect("listed");
        let gamma = c.hom(y, y)[gamma_index];
        morphism_map.push(c.compose(gamma, f(y, x)));
    }
    let kappa = FinFunctor::new(associated.clone(), c.clone(), (0..n).collect(), morphism_map)?;
    if !kappa.is_isomorphism() {
        return Err(Error::ConditionsFailed("κ is not bijective on morphisms".into()));
    }
    Ok(Reconstruction { complex, associated, kappa })
}
