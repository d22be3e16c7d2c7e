use std::path::Path;
use std::sync::Arc;

use globcat::cgroups::{
    associated_category, check_conditions, fun_grothendieck_comparison, grothendieck, reconstruct_complex,
    simple_diagram, ChoicePolicy, ComplexOfGroups, ReconstructionChoices, Variant,
};
use globcat::dwyer::{check_dwyer, dwyer_pushout, fun_preservation, verify_universal_property, Origin};
use globcat::fincat::{
    classifying_category, functor_category, is_strongly_connected, opposite, poset_category, terminal,
    CategoryDescription, FunctorDescription, MonoidDescription,
};
use globcat::homology::{homology, pi0, HomologyGroup};
use globcat::orbit::{gamma_cell, generating_cell, global_nerve_value, hom_groupoid};
use globcat::simplicial::nerve;
use globcat::{Error, FinCategory, FinFunctor, FinGroup, FinMonoid, FinSimplicialSet, Limits, Result};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::{Command, Demo, OrbitCommand, VariantArg};

#[derive(Clone, Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

pub struct Context {
    pub limits: Limits,
    pub max_degree: usize,
    pub inputs: Vec<InputHash>,
}

pub struct Outcome {
    pub positive: bool,
    pub result: Value,
}

fn outcome(positive: bool, result: Value) -> Result<Outcome> {
    Ok(Outcome { positive, result })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

impl Context {
    pub fn new(limits: Limits, max_degree: usize) -> Self {
        Context { limits, max_degree, inputs: Vec::new() }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(InputHash { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
        String::from_utf8(bytes).map_err(|_| Error::Malformed(format!("{} is not UTF-8", path.display())))
    }

    fn json<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
    }

    fn category(&mut self, path: &Path) -> Result<Arc<FinCategory>> {
        let desc: CategoryDescription = self.json(path)?;
        Ok(Arc::new(FinCategory::from_description(&desc)?))
    }

    fn functor(&mut self, path: &Path) -> Result<FinFunctor> {
        let desc: FunctorDescription = self.json(path)?;
        FinFunctor::from_description(&desc)
    }

    /// A group file, or one of the built-in names Cn and S3.
    fn group(&mut self, path: &Path) -> Result<FinGroup> {
        let name = path.to_string_lossy();
        if !path.exists() {
            if let Some(n) = name.strip_prefix('C').and_then(|n| n.parse::<usize>().ok()).filter(|&n| n >= 1) {
                return Ok(FinGroup::cyclic(n));
            }
            if name == "S3" {
                return Ok(FinGroup::symmetric(3));
            }
        }
        let desc: MonoidDescription = self.json(path)?;
        FinMonoid::from_description(&desc)?.to_group()
    }

    fn simplicial(&mut self, path: &Path) -> Result<FinSimplicialSet> {
        let text = self.read(path)?;
        FinSimplicialSet::from_json(&text)
    }

    fn complex(&mut self, path: &Path) -> Result<ComplexOfGroups> {
        let text = self.read(path)?;
        ComplexOfGroups::from_json(&text)
    }
}

fn size(c: &FinCategory) -> Value {
    json!({ "objects": c.num_objects(), "morphisms": c.num_morphisms() })
}

fn homology_report(x: &FinSimplicialSet, k_max: usize) -> Result<Value> {
    let h = homology(x, k_max)?;
    let p = pi0(x);
    let degrees: Vec<Value> = h.groups.iter().map(|g| json!({ "group": g.to_string(), "betti": g.betti, "torsion": g.torsion })).collect();
    Ok(json!({ "homology": degrees, "ceiling": h.ceiling, "pi0": p.count, "nondegenerate": x.nondegenerate_counts() }))
}

fn parse_choices(s: &str) -> Result<ChoicePolicy> {
    match s {
        "default" => Ok(ChoicePolicy::Default),
        "lexicographic" => Ok(ChoicePolicy::Lexicographic),
        _ => s
            .strip_prefix("random:")
            .and_then(|n| n.parse().ok())
            .map(ChoicePolicy::Random)
            .ok_or_else(|| Error::Malformed(format!("unknown choice policy `{s}`"))),
    }
}

pub fn run(command: &Command, ctx: &mut Context) -> Result<Outcome> {
    let cap = ctx.limits.max_functors;
    let k_max = ctx.max_degree;
    match command {
        Command::Validate { category } => {
            let c = ctx.category(category)?;
            outcome(
                true,
                json!({
                    "size": size(&c),
                    "poset": c.is_poset(),
                    "groupoid": c.is_groupoid(),
                    "strongly_connected": is_strongly_connected(&c),
                    "category": c.describe(),
                }),
            )
        }
        Command::Funcat { index, target } => {
            let (i, c) = (ctx.category(index)?, ctx.category(target)?);
            let fun = functor_category(&i, &c, cap)?;
            outcome(true, json!({ "size": size(&fun.category), "category": fun.category.describe() }))
        }
        Command::Nerve { category } => {
            let c = ctx.category(category)?;
            let n = nerve(&c, k_max + 1);
            let x = &n.simplicial;
            outcome(
                true,
                json!({ "bound": x.bound(), "skeletal": x.is_skeletal(), "nondegenerate": x.nondegenerate_counts(), "simplicial": x.describe() }),
            )
        }
        Command::Homology { input } => {
            let text = ctx.read(input)?;
            let x = match serde_json::from_str::<CategoryDescription>(&text) {
                Ok(desc) => nerve(&Arc::new(FinCategory::from_description(&desc)?), k_max + 1).simplicial.as_ref().clone(),
                Err(_) => FinSimplicialSet::from_json(&text)?,
            };
            outcome(true, homology_report(&x, k_max)?)
        }
        Command::DwyerCheck { inclusion } => {
            let i = ctx.functor(inclusion)?;
            match check_dwyer(&i) {
                Ok(cert) => {
                    cert.verify()?;
                    outcome(true, json!({ "dwyer": true, "certificate": cert.describe() }))
                }
                Err(f) => outcome(false, json!({ "dwyer": false, "obstruction": f.to_string() })),
            }
        }
        Command::DwyerPushout { inclusion, k, against } => {
            let i = ctx.functor(inclusion)?;
            let k = ctx.functor(k)?;
            let cert = match check_dwyer(&i) {
                Ok(cert) => cert,
                Err(f) => return outcome(false, json!({ "dwyer": false, "obstruction": f.to_string() })),
            };
            let p = dwyer_pushout(&cert, &k)?;
            p.verify()?;
            let origin: Vec<&str> = p
                .object_origin
                .iter()
                .map(|o| match o {
                    Origin::C(_) => "C",
                    _ => "V",
                })
                .collect();
            let mut positive = true;
            let mut checks = Vec::new();
            for path in against {
                let e = ctx.category(path)?;
                let r = verify_universal_property(&p, &e, cap)?;
                positive &= r.holds();
                checks.push(json!({ "category": path.display().to_string(), "report": r }));
            }
            outcome(
                positive,
                json!({
                    "certificate": cert.describe(),
                    "pushout": p.category.describe(),
                    "object_origin": origin,
                    "universal_property": checks,
                }),
            )
        }
        Command::FunPreserve { index, inclusion, k, strict } => {
            let idx = ctx.category(index)?;
            let i = ctx.functor(inclusion)?;
            let k = ctx.functor(k)?;
            let cert = check_dwyer(&i).map_err(|f| Error::Malformed(format!("not a Dwyer map: {f}")))?;
            let r = fun_preservation(&idx, &cert, &k, cap, *strict)?;
            outcome(r.isomorphism, to_value(&r))
        }
        Command::OrbitHom { source, target } | Command::Orbit { command: OrbitCommand::Hom { source, target } } => {
            let (k, g) = (ctx.group(source)?, ctx.group(target)?);
            let (hg, r) = hom_groupoid(&k, &g, ctx.limits.max_group_order)?;
            outcome(r.verified(), json!({ "report": r, "groupoid": size(&hg.category) }))
        }
        Command::GlobalNerve { category, group, family } => {
            let c = ctx.category(category)?;
            let g = ctx.group(group)?;
            let fam = family.iter().map(|p| ctx.group(p)).collect::<Result<Vec<_>>>()?;
            let v = global_nerve_value(&c, &g, k_max + 1, &fam, cap, ctx.limits.max_group_order)?;
            let h = homology_report(&v.value.simplicial, k_max)?;
            outcome(
                v.verify().is_ok(),
                json!({
                    "functor_category": size(&v.functors.category),
                    "value": h,
                    "restrictions": v.restrictions.len(),
                }),
            )
        }
        Command::Cell { n, group } => {
            let g = ctx.group(group)?;
            let (i, cert) = generating_cell(*n, &g, ctx.limits.max_word_length)?;
            cert.verify()?;
            outcome(
                true,
                json!({ "boundary": size(i.domain()), "cell": size(i.codomain()), "certificate": cert.describe() }),
            )
        }
        Command::GammaCell { simplicial, index } => {
            let a = ctx.simplicial(simplicial)?;
            let j = ctx.category(index)?;
            let c = gamma_cell(&a, &j, ctx.limits.max_word_length)?;
            outcome(true, json!({ "size": size(&c), "category": c.describe() }))
        }
        Command::CogValidate { complex } => {
            let g = ctx.complex(complex)?;
            let non_injective: Vec<(String, String)> = g
                .non_injective_transitions()
                .into_iter()
                .map(|(x, y)| (g.name(x).to_string(), g.name(y).to_string()))
                .collect();
            outcome(true, json!({ "simple": g.is_simple(), "non_injective_transitions": non_injective, "complex": g.describe() }))
        }
        Command::CogAssemble { complex } => {
            let g = ctx.complex(complex)?;
            let c = associated_category(&g)?;
            let conditions = check_conditions(&c, Variant::Plain);
            outcome(conditions.holds(), json!({ "size": size(&c), "conditions": conditions, "category": c.describe() }))
        }
        Command::CogReconstruct { category, choices, variant } => {
            let c = ctx.category(category)?;
            let policy = parse_choices(choices)?;
            // the opposite variant reconstructs from Cᵒᵖ, where (b)ᵒᵖ becomes (b)
            let c = match variant {
                VariantArg::Plain => c,
                VariantArg::Opposite => Arc::new(opposite(&c)),
            };
            let conditions = check_conditions(&c, Variant::Plain);
            if !conditions.holds() {
                return outcome(false, json!({ "conditions": conditions }));
            }
            let r = reconstruct_complex(&c, &ReconstructionChoices::new(&c, policy))?;
            outcome(
                r.kappa.is_isomorphism(),
                json!({ "conditions": conditions, "kappa_isomorphism": r.kappa.is_isomorphism(), "complex": r.complex.describe() }),
            )
        }
        Command::Grothendieck { complex, index } => {
            let g = ctx.complex(complex)?;
            let diagram = simple_diagram(&g)?;
            let total = grothendieck(&diagram, cap)?;
            let mut result = json!({ "size": size(&total.category), "category": total.category.describe() });
            let mut positive = true;
            if let Some(path) = index {
                let i = ctx.category(path)?;
                let cmp = fun_grothendieck_comparison(&i, &diagram, k_max, cap)?;
                let summary = cmp.summary();
                positive = summary.isomorphism || summary.verdict.as_ref().is_some_and(|v| v.is_positive());
                result["comparison"] = to_value(&summary);
            }
            outcome(positive, result)
        }
        Command::Example { name } => match name {
            Demo::Fiedorowicz => {
                let m = FinMonoid::fiedorowicz();
                let n = nerve(&Arc::new(classifying_category(&m)), 4);
                let h = homology(&n.simplicial, 3)?;
                let z = HomologyGroup::integers();
                let sphere = h.groups == vec![z.clone(), HomologyGroup::zero(), z, HomologyGroup::zero()];
                outcome(sphere, json!({ "monoid": m.elements(), "sphere": sphere, "report": homology_report(&n.simplicial, 3)? }))
            }
            Demo::HornCounterexample => {
                let point = Arc::new(terminal());
                let p1 = Arc::new(poset_category(1));
                let d1 = FinFunctor::from_object_map(point.clone(), p1.clone(), &[0])?;
                let d0 = FinFunctor::from_object_map(point, p1.clone(), &[1])?;
                let cert = check_dwyer(&d1).map_err(|f| Error::Malformed(f.to_string()))?;
                let bc2 = Arc::new(classifying_category(FinGroup::cyclic(2).monoid()));
                let arrow = fun_preservation(&p1, &cert, &d0, cap, false)?;
                let group = fun_preservation(&bc2, &cert, &d0, cap, true)?;
                outcome(!arrow.isomorphism && group.isomorphism, json!({ "p[1]": arrow, "BC2": group }))
            }
        },
    }
}
