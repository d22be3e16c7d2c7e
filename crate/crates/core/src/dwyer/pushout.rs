use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::certificate::DwyerCertificate;
use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, enumerate_functors_with, FinCategory, FinFunctor, Morphism};

/// Where an object or morphism of the pushout comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// an object or morphism of C
    C(usize),
    /// an object or morphism of B outside A
    V(usize),
    /// a C-morphism f: c → k(r(z)) read as a morphism c → z
    Mixed { f: usize, z: usize },
}

/// The pushout D of B ← A → C along a Dwyer map, with h: B → D and j: C → D.
#[derive(Clone, Debug)]
pub struct PushoutResult {
    pub category: Arc<FinCategory>,
    pub h: FinFunctor,
    pub j: FinFunctor,
    pub certificate: DwyerCertificate,
    pub k: FinFunctor,
    pub object_origin: Vec<Origin>,
    pub morphism_origin: Vec<Origin>,
}

/// Builds D by the explicit hom-set formulas: C and V = B ∖ A as full
/// subcategories, D(c, z) = C(c, k r z) for z ∈ V ∩ Z, nothing from V to C,
/// and β ∘ γ = k(r(β)) ∘ γ for β in V and γ mixed.
pub fn dwyer_pushout(cert: &DwyerCertificate, k: &FinFunctor) -> Result<PushoutResult> {
    let i = &cert.inclusion;
    let (b, c) = (cert.target().clone(), k.codomain().clone());
    if !Arc::ptr_eq(k.domain(), cert.source()) && **k.domain() != **cert.source() {
        return Err(Error::NotAFunctor("k does not start at the source of the Dwyer map".into()));
    }
    let mut in_a = vec![None; b.num_objects()];
    for (a, &y) in i.object_map().iter().enumerate() {
        in_a[y] = Some(a);
    }
    let v_objects: Vec<usize> = (0..b.num_objects()).filter(|&y| in_a[y].is_none()).collect();
    let nc = c.num_objects();
    let mut d_of_v = vec![usize::MAX; b.num_objects()];
    for (n, &y) in v_objects.iter().enumerate() {
        d_of_v[y] = nc + n;
    }
    let mut objects: Vec<String> = c.objects().iter().map(|o| format!("c:{o}")).collect();
    objects.extend(v_objects.iter().map(|&y| format!("v:{}", b.object_id(y))));
    let mut object_origin: Vec<Origin> = (0..nc).map(Origin::C).collect();
    object_origin.extend(v_objects.iter().map(|&y| Origin::V(y)));

    let mut morphisms: Vec<Morphism> = Vec::new();
    let mut morphism_origin = Vec::new();
    for f in 0..c.num_morphisms() {
        let m = c.morphism(f);
        morphisms.push(Morphism { id: format!("c:{}", m.id), src: m.src, tgt: m.tgt });
        morphism_origin.push(Origin::C(f));
    }
    let mut d_of_vmor = vec![usize::MAX; b.num_morphisms()];
    for f in 0..b.num_morphisms() {
        let m = b.morphism(f);
        if in_a[m.src].is_none() && in_a[m.tgt].is_none() {
            d_of_vmor[f] = morphisms.len();
            morphisms.push(Morphism { id: format!("v:{}", m.id), src: d_of_v[m.src], tgt: d_of_v[m.tgt] });
            morphism_origin.push(Origin::V(f));
        }
    }
    let mut mixed: HashMap<(usize, usize), usize> = HashMap::new();
    for &z in &v_objects {
        if cert.cosieve_position(z).is_none() {
            continue;
        }
        let krz = k.obj(cert.r_object(z));
        for cc in 0..nc {
            for &f in c.hom(cc, krz) {
                mixed.insert((f, z), morphisms.len());
                morphisms.push(Morphism {
                    id: format!("m:{}|{}", c.morphism(f).id, b.object_id(z)),
                    src: cc,
                    tgt: d_of_v[z],
                });
                morphism_origin.push(Origin::Mixed { f, z });
            }
        }
    }
    let identity: Vec<usize> = (0..nc)
        .map(|x| c.identity(x))
        .chain(v_objects.iter().map(|&y| d_of_vmor[b.identity(y)]))
        .collect();
    let kr = |beta: usize| k.mor(cert.r_morphism(beta));
    let category = FinCategory::build(objects, morphisms, identity, |g, f| match (morphism_origin[g], morphism_origin[f]) {
        (Origin::C(g), Origin::C(f)) => c.compose(g, f),
        (Origin::V(g), Origin::V(f)) => d_of_vmor[b.compose(g, f)],
        (Origin::Mixed { f: m, z }, Origin::C(f)) => mixed[&(c.compose(m, f), z)],
        (Origin::V(beta), Origin::Mixed { f, .. }) => mixed[&(c.compose(kr(beta), f), b.tgt(beta))],
        _ => unreachable!("composable pair of the pushout"),
    })?;
    let category = Arc::new(category);

    let h_obj: Vec<usize> = (0..b.num_objects())
        .map(|y| match in_a[y] {
            Some(a) => k.obj(a),
            None => d_of_v[y],
        })
        .collect();
    let h_mor: Vec<usize> = (0..b.num_morphisms())
        .map(|f| {
            let (s, t) = (b.src(f), b.tgt(f));
            match (in_a[s], in_a[t]) {
                (Some(_), Some(_)) => kr(f),
                (Some(_), None) => mixed[&(kr(f), t)],
                (None, None) => d_of_vmor[f],
                (None, Some(_)) => unreachable!("A is a sieve"),
            }
        })
        .collect();
    let h = FinFunctor::new(b.clone(), category.clone(), h_obj, h_mor)?;
    let j = FinFunctor::new(c.clone(), category.clone(), (0..nc).collect(), (0..c.num_morphisms()).collect())?;
    let p = PushoutResult { category, h, j, certificate: cert.clone(), k: k.clone(), object_origin, morphism_origin };
    p.verify()?;
    Ok(p)
}

impl PushoutResult {
    /// h∘i = j∘k, the shape of D, and the factorization f = h(ε_z) ∘ j(f) of mixed morphisms.
    pub fn verify(&self) -> Result<()> {
        let d = &self.category;
        let hi = self.certificate.inclusion.then(&self.h)?;
        let jk = self.k.then(&self.j)?;
        if hi.object_map() != jk.object_map() || hi.morphism_map() != jk.morphism_map() {
            return Err(Error::NotAFunctor("h∘i differs from j∘k".into()));
        }
        for f in 0..d.num_morphisms() {
            let (s, t) = (self.object_origin[d.src(f)], self.object_origin[d.tgt(f)]);
            if matches!((s, t), (Origin::V(_), Origin::C(_))) {
                return Err(Error::Malformed(format!("{} runs from V to C", d.morphism(f).id)));
            }
            if let Origin::Mixed { f: g, z } = self.morphism_origin[f] {
                let eps = self.h.mor(self.certificate.epsilon(z));
                if d.compose(eps, self.j.mor(g)) != f {
                    return Err(Error::Malformed(format!("{} does not factor through the counit", d.morphism(f).id)));
                }
            }
        }
        Ok(())
    }

    /// The forced mediator κ: D → E for a cocone (φ: B → E, ψ: C → E).
    pub fn mediator(&self, phi: &FinFunctor, psi: &FinFunctor) -> Result<FinFunctor> {
        let e = phi.codomain().clone();
        let object_map = self
            .object_origin
            .iter()
            .map(|o| match *o {
                Origin::C(x) => psi.obj(x),
                Origin::V(y) => phi.obj(y),
                Origin::Mixed { .. } => unreachable!("objects are not mixed"),
            })
            .collect();
        let morphism_map = self
            .morphism_origin
            .iter()
            .map(|o| match *o {
                Origin::C(f) => psi.mor(f),
                Origin::V(f) => phi.mor(f),
                Origin::Mixed { f, z } => e.compose(phi.mor(self.certificate.epsilon(z)), psi.mor(f)),
            })
            .collect();
        FinFunctor::new(self.category.clone(), e, object_map, morphism_map)
    }
}

/// Outcome of the exhaustive universal-property check against one category E.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalReport {
    pub cocones: usize,
    pub failures: Vec<String>,
}

impl UniversalReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn key(f: &FinFunctor) -> Vec<usize> {
    f.object_map().iter().chain(f.morphism_map()).copied().collect()
}

/// Enumerates every cocone (φ, ψ) with φ∘i = ψ∘k into E and checks that
/// exactly one functor κ: D → E satisfies κ∘h = φ and κ∘j = ψ.
pub fn verify_universal_property(p: &PushoutResult, e: &Arc<FinCategory>, cap: usize) -> Result<UniversalReport> {
    let i = &p.certificate.inclusion;
    let b = i.codomain();
    let c = p.k.codomain();
    let d = &p.category;
    let psis = enumerate_functors(c, e, cap)?;
    let mut by_restriction: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (n, psi) in psis.iter().enumerate() {
        by_restriction.entry(key(&p.k.then(psi)?)).or_default().push(n);
    }
    let phis = enumerate_functors(b, e, cap)?;
    let mut report = UniversalReport { cocones: 0, failures: Vec::new() };
    for phi in &phis {
        let Some(matching) = by_restriction.get(&key(&i.then(phi)?)) else { continue };
        for &n in matching {
            let psi = &psis[n];
            report.cocones += 1;
            let kappa = match p.mediator(phi, psi) {
                Ok(kappa) => kappa,
                Err(err) => {
                    report.failures.push(format!("cocone {}: forced mediator is not a functor ({err})", report.cocones));
                    continue;
                }
            };
            let hk = p.h.then(&kappa)?;
            let jk = p.j.then(&kappa)?;
            if key(&hk) != key(phi) || key(&jk) != key(psi) {
                report.failures.push(format!("cocone {}: mediator does not restrict correctly", report.cocones));
                continue;
            }
            // uniqueness: count all functors agreeing with φ and ψ on the images of h and j
            let mut objs = vec![None; d.num_objects()];
            let mut mors = vec![None; d.num_morphisms()];
            for y in 0..b.num_objects() {
                objs[p.h.obj(y)] = Some(phi.obj(y));
            }
            for f in 0..b.num_morphisms() {
                mors[p.h.mor(f)] = Some(phi.mor(f));
            }
            for x in 0..c.num_objects() {
                objs[p.j.obj(x)] = Some(psi.obj(x));
            }
            for f in 0..c.num_morphisms() {
                mors[p.j.mor(f)] = Some(psi.mor(f));
            }
            let all = enumerate_functors_with(d, e, &objs, &mors, cap)?;
            if all.len() != 1 {
                report.failures.push(format!("cocone {}: {} mediators", report.cocones, all.len()));
            }
        }
    }
    Ok(report)
}
