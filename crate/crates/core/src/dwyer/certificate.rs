use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{full_subcategory, functor_category, FinCategory, FinFunctor, FunctorCategory, NatTransformation};

/// Why a functor is not (recognized as) a Dwyer map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "obstruction", rename_all = "snake_case")]
pub enum DwyerFailure {
    NotInjectiveOnObjects { object: String },
    NotFullyFaithful { source: String, target: String },
    NotSieve { morphism: String },
    NoRightAdjoint { object: String },
}

impl std::fmt::Display for DwyerFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DwyerFailure::NotInjectiveOnObjects { object } => write!(f, "two objects map to {object}"),
            DwyerFailure::NotFullyFaithful { source, target } => write!(f, "not fully faithful on ({source}, {target})"),
            DwyerFailure::NotSieve { morphism } => write!(f, "{morphism} enters the image from outside"),
            DwyerFailure::NoRightAdjoint { object } => write!(f, "no terminal object in the comma category over {object}"),
        }
    }
}

/// Checkable evidence that i: A → B is a Dwyer map, normalized so that W is the
/// cosieve generated by A, r is the identity on A, and so is the counit there.
#[derive(Clone, Debug)]
pub struct DwyerCertificate {
    pub inclusion: FinFunctor,
    /// objects of B in W, ascending
    pub cosieve: Vec<usize>,
    pub cosieve_category: Arc<FinCategory>,
    /// W → B
    pub cosieve_inclusion: FinFunctor,
    /// r: W → A
    pub retraction: FinFunctor,
    /// ε: i∘r ⇒ Id_W, as functors W → W
    pub counit: NatTransformation,
    // B-morphism → W-morphism
    w_morphism: Vec<Option<usize>>,
}

/// Id-level form of a certificate, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDescription {
    pub cosieve: Vec<String>,
    pub retraction_objects: Vec<(String, String)>,
    pub retraction_morphisms: Vec<(String, String)>,
    pub counit: Vec<(String, String)>,
}

fn a_preimage(i: &FinFunctor) -> Vec<Option<usize>> {
    let mut pre = vec![None; i.codomain().num_objects()];
    for (a, &b) in i.object_map().iter().enumerate() {
        pre[b] = Some(a);
    }
    pre
}

/// Objects of B reachable from the image of i.
fn generated_cosieve(i: &FinFunctor) -> Vec<usize> {
    let b = i.codomain();
    let mut inside = vec![false; b.num_objects()];
    for &x in i.object_map() {
        for &f in b.outgoing(x) {
            inside[b.tgt(f)] = true;
        }
        inside[x] = true;
    }
    (0..b.num_objects()).filter(|&x| inside[x]).collect()
}

/// Checks the definition directly and searches for the right adjoint on the
/// cosieve generated by A, one object at a time via terminal objects of comma categories.
pub fn check_dwyer(i: &FinFunctor) -> std::result::Result<DwyerCertificate, DwyerFailure> {
    let (a, b) = (i.domain().clone(), i.codomain().clone());
    let pre = a_preimage(i);
    if !i.is_injective_on_objects() {
        let mut seen = vec![false; b.num_objects()];
        for &y in i.object_map() {
            if seen[y] {
                return Err(DwyerFailure::NotInjectiveOnObjects { object: b.object_id(y).to_string() });
            }
            seen[y] = true;
        }
    }
    if let Some((x, y, _)) = i.fully_faithful_failure() {
        return Err(DwyerFailure::NotFullyFaithful { source: a.object_id(x).to_string(), target: a.object_id(y).to_string() });
    }
    for f in 0..b.num_morphisms() {
        if pre[b.tgt(f)].is_some() && pre[b.src(f)].is_none() {
            return Err(DwyerFailure::NotSieve { morphism: b.morphism(f).id.clone() });
        }
    }
    let cosieve = generated_cosieve(i);
    // (r z, ε_z) for each z, by terminal objects of (A ↓ z)
    let mut r_obj = Vec::with_capacity(cosieve.len());
    let mut eps = Vec::with_capacity(cosieve.len());
    for &z in &cosieve {
        if let Some(az) = pre[z] {
            r_obj.push(az);
            eps.push(b.identity(z));
            continue;
        }
        let mut found = None;
        'cand: for a0 in 0..a.num_objects() {
            for &e in b.hom(i.obj(a0), z) {
                // every f: i(a) → z factors uniquely as e ∘ i(g)
                let terminal = (0..a.num_objects()).all(|x| {
                    let mut hits = vec![0u8; b.num_morphisms()];
                    for &g in a.hom(x, a0) {
                        hits[b.compose(e, i.mor(g))] += 1;
                    }
                    b.hom(i.obj(x), z).iter().all(|&f| hits[f] == 1)
                        && a.hom(x, a0).len() == b.hom(i.obj(x), z).len()
                });
                if terminal {
                    found = Some((a0, e));
                    break 'cand;
                }
            }
        }
        let Some((a0, e)) = found else {
            return Err(DwyerFailure::NoRightAdjoint { object: b.object_id(z).to_string() });
        };
        r_obj.push(a0);
        eps.push(e);
    }
    Ok(assemble(i, cosieve, r_obj, eps))
}

/// Builds the certificate data from r on objects and the counit components;
/// r on morphisms is forced by the universal property of ε.
fn assemble(i: &FinFunctor, cosieve: Vec<usize>, r_obj: Vec<usize>, eps: Vec<usize>) -> DwyerCertificate {
    let (a, b) = (i.domain().clone(), i.codomain().clone());
    let (w, w_inc) = full_subcategory(&b, &cosieve);
    let r_mor: Vec<usize> = (0..w.num_morphisms())
        .map(|m| {
            let (s, t) = (w.src(m), w.tgt(m));
            let u = w_inc.mor(m);
            let target = b.compose(u, eps[s]);
            *a.hom(r_obj[s], r_obj[t])
                .iter()
                .find(|&&g| b.compose(eps[t], i.mor(g)) == target)
                .expect("ε is universal")
        })
        .collect();
    let retraction = FinFunctor::new(w.clone(), a.clone(), r_obj, r_mor).expect("right adjoint is a functor");
    // i∘r and the identity as functors W → W
    let pos: std::collections::HashMap<usize, usize> = cosieve.iter().enumerate().map(|(k, &z)| (z, k)).collect();
    let w_mor: std::collections::HashMap<usize, usize> = (0..w.num_morphisms()).map(|m| (w_inc.mor(m), m)).collect();
    let ir = FinFunctor::new(
        w.clone(),
        w.clone(),
        retraction.object_map().iter().map(|&x| pos[&i.obj(x)]).collect(),
        retraction.morphism_map().iter().map(|&g| w_mor[&i.mor(g)]).collect(),
    )
    .expect("i∘r is a functor");
    let counit = NatTransformation::new(ir, FinFunctor::identity(w.clone()), eps.iter().map(|e| w_mor[e]).collect())
        .expect("counit is natural");
    let mut w_morphism = vec![None; b.num_morphisms()];
    for (m, &f) in w_inc.morphism_map().iter().enumerate() {
        w_morphism[f] = Some(m);
    }
    DwyerCertificate {
        inclusion: i.clone(),
        cosieve,
        cosieve_category: w,
        cosieve_inclusion: w_inc,
        retraction,
        counit,
        w_morphism,
    }
}

impl DwyerCertificate {
    pub fn source(&self) -> &Arc<FinCategory> {
        self.inclusion.domain()
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        self.inclusion.codomain()
    }

    /// Position of a B-object in W.
    pub fn cosieve_position(&self, z: usize) -> Option<usize> {
        self.cosieve.binary_search(&z).ok()
    }

    /// r on a B-object of W.
    pub fn r_object(&self, z: usize) -> usize {
        self.retraction.obj(self.cosieve_position(z).expect("object in the cosieve"))
    }

    /// r on a B-morphism between objects of W.
    pub fn r_morphism(&self, f: usize) -> usize {
        let m = self.w_morphism[f].expect("morphism in the cosieve");
        self.retraction.mor(m)
    }

    /// The counit component at a B-object of W, as a B-morphism.
    pub fn epsilon(&self, z: usize) -> usize {
        self.cosieve_inclusion.mor(self.counit.component(self.cosieve_position(z).expect("object in the cosieve")))
    }

    /// Re-checks everything from scratch.
    pub fn verify(&self) -> Result<()> {
        let fail = |s: String| Err(Error::Malformed(format!("Dwyer certificate: {s}")));
        let i = &self.inclusion;
        i.verify()?;
        let (a, b) = (i.domain(), i.codomain());
        if !i.is_injective_on_objects() || i.fully_faithful_failure().is_some() {
            return fail("inclusion is not a fully faithful embedding".into());
        }
        let pre = a_preimage(i);
        if (0..b.num_morphisms()).any(|f| pre[b.tgt(f)].is_some() && pre[b.src(f)].is_none()) {
            return fail("image is not a sieve".into());
        }
        if self.cosieve != generated_cosieve(i) {
            return fail("W is not the cosieve generated by A".into());
        }
        let (w, r) = (&self.cosieve_category, &self.retraction);
        self.cosieve_inclusion.verify()?;
        r.verify()?;
        self.counit.verify()?;
        if self.cosieve_inclusion.object_map() != self.cosieve.as_slice() {
            return fail("W does not match its inclusion".into());
        }
        for x in 0..a.num_objects() {
            let z = self.cosieve_position(i.obj(x)).expect("A lies in W");
            if r.obj(z) != x || !w.is_identity(self.counit.component(z)) {
                return fail(format!("r or ε is not the identity at {}", a.object_id(x)));
            }
        }
        for g in 0..a.num_morphisms() {
            if self.r_morphism(i.mor(g)) != g {
                return fail(format!("r∘i differs from the identity at {}", a.morphism(g).id));
            }
        }
        // A(x, r z) → B(i x, z), g ↦ ε_z ∘ i(g) is a bijection
        for (k, &z) in self.cosieve.iter().enumerate() {
            let e = self.epsilon(z);
            for x in 0..a.num_objects() {
                let lhs = a.hom(x, r.obj(k));
                let rhs = b.hom(i.obj(x), z);
                let mut img: Vec<usize> = lhs.iter().map(|&g| b.compose(e, i.mor(g))).collect();
                img.sort_unstable();
                img.dedup();
                if img.len() != lhs.len() || img.len() != rhs.len() {
                    return fail(format!("adjunction bijection fails at ({}, {})", a.object_id(x), b.object_id(z)));
                }
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> CertificateDescription {
        let (a, b) = (self.source(), self.target());
        let w = &self.cosieve_category;
        CertificateDescription {
            cosieve: self.cosieve.iter().map(|&z| b.object_id(z).to_string()).collect(),
            retraction_objects: (0..w.num_objects())
                .map(|k| (w.object_id(k).to_string(), a.object_id(self.retraction.obj(k)).to_string()))
                .collect(),
            retraction_morphisms: (0..w.num_morphisms())
                .filter(|&m| !w.is_identity(m))
                .map(|m| (w.morphism(m).id.clone(), a.morphism(self.retraction.mor(m)).id.clone()))
                .collect(),
            counit: (0..w.num_objects())
                .map(|k| (w.object_id(k).to_string(), w.morphism(self.counit.component(k)).id.clone()))
                .collect(),
        }
    }
}

/// The certificate for Fun(I, i): Fun(I, A) → Fun(I, B), with the functor
/// categories it lives between.
#[derive(Clone, Debug)]
pub struct InducedDwyer {
    pub certificate: DwyerCertificate,
    pub fun_a: FunctorCategory,
    pub fun_b: FunctorCategory,
}

/// Fun(I, −) applied to a certificate: the right adjoint is Fun(I, r) on functors
/// landing in W, with counit components ε_{G(x)}; the result is restricted to
/// the cosieve generated by Fun(I, A) and re-verified.
pub fn induced_dwyer(cert: &DwyerCertificate, index: &Arc<FinCategory>, cap: usize) -> Result<InducedDwyer> {
    let fun_a = functor_category(index, cert.source(), cap)?;
    let fun_b = functor_category(index, cert.target(), cap)?;
    let fi = fun_a.postcompose(&cert.inclusion, &fun_b)?;
    let i = &cert.inclusion;
    let cosieve_obj = generated_cosieve(&fi);
    let mut r_obj = Vec::with_capacity(cosieve_obj.len());
    let mut eps = Vec::with_capacity(cosieve_obj.len());
    for &gz in &cosieve_obj {
        let g = &fun_b.functors[gz];
        if g.object_map().iter().any(|&y| cert.cosieve_position(y).is_none()) {
            return Err(Error::Malformed("a functor in the generated cosieve leaves W".into()));
        }
        // r∘G
        let rg = FinFunctor::new(
            index.clone(),
            cert.source().clone(),
            g.object_map().iter().map(|&y| cert.r_object(y)).collect(),
            g.morphism_map().iter().map(|&f| cert.r_morphism(f)).collect(),
        )?;
        r_obj.push(fun_a.functor_index(&rg).ok_or_else(|| Error::Malformed("r∘G missing".into()))?);
        let comps: Vec<usize> = g.object_map().iter().map(|&y| cert.epsilon(y)).collect();
        let irg = rg.then(i)?;
        let t = NatTransformation::new(irg, g.clone(), comps)?;
        eps.push(fun_b.transformation_index(&t).ok_or_else(|| Error::Malformed("counit component missing".into()))?);
    }
    let certificate = assemble(&fi, cosieve_obj, r_obj, eps);
    certificate.verify()?;
    Ok(InducedDwyer { certificate, fun_a, fun_b })
}

/// The certificate for i × I: A × I → B × I.
pub fn product_dwyer(cert: &DwyerCertificate, index: &Arc<FinCategory>) -> Result<DwyerCertificate> {
    let (a, b) = (cert.source(), cert.target());
    let ai = Arc::new(crate::fincat::product(a, index));
    let bi = Arc::new(crate::fincat::product(b, index));
    let ni = index.num_objects();
    let nim = index.num_morphisms();
    let fi = FinFunctor::new(
        ai.clone(),
        bi.clone(),
        (0..ai.num_objects()).map(|o| cert.inclusion.obj(o / ni) * ni + o % ni).collect(),
        (0..ai.num_morphisms()).map(|m| cert.inclusion.mor(m / nim) * nim + m % nim).collect(),
    )?;
    let cosieve: Vec<usize> = cert.cosieve.iter().flat_map(|&z| (0..ni).map(move |x| z * ni + x)).collect();
    let r_obj = cosieve.iter().map(|&o| cert.r_object(o / ni) * ni + o % ni).collect();
    let eps = cosieve.iter().map(|&o| cert.epsilon(o / ni) * nim + index.identity(o % ni)).collect();
    let certificate = assemble(&fi, cosieve, r_obj, eps);
    certificate.verify()?;
    Ok(certificate)
}
