//! Finite categories, functors, natural transformations and functor categories.

mod category;
mod constructions;
mod enumerate;
mod equivalence;
mod functor;
mod funcat;
mod mobjects;
mod monoid;
mod poset;

pub use category::{CategoryDescription, FinCategory, Morphism, MorphismDescription};
pub use constructions::*;
pub use enumerate::{enumerate_functors, enumerate_functors_with, enumerate_transformations};
pub use equivalence::{
    check_equivalence, validate_homotopy_witness, ChainDirection, EquivalenceFailure, EquivalenceVerdict,
    EquivalenceWitness,
};
pub use functor::{FaithfulFailure, FinFunctor, FunctorDescription, NatTransformation};
pub use funcat::{functor_category, FunctorCategory};
pub use mobjects::{m_objects_iso, MObjects};
pub use monoid::{abelian_order_profile, FinGroup, FinMonoid, MonoidDescription};
pub use poset::{is_strongly_connected, poset_reflection, Poset};
