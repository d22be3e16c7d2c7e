pub mod monotone;
mod categorify;
mod ex;
mod nerve;
mod product;
mod sset;
mod subdivide;

pub use categorify::{categorify, categorify_map, counit, Categorification};
pub use ex::ex_truncated;
pub use nerve::{longest_nondegenerate_chain, nerve, nerve_map, Nerve};
pub use product::{sset_product, sset_pushout, SimplicialPushout};
pub use sset::{Face, FinSimplicialSet, SimplicialDescription, SimplicialMap, SkeletalPresentation};
pub use subdivide::{
    subdivide, subdivide_map, subdivide_map_twice, subdivide_twice, MaterialIndex, PresentationMap, Subdivision,
};
