//! Finite category theory and global homotopy theory on desk-scale instances.
//!
//! Everything here works with explicitly enumerated finite data: categories are
//! stored by composition table, simplicial sets by face and degeneracy tables, and
//! groups by multiplication table. Homotopical statements are checked with
//! integer homology of truncated nerves.

pub mod cgroups;
pub mod corpus;
pub mod dwyer;
pub mod error;
pub mod fincat;
pub mod homology;
pub mod orbit;
pub mod simplicial;

pub use error::{Error, Result};
pub use fincat::{FinCategory, FinFunctor, FinGroup, FinMonoid, NatTransformation};
pub use simplicial::FinSimplicialSet;

/// Size caps shared by the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_functors: usize,
    pub max_group_order: usize,
    pub max_word_length: usize,
    pub max_simplices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_functors: 20_000, max_group_order: 24, max_word_length: 16, max_simplices: 200_000 }
    }
}
