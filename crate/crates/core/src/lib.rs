pub mod arith;
pub mod blocks;
pub mod chartable;
pub mod conjecture;
pub mod corpus;
pub mod cyclo;
pub mod error;
pub mod modp;
pub mod permgroup;

pub use cyclo::{Cyclotomic, FiniteField, Fq, ModpReduction};
pub use error::{Error, Result};
pub use permgroup::{GroupDefinition, PermGroup, Permutation, Subgroup};
