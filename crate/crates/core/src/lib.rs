//! Exact computations in the class algebra of the symmetric groups: class
//! expansions of symmetric functions in Jucys-Murphy elements, Weingarten
//! correlators of Haar unitaries, and their 1/N expansions.

pub mod algebra;
pub mod appendix;
pub mod characters;
pub mod class_expansion;
pub mod error;
pub mod json;
pub mod linalg;
pub mod montecarlo;
pub mod numbers;
pub mod partitions;
pub mod perm;
pub mod poly;
pub mod rational;
pub mod symfun;
pub mod transition;
pub mod weingarten;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use perm::{IndexTuple, Permutation};
