//! Finite truncated simplicial sets and simplicial spaces, the decreasing
//! degeneracy filtration, admissible-sequence calculus, exact integer
//! homology via sparse Smith normal form, and verifiers that certify the
//! stable splitting identities level by level in reduced homology.

pub mod calculus;
pub mod constructions;
pub mod filtration;
pub mod homology;
pub mod simplicial;
pub mod space;
pub mod splitting;
pub mod word;

pub use simplicial::{FiniteSimplicialSet, GenId, SimplexRef};
pub use space::{SimplicialSpace, SpaceMap};
pub use word::{AdmissibleSeq, DegeneracyWord};
