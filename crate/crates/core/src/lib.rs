//! Exact local entropy of monomial endomorphisms of local rings, Koszul
//! generators of the category of perfect complexes with finite-length
//! cohomology, and certified bounds on the triangulated entropy of the
//! derived pullback.

pub mod cli;
pub mod colength;
pub mod endo;
pub mod entropy;
pub mod error;
pub mod growth;
pub mod koszul;
pub mod linalg;
pub mod monomial;

pub use colength::{colength, colength_by_enumeration};
pub use endo::{MonomialMap, TransferSquare};
pub use error::{Error, Result};
pub use koszul::{GeneratorProfile, HomologyLengths, KoszulComplex};
pub use monomial::{krull_dimension, ExponentVector, MonomialIdeal, RingSpec};
