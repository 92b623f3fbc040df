//! Branches of a plane curve germ: Puiseux data, parametrizations, equations
//! and the numerical invariants built from them.

mod germ;
mod poly;
mod puiseux;
mod series;

pub use germ::{
    germ_invariants, intersection_multiplicity, monomial_parametrization, BranchFile, BranchSpec, GermFile,
    GermInvariants, GermSpec, IntersectionEntry, Parametrization, ParametrizationFile, Provenance,
};
pub use poly::Polynomial;
pub use puiseux::{semigroup_and_delta, PuiseuxCharacteristic, SemigroupData};
pub use series::TruncatedSeries;
