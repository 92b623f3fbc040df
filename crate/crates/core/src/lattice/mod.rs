//! Exact integer linear algebra: dense big-integer matrices, Smith and
//! Hermite normal forms, and the finite abelian group arithmetic built on
//! them (quotients `L/nL`, subgroup enumeration, kernels of homomorphisms
//! restricted to subgroups).

mod finab;
mod hnf;
mod matrix;
mod snf;

pub use finab::{
    enumerate_quotient, kernel_of_hom_on_subgroup, subgroup_quotient_order, FinAbPresentation, KernelImage,
    DEFAULT_ENUMERATION_BUDGET,
};
pub(crate) use finab::check_modulus;
pub use hnf::{hermite_normal_form, Lattice};
pub use matrix::IntMatrix;
pub use snf::{kernel_basis, smith_normal_form, SmithForm};
