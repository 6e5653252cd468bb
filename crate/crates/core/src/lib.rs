//! Exact computation with N-complexes of finite-dimensional vector spaces over
//! prime fields.
//!
//! An N-complex is a ℤ-graded vector space with degree-one maps `d` such that
//! any `N` consecutive maps compose to zero. This crate provides
//!
//! - [`exactla`]: dense linear algebra over `F_p`,
//! - [`ncomplex`]: finite-support N-complexes, indecomposables `M_i^l`,
//!   direct sums and seeded random instances,
//! - [`cohomology`]: amplitude cohomology `Ker d^a / Im d^(N-a)` and the
//!   contraction to ordinary 2-complexes,
//! - [`decompose`]: recovery of the Krull–Schmidt multiset from amplitude
//!   cohomology and dimension counting,
//! - [`tensor`]: the q-twisted tensor product and its Clebsch–Gordan rules,
//! - [`homext`]: chain-map spaces, projective resolutions in the positive
//!   category and Ext dimensions.

pub mod cohomology;
pub mod decompose;
pub mod error;
pub mod exactla;
pub mod homext;
pub mod ncomplex;
pub mod tensor;

pub use cohomology::{ah_dim, ah_indec, ah_table, contract, h2_dim, is_acyclic, is_projective, AHTable};
pub use decompose::{decompose, iso, peel_nonprojectives, stably_equal};
pub use error::{Error, Result, Violation};
pub use exactla::{primitive_root_of_unity, Matrix, PrimeField, Scalar};
pub use homext::{ext_dim, hom_dim, is_injective_positive, is_positive, projective_cover, projective_resolution};
pub use ncomplex::{random_multiset, random_ncomplex, Indec, NComplex, SummandMultiset};
pub use tensor::{clebsch_gordan, fusion_check, tensor, RootOfUnity};
