//! Exact-arithmetic engine for finite-dimensional cocommutative Hopf algebras.
//!
//! Everything is a structure-constant computation over ℚ or a prime field 𝔽p:
//! a Hopf algebra is five dense matrices over a fixed basis, morphisms are
//! matrices, subobjects are canonical reduced-row-echelon subspaces, and every
//! categorical construction (Hopf kernels, cokernels, pullbacks, Huq
//! commutators, smash products, crossed-module ↔ cat¹ translations) reduces to
//! exact eliminations and membership checks. There is no floating point and no
//! randomness in any computation path, so every result is reproducible to the
//! byte.
//!
//! Layer map:
//! - [`field`], [`matrix`], [`subspace`]: exact scalars, dense matrices with
//!   sparse column evaluation, canonical subspaces.
//! - [`hopf`]: the axiom checker, morphism checker, tensor products, duals,
//!   largest subcoalgebras.
//! - [`groups`], [`construct`]: finite group tables (with brute-force oracles)
//!   and the constructors that turn them into Hopf data; smash products.
//! - [`categorical`]: kernels, cokernels, factorizations, pullbacks,
//!   equalizers, h-inverses, the subalgebra↔ideal correspondence, normality.
//! - [`commutator`]: commutation checks, Huq commutators, abelianization.
//! - [`xmod`]: module actions, crossed modules, reflexive graphs, cat¹
//!   structures, internal groupoids, and the equivalences between them.

pub mod categorical;
pub mod commutator;
pub mod construct;
pub mod error;
pub mod field;
pub mod groups;
pub mod hopf;
pub mod matrix;
pub mod report;
pub mod subspace;
pub mod xmod;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use hopf::{Hopf, HopfAlgebra, HopfMorphism, HopfSubalgebra, LeftIdealCoideal};
pub use matrix::Matrix;
pub use report::AxiomReport;
pub use subspace::Subspace;
