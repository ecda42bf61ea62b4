//! Exact-arithmetic homological algebra for finite-dimensional
//! Z2-graded (super) algebras.
//!
//! The crate computes super Hochschild homology with coefficients in a
//! graded bimodule and machine-checks Morita invariance: for a context
//! (A, B, P, Q) with P ⊗_B Q ≅ A and Q ⊗_A P ≅ B, the homologies
//! H_*(A, P ⊗_B Q) and H_*(B, Q ⊗_A P) agree degreewise. The check runs
//! over the rationals or a prime field, entirely without rounding.
//!
//! Layering, bottom to top:
//!
//! * [`exactlin`]: exact scalars and sparse matrices (rank, kernel, solve,
//!   quotient bases).
//! * [`tensor`]: row-major index bookkeeping for tensor-product bases.
//! * [`superalg`]: superalgebras with structure constants, validation,
//!   graded tensor products, supercommutators.
//! * [`bimod`]: graded bimodules, balanced tensor products as explicit
//!   quotients, the coefficient modules of the double complex.
//! * [`hochschild`]: the super Hochschild complex, its homology, and the
//!   bar-resolution contraction underlying the vanishing arguments.
//! * [`morita`]: the double complex C_{m,n} = P⊗Bⁿ⊗Q⊗Aᵐ, its two
//!   differentials and rotation, total complex, filtration pages, and the
//!   invariance verdict.
//! * [`builders`]: a catalog of validated algebras and Morita contexts.

// Structure-constant tables are nested index tuples by nature, and the
// index-juggling loops read better with explicit positions.
#![allow(clippy::type_complexity, clippy::needless_range_loop)]

pub mod bimod;
pub mod builders;
pub mod error;
pub mod exactlin;
pub mod hochschild;
pub mod morita;
pub mod superalg;
pub mod tensor;

pub use bimod::{
    coefficient_bimodule, regular_bimodule, tensor_ground, tensor_over, BalancedTensor,
    GradedBimodule,
};
pub use builders::MoritaContext;
pub use error::Error;
pub use exactlin::{FieldTag, Scalar, SparseMatrix};
pub use hochschild::{ChainComplex, HomologyTable};
pub use morita::{
    build_double_complex, verify_morita_invariance, DoubleComplex, E2Pages, MoritaReport,
    RotationSign,
};
pub use superalg::{BasisElement, Parity, SuperAlgebra, SuperVector, ValidationReport};
pub use tensor::TensorShape;
