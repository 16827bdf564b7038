//! Explicit inversion of irreducible tridiagonal matrices.
//!
//! A size-`n + 2` tridiagonal matrix with nonzero off-diagonals is pinned
//! down by two fundamental solutions of its three-term recurrence, one from
//! each end. This crate computes those sequences in overflow-safe scaled
//! arithmetic and assembles from them the determinant, any inverse entry in
//! O(1), full inverses in O(n^2), and linear solves in O(n) — plus closed
//! forms for constant-coefficient instances in terms of second-kind
//! Chebyshev polynomials.
//!
//! Three independent routes to the same objects are kept deliberately
//! separate so they can check each other: the recurrence machinery in
//! [`schrodinger`] and [`sturm_liouville`], the scaled closed-form path in
//! [`chebyshev`] and [`inverse`], and the naive dense algebra in [`oracle`].
//!
//! All values are immutable after construction; computations allocate their
//! outputs, so everything here is safe to share across threads.

pub mod chebyshev;
pub mod dense;
pub mod error;
pub mod instances;
pub mod inverse;
pub mod model;
pub mod oracle;
pub mod schrodinger;
pub mod sturm_liouville;

mod scaled;

pub use dense::DenseMatrix;
pub use error::Error;
pub use inverse::{ConstantInteriorSpec, InverseResult, ToeplitzSpec};
pub use model::{GridFunction, JacobiCoefficients};
pub use scaled::ScaledValue;
pub use sturm_liouville::{KernelMatrix, RegularityReport};

/// Default relative tolerance for singularity verdicts.
pub const DEFAULT_SINGULARITY_TOL: f64 = 1e-10;
