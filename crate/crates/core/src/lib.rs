//! Traces of spectrally defined operators on the circle and the flat
//! torus, with rigorous series tail bounds.
//!
//! The crate has three layers:
//!
//! - scalar machinery: compensated summation ([`sum`]), special functions
//!   ζ, β, θ₃ and the Mellin transform with certified error bounds
//!   ([`special`]), and lattice sums over ℤ²∖{0} ([`lattice`]);
//! - finite-dimensional trace-class machinery: dense complex operators
//!   with adjoint, PSD square root, absolute value, canonical
//!   decomposition, trace norm, and the trace-equals-eigenvalue-sum check
//!   ([`finop`]), plus the classic basis-dependent diagonal-sum
//!   counterexamples ([`counterexamples`]);
//! - the spectral operators themselves: D⁻ⁿ on S¹ and S¹×S¹ and
//!   Pⁿ = (d*∘D⁻¹)ⁿ on the torus, with trace-class classification and
//!   constructive divergence certificates ([`torus`]).
//!
//! The numeric modules are generic over the scalar type through
//! `num_traits::Float`; the aliases below fix the common `f64`
//! instantiations. The operator modules are concrete over
//! `f64`/`Complex64`.

pub mod counterexamples;
pub mod error;
pub mod finop;
pub mod lattice;
pub mod special;
pub mod sum;
pub mod torus;

pub use error::{Error, Result};

/// `f64` value-with-bound, the common instantiation.
pub type BoundedValue = special::BoundedValue<f64>;
/// `f64` compensated accumulator.
pub type CompensatedSum = sum::CompensatedSum<f64>;
/// `f64` lattice sum outcome.
pub type SumOutcome = lattice::SumOutcome<f64>;
/// `f64` per-shell lattice row.
pub type ShellRow = lattice::ShellRow<f64>;
/// `f64` quadrature estimate.
pub type QuadEstimate = special::quad::QuadEstimate<f64>;
/// `f64` ψ-basis vector.
pub type PsiVector = counterexamples::PsiVector<f64>;
