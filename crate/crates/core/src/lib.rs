//! Binary and ternary digit decompositions of coordinate and momentum on
//! finite cyclic lattices.
//!
//! A lattice of `N = q^n` nodes (`q ∈ {2, 3}`) carries a coordinate `x̂` and a
//! momentum `p̂`. Each of them splits into digit operators, `x̂ = Σ q^s x̂_s`
//! and `p̂ = Σ q^r p̂_r`, and every momentum digit is a finite sum of
//! coordinate shifts `T_{-A}`. The crate builds these expansions, checks
//! them against the digit table conjugated by the discrete Fourier
//! transform, and evaluates the related renormalized sums, integrals and
//! commutators.
//!
//! Matrices are generic over the real scalar ([`Scalar`], implemented for
//! `f32` and `f64`); digit boundaries and lattice values are exact
//! rationals. Rows and columns list the coordinate nodes by decreasing
//! value in the lattice's basis labelling.

pub mod commutators;
pub mod digit_operators;
pub mod digits;
pub mod error;
pub mod expansion;
pub mod integral;
pub mod lattice;
pub mod matrix;
pub mod operators;
pub mod rational;
pub mod reference;
pub mod scalar;

pub use commutators::{
    commutation_support_table, commutator, coordinate_digit_series, coordinate_momentum_series,
    digit_digit_series, shift_sum_identity, symmetric_shift_sum_diagnostic, CommutatorPair,
    CommutatorReport, HBAR,
};
pub use digit_operators::{
    coordinate_digit, coordinate_digit_direct, coordinate_digit_expansion, coordinate_operator,
    line_digit_partial_sum, line_expansion_coefficients, momentum_digit, momentum_digit_expansion,
    momentum_digit_spectral, momentum_operator_spectral, reconstruct_coordinate,
    reconstruct_momentum, DigitOperatorRequest, Observable,
};
pub use digits::{
    digit, expand, geometric_renorm_constant, lattice_renormalize_method1_binary,
    lattice_renormalize_method2, plain_sum, renormalized_sum_line, ternary_method1_witness, Digit,
    DigitSequence, DigitSystem, Flavor,
};
pub use error::{Error, Result};
pub use expansion::{Domain, ShiftExpansion, ShiftSide};
pub use integral::{ln3_series_partial, renorm_integral_signed, ternary_integral};
pub use lattice::{
    Base, Boundary, LatticeKind, LatticeSpec, LatticeValue, Offset, Representation, MAX_DENSE_DIM,
};
pub use matrix::Matrix;
pub use operators::{
    arbitrary_shift, dft_matrix, inverse_fourier, momentum_phase_matrix, momentum_projector,
    rect_fourier_coefficients, shift_matrix,
};
pub use rational::ExactRational;
pub use scalar::Scalar;

/// Double-precision operator matrix.
pub type OperatorMatrix = Matrix<f64>;

/// Single-precision operator matrix.
pub type OperatorMatrix32 = Matrix<f32>;

/// Double-precision shift expansion.
pub type Expansion = ShiftExpansion<f64>;

/// Double-precision complex entry.
pub type Entry = num_complex::Complex<f64>;
