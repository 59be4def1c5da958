//! Exact values of Bernstein projectors, depth sums `e_d` and cumulative
//! projectors `σ_d` for `SL(2)` over a p-adic field with odd residue
//! characteristic, together with the brute-force machinery used to verify
//! them: finite-field character sums, cuspidal character tables of
//! `SL(2, F_q)`, and truncated-lattice Fourier transforms on `sl(2)`.
//!
//! Modules, bottom-up:
//!
//! * [`qfield`]: prime-field arithmetic, exact cyclotomic sums, Gauss sums.
//! * [`sl2fq`]: `SL(2, F_q)` and `sl(2, F_q)` by brute force.
//! * [`classes`]: regular semisimple class descriptors of `SL(2, F)`.
//! * [`projectors`]: principal series, depth-zero, integral and
//!   half-integral depth values, `σ_d`, census data.
//! * [`latticeft`]: principal-value Fourier transforms of `1_{g_r}`.
//! * [`cli`]: table emission and verification suites behind the `bernstein`
//!   binary.

pub mod classes;
pub mod cli;
pub mod error;
pub mod latticeft;
pub mod projectors;
pub mod qfield;
pub mod scalar;
pub mod sl2fq;

pub use error::{Error, Result};
pub use scalar::{Depth, HalfInt, QPow, Scalar};

/// Exact scalar used for every verification path.
pub type Exact = num_rational::BigRational;
/// Floating scalar, for display only.
pub type Approx = f64;

/// A symbolic `coeff · q^e` with exact rational coefficient.
pub type ExactQPow = QPow<Exact>;
