//! Star products built from quantizer–dequantizer pairs.
//!
//! The crate covers four areas:
//!
//! * [`scheme`]: finite quantizer/dequantizer schemes, their symbols, star
//!   kernels (plain, dual and K-deformed), duality, scaling and transition
//!   kernels between schemes.
//! * [`lie`]: structure constants obtained by antisymmetrizing star kernels,
//!   Jacobi residuals, K-deformations of so(3) and of a type-B base algebra,
//!   and classification of three-dimensional real Lie algebras.
//! * [`phase_space`]: sampled functions on a square `(q, p)` grid, their
//!   Fourier images, and the pointwise, Moyal and Poisson products in Fourier
//!   representation, with the Grönewold kernel as a quadrature oracle.
//! * [`tomography`]: symplectic tomograms in ray representation, Radon
//!   transforms, pure-state tomograms, tomographic star products and their
//!   classical limit.
//!
//! Every numerical type is generic over [`Real`] (`f32` or `f64`); the
//! `*64` aliases below fix the scalar to `f64`.

pub mod error;
pub mod io;
pub mod lie;
pub mod matrix;
pub mod phase_space;
pub mod scalar;
pub mod scheme;
pub mod tomography;

pub use error::{Error, Result};
pub use matrix::ComplexSquareMatrix;
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type Matrix64 = matrix::ComplexSquareMatrix<f64>;
pub type Scheme64 = scheme::Scheme<f64>;
pub type StarKernel64 = scheme::StarKernel<f64>;
pub type Symbols64 = scheme::SymbolVector<f64>;
pub type StructureConstants64 = lie::StructureConstants<f64>;
pub type Grid64 = phase_space::Grid<f64>;
pub type GridFunction64 = phase_space::GridFunction<f64>;
pub type FourierFunction64 = phase_space::FourierFunction<f64>;
pub type Tomogram64 = tomography::Tomogram<f64>;

pub type Matrix32 = matrix::ComplexSquareMatrix<f32>;
pub type Scheme32 = scheme::Scheme<f32>;
pub type GridFunction32 = phase_space::GridFunction<f32>;
