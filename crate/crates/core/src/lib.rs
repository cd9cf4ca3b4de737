//! Exact computer algebra for holomorphic contraction germs of (C^n, 0).
//!
//! Everything here is exact: coefficients are Gaussian rationals (complex
//! numbers with rational real and imaginary parts), eigenvalue comparisons
//! are rational identities, and linear systems are solved by rational
//! elimination. No floating point is used anywhere.
//!
//! The pipeline, in the order the modules build on each other:
//!
//! * [`polyring`] — sparse polynomials in z_1..z_n and their conjugates,
//!   with truncated self-map composition (jets).
//! * [`spectrum`] — contracting eigenvalue data and exact enumeration of
//!   resonances and extended (conjugate-aware) resonances.
//! * [`normalform`] — Poincare-Dulac normalization by degreewise homological
//!   correctors, verified by exact composition.
//! * [`linsys`] — exact affine solving over the rationals with deterministic
//!   pivoting and reproducible kernel bases.
//! * [`hypersurface`] — the invariant-hypersurface ansatz over extended
//!   resonances, the induced real-linear system, and its solution space.
//! * [`modelgeom`] — weighted homogeneity, formal curves, scaling limits,
//!   and a bounded monomial-curve search.
//!
//! [`demo`] holds a small worked example shared by tests and the CLI.

pub mod demo;
pub mod hypersurface;
pub mod linsys;
pub mod modelgeom;
pub mod normalform;
pub mod polyring;
pub mod spectrum;

pub use polyring::{BlockLayout, GaussRat, JetMap, MonoKey, Rat, RealPoly};
pub use spectrum::{ExtResonanceIndex, ResonanceIndex, Spectrum};
