//! Exact-arithmetic toolkit and check runner for the icosahedral symmetry
//! of quadric and cubic threefolds in ℙ⁴.
//!
//! Everything is computed over a fixed cyclotomic field ℚ(ζ_N) with exact
//! rational coefficients: group orbits, invariant forms, singularity types,
//! curve containments, linear-system dimensions, birational images under
//! five-point Cremona maps, and divisor intersection numbers. The `checks`
//! module bundles the named verifications into a deterministic pass/fail
//! ledger driven by a JSON registry.

pub mod checks;
pub mod cremona;
pub mod cyclo;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod registry;
pub mod rng;
pub mod variety;

pub use cyclo::{Cyc, CycError, Field, Rat};
