//! Exact computations with rank-one and rank-two affine Hecke algebras.

pub mod decomp;
pub mod heckemod;
pub mod linalg;
pub mod rootdata;
pub mod scalars;
pub mod suites;
pub mod tables;
pub mod weights;
