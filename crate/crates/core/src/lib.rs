//! Exact-arithmetic engine for the deformation theory of curves on
//! anticanonical K3 surfaces inside prime Fano 3-folds.
//!
//! Given the genus g of a prime Fano 3-fold V and the class of a smooth
//! curve C on a K3 member S of |−K_V| — written against the hyperplane
//! class h and a line or conic E of V — the engine computes the degree and
//! genus of C, the cohomology of the relevant line bundles on S by a
//! certified rule system, the local dimension of the Hilbert-flag scheme at
//! (C, S) and of the Hilbert scheme at \[C\], and decides whether C is
//! obstructed, stably degenerate, and a general member of a generically
//! non-reduced component.
//!
//! Everything is exact integer arithmetic; nothing is ever estimated. When
//! a certificate is missing the engine answers Unknown instead of guessing.

pub mod catalog;
pub mod classifier;
pub mod cohomology;
pub mod error;
pub mod flag;
pub mod lattice;

pub use classifier::{
    classify, cross_check, mumford_family_row, CurveCase, DeformationReport, MumfordFamilyRow,
    SweepReport,
};
pub use cohomology::{chi_rr, coh_dims, CohDims, Entry};
pub use error::{Error, Result};
pub use flag::{EQuality, FlagInvariants, Trilean};
pub use lattice::{DivisorClass, EType, LatticeContext};
