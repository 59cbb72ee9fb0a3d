//! Computational toolkit for symmetrizable Cartan data `(C, D, Omega)`:
//! real and real Schur roots, the algebra `H = H_F(C, D, Omega)` with its
//! locally free modules, and exchange graphs of support tilting pairs.
//!
//! Indices are 0-based throughout the library API. File formats and the CLI
//! use 1-based vertex labels.

pub mod algebra;
pub mod cartan;
pub mod error;
pub mod field;
pub mod gentle;
pub mod modrep;
pub mod schur;
pub mod tilting;
pub mod weyl;

pub use cartan::{CartanData, CartanJson, LocalConstants, RootVector};
pub use error::{Error, Result};
pub use field::{FieldSpec, Mat};
pub use gentle::{StringWord, TauDirection};
pub use algebra::{GenModule, HPresentation};
pub use modrep::{EndReport, HomBasis};
pub use schur::{braid_move, dual_schur_check, enumerate_schur, BraidDirection, ExceptionalSequence};
pub use tilting::{ExchangeGraph, RigidAtlas, SupportTiltingPair};
pub use weyl::{dual_root, real_roots, reflect, RootSet, WeylElement};
