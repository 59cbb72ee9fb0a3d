//! Shared fixtures for the benchmarks.

use schur_lattice::cartan::examples::b3;
use schur_lattice::gentle::{c2_presentation, string_module, tau_string};
use schur_lattice::modrep::generic_rigid;
use schur_lattice::{FieldSpec, GenModule, HPresentation, RootVector, TauDirection};

/// The B3 presentation and generic rigid modules of ranks `(1,2,2)` and `(1,1,1)`.
pub fn b3_pair() -> (HPresentation, GenModule, GenModule) {
    let pres = HPresentation::new(&b3(), FieldSpec::default());
    let m = generic_rigid(&pres, &RootVector(vec![1, 2, 2]), 0, 32).expect("rigid module exists");
    let n = generic_rigid(&pres, &RootVector(vec![1, 1, 1]), 0, 32).expect("rigid module exists");
    (pres, m, n)
}

/// The string module of `tau^{-m} P(3)` over the C~2 gentle algebra.
pub fn c2_preprojective(m: usize) -> (HPresentation, GenModule) {
    let pres = c2_presentation(FieldSpec::default());
    let w = tau_string(TauDirection::Minus, 2, m).expect("vertex 3 is defined");
    let module = string_module(&pres, &w).expect("valid string");
    (pres, module)
}
