//! Bounded chain complexes over a field and the operations on them:
//! homology, cones, tensor and hom complexes, smart truncation.
//!
//! Grading is homological (`d` lowers degree). The cone of `f: A -> B` is
//! `A[1] ⊕ B` with `d(a, b) = (-d a, f a + d b)`, and the shift
//! `(C[s])_k = C_{k-s}` carries the differential `(-1)^s d`.

mod complex;
mod map;
mod ops;

pub use complex::ChainComplex;
pub use map::ChainMap;
pub use ops::{
    compose_tensor, cone, cone_map, factor_through, hom_complex, hom_post, hom_pre, homology, homology_map, is_quasi_iso, quotient,
    subcomplex, tensor, tensor_associator, tensor_dual_to_hom, tensor_maps, tensor_swap, truncate, ConeResult, TruncationMode,
};

pub(crate) use ops::{associator_permutation, compose_tensor_component, cone_complex, cone_map_unchecked, hom_blocks};
