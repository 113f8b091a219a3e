//! Finite-dimensional C*-algebras in matrix-unit coordinates, linear maps
//! and functionals between them, subalgebra closure and block decomposition.

mod algebra;
mod map;
mod subspace;
mod wedderburn;

pub use algebra::{tensor, tensor_elements, Classification, Element, FdCStarAlgebra, TensorIndex, Tolerance};
pub use map::{slice, slice_left, slice_map, tensor_functionals, tensor_maps, Functional, LinearMap};
pub use subspace::{generated_star_subalgebra, Subspace};
pub use wedderburn::{wedderburn, Wedderburn};
