//! Sparse antisymmetric tensors on a chart.

mod blade;
mod endo;
mod matrix;
mod multi;
mod ops;

pub use blade::{blades, Blade};
pub use endo::Endo;
pub use matrix::Matrix;
pub use multi::{evaluate, exterior_map, iota, pairing, Cotangent, Form, Kind, Multi, MultiVector, Tangent};
pub(crate) use multi::check_chart;
pub use ops::{
    bivector_from_sharp, flat, flat_matrix, invert_flat, is_nondegenerate, lower_3, pull_multivector, push_form,
    raise_3, sharp, sharp_matrix,
};
