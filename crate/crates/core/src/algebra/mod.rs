//! Exact cyclotomic arithmetic and group-algebra tensors.

pub mod cyclotomic;
mod dual;
pub mod linalg;
mod tensor;

pub use cyclotomic::{CyclotomicField, CyclotomicNumber};
pub use dual::{
    check_dual_cocycle, embed_dual_cocycle, is_cocommutative_twist, r_matrix, slice_span,
    SliceSpan,
};
pub use linalg::EchelonBasis;
pub use tensor::GroupAlgebraTensor;
