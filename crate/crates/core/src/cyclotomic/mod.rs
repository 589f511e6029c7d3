//! Exact arithmetic in the group ring `Z[Z_n]` and its image `Z[ω]`.
//!
//! A group-ring element is a length-`n` coefficient vector. Its image under
//! `z ↦ ω` is represented by the remainder modulo the `n`-th cyclotomic
//! polynomial, which makes equality in `Z[ω]` a vector comparison.

mod group_ring;
mod kernel;
mod polynomial;
mod value;

pub use group_ring::{sigma, GroupRingElementOf, Subgroup};
pub use kernel::{
    classify_equal_image, decompose_kernel, in_subgroup_restricted_form,
    is_coset_constant_multiple, CosetConstancy, EqualImageClass, KernelDecomposition,
};
pub use polynomial::{cyclotomic_polynomial, div_rem_monic, reduction_table, IntPoly, ReductionTable};
pub use value::{is_in_kernel, reduce, CyclotomicValueOf};
