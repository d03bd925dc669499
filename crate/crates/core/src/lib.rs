#![no_std]
//! Explicit involution witnesses in finite linear and alternating groups.
//!
//! Given a non-central element g, the constructor produces a short word
//! ∏ cᵢ g^{eᵢ} cᵢ⁻¹ (each cᵢ of determinant 1) whose product t is non-central
//! with t² = ±I. Brute-force oracles over fully enumerated small groups check
//! distances in class Cayley graphs, class-product counts, and the explicit
//! bound inequalities behind the existence results.

extern crate alloc;

pub mod canonical;
pub mod constructor;
pub mod gf;
pub mod matrix;
pub mod bounds;
pub mod oracle;
pub mod perm;

pub use gf::{make_field, Felt, Field, GfError};
pub use matrix::{Classification, CommutatorOrder, Family, GroupSpec, Mat, MatError};
