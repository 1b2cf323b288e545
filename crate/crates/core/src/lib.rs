//! Restricted Lie and post-Lie structures over finite fields.
//!
//! Everything is exact: scalars live in GF(p) or GF(p^k), free objects are
//! normalized to canonical bases, and every identity is checked by equality
//! of coefficients.
#![no_std]

extern crate alloc;

pub mod catalog;
pub mod combinat;
pub mod fdalgebra;
pub mod freelie;
pub mod freepostlie;
pub mod linalg;
pub mod pstruct;
pub mod report;
pub mod scalars;
