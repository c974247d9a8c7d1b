#![no_std]
//! Exact algebra kernels for covering quantum Borcherds algebras and quiver Hecke
//! superalgebras: Laurent scalars with a parity variable, Borcherds–Cartan superdata, the
//! twisted free algebra and its bilinear form, the boson realization, the polynomial
//! representation and straightening of `R(ν)`, and graded-dimension checks.

extern crate alloc;

pub mod boson;
pub mod covering;
pub mod datum;
pub mod ktheory;
pub mod linalg;
pub mod perm;
pub mod qhsa;
pub mod scalar;
pub mod superpoly;
