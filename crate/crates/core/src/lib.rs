//! Exact linear algebra of Hankel matrices over finite fields, with the
//! counting, divisor-variance and exponential-sum machinery built on it.
//!
//! Everything here is `no_std` + `alloc`; the `std` feature only enables
//! `std::error::Error` integration through `thiserror`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod ffield;
pub mod fpoly;
pub mod linalg;
pub mod hankel;
pub mod census;
pub mod divisor;
pub mod cyclosum;
