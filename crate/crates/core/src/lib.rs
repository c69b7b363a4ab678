//! Exact arithmetic, factorization and Mahler-measure tools for the sparse
//! integer polynomial families that show up in Dehn-filling trace fields and
//! Teichmüller-polynomial specializations.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; IO, parsing and the command line live in the
//! `fewnomial` companion crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod arith;
pub mod cyclofactor;
mod error;
pub mod gaussian;
pub mod mahler;
pub mod polyring;
pub mod teichmuller;
pub mod whitehead;
pub mod zfactor;

pub use cyclofactor::{cyclotomic_part, cyclotomic_poly, three_part_split, FactorParts};
pub use error::{Error, Result};
pub use mahler::{MahlerEstimate, MahlerMethod};
pub use polyring::{gcd_z, IntPoly, SparseRep};
pub use teichmuller::BivarPoly;
pub use zfactor::{factor_z, Factorization, FactorConfig};
