//! Exact (co)homology and K-theory of the crystallographic groups
//! `Z^n ⋊_ρ Z/p` with `ρ` acting freely away from the origin.

pub mod abelian;
pub mod crystal;
pub mod error;
pub mod int;
pub mod linalg;
pub mod repring;
pub mod verify;
pub mod zpmod;

pub use error::{Error, Result};
pub use int::Int;
