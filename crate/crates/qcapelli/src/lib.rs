//! Exact computations in the quantum Weyl algebras attached to the symmetric
//! pairs (gl_n, so_n), (gl_2n, sp_2n) and (gl_n ⊕ gl_n, gl_n): rewriting to
//! PBW normal form, highest weight vectors, quantum Capelli operators and
//! their eigenvalues, compared against Knop-Sahi interpolation polynomials.

pub mod algebras;
pub mod capelli;
pub mod cli;
pub mod error;
pub mod family;
pub mod freealg;
pub mod knopsahi;
pub mod scalar;
pub mod uqmod;

pub use error::{Error, Result};
