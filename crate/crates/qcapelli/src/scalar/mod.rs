//! Exact scalars: the field ℚ(q), polynomials over it, and linear algebra.

pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod sympoly;

pub use linalg::{Echelon, Matrix, SparseVec};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use sympoly::SymPoly;
