//! Noncommutative polynomials and the rewriting engine.

pub mod ncpoly;
pub mod rewrite;

pub use ncpoly::{fmt_word, parse_gen, word, GenId, NCPoly, Sym, Word};
pub use rewrite::{derive_rewrite_rules, derive_rules_where, ConfluenceViolation, RewriteSystem, DEFAULT_STEP_BUDGET};
