//! Counting tuples of monic polynomials over F_q whose pairwise coprimality
//! is prescribed by a graph: exact counts, graph polynomials, Euler-product
//! densities with rigorous truncation intervals, and explicit error bounds.

pub mod census;
pub mod graphpoly;
pub mod polyfq;
pub mod real;

pub use census::{Budgets, CensusError};
pub use graphpoly::{CoprimalityGraph, GraphError, GraphPolynomial, PolyKind};
pub use polyfq::{FieldCtx, MonicPoly, PolyError};
