//! Polynomial paths through unions of convex polyhedra.
//!
//! A piecewise guide path made of cuspidal arcs, monomial bridges and segments
//! is smoothed by a Bernstein operator, corrected so that its jets at the
//! waypoints match exactly, and then certified to stay inside the regions.

// Negated comparisons deliberately reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bernstein;
pub mod bridges;
pub mod geometry;
pub mod interp;
pub mod planner;
pub mod poly;
