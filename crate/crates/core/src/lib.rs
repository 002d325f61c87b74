//! Exact generating functions for the arc types of depth-first search on
//! random digraphs with geometric outdegrees.
//!
//! The crate computes the tree generating functions `G_n` and their two
//! specializations `ĞX_n = G_n(w,x,z,z)` and `ĞY_n = G_n(w,z,x,z)` by exact
//! recursions, checks `ĞX_n = ĞY_n` (equidistribution of forward and back
//! arcs, jointly with loops, tree arcs and the remaining arcs), assembles the
//! whole-digraph function `F_n`, extracts exact arc-count distributions, and
//! cross-validates everything against a brute-force enumerator and a Monte
//! Carlo simulator.

pub mod algebra;
pub mod arcs;
pub mod cli;
pub mod enumeration;
mod error;
pub mod forest;
pub mod recursions;
pub mod simulator;

pub use error::{Error, Result};
