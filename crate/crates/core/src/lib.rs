//! Exact computations on weighted digraphs: oriented spanning tree
//! enumerators, Eulerian circuit counts, stationary distributions and
//! Kemeny's constant, together with the biclique-partition reductions that
//! compute them from a smaller digraph.
//!
//! Everything is exact rational arithmetic. Identities that hold for
//! indeterminate weights are checked by evaluating at random rational
//! points (see [`verify`]).

pub mod arborescence;
pub mod biclique;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod markov;
pub mod random;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{EdgeId, VertexId, WeightedDigraph};
pub use linalg::{Matrix, Polynomial};
pub use rational::Rational;
