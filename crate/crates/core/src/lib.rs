//! Nearly work-efficient parallel depth-first search for undirected graphs.
//!
//! The crate grows an initial DFS segment by absorbing an `O(√n)`-path
//! separator, splits the remaining graph into components of at most half
//! the size and recurses. The pieces are:
//!
//! * [`graph`], [`path`], [`components`], [`matching`]: graph storage,
//!   doubly-linked paths with list ranking, and the batch-parallel
//!   primitives everything else builds on.
//! * [`active`]: the decremental "t distinct active neighbours" structure
//!   used by the head matcher.
//! * [`separator`]: path separators built by repeated long/short path
//!   merging.
//! * [`forest`]: a batch-decremental level forest for connectivity plus a
//!   rake-and-compress hierarchy answering path queries.
//! * [`dfs`]: initial segments, absorption, the recursive driver and the
//!   verifiers.
//!
//! Parallelism is modelled as batch rounds counted by a [`WorkDepthMeter`];
//! sibling components can be dispatched through an [`Executor`].
#![no_std]

#[macro_use]
extern crate alloc;

pub mod active;
pub mod components;
pub mod dfs;
mod error;
pub mod forest;
pub mod graph;
pub mod matching;
mod meter;
mod mix;
pub mod path;
pub mod separator;

pub use dfs::{Executor, Sequential};
pub use error::{Error, Result};
pub use graph::{load_graph, Graph};
pub use meter::WorkDepthMeter;
pub use path::PathList;
