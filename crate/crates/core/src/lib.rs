//! Dynamic distributed clustering over partitioned 2D point data.
//!
//! Each simulated node clusters its own fragment (DBSCAN or K-Means) and
//! reduces every local cluster to a boundary [`Contour`](geometry::Contour).
//! Contours then travel up a D-ary node tree, where group leaders merge the
//! ones that belong together. The root ends up holding the global clusters
//! without being told how many to look for.
//!
//! The crate is `no_std` and only needs `alloc`. Wall-clock time and thread
//! pools are injected through the [`Clock`] and [`Executor`] traits; the
//! `ddc` companion crate provides std-backed implementations, file formats
//! and the command-line front end.

#![no_std]

extern crate alloc;

pub mod data;
pub mod engine;
pub mod eval;
pub mod geometry;
pub mod local_cluster;
mod runtime;

pub use geometry::{Contour, Point2D, Polygon};
pub use local_cluster::{Labeling, NOISE};
pub use runtime::{Clock, Executor, NullClock, Sequential};
