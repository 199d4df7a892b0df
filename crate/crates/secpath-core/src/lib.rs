//! Minimum-exposure ("secluded") path planning in 2D polygonal domains.
//!
//! The crate provides an exact rational geometric kernel (predicates,
//! polygons with holes, triangulation, planar arrangements), visibility
//! polygons and visibility graphs, a piecewise-constant approximation of
//! the visible-area function over a refined visibility decomposition, a
//! Steiner-point weighted-region shortest-path solver, the secluded-path
//! solvers built on top of them, and a generator for the min2SAT hardness
//! construction.

pub mod geometry;
pub mod region;
pub mod scalar;
pub mod subdivision;
pub mod triangulate;
pub mod visibility;
pub mod weights;
pub mod wrp;

pub use geometry::{Location, PathPolyline, Point, PolygonalDomain, Ring, Vector};
pub use scalar::Scalar;
