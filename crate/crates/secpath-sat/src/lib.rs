//! Planar optimal 2SAT solvers and reductions.
