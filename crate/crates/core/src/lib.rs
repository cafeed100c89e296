//! Largest triangular submatrices of random matrices and the superboolean
//! rank: matrix model, random generation, exact and heuristic solvers,
//! first-moment bounds.

mod bits;
pub mod bounds;
pub mod exact;
pub mod gen;
pub mod heur;
pub mod matcore;
pub mod mc;
pub mod par;
