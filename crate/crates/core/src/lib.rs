//! Exact computations for quantum generalized Weyl algebras `A(a,q)` and
//! their Hochschild homology and cohomology.

pub mod algebra;
pub mod closedform;
pub mod complexes;
pub mod engine;
pub mod linalg;
pub mod polyring;
pub mod scalars;
