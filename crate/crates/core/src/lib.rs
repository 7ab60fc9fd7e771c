//! Exact computations for U_q(gl(1|1)) acting on tensor powers of its vector
//! representation, and the matching equivariant K-theory of Grassmannians.

pub mod arith;
pub mod linalg;
pub mod report;
pub mod superrep;
pub mod equivariant;
pub mod fm;
pub mod koszul;
pub mod verify;
