pub mod check;
pub mod linalg;
pub mod qplane;
pub mod realforms;
pub mod rmatrix;
pub mod scalars;
