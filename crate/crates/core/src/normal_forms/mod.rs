//! Matrix normal forms and the invariants read off from them.

mod charpoly;
mod finite_order;
mod laurent_cokernel;
pub mod linalg;
mod snf;

pub use charpoly::{char_poly, det};
pub use finite_order::finite_order;
pub use laurent_cokernel::{clear_rows, companion, laurent_cokernel, laurent_cokernel_with_snf, LaurentCokernel};
pub use snf::{smith_normal_form, SnfResult};
