//! Exact scalars: arbitrary-precision rationals and elements of the
//! cyclotomic fields Q(ζ_N) in the power basis modulo Φ_N.

mod cyclotomic;
mod rat;

pub use cyclotomic::{cyclotomic_poly, euler_phi, Cyc};
pub use rat::Rat;
