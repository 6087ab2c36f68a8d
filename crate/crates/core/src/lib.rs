//! Exact computations on central hyperplane arrangements over cyclotomic
//! fields: intersection lattices, characteristic polynomials, and
//! certificate-producing searches for inductive and divisional freeness.

pub mod arrangement;
pub mod error;
pub mod exactnum;
pub mod freeness;
pub mod generators;
pub mod incidence;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod poly;

pub use arrangement::{Arrangement, Flat, Hyperplane};
pub use error::{Error, Result};
pub use exactnum::{Cyc, Rat};
pub use lattice::{all_flats, build_lattice, char_poly, Lattice};
pub use poly::{CharPoly, IntPoly};
