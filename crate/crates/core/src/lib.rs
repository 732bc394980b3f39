//! XOR-count of GF(2) matrices and constant multiplications in binary fields.
//!
//! - [`gf2poly`]: polynomials over GF(2), irreducibility, enumeration.
//! - [`gf2mat`]: bit-packed square matrices and their characteristic and
//!   minimal polynomials.
//! - [`xorform`]: cycle-normal products `P·(I+E_{i,j})⋯`, element
//!   classification, exact XOR-count search.
//! - [`verify`]: exhaustive checks of the determinant identities and the
//!   XOR-count bounds.
//! - [`synth`]: straight-line XOR programs from minimal products.

pub mod error;
pub mod exec;
pub mod gf2mat;
pub mod gf2poly;
pub mod synth;
pub mod verify;
pub mod xorform;

pub use error::{Error, Result};
pub use exec::Exec;
pub use gf2mat::Gf2Mat;
pub use gf2poly::Gf2Poly;
pub use xorform::{CycleType, ElementClass, XorProduct};
