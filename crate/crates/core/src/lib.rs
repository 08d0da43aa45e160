//! Exact computer algebra in the relatively free algebras `F_2` and `F_3` of
//! the variety of unitary associative algebras satisfying `[[z1,z2],z3] = 0`.
//!
//! The crate provides:
//!
//! * sparse multivariate polynomial arithmetic over the rationals ([`poly`]),
//! * normal-form arithmetic in `F_2` and `F_3`, where the commutator ideal is
//!   a free module over the polynomial ring on the basic commutators
//!   ([`falg`]),
//! * the symmetric group action, symmetry predicates and the averaging
//!   operator ([`symmetry`]),
//! * elementary symmetric polynomials, power sums and decomposition of
//!   symmetric polynomials ([`invariants`]),
//! * decomposition of symmetric elements of the commutator ideal into the
//!   three free generators `f_{0,1,0}`, `f_{0,2,0}`, `f_{1,2,0}` with
//!   coefficients in the symmetric polynomial ring ([`decomp`]),
//! * an independent ground-truth oracle: the degree-truncated quotient of the
//!   free associative algebra by the consequences of the defining identity,
//!   computed by exact row reduction ([`oracle`]).
//!
//! All arithmetic is exact; floating point is never used.

pub mod decomp;
pub mod error;
pub mod falg;
pub mod invariants;
mod linalg;
pub mod oracle;
pub mod poly;
pub mod symmetry;

pub use error::{Error, ErrorKind};
pub use poly::{Monomial, Polynomial, Rational};
