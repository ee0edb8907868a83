//! Exact construction and cross-verification of banded Hessenberg matrices
//! built from bidiagonal factorisations, the `(r+1)`-fold symmetric
//! `r`-orthogonal polynomials they govern, and `r`-Dyck path generating
//! polynomials.

pub mod alpha;
pub mod appell;
pub mod bidiag;
pub mod cli;
pub mod error;
pub mod matrix;
pub mod mop;
pub mod paths;
pub mod posspec;
pub mod prodmat;
pub mod ring;
pub mod verify;

pub use alpha::{appell_alpha, AlphaRing, AlphaSpec};
pub use error::{Error, Result};
pub use ring::{MultiPoly, Rational, Ring, UniPoly};
