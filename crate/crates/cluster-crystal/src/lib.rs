//! Exact symbolic cluster algebra on the double Bruhat cell of SL(r+1)
//! attached to the squared Coxeter word, together with monomial
//! realizations of Demazure crystals.
//!
//! The crate computes every cluster variable three independent ways —
//! by seed mutation, by generalized minors of the factorization matrix,
//! and by closed-form sums over Demazure crystals — and checks that the
//! three routes agree exactly.

pub mod cluster;
pub mod crystal;
pub mod exactalg;
pub mod group;
pub mod roots;
pub mod verify;

pub use exactalg::{ArithError, LaurentMono, LaurentPoly, VarId};
