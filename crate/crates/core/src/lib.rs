//! Exact computations for flags of Pfaff systems on complex projective space.
//!
//! Everything here works over the rationals with arbitrary precision and
//! needs only `alloc`:
//!
//! - [`polyforms`]: polynomial differential forms and vector fields on the
//!   affine cone `C^{n+1}` over `P^n`, with wedge, contraction and `d`.
//! - [`exactla`]: rank and kernel of sparse rational matrices.
//! - [`bott`]: dimensions of `H^q(P^n, Omega^p(k))` and
//!   `H^s(P^n, wedge^r T(t))`.
//! - [`counting`]: closed-form counts of invariant twisted forms and tangent
//!   vector fields, together with kernel oracles that recompute them.
//! - [`flags`]: flag, integrability and decomposability checks on concrete
//!   forms.
//! - [`bounds`]: degree inequalities and slope/stability verdicts.
#![no_std]
#![allow(clippy::int_plus_one)]

extern crate alloc;

pub mod bott;
pub mod bounds;
pub mod counting;
pub mod exactla;
pub mod flags;
pub mod polyforms;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub use polyforms::{Monomial, Poly, PolyForm, PolyVectorField};
