//! Horn double hypergeometric series H1–H7 in double precision, with an
//! executable catalog of their recursion, differential, integral and summation
//! identities and a sampling harness that checks them.

// NaN must fail every range check, so `!(a < b)` is deliberate
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod error;
pub mod harness;
pub mod operators;
pub mod parallel;
pub mod pochhammer;
pub mod series;
pub mod summation;
