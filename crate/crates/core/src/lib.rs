#![no_std]
//! Exact algebra for Smith ideals over finitely presented modules.
//!
//! Everything here is `no_std` + `alloc`; IO and the command line live in the
//! `adic-smith` crate.

extern crate alloc;

pub mod almost;
pub mod arrow;
pub mod fpmod;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod ring;
pub mod tower;
