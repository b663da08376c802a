//! Storage codes on finite graphs and on finite windows of `Z` and `Z^2`.
//!
//! A storage code assigns a symbol to every vertex so that each symbol is a
//! function of the symbols stored on the vertex's out-neighbors. This crate
//! builds the graphs such codes live on, constructs codes (clique partitions,
//! edge-to-vertex, matchings, repetition schemes on `Z`, anticode tilings on
//! `Z^2`, stacking and interleaving via orthogonal partitions), verifies the
//! recoverability property, and certifies capacity by pairing constructions
//! with exact combinatorial and linear-programming upper bounds.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, presets and
//! the command-line front end live in the `stoc-lab` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod bounds;
pub mod code;
pub mod construct;
pub mod design;
mod error;
pub mod field;
pub mod graph;
pub mod interleave;
pub mod limits;
pub mod linear;
pub mod lp;
pub mod rational;
pub mod window;

pub use error::{Error, Result};
pub use rational::Rational;
