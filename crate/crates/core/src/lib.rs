//! Exact algorithms for braid groups and Coxeter groups.
//!
//! The crate is organized bottom-up:
//!
//! - [`words`]: braid words, parsing and free-group reduction.
//! - [`garside`]: permutation braids, left-greedy normal forms and the word problem in `B_n`.
//! - [`dehornoy`]: handle reduction, `σ_k`-positivity and the Dehornoy order.
//! - [`coxeter`]: Coxeter graphs, the canonical representation, root systems and inversion sets.
//! - [`krammer`]: orbit parity of roots and certification of essential elements.
//! - [`braidclass`]: algebraic periodic / reducible classification of braids.
//! - [`surface`]: the square-complex surface of a small-type Coxeter graph and its homological
//!   transvection representation.
//!
//! A narrative guide with runnable examples lives in the `book/` directory of the repository;
//! its code blocks are compiled as doctests of this crate.

pub mod braidclass;
pub mod coxeter;
pub mod dehornoy;
mod error;
pub mod garside;
pub mod krammer;
pub mod surface;
pub mod words;

pub use error::{Error, Result};
/// Matrix type used by the surface module.
pub use nalgebra;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub struct Intro;
    #[doc = include_str!("../../../book/src/words.md")]
    pub struct Words;
    #[doc = include_str!("../../../book/src/garside.md")]
    pub struct Garside;
    #[doc = include_str!("../../../book/src/dehornoy.md")]
    pub struct Dehornoy;
    #[doc = include_str!("../../../book/src/coxeter.md")]
    pub struct Coxeter;
    #[doc = include_str!("../../../book/src/krammer.md")]
    pub struct Krammer;
    #[doc = include_str!("../../../book/src/braidclass.md")]
    pub struct Braidclass;
    #[doc = include_str!("../../../book/src/surface.md")]
    pub struct Surface;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
