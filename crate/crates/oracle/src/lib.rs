//! Brute-force reference oracles for the braidforge test suites.
//!
//! Everything here works on plain data (signed integer words, integer Coxeter matrices)
//! and shares no code with the library under test.

pub mod braid;
pub mod coxeter;
