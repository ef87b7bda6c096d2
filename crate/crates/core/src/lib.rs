//! Optimal regular expressions for permutation languages.
//!
//! The language of all permutations of `{1, ..., n}` is specified by a
//! divide-and-conquer expression whose alphabetic length is
//! `f(n) = C(n, floor(n/2)) * (f(floor(n/2)) + f(ceil(n/2)))`, `f(1) = 1`.
//! This crate builds that expression (and two longer baselines), checks its
//! language by exhaustive automaton simulation, confirms minimality for tiny
//! alphabets with a brute-force search, verifies the combinatorial
//! inequalities behind optimality exactly, and certifies the analytic growth
//! bounds on `f(n)` with error-tracked real arithmetic.

pub mod bounds;
pub mod cli;
pub mod construct;
pub mod length;
pub mod oracle;
pub mod regex;
pub mod verify;

pub use regex::{
    alphabetic_length, metrics, parse, render, Regex, RegexMetrics, RenderFormat, Symbol,
};

pub(crate) mod bigser {
    use num_bigint::{BigInt, BigUint};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub mod signed {
        use super::*;

        pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }
    }
}
