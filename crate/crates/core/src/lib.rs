//! Exact analysis of Shamsuddin derivations of `k[x, y]` and of the
//! polynomial automorphisms commuting with them.

pub mod cli;
pub mod derivation;
pub mod dynamics;
pub mod expr;
pub mod isotropy;
pub mod polyring;
pub mod simplicity;
