//! Finite k-graphs, T-valued 2-cocycles, the finite-path and infinite-path
//! product systems as finite-dimensional module linear algebra, truncated Fock
//! representations, and a registry of checks for the identities relating them.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cocycle;
pub mod constructions;
pub mod degree;
pub mod fock;
pub mod kgraph;
pub mod linalg;
pub mod outcome;
pub mod phase;
pub mod scalar;
pub mod system;
pub mod verify;
pub mod xmod;
pub mod ymod;
