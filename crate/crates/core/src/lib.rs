//! Group isomorphism by reduction to color isomorphism, with the supporting
//! machinery: Cayley-table groups, permutation groups, automorphisms of
//! abelian groups, wreath towers of holomorphs, bilinear maps and graph
//! gadgets. Every reduction is checked against brute force.

pub mod error;
pub mod gadget;
pub mod abelian;
pub mod bilinear;
pub mod coloriso;
pub mod corpus;
pub mod group;
pub mod perm;
pub mod reduction;
pub mod util;
pub mod verify;
pub mod wreath;

pub use error::{Error, Result};
