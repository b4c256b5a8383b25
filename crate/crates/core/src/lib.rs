//! Exact finite-group engine for Heisenberg groups over finite fields, their
//! semidirect extensions, Camina pairs and Gagola characters.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod gf;
pub mod group;
pub mod verify;
pub mod constructions;
pub mod chars;

pub use error::{Error, Result};
