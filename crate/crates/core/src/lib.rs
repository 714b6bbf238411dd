//! Exact tools for generalized Reed-Solomon codes and their relatives over
//! GF(p^s): modified, extended-modified and twisted GRS codes, Roth-Lempel
//! codes, MDS tests, and recognition of GRS codes from a generator matrix.

pub mod codes;
pub mod constructions;
pub mod families;
pub mod format;
pub mod gf;
pub mod grs_id;
pub mod linalg;
