//! Meridian-traceless SU(2) representations of knots and links: diagram
//! parsing, classical invariants, exact binary dihedral enumeration,
//! numerical representation-variety scans, twisted cohomology and the
//! branched double cover.

pub mod cohomology;
pub mod corpus;
pub mod diagram;
pub mod dihedral;
pub mod doublecover;
pub mod error;
pub mod intmat;
pub mod presentation;
pub mod quaternion;
pub mod variety;

pub use error::{Error, Result};
