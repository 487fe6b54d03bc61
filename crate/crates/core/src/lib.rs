//! Exact computation of odd symplectic characters.

pub mod characters;
pub mod identities;
pub mod laurent;
pub mod linalg;
pub mod par;
pub mod partition;
pub mod report;
pub mod series;
pub mod suite;
