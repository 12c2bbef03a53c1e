//! Permutations and permutation groups.

mod bsgs;
mod group;
mod hom;
mod permutation;
pub mod symmetric;

pub use bsgs::Bsgs;
pub use group::{PermGroup, PermGroupKind, Transporter};
pub use hom::PermHom;
pub use permutation::Permutation;
pub use symmetric::an_conjugacy_test;
