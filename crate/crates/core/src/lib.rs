pub mod aut;
pub mod bounds;
pub mod catalog;
pub mod certificate;
pub mod engine;
pub mod error;
pub mod exec;
pub mod group;
pub mod heisenberg;
pub mod perm;
pub mod structure_file;

pub use bounds::Bounds;
pub use error::{Error, Result};
pub use exec::Exec;
pub use group::{ClassId, Element, Group, GroupKind, Origin};
