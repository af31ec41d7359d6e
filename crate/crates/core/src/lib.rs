//! Finite group engine: constructions from a small expression language, dense and
//! twisted-product realizations, isomorphism and embedding search, enumeration of
//! small groups by cyclic extensions, and checkable embedding certificates.

pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod group;
pub mod linear;
pub mod morphism;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
pub use expr::GroupExpr;
pub use group::{construct, construct_with, Elem, Group, Limits, Subgroup, TableGroup, TwistedGroup};
pub use morphism::{find_embedding, fingerprint, is_isomorphic, Fingerprint, Morphism, MorphismKind};

/// Version tag written into catalogs and reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
