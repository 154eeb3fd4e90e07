//! Categorical machinery for transformational music analysis.
//!
//! The crate models musical transformation networks with finite, exhaustively
//! checked algebra:
//!
//! - [`group`]: finite groups as multiplication tables — permutations, the
//!   pitch-class transposition/inversion group, wreath products, extensions;
//! - [`category`]: finite categories, poset shapes, groupoids, functors,
//!   natural transformations and group actions on finite sets;
//! - [`functor_groupoid`]: chord classes (functors from a network shape into
//!   a transformation group) and the groupoid of natural transformations
//!   between them;
//! - [`net`]: poly-Klumpenhouwer networks, their enumeration, and transport
//!   solving;
//! - [`subgroupoid`]: sub-groupoids cut out by projecting transformation
//!   labels through a group extension;
//! - [`bisection`]: bisections of a connected groupoid, their group, the
//!   wreath-product correspondence, internal automorphisms and
//!   trivialization;
//! - [`music`]: pitch-class plumbing and ready-made analysis fixtures;
//! - [`descriptor`]: JSON descriptors for all of the above;
//! - [`verify`]: the runtime verification batteries behind `pknet verify`.
//!
//! All values are immutable once constructed and safe to share across
//! threads. Integer arithmetic only; every check is exact.

pub mod bisection;
pub mod category;
pub mod descriptor;
pub mod error;
pub mod functor_groupoid;
pub mod group;
pub mod music;
pub mod net;
pub mod subgroupoid;
pub mod verify;

pub use error::{Error, Result};
