//! Two-stage majority ("majority of majorities") on regular graphs with loops.
//!
//! Every vertex of a configuration is happy or sad about a proposal. A vertex
//! is a proponent when its closed neighborhood has a happy majority, and the
//! proposal passes when proponents are a strict majority. For odd order `n`
//! and odd degree `d`, [`classifier`] gives the exact range of happy counts
//! `h` for which every, some, or no `d`-regular configuration approves;
//! [`constructions`] builds the extremal witnesses and [`oracle`] checks the
//! whole picture by exhaustive enumeration on small orders.

pub mod classifier;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod regions;
pub mod voting;

pub use classifier::ClassStatus;
pub use error::{Error, Result};
pub use graph::{ClassParams, Configuration, LoopGraph, Opinion};
