//! Injectivity domains of modules over finite rings.
//!
//! Finite rings are built from a small recipe language, their right modules
//! are enumerated explicitly, and relative injectivity is decided by
//! exhaustive homomorphism search. On top of that oracle sit fast structural
//! criteria deciding whether a ring has a "middle class": a module that is
//! neither injective nor poor.

pub mod bounds;
pub mod criteria;
pub mod error;
pub mod dsl;
pub mod exactalg;
pub mod injdom;
pub mod modkit;
pub mod ringkit;

pub use bounds::Bounds;
pub use error::{Error, Result};
