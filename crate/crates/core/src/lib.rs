//! Exact characteristic-class calculus for symplectic bundles over products
//! of quaternionic projective spaces, with coefficients in the integers (Chow),
//! the Witt ring and the Grothendieck–Witt ring of Q or a prime field.

pub mod borel;
pub mod bundles;
pub mod character;
pub mod error;
pub mod gw;
pub mod localization;
pub mod operations;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
