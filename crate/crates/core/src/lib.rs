//! Equivariant birational symbol groups and the exact linear algebra behind them.

pub mod error;
pub mod group;
pub mod linalg;

pub use error::{Error, Result};
pub use group::{Automorphism, Character, DualSurjection, FinAbGroup};
pub mod symbols;
pub mod maps;
pub mod classes;
pub mod quotient;
pub mod burnside;
