pub mod classes;
pub mod elnitsky;
pub mod embedding;
pub mod enumeration;
pub mod error;
pub mod pattern;
pub mod permutation;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use pattern::{BarredPattern, Occurrence};
pub use permutation::Permutation;
pub use word::ReducedWord;
