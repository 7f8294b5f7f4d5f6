//! Right LCM semigroups, their inverse hulls, boundaries and germ
//! groupoids, with checkers for the structural conditions that decide
//! simplicity and pure infiniteness of the boundary quotient.

pub mod boundary;
pub mod error;
pub mod germ;
pub mod hull;
pub mod instances;
pub mod report;
pub mod semigroup;
pub mod verdict;
pub mod word;

pub use error::{Error, Result};
pub use hull::Hull;
pub use semigroup::{RightLcmOutcome, RightLcmSemigroup};
pub use verdict::{Support, Verdict};
pub use word::{Alphabet, Letter, Word};
