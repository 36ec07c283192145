//! Weight combinatorics for semisimple groups: root data, Weyl groups,
//! characters, tensor products and perfect submonoids of dominant weights.

pub mod charcalc;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod latticecalc;
pub mod par;
pub mod perfectmonoid;
pub mod rootdata;
pub mod tensor;
pub mod weyl;

pub use error::{Error, Result};
pub use rootdata::{CartanType, LatticeSpec, RootDatum, Weight};
pub use weyl::WeylWord;
