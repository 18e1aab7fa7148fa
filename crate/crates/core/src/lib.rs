//! Construction, verification and search for binary LCD codes, centred on
//! dimension six.

pub mod cli;
pub mod code;
pub mod constructs;
pub mod db;
pub mod defvec;
pub mod error;
pub mod gf2;
pub mod search;
pub mod theorem;

pub use code::{griesmer_max_d, griesmer_min_length, nested_witness, CodeParams, LinearCode, NestedWitness};
pub use error::{Error, Result};
pub use gf2::BitMatrix;
