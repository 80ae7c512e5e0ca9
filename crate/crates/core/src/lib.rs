//! Exact tests for sphericity of projective spaces and Grassmannians under
//! reductive subalgebras of `gl(W)`, and the boundedness verdict they imply.

pub mod error;
pub mod exactla;
pub mod lie;
pub mod mult_free;
pub mod pair_spec;
pub mod rep_build;
pub mod sphericity;
pub mod symplectic;
pub mod table61;

pub use error::{Error, Result};
