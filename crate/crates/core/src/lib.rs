pub mod arith;
pub mod classgroup;
pub mod eisenstein;
pub mod error;
pub mod heegner;
pub mod lfuncs;
pub mod moments;
pub mod par;
pub mod quad;
pub mod record;
pub mod specfun;
pub mod upper;

pub use error::{Error, Result};
