pub mod arith;
pub mod character;
pub mod corpus;
pub mod error;
pub mod families;
pub mod io;
pub mod par;
pub mod peff;
pub mod perm;
pub mod qdp;
pub mod subgroup;
pub mod verify;

pub use error::{Error, Result};
