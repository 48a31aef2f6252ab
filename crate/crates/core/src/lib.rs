pub mod eds;
pub mod elliptic;
pub mod error;
pub mod galois_density;
pub mod lrs;
pub mod ntkernel;
pub mod par;
pub mod period;
pub mod prooflab;
pub mod refuter;
mod serde_big;

pub use error::{Error, Result};
